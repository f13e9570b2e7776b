#pragma once

#include <optional>
#include <vector>

#include "qmzv/rational.hpp"

namespace qmzv {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

struct Echelon {
  Matrix rows;               // reduced rows, pivots normalized to 1
  std::vector<int> pivots;   // pivot column per row
  std::vector<int> free;     // non-pivot columns
};

/// Exact reduced row echelon form; columns are scanned left to right.
Echelon row_reduce(Matrix m, int ncols);

/// Solutions of A x = b with free columns set to the given values (zero by default).
/// Returns nullopt if the system is inconsistent.
std::optional<Row> solve(const Matrix& a, const Row& b, const std::vector<Rational>& free_values = {},
                         std::vector<int>* free_columns = nullptr);

/// Basis of the right kernel; each vector scaled to integers with first nonzero entry positive.
Matrix kernel(const Matrix& a, int ncols);

void normalize_integral(Row& v);

}  // namespace qmzv
