#pragma once

#include <string>
#include <vector>

#include "qmzv/eisenstein.hpp"
#include "qmzv/words.hpp"

namespace qmzv {

struct CheckResult {
  bool pass = true;
  std::string detail;  // first mismatch, empty on success
};

/// Model used by the verification helpers: depth 2, coefficients up to the given weight.
const EisensteinModel& analysis_model(int weight, int order);

CheckResult verify_product(const Word& u, const Word& v, int order);
CheckResult verify_tau(const Word& w, int order);
/// q d/dq zeta_q(s) = sum_{i<=j} s_i zeta_q(s_1, ..., s_i + 1, ..., s_j, 0, s_{j+1}, ...)
LinComb derivation_rhs(const Word& w);
CheckResult verify_derivation(const Word& w, int order);

struct LimitTerm {
  Word shuffle_word;  // over x0, x1
  Word stuffle_word;  // over y_k
  Rational coefficient;
  bool operator==(const LimitTerm&) const = default;
};
using LimitSymbol = std::vector<LimitTerm>;

/// All splittings w = u v with u over {b0, b1} and v over {b_i : i >= 1}.
LimitSymbol formal_limit(const Word& w);
LimitSymbol formal_limit(const LinComb& x);
std::string to_string(const LimitSymbol& s);

struct NumericLimit {
  double value = 0;      // extrapolated
  double target = 0;
  double rel_error = 0;
  bool within_tolerance = false;
  std::vector<std::pair<double, double>> samples;  // (q, (1-q)^wt zeta_q(q))
};

/// Advisory only: Richardson extrapolation of (1-q)^wt zeta_q(w)(q) on q = 1 - h, 1 - h/2, 1 - h/4.
NumericLimit numeric_limit_check(const Word& w, double target, int order = 400, double h = 0.08, double tolerance = 0.05);

struct Relation {
  int weight = 0;
  std::vector<Word> basis;
  std::vector<Rational> vector;
  int checked_order = 0;
};

/// Words of ℚ⟨B⟩⁰ of the given weight and depth, in length-then-lex order.
std::vector<Word> relation_basis(int weight, int max_depth);
/// Kernel of the q-coefficient matrix up to `order`; every vector is re-checked at `verify_order` and dropped if it fails.
std::vector<Relation> find_relations(int weight, int max_depth, int order, int verify_order);
std::string to_string(const Relation& r);

/// Delta(q) = q prod (1 - q^n)^24
QSeries discriminant(int order);
/// Depth <= 2 part of the weight-12 combination minus Delta/43200; the omitted depth-3 term is 240 zeta_q(4,4,4).
QSeries delta_depth2_residual(int order);

}  // namespace qmzv
