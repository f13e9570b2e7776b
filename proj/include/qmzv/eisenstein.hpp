#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qmzv/bimould.hpp"
#include "qmzv/qseries.hpp"

namespace qmzv {

enum class BetaProvenance { Solved, User };

struct BetaTable {
  std::map<int, Rational> depth1;
  std::map<std::pair<int, int>, Rational> depth2;
  BetaProvenance provenance = BetaProvenance::Solved;
  int max_weight = 0;

  Rational beta1(int k) const;  // missing entries are an error
  Rational beta2(int k1, int k2) const;
};

/// beta(k) = -B_k / (2 k!) for even k, 0 for odd k
Rational beta_depth1(int k);

/// sum_i gamma_i T^i = exp(sum_{n>=2} (-1)^n beta(n) T^n / n), coefficients 0..n
std::vector<Rational> gamma_coefficients(int n);

struct BetaSolution {
  BetaTable table;
  std::vector<std::pair<int, int>> free;  // free unknowns, in the order they were fixed
  int equations = 0;
};

/// Depth-two double shuffle system; free unknowns get `free_values` (missing entries are 0).
BetaSolution solve_beta_depth2(int max_weight, const std::map<std::pair<int, int>, Rational>& free_values = {});

/// Residuals of every constraint for a given table (all zero iff the table solves the system).
std::vector<std::pair<std::string, Rational>> beta_residuals(const BetaTable& t, int max_weight);

std::string beta_to_json(const BetaTable& t);
BetaTable beta_from_json(const std::string& text);

// Bimoulds. Part d keeps every monomial of total degree <= weight - d, i.e. all coefficients of weight <= weight.
/// The mould frak-b: part n is a polynomial in n variables.
std::vector<Poly<Rational>> build_frak_b(const BetaTable& beta, int max_depth, int weight);
TruncBimould<Rational> build_b(const BetaTable& beta, int max_depth, int weight);
TruncBimould<Rational> build_btilde(const TruncBimould<Rational>& b);
Poly<QSeries> build_L_series(int u, int weight, int order);
TruncBimould<QSeries> build_L(const TruncBimould<Rational>& b, const TruncBimould<Rational>& btilde, int u, int weight,
                              int order);
TruncBimould<QSeries> build_gstar(const TruncBimould<Rational>& b, int weight, int order);

class EisensteinModel {
 public:
  EisensteinModel(BetaTable beta, int max_depth, int weight, int order);

  const BetaTable& beta() const { return beta_; }
  int max_depth() const { return max_depth_; }
  int weight() const { return weight_; }
  int order() const { return order_; }

  const TruncBimould<Rational>& b() const { return b_; }
  const TruncBimould<Rational>& btilde() const { return btilde_; }
  const TruncBimould<QSeries>& gstar() const { return gstar_; }
  const TruncBimould<QSeries>& G() const { return G_; }
  const TruncBimould<QSeries>& B() const { return B_; }

  /// Coefficient of X^{k-1} Y^m / m! in G.
  QSeries cmes(const std::vector<int>& k, const std::vector<int>& m) const;
  /// zeta_q(s_1, ..., s_l) for a word b_{s_1} ... b_{s_l} not starting with b0.
  QSeries zeta_q(const Word& w) const;
  QSeries zeta_q(const LinComb& x) const;

 private:
  BetaTable beta_;
  int max_depth_, weight_, order_;
  TruncBimould<Rational> b_, btilde_;
  TruncBimould<QSeries> gstar_, G_, B_;
};

/// Shared default model (solved beta) for the given bounds.
std::shared_ptr<const EisensteinModel> default_model(int max_depth, int weight, int order);

QSeries balanced_zeta_q(const Word& w, int order);

}  // namespace qmzv
