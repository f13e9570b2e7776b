#pragma once

#include <climits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qmzv/rational.hpp"

namespace qmzv {

// Power series in q known up to q^order. order == kExactOrder marks a polynomial known exactly.
class QSeries {
 public:
  static constexpr int kExactOrder = INT_MAX;

  QSeries() = default;
  explicit QSeries(int order);

  static QSeries constant(const Rational& c, int order = kExactOrder);
  static QSeries monomial(const Rational& c, int power, int order = kExactOrder);
  static QSeries from_coefficients(std::vector<Rational> c, int order);

  int order() const { return order_; }
  bool exact() const { return order_ == kExactOrder; }
  /// Coefficient of q^n; throws TruncationError beyond the order.
  Rational coefficient(int n) const;
  /// Stored coefficients; index n is q^n, missing tail entries are zero.
  const std::vector<Rational>& stored() const { return c_; }
  bool is_zero() const;
  int valuation() const;

  void add_term(int n, const Rational& c);

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const Rational& s);
  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator-() const;
  QSeries operator*(const Rational& s) const;
  QSeries operator*(const QSeries& o) const;

  /// Equal on all coefficients up to the smaller order.
  bool operator==(const QSeries& o) const;

  QSeries truncated(int order) const;
  /// Coefficients 0..order, dense.
  std::vector<Rational> dense(int order) const;

 private:
  void trim();

  int order_ = kExactOrder;
  std::vector<Rational> c_;
};

inline QSeries operator*(const Rational& s, const QSeries& f) { return f * s; }
inline bool is_zero(const QSeries& f) { return f.is_zero(); }

/// q d/dq
QSeries qderiv(const QSeries& f);
/// Horner evaluation of the truncated polynomial.
double eval_float(const QSeries& f, double q0);

/// "-1/24 + q + 3q^2", no order marker.
std::string to_string(const QSeries& f);
std::ostream& operator<<(std::ostream& os, const QSeries& f);
/// Parses the text form; "O(q^k)" terms set the order, otherwise `order` (default: highest power).
QSeries parse_qseries(std::string_view text, int order = -1);

/// Bernoulli numbers with B_1 = -1/2.
Rational bernoulli(int n);

/// Polynomial in t, coefficient of t^i at index i.
using PolyR = std::vector<Rational>;

/// sum_{n1 > ... > nl > 0} prod_j R_j(q^{n_j}) / (1 - q^{n_j})^{s_j}
QSeries generic_qzeta(const std::vector<int>& s, const std::vector<PolyR>& R, int N);

/// sum over partitions of n <= N with exactly d distinct part sizes i_1 > ... > i_d and
/// multiplicities m_j of prod_j i_j^{xexp_j} m_j^{yexp_j}
QSeries partition_gen(const std::vector<int>& xexp, const std::vector<int>& yexp, int N);

/// sum_{u,v > 0, uv <= N} u^a v^b q^{uv}
QSeries divisor_sum(int a, int b, int N);

/// -[m=0] B_k/(2 k!) - [k=1] B_{m+1}/(2 (m+1)!) + 1/((k-1)! m!) sum u^m v^{k-1} q^{uv}
QSeries depth1_balanced_closed_form(int k, int m, int N);

}  // namespace qmzv
