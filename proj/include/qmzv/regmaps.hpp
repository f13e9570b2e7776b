#pragma once

#include <map>
#include <mutex>
#include <string>

#include "qmzv/quasishuffle.hpp"
#include "qmzv/words.hpp"

namespace qmzv {

// Polynomial in T with word coefficients.
class PolyInT {
 public:
  void add(int degree, const LinComb& x);
  LinComb coefficient(int degree) const;
  const std::map<int, LinComb>& terms() const { return terms_; }
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  PolyInT shifted(int by) const;
  PolyInT& operator+=(const PolyInT& o);
  PolyInT operator*(const Rational& c) const;
  bool operator==(const PolyInT& o) const { return terms_ == o.terms_; }

 private:
  std::map<int, LinComb> terms_;
};

std::string to_string(const PolyInT& p);

// Inverts w -> sum_n P_n * lead^{*n} for a quasi-shuffle algebra with one divergent letter,
// by peeling leading copies of that letter.
class Regularizer {
 public:
  Regularizer(ProductId id, Letter lead);

  static const Regularizer& balanced();  // b0 under the balanced product
  static const Regularizer& stuffle();   // y1 under the stuffle product
  static const Regularizer& shuffle();   // x1 under the shuffle product

  PolyInT inverse(const Word& w) const;
  PolyInT inverse(const LinComb& x) const;
  /// Constant term of the inverse.
  LinComb reg(const Word& w) const { return inverse(w).coefficient(0); }
  LinComb reg(const LinComb& x) const;

 private:
  ProductId id_;
  Letter lead_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<Word, PolyInT> memo_;
};

PolyInT reg_t_inverse(const Word& w);
/// Binomial closed formula.
LinComb reg(const LinComb& x);
LinComb reg(const Word& w);
/// Same map via elimination.
LinComb reg_by_elimination(const LinComb& x);

Tensor delta_dec0(const Word& w);
Tensor delta_dec0(const LinComb& x);

Word tau_b(const Word& w);
LinComb tau_b(const LinComb& x);
Word tau_py(const Word& w);
LinComb tau_py(const LinComb& x);
/// b_{s1} ... b_{sl} -> p^{s1} y ... p^{sl} y
Word embed_py(const Word& w);
LinComb embed_py(const LinComb& x);

LinComb phi_sharp(const LinComb& x);
LinComb phi_sharp(const Word& w);
LinComb phi_sharp_inv(const LinComb& x);
LinComb phi_sharp_inv(const Word& w);

LinComb swap_ybi(const LinComb& x);
LinComb swap_ybi(const Word& w);

}  // namespace qmzv
