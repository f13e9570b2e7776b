#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmzv/poly.hpp"
#include "qmzv/qseries.hpp"
#include "qmzv/words.hpp"

namespace qmzv {

// Variables of depth d: X_i at 2(i-1), Y_i at 2i-1 (i is 1-based).
inline int xvar(int i) { return 2 * (i - 1); }
inline int yvar(int i) { return 2 * i - 1; }

template <class C>
C one_of();
template <>
inline Rational one_of<Rational>() { return Rational(1); }
template <>
inline QSeries one_of<QSeries>() { return QSeries::constant(1); }
template <>
inline LinComb one_of<LinComb>() { return LinComb::one(); }
template <>
inline Tensor one_of<Tensor>() {
  Tensor t;
  t.add(Word{}, Word{}, 1);
  return t;
}

template <class C>
class TruncBimould {
 public:
  TruncBimould() = default;
  explicit TruncBimould(std::vector<Poly<C>> parts) : parts_(std::move(parts)) {
    for (std::size_t d = 0; d < parts_.size(); ++d)
      if (parts_[d].nvars() != 2 * static_cast<int>(d)) throw DomainError("bimould part has wrong arity");
  }

  /// 1 in depth 0, zero in depths 1..max_depth.
  static TruncBimould unit(int max_depth) {
    std::vector<Poly<C>> p;
    p.push_back(Poly<C>::constant(one_of<C>()));
    for (int d = 1; d <= max_depth; ++d) p.emplace_back(2 * d, kUnbounded);
    return TruncBimould(std::move(p));
  }

  int max_depth() const { return static_cast<int>(parts_.size()) - 1; }
  const Poly<C>& part(int d) const {
    if (d < 0 || d > max_depth()) throw TruncationError("bimould depth " + std::to_string(d) + " not available");
    return parts_[static_cast<std::size_t>(d)];
  }
  Poly<C>& part(int d) {
    if (d < 0 || d > max_depth()) throw TruncationError("bimould depth " + std::to_string(d) + " not available");
    return parts_[static_cast<std::size_t>(d)];
  }
  int degree(int d) const { return part(d).bound(); }

  TruncBimould operator+(const TruncBimould& o) const {
    int n = std::min(max_depth(), o.max_depth());
    std::vector<Poly<C>> p;
    for (int d = 0; d <= n; ++d) p.push_back(part(d) + o.part(d));
    return TruncBimould(std::move(p));
  }
  TruncBimould operator-(const TruncBimould& o) const {
    int n = std::min(max_depth(), o.max_depth());
    std::vector<Poly<C>> p;
    for (int d = 0; d <= n; ++d) p.push_back(part(d) - o.part(d));
    return TruncBimould(std::move(p));
  }

  /// Apply forms(d) to every depth part.
  template <class Forms>
  TruncBimould substituted(Forms&& forms) const {
    std::vector<Poly<C>> p;
    for (int d = 0; d <= max_depth(); ++d) p.push_back(part(d).substitute(forms(d), 2 * d));
    return TruncBimould(std::move(p));
  }

  template <class D, class F>
  TruncBimould<D> map_coefficients(F&& f) const {
    std::vector<Poly<D>> p;
    for (int d = 0; d <= max_depth(); ++d) p.push_back(part(d).template map_coefficients<D>(f));
    return TruncBimould<D>(std::move(p));
  }

 private:
  std::vector<Poly<C>> parts_;
};

/// Y_i -> Y_1 + ... + Y_i (or the inverse Y_i -> Y_i - Y_{i-1}).
std::vector<LinearForm> hash_y_forms(int d, bool inverse);
/// X_i -> Y_1 + ... + Y_{d+1-i}, Y_i -> X_{d+1-i} - X_{d+2-i}.
std::vector<LinearForm> swap_forms(int d);
/// X_i -> Y_{d+1-i}, Y_i -> X_{d+1-i}.
std::vector<LinearForm> tau_forms(int d);

template <class C>
TruncBimould<C> sub_hash_y(const TruncBimould<C>& m) {
  return m.substituted([](int d) { return hash_y_forms(d, false); });
}
template <class C>
TruncBimould<C> sub_hash_y_inv(const TruncBimould<C>& m) {
  return m.substituted([](int d) { return hash_y_forms(d, true); });
}
template <class C>
TruncBimould<C> swap_bimould(const TruncBimould<C>& m) {
  return m.substituted(swap_forms);
}
template <class C>
TruncBimould<C> tau_bimould(const TruncBimould<C>& m) {
  return m.substituted(tau_forms);
}

/// C_d = sum_i A_i(X_1..Y_i) B_{d-i}(X_{i+1}..Y_d)
template <class C, class Mul>
TruncBimould<C> mould_product(const TruncBimould<C>& a, const TruncBimould<C>& b, Mul&& mul) {
  int n = std::min(a.max_depth(), b.max_depth());
  std::vector<Poly<C>> parts;
  for (int d = 0; d <= n; ++d) {
    Poly<C> sum(2 * d, kUnbounded);
    for (int i = 0; i <= d; ++i)
      sum += Poly<C>::multiply(a.part(i).embedded(2 * d, 0), b.part(d - i).embedded(2 * d, 2 * i), mul);
    parts.push_back(std::move(sum));
  }
  return TruncBimould<C>(std::move(parts));
}

template <class C>
TruncBimould<C> mould_product(const TruncBimould<C>& a, const TruncBimould<C>& b) {
  return mould_product(a, b, [](const C& x, const C& y) -> C { return x * y; });
}

enum class Predicate { Symmetril, BSymmetril, SwapInv, TauInv };
std::string_view predicate_name(Predicate p);
std::optional<Predicate> predicate_from_name(std::string_view name);

struct SymmetryReport {
  Predicate predicate = Predicate::Symmetril;
  int checked_depth = 0;
  int checked_degree = 0;
  bool pass = true;
  std::size_t identities_checked = 0;
  std::string first_failure;
};

// One argument slot of a mould evaluation: X_{xa} (or the divided difference in X_{xa}, X_{xb}) and a Y form.
struct Slot {
  int xa = 0;
  int xb = 0;  // 0 for a plain slot
  std::vector<int> y;
};
using SlotTerm = std::vector<Slot>;

/// Expansion of rho(A) * rho(B) for the stuffle recursion (merging from the left).
std::vector<SlotTerm> stuffle_terms(const std::vector<Slot>& a, const std::vector<Slot>& b);
/// Same for the balanced recursion (merging from the right).
std::vector<SlotTerm> balanced_terms(const std::vector<Slot>& a, const std::vector<Slot>& b);

std::string term_to_string(const SlotTerm& t);

/// M_{|t|} evaluated at the slots, as a polynomial in the 2d ambient variables.
template <class C>
Poly<C> evaluate_term(const TruncBimould<C>& m, const SlotTerm& t, int d) {
  for (std::size_t p = 0; p < t.size(); ++p) {
    if (t[p].xb == 0) continue;
    SlotTerm ta = t, tb = t;
    ta[p].xb = 0;
    tb[p].xa = t[p].xb;
    tb[p].xb = 0;
    return (evaluate_term(m, ta, d) - evaluate_term(m, tb, d)).divide_difference(xvar(t[p].xa), xvar(t[p].xb));
  }
  std::vector<LinearForm> forms;
  for (const auto& s : t) {
    forms.push_back(var_form(2 * d, xvar(s.xa)));
    LinearForm y(static_cast<std::size_t>(2 * d), 0);
    for (int j = 1; j <= d; ++j) y[static_cast<std::size_t>(yvar(j))] = s.y[static_cast<std::size_t>(j - 1)];
    forms.push_back(y);
  }
  return m.part(static_cast<int>(t.size())).substitute(forms, 2 * d);
}

template <class C>
std::string coefficient_text(const C& c) {
  using qmzv::to_string;
  return to_string(c);
}

template <class C, class Mul>
SymmetryReport check_product_symmetry(const TruncBimould<C>& m, bool balanced, int max_depth, int degree, Mul&& mul) {
  SymmetryReport rep;
  rep.predicate = balanced ? Predicate::BSymmetril : Predicate::Symmetril;
  rep.checked_depth = max_depth;
  rep.checked_degree = degree;
  if (m.max_depth() < max_depth) throw TruncationError("mould has depth " + std::to_string(m.max_depth()));
  for (int d = 2; d <= max_depth; ++d)
    for (int n = 1; n < d; ++n) {
      std::vector<Slot> a, b;
      for (int i = 1; i <= d; ++i) {
        Slot s{i, 0, std::vector<int>(static_cast<std::size_t>(d), 0)};
        s.y[static_cast<std::size_t>(i - 1)] = 1;
        (i <= n ? a : b).push_back(s);
      }
      Poly<C> lhs = Poly<C>::multiply(m.part(n).embedded(2 * d, 0), m.part(d - n).embedded(2 * d, 2 * n), mul);
      Poly<C> rhs(2 * d, kUnbounded);
      for (const auto& t : balanced ? balanced_terms(a, b) : stuffle_terms(a, b)) rhs += evaluate_term(m, t, d);
      int window = std::min(lhs.bound(), rhs.bound());
      if (window < degree)
        throw TruncationError("depth " + std::to_string(n) + "x" + std::to_string(d - n) +
                              " identity only valid to degree " + std::to_string(window));
      ++rep.identities_checked;
      if (auto e = first_difference(lhs, rhs, degree); e && rep.pass) {
        rep.pass = false;
        rep.first_failure = "depth " + std::to_string(n) + "x" + std::to_string(d - n) + " at " +
                            exps_to_string(*e, 2 * d) + ": lhs = " + coefficient_text(lhs.coefficient(*e)) +
                            ", rhs = " + coefficient_text(rhs.coefficient(*e));
      }
    }
  return rep;
}

template <class C>
SymmetryReport check_symmetril(const TruncBimould<C>& m, int max_depth, int degree) {
  return check_product_symmetry(m, false, max_depth, degree, [](const C& x, const C& y) -> C { return x * y; });
}
template <class C>
SymmetryReport check_b_symmetril(const TruncBimould<C>& m, int max_depth, int degree) {
  return check_product_symmetry(m, true, max_depth, degree, [](const C& x, const C& y) -> C { return x * y; });
}

template <class C>
SymmetryReport check_involution_invariance(const TruncBimould<C>& m, bool swap, int max_depth, int degree) {
  SymmetryReport rep;
  rep.predicate = swap ? Predicate::SwapInv : Predicate::TauInv;
  rep.checked_depth = max_depth;
  rep.checked_degree = degree;
  if (m.max_depth() < max_depth) throw TruncationError("mould has depth " + std::to_string(m.max_depth()));
  for (int d = 1; d <= max_depth; ++d) {
    const Poly<C>& p = m.part(d);
    if (p.bound() < degree)
      throw TruncationError("depth " + std::to_string(d) + " only valid to degree " + std::to_string(p.bound()));
    Poly<C> q = p.substitute(swap ? swap_forms(d) : tau_forms(d), 2 * d);
    ++rep.identities_checked;
    if (auto e = first_difference(p, q, degree); e && rep.pass) {
      rep.pass = false;
      rep.first_failure = "depth " + std::to_string(d) + " at " + exps_to_string(*e, 2 * d) +
                          ": M = " + coefficient_text(p.coefficient(*e)) +
                          ", transformed = " + coefficient_text(q.coefficient(*e));
    }
  }
  return rep;
}

template <class C>
SymmetryReport check_swap_inv(const TruncBimould<C>& m, int max_depth, int degree) {
  return check_involution_invariance(m, true, max_depth, degree);
}
template <class C>
SymmetryReport check_tau_inv(const TruncBimould<C>& m, int max_depth, int degree) {
  return check_involution_invariance(m, false, max_depth, degree);
}

std::string to_string(const SymmetryReport& r);

/// Exponent vector of X_1^{k_1-1} Y_1^{m_1} ... in depth d.
Exps index_exps(const std::vector<int>& k, const std::vector<int>& m);

/// sum over b_{k1} b0^{m1} ... of the word times X^{k-1} Y^m, total degree <= degree.
TruncBimould<LinComb> rho_b0_words(int max_depth, int degree);
/// sum over y_{k1,m1} ... of the word times X^{k-1} Y^m / m!.
TruncBimould<LinComb> rho_ybi_words(int max_depth, int degree);

/// Apply a coefficient map phi (word -> C) to a word-valued bimould.
template <class C, class Phi>
TruncBimould<C> apply_character(const TruncBimould<LinComb>& m, Phi&& phi) {
  return m.template map_coefficients<C>([&](const LinComb& x) {
    C out{};
    for (const auto& [w, c] : x) out += phi(w) * c;
    return out;
  });
}

}  // namespace qmzv
