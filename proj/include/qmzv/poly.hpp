#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qmzv/errors.hpp"
#include "qmzv/qseries.hpp"
#include "qmzv/rational.hpp"
#include "qmzv/words.hpp"

namespace qmzv {

inline constexpr int kMaxVars = 12;
inline constexpr int kUnbounded = 1 << 20;

using Exps = std::array<std::uint8_t, kMaxVars>;

inline int total_degree(const Exps& e) {
  int s = 0;
  for (auto x : e) s += x;
  return s;
}

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const LinComb& x) { return x.is_zero(); }
inline bool is_zero(const Tensor& x) { return x.is_zero(); }

/// Image of one variable under a linear substitution: integer coefficients over the target variables.
using LinearForm = std::vector<int>;

inline LinearForm var_form(int nvars, int v, int c = 1) {
  LinearForm f(static_cast<std::size_t>(nvars), 0);
  f[static_cast<std::size_t>(v)] = c;
  return f;
}

// Sparse polynomial with coefficients in C, exact up to total degree `bound`.
template <class C>
class Poly {
 public:
  using Map = std::map<Exps, C>;

  Poly() = default;
  Poly(int nvars, int bound) : nvars_(nvars), bound_(bound) {
    if (nvars < 0 || nvars > kMaxVars) throw DomainError("too many polynomial variables");
  }

  static Poly constant(const C& c, int nvars = 0, int bound = kUnbounded) {
    Poly p(nvars, bound);
    p.add(Exps{}, c);
    return p;
  }

  int nvars() const { return nvars_; }
  int bound() const { return bound_; }
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  void add(const Exps& e, const C& c) {
    if (total_degree(e) > bound_ || qmzv::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (qmzv::is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C() : it->second;
  }

  Poly& operator+=(const Poly& o) {
    same_space(o);
    bound_ = std::min(bound_, o.bound_);
    drop_above(bound_);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    same_space(o);
    bound_ = std::min(bound_, o.bound_);
    drop_above(bound_);
    for (const auto& [e, c] : o.terms_) add(e, c * Rational(-1));
    return *this;
  }
  Poly operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
  }
  Poly scaled(const Rational& s) const {
    Poly r(nvars_, bound_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  Poly truncated(int bound) const {
    Poly r = *this;
    r.bound_ = std::min(bound_, bound);
    r.drop_above(r.bound_);
    return r;
  }

  /// Same polynomial in a bigger space with variable v renamed to v + offset.
  Poly embedded(int nvars, int offset) const {
    if (offset + nvars_ > nvars) throw DomainError("embedding does not fit");
    Poly r(nvars, bound_);
    for (const auto& [e, c] : terms_) {
      Exps f{};
      for (int v = 0; v < nvars_; ++v) f[static_cast<std::size_t>(v + offset)] = e[static_cast<std::size_t>(v)];
      r.terms_.emplace(f, c);
    }
    return r;
  }

  template <class Mul>
  static Poly multiply(const Poly& a, const Poly& b, Mul&& mul);

  Poly operator*(const Poly& o) const {
    return multiply(*this, o, [](const C& x, const C& y) -> C { return x * y; });
  }

  /// Substitute variable v by forms[v], a linear form over out_nvars variables.
  Poly substitute(const std::vector<LinearForm>& forms, int out_nvars) const;

  /// Exact quotient by (x_i - x_j); throws DomainError when the division is not exact.
  Poly divide_difference(int i, int j) const;

  /// Copy with coefficients mapped through f.
  template <class D, class F>
  Poly<D> map_coefficients(F&& f) const {
    Poly<D> r(nvars_, bound_);
    for (const auto& [e, c] : terms_) r.add(e, f(c));
    return r;
  }

 private:
  void same_space(const Poly& o) const {
    if (nvars_ != o.nvars_) throw DomainError("polynomials live in different variable spaces");
  }
  void drop_above(int bound) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (total_degree(it->first) > bound) it = terms_.erase(it);
      else ++it;
    }
  }

  int nvars_ = 0;
  int bound_ = kUnbounded;
  Map terms_;
};

/// Product of polynomials over the same variables with an arbitrary coefficient pairing.
template <class A, class B, class Mul>
auto multiply_polys(const Poly<A>& a, const Poly<B>& b, Mul&& mul) {
  using C = std::decay_t<decltype(mul(std::declval<const A&>(), std::declval<const B&>()))>;
  if (a.nvars() != b.nvars()) throw DomainError("polynomials live in different variable spaces");
  int bound = std::min(a.bound(), b.bound());
  Poly<C> r(a.nvars(), bound);
  for (const auto& [ea, ca] : a) {
    int da = total_degree(ea);
    for (const auto& [eb, cb] : b) {
      if (da + total_degree(eb) > bound) continue;
      Exps e{};
      for (std::size_t v = 0; v < static_cast<std::size_t>(a.nvars()); ++v)
        e[v] = static_cast<std::uint8_t>(ea[v] + eb[v]);
      r.add(e, mul(ca, cb));
    }
  }
  return r;
}

template <class C>
template <class Mul>
Poly<C> Poly<C>::multiply(const Poly& a, const Poly& b, Mul&& mul) {
  return multiply_polys(a, b, mul);
}

// Expansion of monomials under a fixed linear substitution, cached.
class MonomialSubstitution {
 public:
  MonomialSubstitution(std::vector<LinearForm> forms, int out_nvars, int bound)
      : forms_(std::move(forms)), out_nvars_(out_nvars), bound_(bound) {}

  const Poly<Rational>& image(const Exps& e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    Poly<Rational> r = Poly<Rational>::constant(Rational(1), out_nvars_, bound_);
    for (std::size_t v = 0; v < forms_.size(); ++v)
      if (e[v]) r = r * power(v, e[v]);
    return cache_.emplace(e, std::move(r)).first->second;
  }

 private:
  const Poly<Rational>& power(std::size_t v, int n) {
    auto key = std::make_pair(v, n);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
    Poly<Rational> r = Poly<Rational>::constant(Rational(1), out_nvars_, bound_);
    if (n > 0) {
      Poly<Rational> f(out_nvars_, bound_);
      for (int w = 0; w < out_nvars_; ++w) {
        int c = forms_[v][static_cast<std::size_t>(w)];
        if (c == 0) continue;
        Exps e{};
        e[static_cast<std::size_t>(w)] = 1;
        f.add(e, Rational(c));
      }
      r = power(v, n - 1) * f;
    }
    return powers_.emplace(key, std::move(r)).first->second;
  }

  std::vector<LinearForm> forms_;
  int out_nvars_;
  int bound_;
  std::map<Exps, Poly<Rational>> cache_;
  std::map<std::pair<std::size_t, int>, Poly<Rational>> powers_;
};

template <class C>
Poly<C> Poly<C>::substitute(const std::vector<LinearForm>& forms, int out_nvars) const {
  if (static_cast<int>(forms.size()) != nvars_) throw DomainError("substitution arity mismatch");
  MonomialSubstitution sub(forms, out_nvars, bound_);
  Poly<C> r(out_nvars, bound_);
  for (const auto& [e, c] : terms_)
    for (const auto& [f, x] : sub.image(e)) r.add(f, c * x);
  return r;
}

template <class C>
Poly<C> Poly<C>::divide_difference(int i, int j) const {
  if (i == j) throw DomainError("divided difference needs distinct variables");
  auto si = static_cast<std::size_t>(i);
  auto sj = static_cast<std::size_t>(j);
  // x_i^a = (x_i - x_j) * sum_t x_i^{a-1-t} x_j^t + x_j^a
  Poly<C> q(nvars_, bound_ == kUnbounded ? kUnbounded : bound_ - 1);
  Poly<C> rem(nvars_, kUnbounded);
  for (const auto& [e, c] : terms_) {
    int a = e[si];
    Exps base = e;
    base[si] = 0;
    for (int t = 0; t < a; ++t) {
      Exps f = base;
      f[si] = static_cast<std::uint8_t>(a - 1 - t);
      f[sj] = static_cast<std::uint8_t>(f[sj] + t);
      q.add(f, c);
    }
    Exps g = base;
    g[sj] = static_cast<std::uint8_t>(g[sj] + a);
    rem.add(g, c);
  }
  if (!rem.is_zero()) throw DomainError("numerator is not divisible by the variable difference");
  return q;
}

/// Coefficient-wise comparison of a and b on total degrees <= degree.
/// Returns the first differing monomial, if any.
template <class C>
std::optional<Exps> first_difference(const Poly<C>& a, const Poly<C>& b, int degree) {
  std::vector<Exps> keys;
  for (const auto& [e, c] : a) keys.push_back(e);
  for (const auto& [e, c] : b) keys.push_back(e);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const auto& e : keys) {
    if (total_degree(e) > degree) continue;
    if (!(a.coefficient(e) == b.coefficient(e))) return e;
  }
  return std::nullopt;
}

std::string exps_to_string(const Exps& e, int nvars);

}  // namespace qmzv
