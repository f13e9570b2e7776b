#include "qmzv/qseries.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

#include "qmzv/errors.hpp"

namespace qmzv {

QSeries::QSeries(int order) : order_(order) {
  if (order < 0) throw DomainError("negative q-series order");
}

QSeries QSeries::constant(const Rational& c, int order) {
  QSeries f(order);
  f.add_term(0, c);
  return f;
}

QSeries QSeries::monomial(const Rational& c, int power, int order) {
  QSeries f(order);
  f.add_term(power, c);
  return f;
}

QSeries QSeries::from_coefficients(std::vector<Rational> c, int order) {
  QSeries f(order);
  if (static_cast<long>(c.size()) > static_cast<long>(order) + 1) c.resize(static_cast<std::size_t>(order) + 1);
  f.c_ = std::move(c);
  f.trim();
  return f;
}

Rational QSeries::coefficient(int n) const {
  if (n < 0) return 0;
  if (n > order_) throw TruncationError("coefficient of q^" + std::to_string(n) + " beyond order " + std::to_string(order_));
  return static_cast<std::size_t>(n) < c_.size() ? c_[static_cast<std::size_t>(n)] : Rational(0);
}

bool QSeries::is_zero() const { return c_.empty(); }

int QSeries::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return order_;
}

void QSeries::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void QSeries::add_term(int n, const Rational& c) {
  if (n < 0) throw DomainError("negative power of q");
  if (n > order_ || c == 0) return;
  auto s = static_cast<std::size_t>(n);
  if (c_.size() <= s) c_.resize(s + 1);
  c_[s] += c;
  trim();
}

QSeries& QSeries::operator+=(const QSeries& o) {
  order_ = std::min(order_, o.order_);
  if (!exact() && c_.size() > static_cast<std::size_t>(order_) + 1) c_.resize(static_cast<std::size_t>(order_) + 1);
  std::size_t n = o.c_.size();
  if (!exact()) n = std::min(n, static_cast<std::size_t>(order_) + 1);
  if (c_.size() < n) c_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    if (o.c_[i] != 0) c_[i] += o.c_[i];
  trim();
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_)
    if (x != 0) x *= s;
  return *this;
}

QSeries QSeries::operator+(const QSeries& o) const {
  QSeries r = *this;
  r += o;
  return r;
}

QSeries QSeries::operator-(const QSeries& o) const {
  QSeries r = *this;
  r -= o;
  return r;
}

QSeries QSeries::operator-() const { return *this * Rational(-1); }

QSeries QSeries::operator*(const Rational& s) const {
  QSeries r = *this;
  r *= s;
  return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
  QSeries r(std::min(order_, o.order_));
  if (c_.empty() || o.c_.empty()) return r;
  std::size_t len = c_.size() + o.c_.size() - 1;
  if (!r.exact()) len = std::min(len, static_cast<std::size_t>(r.order_) + 1);
  r.c_.assign(len, Rational(0));
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < o.c_.size() && j < len; ++j)
    if (o.c_[j] != 0) nz.push_back(j);
  Rational t;
  for (std::size_t i = 0; i < c_.size() && i < len; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j : nz) {
      if (i + j >= len) break;
      t = c_[i] * o.c_[j];
      r.c_[i + j] += t;
    }
  }
  r.trim();
  return r;
}

bool QSeries::operator==(const QSeries& o) const {
  int n = std::min(order_, o.order_);
  std::size_t m = std::max(c_.size(), o.c_.size());
  if (n != kExactOrder) m = std::min(m, static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational a = i < c_.size() ? c_[i] : Rational(0);
    const Rational b = i < o.c_.size() ? o.c_[i] : Rational(0);
    if (a != b) return false;
  }
  return true;
}

QSeries QSeries::truncated(int order) const {
  if (order > order_) throw TruncationError("cannot extend a series beyond its order");
  return from_coefficients(c_, order);
}

std::vector<Rational> QSeries::dense(int order) const {
  if (order > order_) throw TruncationError("requested coefficients beyond order");
  std::vector<Rational> v(static_cast<std::size_t>(order) + 1);
  for (std::size_t i = 0; i < v.size() && i < c_.size(); ++i) v[i] = c_[i];
  return v;
}

QSeries qderiv(const QSeries& f) {
  std::vector<Rational> c = f.stored();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= static_cast<long>(i);
  return QSeries::from_coefficients(std::move(c), f.order());
}

double eval_float(const QSeries& f, double q0) {
  double r = 0;
  const auto& c = f.stored();
  for (std::size_t i = c.size(); i-- > 0;) r = r * q0 + c[i].get_d();
  return r;
}

std::string to_string(const QSeries& f) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  const auto& c = f.stored();
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n] == 0) continue;
    if (first) {
      if (c[n] < 0) s += "-";
    } else {
      s += c[n] < 0 ? " - " : " + ";
    }
    first = false;
    Rational a = abs(c[n]);
    if (n == 0) {
      s += to_string(a);
      continue;
    }
    if (a != 1) {
      s += to_string(a);
      if (a.get_den() != 1) s += "*";
    }
    s += "q";
    if (n > 1) s += "^" + std::to_string(n);
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const QSeries& f) { return os << to_string(f); }

QSeries parse_qseries(std::string_view text, int order) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto digits = [&] {
    std::size_t a = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return text.substr(a, i - a);
  };
  auto integer = [&] {
    std::size_t at = i;
    auto d = digits();
    if (d.empty() || d.size() > 7) throw ParseError("expected exponent", at);
    return std::stoi(std::string(d));
  };
  std::map<int, Rational> terms;
  int explicit_order = -1;
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) {
      if (first) throw ParseError("empty series", i);
      break;
    }
    Rational sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", i);
    }
    first = false;
    if (text.substr(i, 4) == "O(q^") {
      i += 4;
      explicit_order = integer() - 1;
      if (i >= text.size() || text[i] != ')') throw ParseError("expected ')'", i);
      ++i;
      continue;
    }
    Rational c = 1;
    bool have_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      have_coeff = true;
      std::size_t a = i;
      digits();
      if (i < text.size() && text[i] == '/') {
        ++i;
        if (digits().empty()) throw ParseError("expected denominator", i);
      }
      c = parse_rational(text.substr(a, i - a));
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    int power = 0;
    if (i < text.size() && text[i] == 'q') {
      ++i;
      power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        power = integer();
      }
    } else if (!have_coeff) {
      throw ParseError("expected coefficient or q", i);
    }
    terms[power] += sign * c;
  }
  int top = terms.empty() ? 0 : terms.rbegin()->first;
  int n = explicit_order >= 0 ? explicit_order : (order >= 0 ? order : top);
  QSeries f(n);
  for (const auto& [p, c] : terms) {
    if (p > n) throw ParseError("term q^" + std::to_string(p) + " beyond the series order", text.size());
    f.add_term(p, c);
  }
  return f;
}

Rational bernoulli(int n) {
  static std::mutex m;
  static std::vector<Rational> table{Rational(1)};
  if (n < 0) throw DomainError("negative Bernoulli index");
  std::lock_guard lock(m);
  // sum_{k=0}^{n} C(n+1, k) B_k = 0
  while (static_cast<int>(table.size()) <= n) {
    unsigned t = static_cast<unsigned>(table.size());
    Rational s = 0;
    for (unsigned k = 0; k < t; ++k) s += Rational(binomial(t + 1, k)) * table[k];
    table.push_back(-s / Rational(t + 1));
  }
  return table[static_cast<std::size_t>(n)];
}

namespace {

// R(x) (1-x)^{-s} as a power series in x, coefficients up to x^kmax.
std::vector<Rational> factor_in_x(const PolyR& R, int s, int kmax) {
  std::vector<Rational> g(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k)
    g[static_cast<std::size_t>(k)] = s == 0 ? Rational(k == 0 ? 1 : 0)
                                            : Rational(binomial(static_cast<unsigned>(k + s - 1), static_cast<unsigned>(s - 1)));
  std::vector<Rational> out(static_cast<std::size_t>(kmax) + 1);
  for (std::size_t a = 0; a < R.size(); ++a) {
    if (R[a] == 0) continue;
    for (std::size_t k = 0; k + a < out.size(); ++k) out[k + a] += R[a] * g[k];
  }
  return out;
}

}  // namespace

QSeries generic_qzeta(const std::vector<int>& s, const std::vector<PolyR>& R, int N) {
  if (s.size() != R.size()) throw DomainError("generic q-zeta needs one polynomial per index");
  if (N < 0) throw DomainError("negative order");
  const std::size_t l = s.size();
  if (l == 0) return QSeries::constant(1, N);
  if (s[0] < 1) throw DomainError("generic q-zeta needs s1 >= 1");
  for (int x : s)
    if (x < 0) throw DomainError("generic q-zeta needs s_j >= 0");
  if (!R[0].empty() && R[0][0] != 0) throw DomainError("generic q-zeta needs R1(0) = 0");

  // inner[n] = sum over n > n_{j+1} > ... of the remaining factors, built from the innermost slot out.
  std::vector<QSeries> cumulative(static_cast<std::size_t>(N) + 1, QSeries(N));
  for (std::size_t j = l; j-- > 0;) {
    std::vector<QSeries> next(static_cast<std::size_t>(N) + 1, QSeries(N));
    QSeries running(N);
    for (int n = 1; n <= N; ++n) {
      auto f = factor_in_x(R[j], s[j], N / n);
      QSeries fn(N);
      for (std::size_t k = 0; k < f.size(); ++k) fn.add_term(static_cast<int>(k) * n, f[k]);
      QSeries term = j + 1 == l ? fn : fn * cumulative[static_cast<std::size_t>(n - 1)];
      running += term;
      next[static_cast<std::size_t>(n)] = running;
    }
    cumulative = std::move(next);
  }
  return cumulative[static_cast<std::size_t>(N)];
}

QSeries partition_gen(const std::vector<int>& xexp, const std::vector<int>& yexp, int N) {
  if (xexp.size() != yexp.size()) throw DomainError("partition_gen needs matching exponent vectors");
  const std::size_t d = xexp.size();
  QSeries out(N);
  std::vector<int> parts(d), mult(d);
  auto power = [](long b, int e) {
    Integer r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  // choose part sizes i_1 > ... > i_d with multiplicities
  auto rec = [&](auto&& self, std::size_t j, int max_part, int used) -> void {
    if (j == d) {
      if (used == 0) return;
      Integer v = 1;
      for (std::size_t t = 0; t < d; ++t) v *= power(parts[t], xexp[t]) * power(mult[t], yexp[t]);
      out.add_term(used, Rational(v));
      return;
    }
    for (int i = max_part; i >= 1; --i)
      for (int m = 1; used + i * m <= N; ++m) {
        parts[j] = i;
        mult[j] = m;
        self(self, j + 1, i - 1, used + i * m);
      }
  };
  rec(rec, 0, N, 0);
  return out;
}

QSeries divisor_sum(int a, int b, int N) {
  QSeries out(N);
  for (long u = 1; u <= N; ++u)
    for (long v = 1; u * v <= N; ++v) {
      Integer t = 1;
      for (int i = 0; i < a; ++i) t *= u;
      for (int i = 0; i < b; ++i) t *= v;
      out.add_term(static_cast<int>(u * v), Rational(t));
    }
  return out;
}

QSeries depth1_balanced_closed_form(int k, int m, int N) {
  if (k < 1 || m < 0) throw DomainError("depth-1 closed form needs k >= 1, m >= 0");
  Rational c = 0;
  if (m == 0) c -= bernoulli(k) / Rational(2 * factorial(static_cast<unsigned>(k)));
  if (k == 1) c -= bernoulli(m + 1) / Rational(2 * factorial(static_cast<unsigned>(m + 1)));
  QSeries f = divisor_sum(m, k - 1, N) *
              (Rational(1) / Rational(factorial(static_cast<unsigned>(k - 1)) * factorial(static_cast<unsigned>(m))));
  f += QSeries::constant(c, N);
  return f;
}

}  // namespace qmzv
