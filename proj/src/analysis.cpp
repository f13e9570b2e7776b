#include "qmzv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmzv/errors.hpp"
#include "qmzv/linalg.hpp"
#include "qmzv/quasishuffle.hpp"
#include "qmzv/regmaps.hpp"

namespace qmzv {

namespace {

int block_depth(const Word& w) {
  int d = 0;
  for (const auto& a : w) d += a.i != 0;
  return d;
}

int max_block_depth(const LinComb& x) {
  int d = 0;
  for (const auto& [w, c] : x) d = std::max(d, block_depth(w));
  return d;
}

void require_depth(const LinComb& x) {
  if (max_block_depth(x) > 2) throw DomainError("depth overflow: beta data only covers depth 2");
}

std::string mismatch(const QSeries& a, const QSeries& b) {
  int n = std::min(a.order(), b.order());
  for (int i = 0; i <= n; ++i)
    if (a.coefficient(i) != b.coefficient(i))
      return "q^" + std::to_string(i) + ": " + to_string(a.coefficient(i)) + " vs " + to_string(b.coefficient(i));
  return {};
}

CheckResult compare(const QSeries& a, const QSeries& b) {
  CheckResult r;
  if (!(a == b)) {
    r.pass = false;
    r.detail = mismatch(a, b);
  }
  return r;
}

}  // namespace

const EisensteinModel& analysis_model(int weight, int order) { return *default_model(2, std::max(weight, 2), order); }

CheckResult verify_product(const Word& u, const Word& v, int order) {
  LinComb p = qshuffle(ProductId::Balanced, LinComb(u), LinComb(v));
  require_depth(p);
  const auto& m = analysis_model(weight(u) + weight(v), order);
  return compare(m.zeta_q(u) * m.zeta_q(v), m.zeta_q(p));
}

CheckResult verify_tau(const Word& w, int order) {
  Word t = tau_b(w);
  require_depth(LinComb(w) + LinComb(t));
  const auto& m = analysis_model(weight(w), order);
  return compare(m.zeta_q(w), m.zeta_q(t));
}

LinComb derivation_rhs(const Word& w) {
  LinComb out;
  const std::size_t l = w.size();
  for (std::size_t i = 0; i < l; ++i) {
    if (w[i].i == 0) continue;
    for (std::size_t j = i; j < l; ++j) {
      std::vector<Letter> v(w.begin(), w.end());
      v[i] = Letter::b(v[i].i + 1);
      v.insert(v.begin() + static_cast<std::ptrdiff_t>(j + 1), Letter::b(0));
      out.add(Word(std::move(v)), w[i].i);
    }
  }
  return out;
}

CheckResult verify_derivation(const Word& w, int order) {
  LinComb rhs = derivation_rhs(w);
  require_depth(rhs + LinComb(w));
  const auto& m = analysis_model(weight(w) + 2, order);
  return compare(qderiv(m.zeta_q(w)), m.zeta_q(rhs));
}

LimitSymbol formal_limit(const Word& w) {
  if (!w.empty() && *w.alphabet() != Alphabet::B) throw AlphabetMismatch("formal limit needs a B word");
  LimitSymbol out;
  for (std::size_t p = 0; p <= w.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i < p && ok; ++i) ok = w[i].i <= 1;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i].i >= 1;
    if (!ok) continue;
    std::vector<int> xs, ys;
    for (std::size_t i = p; i-- > 0;) xs.push_back(w[i].i);
    for (std::size_t i = p; i < w.size(); ++i) ys.push_back(w[i].i);
    out.push_back({Word::x(xs), Word::y(ys), Rational(1)});
  }
  return out;
}

LimitSymbol formal_limit(const LinComb& x) {
  std::map<std::pair<Word, Word>, Rational> acc;
  for (const auto& [w, c] : x)
    for (const auto& t : formal_limit(w)) acc[{t.shuffle_word, t.stuffle_word}] += c * t.coefficient;
  LimitSymbol out;
  for (const auto& [k, c] : acc)
    if (c != 0) out.push_back({k.first, k.second, c});
  return out;
}

std::string to_string(const LimitSymbol& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& t : s) {
    if (!out.empty()) out += " + ";
    if (t.coefficient != 1) out += to_string(t.coefficient) + "*";
    out += "zsh(" + to_string(t.shuffle_word) + ") zst(" + to_string(t.stuffle_word) + ")";
  }
  return out;
}

NumericLimit numeric_limit_check(const Word& w, double target, int order, double h, double tolerance) {
  QSeries z = balanced_zeta_q(w, order);
  const int wt = weight(w);
  NumericLimit r;
  r.target = target;
  std::vector<double> f;
  for (double hh : {h, h / 2, h / 4}) {
    double q = 1 - hh;
    double v = std::pow(hh, wt) * eval_float(z, q);
    r.samples.emplace_back(q, v);
    f.push_back(v);
  }
  // error expands in powers of h: two Richardson steps
  double a1 = 2 * f[1] - f[0], a2 = 2 * f[2] - f[1];
  r.value = (4 * a2 - a1) / 3;
  r.rel_error = std::abs(r.value - target) / std::abs(target);
  r.within_tolerance = r.rel_error <= tolerance;
  return r;
}

std::vector<Word> relation_basis(int weight, int max_depth) {
  std::vector<Word> out;
  for (const auto& w : b0_words_of_weight(weight, weight))
    if (!w.empty() && block_depth(w) <= max_depth) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Relation> find_relations(int weight, int max_depth, int order, int verify_order) {
  if (max_depth > 2) throw DomainError("relations beyond depth 2 need depth-3 beta data");
  auto basis = relation_basis(weight, max_depth);
  const auto& m = analysis_model(weight, order);
  Matrix a(static_cast<std::size_t>(order + 1), Row(basis.size(), 0));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    QSeries z = m.zeta_q(basis[c]);
    for (int n = 0; n <= order; ++n) a[static_cast<std::size_t>(n)][c] = z.coefficient(n);
  }
  Matrix ker = kernel(a, static_cast<int>(basis.size()));
  std::vector<Relation> out;
  const EisensteinModel* vm = verify_order > order ? &analysis_model(weight, verify_order) : &m;
  for (auto& v : ker) {
    QSeries s = QSeries::constant(0).truncated(vm->order());
    for (std::size_t c = 0; c < basis.size(); ++c)
      if (v[c] != 0) s += vm->zeta_q(basis[c]) * v[c];
    if (!s.is_zero()) continue;
    out.push_back({weight, basis, v, vm->order()});
  }
  return out;
}

std::string to_string(const Relation& r) {
  LinComb x;
  std::string s;
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    const Rational& c = r.vector[i];
    if (c == 0) continue;
    std::string term = "zq(";
    for (std::size_t j = 0; j < r.basis[i].size(); ++j) term += (j ? "," : "") + std::to_string(r.basis[i][j].i);
    term += ")";
    if (s.empty()) {
      s = (c == 1 ? "" : c == -1 ? "-" : to_string(c) + "*") + term;
    } else {
      Rational a = abs(c);
      s += (c < 0 ? " - " : " + ") + (a == 1 ? std::string() : to_string(a) + "*") + term;
    }
  }
  return s + " = O(q^" + std::to_string(r.checked_order + 1) + ")";
}

QSeries discriminant(int order) {
  QSeries p = QSeries::monomial(1, 1, order);
  for (int n = 1; n <= order; ++n) {
    QSeries f = QSeries::constant(1, order) - QSeries::monomial(1, n, order);
    for (int i = 0; i < 24; ++i) p = p * f;
  }
  return p;
}

QSeries delta_depth2_residual(int order) {
  const auto& m = analysis_model(12, order);
  auto z = [&](int a, int b) { return m.zeta_q(Word::b({a, b})); };
  QSeries s = z(9, 3) * Rational(-63) + z(8, 4) * Rational(183) - z(7, 5) * frac(675, 2) + z(6, 6) * frac(89, 2) -
              z(5, 7) * Rational(378) + z(4, 8) * Rational(183);
  return s - discriminant(order) * frac(1, 43200);
}

}  // namespace qmzv
