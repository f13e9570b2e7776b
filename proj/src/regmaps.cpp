#include "qmzv/regmaps.hpp"

#include <functional>

#include "qmzv/bimould.hpp"
#include "qmzv/errors.hpp"

namespace qmzv {

void PolyInT::add(int degree, const LinComb& x) {
  if (x.is_zero()) return;
  auto& slot = terms_[degree];
  slot += x;
  if (slot.is_zero()) terms_.erase(degree);
}

LinComb PolyInT::coefficient(int degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? LinComb() : it->second;
}

PolyInT PolyInT::shifted(int by) const {
  PolyInT r;
  for (const auto& [k, x] : terms_) r.terms_[k + by] = x;
  return r;
}

PolyInT& PolyInT::operator+=(const PolyInT& o) {
  for (const auto& [k, x] : o.terms_) add(k, x);
  return *this;
}

PolyInT PolyInT::operator*(const Rational& c) const {
  PolyInT r;
  for (const auto& [k, x] : terms_) r.add(k, x * c);
  return r;
}

std::string to_string(const PolyInT& p) {
  if (p.terms().empty()) return "0";
  std::string s;
  for (const auto& [k, x] : p.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(x) + ")";
    if (k == 1) s += "*T";
    if (k > 1) s += "*T^" + std::to_string(k);
  }
  return s;
}

Regularizer::Regularizer(ProductId id, Letter lead) : id_(id), lead_(lead) {}

const Regularizer& Regularizer::balanced() {
  static const Regularizer r(ProductId::Balanced, Letter::b(0));
  return r;
}
const Regularizer& Regularizer::stuffle() {
  static const Regularizer r(ProductId::StuffleY, Letter::y(1));
  return r;
}
const Regularizer& Regularizer::shuffle() {
  static const Regularizer r(ProductId::Shuffle, Letter::x(1));
  return r;
}

PolyInT Regularizer::inverse(const Word& w) const {
  std::lock_guard lock(mutex_);
  if (auto it = memo_.find(w); it != memo_.end()) return it->second;
  std::size_t m = 0;
  while (m < w.size() && w[m] == lead_) ++m;
  PolyInT r;
  if (m == 0) {
    r.add(0, LinComb(w));
  } else {
    // (lead^{m-1} v) * lead = m lead^m v + (words with fewer leading letters)
    Word rest = w.slice(1, w.size());
    LinComb prod = qshuffle(id_, LinComb(rest), LinComb(Word({lead_})));
    Rational top = prod.coefficient(w);
    if (top != static_cast<long>(m)) throw Error("regularization: unexpected leading coefficient");
    r = inverse(rest).shifted(1);
    for (const auto& [u, c] : prod) {
      if (u == w) continue;
      r += inverse(u) * (-c);
    }
    r = r * (Rational(1) / Rational(static_cast<long>(m)));
  }
  memo_.emplace(w, r);
  return r;
}

PolyInT Regularizer::inverse(const LinComb& x) const {
  PolyInT r;
  for (const auto& [w, c] : x) r += inverse(w) * c;
  return r;
}

LinComb Regularizer::reg(const LinComb& x) const { return inverse(x).coefficient(0); }

PolyInT reg_t_inverse(const Word& w) { return Regularizer::balanced().inverse(w); }

LinComb reg(const Word& w) {
  if (!w.empty() && *w.alphabet() != Alphabet::B) throw AlphabetMismatch("reg needs a B word");
  std::size_t m0 = 0;
  while (m0 < w.size() && w[m0].i == 0) ++m0;
  if (m0 == 0) return LinComb(w);
  if (m0 == w.size()) return LinComb();
  IndexBlocks bl = blocks(w.slice(m0, w.size()));
  const std::size_t d = bl.k.size();
  LinComb out;
  Rational sign = m0 % 2 ? -1 : 1;
  std::vector<int> n(d);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == d) {
      n[i] = left;
      Integer c = 1;
      std::vector<int> m(d);
      for (std::size_t j = 0; j < d; ++j) {
        c *= binomial(static_cast<unsigned>(bl.m[j] + n[j]), static_cast<unsigned>(n[j]));
        m[j] = bl.m[j] + n[j];
      }
      out.add(from_blocks(bl.k, m), sign * Rational(c));
      return;
    }
    for (int a = 0; a <= left; ++a) {
      n[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, static_cast<int>(m0));
  return out;
}

LinComb reg(const LinComb& x) { return linear(x, [](const Word& w) { return reg(w); }); }

LinComb reg_by_elimination(const LinComb& x) { return Regularizer::balanced().reg(x); }

Tensor delta_dec0(const Word& w) {
  if (!w.empty() && w[0] == Letter::b(0)) throw DomainError("regularized coproduct needs a word not starting with b0");
  auto r = [](const Word& u) { return reg(u); };
  return map_tensor(delta_dec(w), r, r);
}

Tensor delta_dec0(const LinComb& x) {
  Tensor t;
  for (const auto& [w, c] : x) t += delta_dec0(w) * c;
  return t;
}

Word tau_b(const Word& w) {
  IndexBlocks bl = blocks(w);
  std::vector<int> k, m;
  for (std::size_t i = bl.k.size(); i-- > 0;) {
    k.push_back(bl.m[i] + 1);
    m.push_back(bl.k[i] - 1);
  }
  return from_blocks(k, m);
}

LinComb tau_b(const LinComb& x) { return linear(x, [](const Word& w) { return LinComb(tau_b(w)); }); }

Word tau_py(const Word& w) {
  std::vector<Letter> v;
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i].alphabet != Alphabet::PY) throw AlphabetMismatch("tau on {p,y} needs a PY word");
    v.push_back(w[i].i == 0 ? Letter::py_y() : Letter::p());
  }
  return Word(std::move(v));
}

LinComb tau_py(const LinComb& x) { return linear(x, [](const Word& w) { return LinComb(tau_py(w)); }); }

Word embed_py(const Word& w) {
  std::vector<Letter> v;
  for (const auto& a : w) {
    if (a.alphabet != Alphabet::B) throw AlphabetMismatch("embedding needs a B word");
    for (int j = 0; j < a.i; ++j) v.push_back(Letter::p());
    v.push_back(Letter::py_y());
  }
  return Word(std::move(v));
}

LinComb embed_py(const LinComb& x) { return linear(x, [](const Word& w) { return LinComb(embed_py(w)); }); }

namespace {

// Image of Y^n under #_Y (or its inverse) in d Y-variables, cached.
const Poly<Rational>& hash_image(const std::vector<int>& n, bool inverse) {
  static std::mutex mu;
  static std::map<std::pair<bool, std::vector<int>>, Poly<Rational>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(inverse, n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const int d = static_cast<int>(n.size());
  std::vector<LinearForm> forms;
  for (int j = 0; j < d; ++j) {
    LinearForm f(static_cast<std::size_t>(d), 0);
    if (inverse) {
      f[static_cast<std::size_t>(j)] = 1;
      if (j > 0) f[static_cast<std::size_t>(j - 1)] = -1;
    } else {
      for (int i = 0; i <= j; ++i) f[static_cast<std::size_t>(i)] = 1;
    }
    forms.push_back(f);
  }
  Poly<Rational> mono(d, kUnbounded);
  Exps e{};
  for (int j = 0; j < d; ++j) e[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(n[static_cast<std::size_t>(j)]);
  mono.add(e, 1);
  return cache.emplace(key, mono.substitute(forms, d)).first->second;
}

Integer factorial_product(const std::vector<int>& m) {
  Integer f = 1;
  for (int x : m) f *= factorial(static_cast<unsigned>(x));
  return f;
}

}  // namespace

// phi#(y_{k,m}) = m! sum_n [Y^m] #_Y(Y^n) b(k, n)
LinComb phi_sharp(const Word& w) {
  if (!w.empty() && *w.alphabet() != Alphabet::Ybi) throw AlphabetMismatch("phi# needs a Ybi word");
  const std::size_t d = w.size();
  std::vector<int> k(d), m(d);
  for (std::size_t i = 0; i < d; ++i) {
    k[i] = w[i].i;
    m[i] = w[i].j;
  }
  LinComb out;
  const Rational mf(factorial_product(m));
  int total = 0;
  for (int x : m) total += x;
  std::vector<int> n(d);
  Exps target{};
  for (std::size_t i = 0; i < d; ++i) target[i] = static_cast<std::uint8_t>(m[i]);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 >= d) {
      if (d) n[d - 1] = left;
      Rational c = d ? hash_image(n, false).coefficient(target) : Rational(1);
      if (c != 0) out.add(from_blocks(k, n), mf * c);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      n[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, total);
  return out;
}

LinComb phi_sharp(const LinComb& x) { return linear(x, [](const Word& w) { return phi_sharp(w); }); }

LinComb phi_sharp_inv(const Word& w) {
  if (!w.empty() && *w.alphabet() != Alphabet::B) throw AlphabetMismatch("phi#^-1 needs a B word");
  IndexBlocks bl = blocks(w);
  const std::size_t d = bl.k.size();
  if (d == 0) return LinComb::one();
  Exps target{};
  for (std::size_t i = 0; i < d; ++i) target[i] = static_cast<std::uint8_t>(bl.m[i]);
  // b(k, n) = sum_m y_{k,m} [Y^n] #^{-1}(Y^m) / m!
  LinComb out;
  int total = 0;
  for (int x : bl.m) total += x;
  std::vector<int> m(d);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == d) {
      m[i] = left;
      Rational c = hash_image(m, true).coefficient(target);
      if (c != 0) {
        std::vector<std::pair<int, int>> km;
        for (std::size_t j = 0; j < d; ++j) km.emplace_back(bl.k[j], m[j]);
        out.add(Word::ybi(km), c / Rational(factorial_product(m)));
      }
      return;
    }
    for (int a = 0; a <= left; ++a) {
      m[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, total);
  return out;
}

LinComb phi_sharp_inv(const LinComb& x) { return linear(x, [](const Word& w) { return phi_sharp_inv(w); }); }

namespace {

// For a (depth, weight) block: target word -> swap image.
const std::map<Word, LinComb>& swap_block(int d, int wt) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::map<Word, LinComb>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(d, wt);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::map<Word, LinComb> block;
  const auto forms = swap_forms(d);
  const auto sd = static_cast<std::size_t>(d);
  for (const auto& y : ybi_words_of_weight(wt, d)) {
    if (static_cast<int>(y.size()) != d) continue;
    std::vector<int> k(sd), m(sd);
    for (std::size_t i = 0; i < sd; ++i) {
      k[i] = y[i].i;
      m[i] = y[i].j;
    }
    Poly<Rational> mono(2 * d, kUnbounded);
    mono.add(index_exps(k, m), Rational(1) / Rational(factorial_product(m)));
    for (const auto& [e, c] : mono.substitute(forms, 2 * d)) {
      std::vector<std::pair<int, int>> km;
      std::vector<int> mt(sd);
      for (std::size_t i = 0; i < sd; ++i) {
        km.emplace_back(e[2 * i] + 1, e[2 * i + 1]);
        mt[i] = e[2 * i + 1];
      }
      block[Word::ybi(km)].add(y, c * Rational(factorial_product(mt)));
    }
  }
  return cache.emplace(key, std::move(block)).first->second;
}

}  // namespace

LinComb swap_ybi(const Word& w) {
  if (w.empty()) return LinComb::one();
  if (*w.alphabet() != Alphabet::Ybi) throw AlphabetMismatch("swap needs a Ybi word");
  const auto& block = swap_block(static_cast<int>(w.size()), weight(w));
  auto it = block.find(w);
  return it == block.end() ? LinComb() : it->second;
}

LinComb swap_ybi(const LinComb& x) { return linear(x, [](const Word& w) { return swap_ybi(w); }); }

}  // namespace qmzv
