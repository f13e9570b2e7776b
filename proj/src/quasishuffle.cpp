#include "qmzv/quasishuffle.hpp"

#include "qmzv/errors.hpp"

namespace qmzv {

std::string_view product_name(ProductId id) {
  switch (id) {
    case ProductId::Shuffle: return "shuffle";
    case ProductId::StuffleY: return "stuffle";
    case ProductId::StuffleYbi: return "stuffle-bi";
    case ProductId::Balanced: return "balanced";
    case ProductId::ShufflePY: return "shuffle-py";
  }
  return "?";
}

std::optional<ProductId> product_from_name(std::string_view name) {
  for (auto id : {ProductId::Shuffle, ProductId::StuffleY, ProductId::StuffleYbi, ProductId::Balanced,
                  ProductId::ShufflePY})
    if (product_name(id) == name) return id;
  return std::nullopt;
}

namespace {

std::optional<Letter> no_diamond(const Letter&, const Letter&) { return std::nullopt; }

std::optional<Letter> balanced_diamond(const Letter& a, const Letter& b) {
  if (a.i >= 1 && b.i >= 1) return Letter::b(a.i + b.i);
  return std::nullopt;
}

std::optional<Letter> stuffle_diamond(const Letter& a, const Letter& b) { return Letter::y(a.i + b.i); }

std::optional<Letter> stuffle_bi_diamond(const Letter& a, const Letter& b) {
  return Letter::ybi(a.i + b.i, a.j + b.j);
}

std::vector<Letter> letter_pool(Alphabet a, int window) {
  std::vector<Letter> v;
  switch (a) {
    case Alphabet::Y:
      for (int k = 1; k <= window; ++k) v.push_back(Letter::y(k));
      break;
    case Alphabet::Ybi:
      for (int k = 1; k <= window; ++k)
        for (int m = 0; m <= window; ++m) v.push_back(Letter::ybi(k, m));
      break;
    case Alphabet::B:
      for (int s = 0; s <= window; ++s) v.push_back(Letter::b(s));
      break;
    case Alphabet::X01:
      v = {Letter::x(0), Letter::x(1)};
      break;
    case Alphabet::PY:
      v = {Letter::p(), Letter::py_y()};
      break;
  }
  return v;
}

}  // namespace

QuasiShuffle::QuasiShuffle(ProductId id, std::optional<Alphabet> alphabet, Diamond diamond)
    : id_(id), alphabet_(alphabet), diamond_(std::move(diamond)) {}

const QuasiShuffle& QuasiShuffle::get(ProductId id) {
  static const auto make = [](ProductId id) {
    switch (id) {
      case ProductId::Shuffle: return new QuasiShuffle(id, std::nullopt, no_diamond);
      case ProductId::StuffleY: return new QuasiShuffle(id, Alphabet::Y, stuffle_diamond);
      case ProductId::StuffleYbi: return new QuasiShuffle(id, Alphabet::Ybi, stuffle_bi_diamond);
      case ProductId::Balanced: return new QuasiShuffle(id, Alphabet::B, balanced_diamond);
      case ProductId::ShufflePY: return new QuasiShuffle(id, Alphabet::PY, no_diamond);
    }
    throw DomainError("unknown product");
  };
  static const QuasiShuffle* instances[] = {make(ProductId::Shuffle), make(ProductId::StuffleY),
                                            make(ProductId::StuffleYbi), make(ProductId::Balanced),
                                            make(ProductId::ShufflePY)};
  static const bool verified = [] {
    for (auto* q : instances)
      if (!q->diamond_is_valid(10))
        throw Error("diamond rule of " + std::string(product_name(q->id())) + " is not commutative/associative");
    return true;
  }();
  (void)verified;
  return *instances[static_cast<int>(id)];
}

std::optional<Letter> QuasiShuffle::diamond(const Letter& a, const Letter& b) const { return diamond_(a, b); }

bool QuasiShuffle::diamond_is_valid(int window) const {
  if (!alphabet_ || id_ == ProductId::ShufflePY) return true;
  auto pool = letter_pool(*alphabet_, window);
  for (const auto& a : pool)
    for (const auto& b : pool) {
      auto ab = diamond_(a, b);
      if (ab != diamond_(b, a)) return false;
      for (const auto& c : pool) {
        std::optional<Letter> left, right;
        if (ab) left = diamond_(*ab, c);
        if (auto bc = diamond_(b, c)) right = diamond_(a, *bc);
        if (left != right) return false;
      }
    }
  return true;
}

void QuasiShuffle::check(const Word& w) const {
  if (!alphabet_ || w.empty()) return;
  if (*w.alphabet() != *alphabet_)
    throw AlphabetMismatch(std::string(product_name(id_)) + " product needs alphabet " +
                           std::string(alphabet_name(*alphabet_)) + ", got " +
                           std::string(alphabet_name(*w.alphabet())));
}

LinComb QuasiShuffle::operator()(const Word& u, const Word& v) const {
  check(u);
  check(v);
  if (u.alphabet() && v.alphabet() && *u.alphabet() != *v.alphabet())
    throw AlphabetMismatch("product of words from different alphabets");
  std::lock_guard lock(mutex_);
  return id_ == ProductId::ShufflePY ? mul_py(u, v) : mul(u, v);
}

LinComb QuasiShuffle::operator()(const LinComb& u, const LinComb& v) const {
  LinComb out;
  for (const auto& [a, ca] : u)
    for (const auto& [b, cb] : v) {
      LinComb p = (*this)(a, b);
      p *= ca * cb;
      out += p;
    }
  return out;
}

LinComb QuasiShuffle::mul(const Word& u, const Word& v) const {
  if (u.empty()) return LinComb(v);
  if (v.empty()) return LinComb(u);
  const bool swapped = v < u;
  const Word& a = swapped ? v : u;
  const Word& b = swapped ? u : v;
  auto key = std::make_pair(a, b);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Word a1 = a.slice(1, a.size());
  Word b1 = b.slice(1, b.size());
  LinComb r = mul(a1, b).prepend(a[0]);
  r += mul(a, b1).prepend(b[0]);
  if (auto d = diamond_(a[0], b[0])) r += mul(a1, b1).prepend(*d);
  memo_.emplace(std::move(key), r);
  return r;
}

LinComb QuasiShuffle::mul_py(const Word& u, const Word& v) const {
  if (u.empty()) return LinComb(v);
  if (v.empty()) return LinComb(u);
  auto key = std::make_pair(u, v);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const Letter y = Letter::py_y();
  const Letter p = Letter::p();
  Word u1 = u.slice(1, u.size());
  Word v1 = v.slice(1, v.size());
  LinComb r;
  if (u[0] == y) {
    r = mul_py(u1, v).prepend(y);
  } else if (v[0] == y) {
    r = mul_py(u, v1).prepend(y);
  } else {
    r = mul_py(u1, v).prepend(p);
    r += mul_py(u, v1).prepend(p);
    if (!u1.empty() && !v1.empty() && u1[0] == y && v1[0] == y) r += mul_py(u1, v1).prepend(p);
  }
  memo_.emplace(std::move(key), r);
  return r;
}

LinComb qshuffle(ProductId id, const LinComb& u, const LinComb& v) { return QuasiShuffle::get(id)(u, v); }

LinComb qshuffle(ProductId id, const Word& u, const Word& v) { return QuasiShuffle::get(id)(u, v); }

LinComb qshuffle_py(const LinComb& u, const LinComb& v) { return QuasiShuffle::get(ProductId::ShufflePY)(u, v); }

LinComb qpower(ProductId id, const LinComb& x, int n) {
  LinComb r = LinComb::one();
  for (int i = 0; i < n; ++i) r = qshuffle(id, r, x);
  return r;
}

BialgebraReport check_bialgebra(ProductId id, const std::vector<Word>& sample) {
  const auto& q = QuasiShuffle::get(id);
  BialgebraReport rep;
  for (const auto& u : sample)
    for (const auto& v : sample) {
      Tensor lhs = delta_dec(q(u, v));
      Tensor rhs;
      for (const auto& [ku, cu] : delta_dec(u))
        for (const auto& [kv, cv] : delta_dec(v)) {
          LinComb l = q(ku.first, kv.first);
          LinComb r = q(ku.second, kv.second);
          rhs += tensor(l, r) * (cu * cv);
        }
      ++rep.pairs_checked;
      if (!(lhs == rhs) && rep.pass) {
        rep.pass = false;
        rep.first_failure = to_string(u) + " * " + to_string(v);
      }
    }
  return rep;
}

}  // namespace qmzv
