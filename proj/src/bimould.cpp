#include "qmzv/bimould.hpp"

#include <functional>

namespace qmzv {

std::string exps_to_string(const Exps& e, int nvars) {
  std::string s;
  for (int v = 0; v < nvars; ++v) {
    int x = e[static_cast<std::size_t>(v)];
    if (!x) continue;
    if (!s.empty()) s += ' ';
    s += (v % 2 == 0 ? "X" : "Y") + std::to_string(v / 2 + 1);
    if (x > 1) s += "^" + std::to_string(x);
  }
  return s.empty() ? "1" : s;
}

std::vector<LinearForm> hash_y_forms(int d, bool inverse) {
  std::vector<LinearForm> f;
  for (int i = 1; i <= d; ++i) {
    f.push_back(var_form(2 * d, xvar(i)));
    LinearForm y(static_cast<std::size_t>(2 * d), 0);
    if (inverse) {
      y[static_cast<std::size_t>(yvar(i))] = 1;
      if (i > 1) y[static_cast<std::size_t>(yvar(i - 1))] = -1;
    } else {
      for (int j = 1; j <= i; ++j) y[static_cast<std::size_t>(yvar(j))] = 1;
    }
    f.push_back(y);
  }
  return f;
}

std::vector<LinearForm> swap_forms(int d) {
  std::vector<LinearForm> f;
  for (int i = 1; i <= d; ++i) {
    LinearForm x(static_cast<std::size_t>(2 * d), 0);
    for (int j = 1; j <= d + 1 - i; ++j) x[static_cast<std::size_t>(yvar(j))] = 1;
    f.push_back(x);
    LinearForm y(static_cast<std::size_t>(2 * d), 0);
    y[static_cast<std::size_t>(xvar(d + 1 - i))] = 1;
    if (i > 1) y[static_cast<std::size_t>(xvar(d + 2 - i))] = -1;
    f.push_back(y);
  }
  return f;
}

std::vector<LinearForm> tau_forms(int d) {
  std::vector<LinearForm> f;
  for (int i = 1; i <= d; ++i) {
    f.push_back(var_form(2 * d, yvar(d + 1 - i)));
    f.push_back(var_form(2 * d, xvar(d + 1 - i)));
  }
  return f;
}

std::string_view predicate_name(Predicate p) {
  switch (p) {
    case Predicate::Symmetril: return "symmetril";
    case Predicate::BSymmetril: return "b-symmetril";
    case Predicate::SwapInv: return "swap-inv";
    case Predicate::TauInv: return "tau-inv";
  }
  return "?";
}

std::optional<Predicate> predicate_from_name(std::string_view name) {
  for (auto p : {Predicate::Symmetril, Predicate::BSymmetril, Predicate::SwapInv, Predicate::TauInv})
    if (predicate_name(p) == name) return p;
  return std::nullopt;
}

namespace {

std::vector<int> add_forms(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<Slot> tail(const std::vector<Slot>& v) { return {v.begin() + 1, v.end()}; }
std::vector<Slot> init(const std::vector<Slot>& v) { return {v.begin(), v.end() - 1}; }

}  // namespace

std::vector<SlotTerm> stuffle_terms(const std::vector<Slot>& a, const std::vector<Slot>& b) {
  if (a.empty()) return {b};
  if (b.empty()) return {a};
  std::vector<SlotTerm> out;
  auto lead = [&](const Slot& s, std::vector<SlotTerm> ts) {
    for (auto& t : ts) {
      t.insert(t.begin(), s);
      out.push_back(std::move(t));
    }
  };
  lead(a[0], stuffle_terms(tail(a), b));
  lead(b[0], stuffle_terms(a, tail(b)));
  lead(Slot{a[0].xa, b[0].xa, add_forms(a[0].y, b[0].y)}, stuffle_terms(tail(a), tail(b)));
  return out;
}

std::vector<SlotTerm> balanced_terms(const std::vector<Slot>& a, const std::vector<Slot>& b) {
  if (a.empty()) return {b};
  if (b.empty()) return {a};
  std::vector<SlotTerm> out;
  const auto ysum = add_forms(a.back().y, b.back().y);
  auto last = [&](const Slot& s, std::vector<SlotTerm> ts) {
    for (auto& t : ts) {
      t.push_back(s);
      out.push_back(std::move(t));
    }
  };
  last(Slot{a.back().xa, 0, ysum}, balanced_terms(init(a), b));
  last(Slot{b.back().xa, 0, ysum}, balanced_terms(a, init(b)));
  last(Slot{a.back().xa, b.back().xa, ysum}, balanced_terms(init(a), init(b)));
  return out;
}

std::string term_to_string(const SlotTerm& t) {
  std::string xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) {
      xs += ",";
      ys += ",";
    }
    xs += t[i].xb ? "[X" + std::to_string(t[i].xa) + "|X" + std::to_string(t[i].xb) + "]"
                  : "X" + std::to_string(t[i].xa);
    std::string y;
    for (std::size_t j = 0; j < t[i].y.size(); ++j) {
      int c = t[i].y[j];
      if (!c) continue;
      if (!y.empty() || c < 0) y += c < 0 ? "-" : "+";
      if (std::abs(c) != 1) y += std::to_string(std::abs(c));
      y += "Y" + std::to_string(j + 1);
    }
    ys += y.empty() ? "0" : y;
  }
  return "M(" + xs + ";" + ys + ")";
}

std::string to_string(const SymmetryReport& r) {
  std::string s = std::string(predicate_name(r.predicate)) + ": " + (r.pass ? "PASS" : "FAIL") +
                  " (depth <= " + std::to_string(r.checked_depth) + ", degree <= " +
                  std::to_string(r.checked_degree) + ", " + std::to_string(r.identities_checked) + " identities)";
  if (!r.pass) s += "; first failure " + r.first_failure;
  return s;
}

Exps index_exps(const std::vector<int>& k, const std::vector<int>& m) {
  Exps e{};
  for (std::size_t i = 0; i < k.size(); ++i) {
    e[2 * i] = static_cast<std::uint8_t>(k[i] - 1);
    e[2 * i + 1] = static_cast<std::uint8_t>(m[i]);
  }
  return e;
}

namespace {

// All (k, m) with k_i >= 1, m_i >= 0 and sum (k_i - 1 + m_i) <= degree, in depth d.
void for_each_index(int d, int degree, const std::function<void(const std::vector<int>&, const std::vector<int>&)>& f) {
  std::vector<int> k(static_cast<std::size_t>(d)), m(static_cast<std::size_t>(d));
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d) {
      f(k, m);
      return;
    }
    for (int a = 0; a <= left; ++a)
      for (int b = 0; a + b <= left; ++b) {
        k[static_cast<std::size_t>(i)] = a + 1;
        m[static_cast<std::size_t>(i)] = b;
        rec(i + 1, left - a - b);
      }
  };
  rec(0, degree);
}

}  // namespace

TruncBimould<LinComb> rho_b0_words(int max_depth, int degree) {
  std::vector<Poly<LinComb>> parts;
  parts.push_back(Poly<LinComb>::constant(LinComb::one(), 0, degree));
  for (int d = 1; d <= max_depth; ++d) {
    Poly<LinComb> p(2 * d, degree);
    for_each_index(d, degree, [&](const auto& k, const auto& m) { p.add(index_exps(k, m), LinComb(from_blocks(k, m))); });
    parts.push_back(std::move(p));
  }
  return TruncBimould<LinComb>(std::move(parts));
}

TruncBimould<LinComb> rho_ybi_words(int max_depth, int degree) {
  std::vector<Poly<LinComb>> parts;
  parts.push_back(Poly<LinComb>::constant(LinComb::one(), 0, degree));
  for (int d = 1; d <= max_depth; ++d) {
    Poly<LinComb> p(2 * d, degree);
    for_each_index(d, degree, [&](const auto& k, const auto& m) {
      std::vector<std::pair<int, int>> km;
      Integer f = 1;
      for (std::size_t i = 0; i < k.size(); ++i) {
        km.emplace_back(k[i], m[i]);
        f *= factorial(static_cast<unsigned>(m[i]));
      }
      p.add(index_exps(k, m), LinComb(Word::ybi(km), Rational(1) / Rational(f)));
    });
    parts.push_back(std::move(p));
  }
  return TruncBimould<LinComb>(std::move(parts));
}

}  // namespace qmzv
