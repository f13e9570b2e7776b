#include "qmzv/eisenstein.hpp"

#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qmzv/errors.hpp"
#include "qmzv/linalg.hpp"
#include "qmzv/quasishuffle.hpp"
#include "qmzv/regmaps.hpp"

namespace qmzv {

Rational beta_depth1(int k) {
  if (k < 1) throw DomainError("beta index must be positive");
  if (k % 2) return 0;
  return -bernoulli(k) / (2 * Rational(factorial(static_cast<unsigned>(k))));
}

std::vector<Rational> gamma_coefficients(int n) {
  // g = exp(f): m g_m = sum_{j=1}^m j f_j g_{m-j}
  std::vector<Rational> f(static_cast<std::size_t>(n + 1), 0), g(static_cast<std::size_t>(n + 1), 0);
  for (int j = 2; j <= n; ++j) f[static_cast<std::size_t>(j)] = (j % 2 ? -1 : 1) * beta_depth1(j) / j;
  g[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int j = 1; j <= m; ++j) s += j * f[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(m - j)];
    g[static_cast<std::size_t>(m)] = s / m;
  }
  return g;
}

Rational BetaTable::beta1(int k) const {
  auto it = depth1.find(k);
  if (it == depth1.end()) throw DomainError("missing beta(" + std::to_string(k) + ")");
  return it->second;
}

Rational BetaTable::beta2(int k1, int k2) const {
  auto it = depth2.find({k1, k2});
  if (it == depth2.end())
    throw DomainError("missing beta(" + std::to_string(k1) + "," + std::to_string(k2) + ")");
  return it->second;
}

namespace {

// Affine expression in the weight-w unknowns beta*(k, w-k), k = 1..w-1 (index k-1); last slot is the constant.
using Affine = Row;

Word y_word(std::initializer_list<int> k) { return Word::y(std::vector<int>(k)); }

Word x_word(int k) {
  std::vector<int> e(static_cast<std::size_t>(k - 1), 0);
  e.push_back(1);
  return Word::x(e);
}

Word x_to_y(const Word& w) {
  std::vector<int> k;
  int run = 1;
  for (const auto& a : w) {
    if (a.i == 1) {
      k.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  if (run != 1) throw DomainError("x-word does not end in x1");
  return Word::y(k);
}

class ConstraintBuilder {
 public:
  ConstraintBuilder(int w, const std::map<int, Rational>& depth1) : w_(w), n_(w - 1), depth1_(depth1) {
    gamma_ = gamma_coefficients(2);
  }

  // Stuffle-regularized value of a single y-word, as an affine expression.
  Affine zstar_word(const Word& u) const {
    Affine a(static_cast<std::size_t>(n_ + 1), 0);
    if (u.empty()) {
      a.back() = 1;
    } else if (u.size() == 1) {
      a.back() = u[0].i == 1 ? Rational(0) : depth1_.at(u[0].i);
    } else if (u.size() == 2) {
      if (u[0].i + u[1].i != w_) throw Error("beta system: unexpected weight");
      a[static_cast<std::size_t>(u[0].i - 1)] = 1;
    } else {
      throw Error("beta system: depth above two");
    }
    return a;
  }

  Affine zstar(const LinComb& x) const {
    Affine a(static_cast<std::size_t>(n_ + 1), 0);
    for (const auto& [u, c] : x) add_scaled(a, zstar_word(u), c);
    return a;
  }

  // Shuffle-regularized value: constant term of rho applied to the stuffle T-polynomial.
  Affine zsh_word(const Word& u) const {
    PolyInT p = Regularizer::stuffle().inverse(u);
    Affine a(static_cast<std::size_t>(n_ + 1), 0);
    for (const auto& [deg, x] : p.terms()) {
      if (deg >= static_cast<int>(gamma_.size())) throw Error("beta system: T-degree too large");
      add_scaled(a, zstar_depth_aware(x), Rational(factorial(static_cast<unsigned>(deg))) * gamma_[static_cast<std::size_t>(deg)]);
    }
    return a;
  }

  std::vector<std::pair<std::string, Affine>> constraints() const {
    std::vector<std::pair<std::string, Affine>> out;
    for (int k1 = 1; 2 * k1 <= w_; ++k1) {
      int k2 = w_ - k1;
      Rational prod = value1(k1) * value1(k2);
      Affine st = zstar(qshuffle(ProductId::StuffleY, LinComb(y_word({k1})), LinComb(y_word({k2}))));
      st.back() -= prod;
      out.emplace_back("stuffle " + std::to_string(k1) + "," + std::to_string(k2), st);
      LinComb sh = qshuffle(ProductId::Shuffle, LinComb(x_word(k1)), LinComb(x_word(k2)));
      Affine sa(static_cast<std::size_t>(n_ + 1), 0);
      for (const auto& [u, c] : sh) {
        Word y = x_to_y(u);
        add_scaled(sa, y.size() == 2 ? zsh_word(y) : zstar_word(y), c);
      }
      sa.back() -= prod;
      out.emplace_back("shuffle " + std::to_string(k1) + "," + std::to_string(k2), sa);
    }
    return out;
  }

  int unknowns() const { return n_; }

 private:
  Rational value1(int k) const { return k == 1 ? Rational(0) : depth1_.at(k); }

  // Words from the regularization may have lower weight (depth 0 or 1 only).
  Affine zstar_depth_aware(const LinComb& x) const {
    Affine a(static_cast<std::size_t>(n_ + 1), 0);
    for (const auto& [u, c] : x) add_scaled(a, zstar_word(u), c);
    return a;
  }

  static void add_scaled(Affine& a, const Affine& b, const Rational& c) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
  }

  int w_, n_;
  const std::map<int, Rational>& depth1_;
  std::vector<Rational> gamma_;
};

Rational evaluate(const Affine& a, const std::vector<Rational>& x) {
  Rational s = a.back();
  for (std::size_t i = 0; i + 1 < a.size(); ++i) s += a[i] * x[i];
  return s;
}

}  // namespace

BetaSolution solve_beta_depth2(int max_weight, const std::map<std::pair<int, int>, Rational>& free_values) {
  if (max_weight < 2 || max_weight > 16) throw DomainError("beta solver supports weights 2..16");
  BetaSolution sol;
  sol.table.max_weight = max_weight;
  for (int k = 1; k <= max_weight; ++k) sol.table.depth1[k] = beta_depth1(k);
  for (int w = 2; w <= max_weight; ++w) {
    ConstraintBuilder cb(w, sol.table.depth1);
    Matrix a;
    Row rhs;
    for (const auto& [name, row] : cb.constraints()) {
      a.emplace_back(row.begin(), row.end() - 1);
      rhs.push_back(-row.back());
      ++sol.equations;
    }
    std::vector<int> free;
    auto x0 = solve(a, rhs, {}, &free);
    if (!x0) throw Error("beta system inconsistent in weight " + std::to_string(w));
    std::vector<Rational> fv;
    for (int c : free) {
      std::pair<int, int> key{c + 1, w - c - 1};
      sol.free.push_back(key);
      auto it = free_values.find(key);
      fv.push_back(it == free_values.end() ? Rational(0) : it->second);
    }
    auto x = solve(a, rhs, fv);
    for (int k = 1; k < w; ++k) sol.table.depth2[{k, w - k}] = (*x)[static_cast<std::size_t>(k - 1)];
  }
  return sol;
}

std::vector<std::pair<std::string, Rational>> beta_residuals(const BetaTable& t, int max_weight) {
  std::vector<std::pair<std::string, Rational>> out;
  for (int w = 2; w <= max_weight; ++w) {
    ConstraintBuilder cb(w, t.depth1);
    std::vector<Rational> x;
    for (int k = 1; k < w; ++k) x.push_back(t.beta2(k, w - k));
    for (const auto& [name, row] : cb.constraints()) out.emplace_back(name, evaluate(row, x));
  }
  return out;
}

std::string beta_to_json(const BetaTable& t) {
  nlohmann::ordered_json j;
  j["provenance"] = t.provenance == BetaProvenance::Solved ? "solved" : "user";
  j["max_weight"] = t.max_weight;
  nlohmann::ordered_json d1 = nlohmann::ordered_json::object(), d2 = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.depth1) d1[std::to_string(k)] = to_string(v);
  for (const auto& [k, v] : t.depth2) d2[std::to_string(k.first) + "," + std::to_string(k.second)] = to_string(v);
  j["depth1"] = d1;
  j["depth2"] = d2;
  return j.dump(2);
}

BetaTable beta_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("beta table: ") + e.what(), e.byte);
  }
  BetaTable t;
  t.provenance = BetaProvenance::User;
  auto value = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ParseError("beta table: values must be rational strings", 0);
  };
  if (j.contains("depth1"))
    for (const auto& [k, v] : j["depth1"].items()) t.depth1[std::stoi(k)] = value(v);
  if (j.contains("depth2"))
    for (const auto& [k, v] : j["depth2"].items()) {
      auto comma = k.find(',');
      if (comma == std::string::npos) throw ParseError("beta table: depth2 keys look like \"k1,k2\"", 0);
      t.depth2[{std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))}] = value(v);
    }
  int w = 0;
  for (const auto& [k, v] : t.depth1) w = std::max(w, k);
  t.max_weight = j.value("max_weight", w);
  return t;
}

std::vector<Poly<Rational>> build_frak_b(const BetaTable& beta, int max_depth, int weight) {
  if (max_depth > 2) throw DomainError("beta data only available up to depth 2");
  std::vector<Poly<Rational>> parts;
  parts.push_back(Poly<Rational>::constant(1));
  if (max_depth >= 1) {
    Poly<Rational> p(1, weight - 1);
    for (int k = 1; k <= weight; ++k) {
      Exps e{};
      e[0] = static_cast<std::uint8_t>(k - 1);
      p.add(e, beta.beta1(k));
    }
    parts.push_back(p);
  }
  if (max_depth >= 2) {
    Poly<Rational> p(2, weight - 2);
    for (int k1 = 1; k1 < weight; ++k1)
      for (int k2 = 1; k1 + k2 <= weight; ++k2) {
        Exps e{};
        e[0] = static_cast<std::uint8_t>(k1 - 1);
        e[1] = static_cast<std::uint8_t>(k2 - 1);
        p.add(e, beta.beta2(k1, k2));
      }
    parts.push_back(p);
  }
  return parts;
}

namespace {

LinearForm sum_form(int nvars, std::initializer_list<std::pair<int, int>> terms) {
  LinearForm f(static_cast<std::size_t>(nvars), 0);
  for (auto [v, c] : terms) f[static_cast<std::size_t>(v)] += c;
  return f;
}

}  // namespace

TruncBimould<Rational> build_b(const BetaTable& beta, int max_depth, int weight) {
  auto fb = build_frak_b(beta, max_depth, weight);
  auto gamma = gamma_coefficients(max_depth);
  std::vector<Poly<Rational>> parts;
  parts.push_back(Poly<Rational>::constant(1));
  for (int d = 1; d <= max_depth; ++d) {
    const int nv = 2 * d;
    Poly<Rational> sum(nv, weight - d);
    for (int i = 0; i <= d; ++i)
      for (int j = i; j <= d; ++j) {
        if (gamma[static_cast<std::size_t>(i)] == 0) continue;
        const int n = j - i;
        std::vector<LinearForm> fy, fx;
        for (int r = 0; r < n; ++r) {
          LinearForm f(static_cast<std::size_t>(nv), 0);
          for (int t = 1; t <= n - r; ++t) f[static_cast<std::size_t>(yvar(t))] = 1;
          fy.push_back(f);
        }
        for (int r = 0; r < d - j; ++r) fx.push_back(var_form(nv, xvar(j + 1 + r)));
        Poly<Rational> a = fb[static_cast<std::size_t>(n)].substitute(fy, nv);
        Poly<Rational> c = fb[static_cast<std::size_t>(d - j)].substitute(fx, nv);
        sum += (a * c).scaled(gamma[static_cast<std::size_t>(i)]).truncated(weight - d);
      }
    parts.push_back(sum.truncated(weight - d));
  }
  return TruncBimould<Rational>(std::move(parts));
}

TruncBimould<Rational> build_btilde(const TruncBimould<Rational>& b) {
  std::vector<Poly<Rational>> parts;
  parts.push_back(Poly<Rational>::constant(1));
  for (int d = 1; d <= b.max_depth(); ++d) {
    const int nv = 2 * d;
    Poly<Rational> sum(nv, b.degree(d));
    for (int i = 0; i <= d; ++i) {
      const int n = d - i;
      std::vector<LinearForm> forms;
      for (int r = 1; r <= n; ++r) {
        forms.push_back(var_form(nv, xvar(i + r)));
        forms.push_back(var_form(nv, yvar(r), -1));
      }
      Rational c = Rational(i % 2 ? -1 : 1) / Rational(Integer(1) << i) / Rational(factorial(static_cast<unsigned>(i)));
      Poly<Rational> t = n == 0 ? Poly<Rational>::constant(1, nv) : b.part(n).substitute(forms, nv);
      sum += t.scaled(c).truncated(b.degree(d));
    }
    parts.push_back(sum);
  }
  return TruncBimould<Rational>(std::move(parts));
}

Poly<QSeries> build_L_series(int u, int weight, int order) {
  Poly<QSeries> p(2, weight - 1);
  for (int a = 0; a <= weight - 1; ++a) {
    QSeries s(order);
    for (int n = 1; n * u <= order; ++n) s.add_term(n * u, pow(Rational(n), static_cast<unsigned>(a)));
    s *= Rational(1) / Rational(factorial(static_cast<unsigned>(a)));
    for (int c = 0; a + c <= weight - 1; ++c) {
      Exps e{};
      e[0] = static_cast<std::uint8_t>(a);
      e[1] = static_cast<std::uint8_t>(c);
      p.add(e, s * (pow(Rational(u), static_cast<unsigned>(c)) / Rational(factorial(static_cast<unsigned>(c)))));
    }
  }
  return p;
}

namespace {

Poly<QSeries> times(const Poly<Rational>& a, const Poly<QSeries>& b) {
  return multiply_polys(a, b, [](const Rational& x, const QSeries& y) -> QSeries { return y * x; });
}

}  // namespace

TruncBimould<QSeries> build_L(const TruncBimould<Rational>& b, const TruncBimould<Rational>& btilde, int u, int weight,
                              int order) {
  const int max_depth = std::min(b.max_depth(), btilde.max_depth());
  Poly<QSeries> lu = build_L_series(u, weight, order);
  std::vector<Poly<QSeries>> parts;
  parts.push_back(Poly<QSeries>::constant(QSeries::constant(1)));
  for (int d = 1; d <= max_depth; ++d) {
    const int nv = 2 * d;
    const int bound = weight - d;
    Poly<QSeries> sum(nv, bound);
    for (int j = 1; j <= d; ++j) {
      std::vector<LinearForm> fb, fl, ft;
      for (int r = 1; r < j; ++r) {
        fb.push_back(sum_form(nv, {{xvar(r), 1}, {xvar(j), -1}}));
        fb.push_back(var_form(nv, yvar(r)));
      }
      fl.push_back(var_form(nv, xvar(j)));
      LinearForm ys(static_cast<std::size_t>(nv), 0);
      for (int r = 1; r <= d; ++r) ys[static_cast<std::size_t>(yvar(r))] = 1;
      fl.push_back(ys);
      for (int r = 1; r <= d - j; ++r) {
        ft.push_back(sum_form(nv, {{xvar(d + 1 - r), 1}, {xvar(j), -1}}));
        ft.push_back(var_form(nv, yvar(d + 1 - r)));
      }
      Poly<Rational> left = j == 1 ? Poly<Rational>::constant(1, nv) : b.part(j - 1).substitute(fb, nv);
      Poly<Rational> right = j == d ? Poly<Rational>::constant(1, nv) : btilde.part(d - j).substitute(ft, nv);
      Poly<Rational> outer = (left.truncated(bound) * right.truncated(bound)).truncated(bound);
      sum += times(outer, lu.substitute(fl, nv).truncated(bound));
    }
    parts.push_back(sum.truncated(bound));
  }
  return TruncBimould<QSeries>(std::move(parts));
}

TruncBimould<QSeries> build_gstar(const TruncBimould<Rational>& b, int weight, int order) {
  TruncBimould<Rational> bt = build_btilde(b);
  TruncBimould<QSeries> s = TruncBimould<QSeries>::unit(b.max_depth());
  // g* = L^(N) L^(N-1) ... L^(1): first block carries the largest u
  for (int u = 1; u <= order; ++u) s = mould_product(build_L(b, bt, u, weight, order), s);
  return s;
}

EisensteinModel::EisensteinModel(BetaTable beta, int max_depth, int weight, int order)
    : beta_(std::move(beta)), max_depth_(max_depth), weight_(weight), order_(order) {
  if (max_depth < 1 || max_depth > 2) throw DomainError("Eisenstein model supports depth 1 or 2");
  if (weight < max_depth) throw DomainError("weight bound below depth");
  if (order < 0) throw DomainError("negative q-order");
  b_ = build_b(beta_, max_depth, weight);
  btilde_ = build_btilde(b_);
  gstar_ = build_gstar(b_, weight, order);
  auto bq = b_.map_coefficients<QSeries>([](const Rational& c) { return QSeries::constant(c); });
  G_ = mould_product(gstar_, bq);
  B_ = sub_hash_y_inv(G_);
}

namespace {

Exps block_exps(const std::vector<int>& k, const std::vector<int>& m) { return index_exps(k, m); }

}  // namespace

QSeries EisensteinModel::cmes(const std::vector<int>& k, const std::vector<int>& m) const {
  const int d = static_cast<int>(k.size());
  if (d == 0) return QSeries::constant(1).truncated(order_);
  if (d > max_depth_) throw TruncationError("depth " + std::to_string(d) + " beyond the model");
  int deg = 0;
  Integer mf = 1;
  for (int i = 0; i < d; ++i) {
    deg += k[static_cast<std::size_t>(i)] - 1 + m[static_cast<std::size_t>(i)];
    mf *= factorial(static_cast<unsigned>(m[static_cast<std::size_t>(i)]));
  }
  if (deg > G_.degree(d)) throw TruncationError("weight beyond the model window");
  QSeries c = G_.part(d).coefficient(block_exps(k, m));
  return (c * Rational(mf)).truncated(order_);
}

QSeries EisensteinModel::zeta_q(const Word& w) const {
  if (w.empty()) return QSeries::constant(1).truncated(order_);
  IndexBlocks bl = blocks(w);
  const int d = static_cast<int>(bl.k.size());
  if (d > max_depth_) throw TruncationError("depth " + std::to_string(d) + " beyond available beta data");
  int deg = qmzv::weight(w) - d;
  if (deg > B_.degree(d)) throw TruncationError("weight " + std::to_string(qmzv::weight(w)) + " beyond the model window");
  return B_.part(d).coefficient(block_exps(bl.k, bl.m)).truncated(order_);
}

QSeries EisensteinModel::zeta_q(const LinComb& x) const {
  QSeries s = QSeries::constant(0).truncated(order_);
  for (const auto& [w, c] : x) s += zeta_q(w) * c;
  return s;
}

std::shared_ptr<const EisensteinModel> default_model(int max_depth, int weight, int order) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const EisensteinModel>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(max_depth, weight, order);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto m = std::make_shared<const EisensteinModel>(solve_beta_depth2(std::max(weight, 2)).table, max_depth, weight, order);
  cache.emplace(key, m);
  return m;
}

QSeries balanced_zeta_q(const Word& w, int order) {
  if (w.empty()) return QSeries::constant(1).truncated(order);
  int d = static_cast<int>(blocks(w).k.size());
  if (d > 2) throw DomainError("balanced q-zeta values need beta data beyond depth 2");
  return default_model(d, std::max(weight(w), d), order)->zeta_q(w);
}

}  // namespace qmzv
