#include "qmzv/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "qmzv/analysis.hpp"
#include "qmzv/bimould.hpp"
#include "qmzv/config.hpp"
#include "qmzv/eisenstein.hpp"
#include "qmzv/errors.hpp"
#include "qmzv/quasishuffle.hpp"
#include "qmzv/regmaps.hpp"

namespace qmzv {

namespace {

using json = nlohmann::ordered_json;

struct VerificationFailed {};

json lincomb_json(const LinComb& x) {
  json terms = json::array();
  for (const auto& [w, c] : terms_in_print_order(x)) terms.push_back({{"word", to_string(w)}, {"coefficient", to_string(c)}});
  return {{"text", to_string(x)}, {"terms", terms}};
}

json qseries_json(const QSeries& f) {
  json c = json::array();
  for (int n = 0; n <= f.order(); ++n) c.push_back(to_string(f.coefficient(n)));
  return {{"text", to_string(f)}, {"order", f.order()}, {"coefficients", c}};
}

json report_json(const SymmetryReport& r) {
  return {{"predicate", std::string(predicate_name(r.predicate))},
          {"checked_depth", r.checked_depth},
          {"checked_degree", r.checked_degree},
          {"identities_checked", r.identities_checked},
          {"pass", r.pass},
          {"first_failure", r.first_failure}};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool is_index_list(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != ',' && c != ' ') return false;
  return true;
}

// "2,0,3" is sugar for b2 b0 b3; anything else goes through the word parser.
LinComb parse_index_input(const std::string& s) {
  if (!is_index_list(s)) return parse_lincomb(s);
  std::vector<int> idx;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string part = s.substr(pos, end - pos);
    part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
    if (part.empty()) throw ParseError("empty index", pos);
    idx.push_back(std::stoi(part));
    pos = end + 1;
  }
  return LinComb(Word::b(idx));
}

// Polynomial in t: terms like 3t^2, -t, 1/2*t, 4.
PolyR parse_poly_t(std::string_view s, std::size_t base) {
  PolyR p;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && s[i] == ' ') ++i;
  };
  bool first = true;
  skip();
  if (i == s.size()) throw ParseError("empty polynomial", base);
  while (i < s.size()) {
    Rational sign = 1;
    skip();
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected + or -", base + i);
    }
    first = false;
    std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    Rational c = 1;
    if (i > start) c = parse_rational(s.substr(start, i - start));
    skip();
    if (i < s.size() && s[i] == '*') {
      ++i;
      skip();
    }
    int e = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i) throw ParseError("expected exponent", base + i);
        e = std::stoi(std::string(s.substr(st, i - st)));
      }
    } else if (i == start) {
      throw ParseError("expected coefficient or t", base + i);
    }
    if (p.size() <= static_cast<std::size_t>(e)) p.resize(static_cast<std::size_t>(e) + 1, 0);
    p[static_cast<std::size_t>(e)] += sign * c;
    skip();
  }
  return p;
}

// zq(s1,...,sl; R1,...,Rl)
QSeries parse_generic(const std::string& text, int order) {
  std::string s = text;
  auto open = s.find('(');
  if (open == std::string::npos || s.substr(0, open) != "zq" || s.back() != ')')
    throw ParseError("expected zq(s1,...;R1,...)", 0);
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  auto semi = inner.find(';');
  if (semi == std::string::npos) throw ParseError("expected ';' between indices and polynomials", open + 1);
  std::vector<int> idx;
  {
    std::string a = inner.substr(0, semi);
    std::size_t pos = 0;
    while (pos <= a.size()) {
      std::size_t end = a.find(',', pos);
      if (end == std::string::npos) end = a.size();
      try {
        idx.push_back(std::stoi(a.substr(pos, end - pos)));
      } catch (const std::exception&) {
        throw ParseError("bad index", open + 1 + pos);
      }
      pos = end + 1;
    }
  }
  std::vector<PolyR> polys;
  {
    std::string b = inner.substr(semi + 1);
    std::size_t pos = 0;
    while (pos <= b.size()) {
      std::size_t end = b.find(',', pos);
      if (end == std::string::npos) end = b.size();
      polys.push_back(parse_poly_t(std::string_view(b).substr(pos, end - pos), open + semi + 2 + pos));
      pos = end + 1;
    }
  }
  if (polys.size() != idx.size()) throw ParseError("need one polynomial per index", open + semi + 2);
  return generic_qzeta(idx, polys, order);
}

int block_depth(const LinComb& x) {
  int d = 0;
  for (const auto& [w, c] : x) {
    int k = 0;
    for (const auto& a : w) k += a.i != 0;
    d = std::max(d, k);
  }
  return d;
}

int max_weight(const LinComb& x) {
  int m = 0;
  for (const auto& [w, c] : x) m = std::max(m, weight(w));
  return m;
}

std::shared_ptr<const EisensteinModel> model_for(const Config& cfg, int depth, int wt) {
  depth = std::max(depth, 1);
  wt = std::max({wt, depth, 2});
  if (depth > 2) throw DomainError("depth " + std::to_string(depth) + " needs beta data beyond depth 2");
  if (cfg.beta == "builtin") return default_model(depth, wt, cfg.order);
  return std::make_shared<const EisensteinModel>(beta_from_json(read_file(cfg.beta)), depth, wt, cfg.order);
}

template <class C>
TruncBimould<C> read_mould(const json& j, int max_depth, C (*value)(const json&)) {
  std::vector<Poly<C>> parts;
  parts.push_back(Poly<C>::constant(one_of<C>()));
  for (int d = 1; d <= max_depth; ++d) {
    Poly<C> p(2 * d, kUnbounded);
    auto key = std::to_string(d);
    if (j.contains(key))
      for (const auto& [mono, v] : j[key].items()) {
        Exps e{};
        std::stringstream ss(mono);
        std::string tok;
        int n = 0;
        while (std::getline(ss, tok, ',')) {
          if (n >= 2 * d) throw ParseError("mould: too many exponents in '" + mono + "'", 0);
          e[static_cast<std::size_t>(n++)] = static_cast<std::uint8_t>(std::stoi(tok));
        }
        if (n != 2 * d) throw ParseError("mould: depth " + key + " needs " + std::to_string(2 * d) + " exponents", 0);
        p.add(e, value(v));
      }
    parts.push_back(p);
  }
  return TruncBimould<C>(std::move(parts));
}

Rational rational_value(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError("mould: coefficient must be a rational string", 0);
}

QSeries series_value(const json& v) {
  if (v.is_array()) {
    std::vector<Rational> c;
    for (const auto& x : v) c.push_back(rational_value(x));
    return QSeries::from_coefficients(c, static_cast<int>(c.size()) - 1);
  }
  return QSeries::constant(rational_value(v));
}

bool has_series(const json& j) {
  for (const auto& [d, part] : j.items())
    for (const auto& [m, v] : part.items())
      if (v.is_array()) return true;
  return false;
}

template <class C>
SymmetryReport run_check(const TruncBimould<C>& m, Predicate p, int depth, int degree) {
  switch (p) {
    case Predicate::Symmetril: return check_symmetril(m, depth, degree);
    case Predicate::BSymmetril: return check_b_symmetril(m, depth, degree);
    case Predicate::SwapInv: return check_swap_inv(m, depth, degree);
    case Predicate::TauInv: return check_tau_inv(m, depth, degree);
  }
  throw DomainError("unknown predicate");
}

struct SuiteResult {
  explicit SuiteResult(std::string n) : name(std::move(n)) {}
  std::string name;
  bool pass = true;
  int checks = 0;
  std::string first_failure;
};

void note(SuiteResult& r, bool ok, const std::string& what) {
  ++r.checks;
  if (!ok && r.pass) {
    r.pass = false;
    r.first_failure = what;
  }
}

std::vector<Word> b0_upto(int wt, int depth) {
  std::vector<Word> out;
  for (int w = 1; w <= wt; ++w)
    for (auto& x : relation_basis(w, depth)) out.push_back(x);
  return out;
}

SuiteResult suite_tau(int maxwt, int order) {
  SuiteResult r{"tau"};
  for (const auto& w : b0_upto(maxwt, 2)) {
    if (block_depth(LinComb(tau_b(w))) > 2) continue;
    auto c = verify_tau(w, order);
    note(r, c.pass, to_string(w) + ": " + c.detail);
  }
  return r;
}

SuiteResult suite_product(int maxwt, int order) {
  SuiteResult r{"product"};
  auto pool = b0_upto(maxwt, 1);
  for (const auto& u : pool)
    for (const auto& v : pool) {
      if (weight(u) + weight(v) > maxwt) continue;
      auto c = verify_product(u, v, order);
      note(r, c.pass, to_string(u) + " * " + to_string(v) + ": " + c.detail);
    }
  return r;
}

SuiteResult suite_random_product(int maxwt, int order, unsigned seed, int samples) {
  SuiteResult r{"random-product"};
  auto pool = b0_upto(maxwt, 1);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < samples * 20 && r.checks < samples; ++i) {
    const Word& u = pool[pick(rng)];
    const Word& v = pool[pick(rng)];
    if (weight(u) + weight(v) > maxwt) continue;
    auto c = verify_product(u, v, order);
    note(r, c.pass, to_string(u) + " * " + to_string(v) + ": " + c.detail);
  }
  return r;
}

SuiteResult suite_derivation(int maxwt, int order) {
  SuiteResult r{"derivation"};
  for (const auto& w : b0_upto(maxwt, 2)) {
    auto c = verify_derivation(w, order);
    note(r, c.pass, to_string(w) + ": " + c.detail);
  }
  return r;
}

SuiteResult suite_hopf(int maxwt) {
  SuiteResult r{"hopf"};
  std::vector<Word> bw, b0, yb;
  for (int w = 0; w <= maxwt; ++w) {
    for (auto& x : b_words_of_weight(w)) bw.push_back(x);
    for (auto& x : b0_words_of_weight(w, w)) b0.push_back(x);
    for (auto& x : ybi_words_of_weight(w, w)) yb.push_back(x);
  }
  for (const auto& u : bw)
    for (const auto& v : bw) {
      if (weight(u) + weight(v) > maxwt || u.size() + v.size() > static_cast<std::size_t>(maxwt)) continue;
      bool ok = reg(qshuffle(ProductId::Balanced, LinComb(u), LinComb(v))) ==
                qshuffle(ProductId::Balanced, reg(u), reg(v));
      note(r, ok, "reg morphism at " + to_string(u) + ", " + to_string(v));
    }
  for (const auto& w : yb) {
    Tensor lhs;
    for (const auto& [uv, c] : delta_dec(w))
      for (const auto& [a, ca] : phi_sharp(uv.first))
        for (const auto& [b, cb] : phi_sharp(uv.second)) lhs += tensor(a, b) * (c * ca * cb);
    note(r, lhs == delta_dec0(phi_sharp(w)), "coproduct compatibility at " + to_string(w));
    note(r, phi_sharp(swap_ybi(w)) == tau_b(phi_sharp(w)), "swap/tau at " + to_string(w));
  }
  for (const auto& u : b0)
    for (const auto& v : b0) {
      if (weight(u) + weight(v) > maxwt) continue;
      LinComb lhs = embed_py(qshuffle(ProductId::Balanced, LinComb(u), LinComb(v)));
      LinComb rhs =
          tau_py(qshuffle(ProductId::ShufflePY, tau_py(embed_py(LinComb(u))), tau_py(embed_py(LinComb(v)))));
      note(r, lhs == rhs, "embedding at " + to_string(u) + ", " + to_string(v));
    }
  return r;
}

SuiteResult suite_symmetry(int order) {
  SuiteResult r{"symmetry"};
  const auto& m = analysis_model(8, order);
  for (const auto& rep : {check_symmetril(m.G(), 2, 4), check_swap_inv(m.G(), 2, 4), check_b_symmetril(m.B(), 2, 4),
                          check_tau_inv(m.B(), 2, 4)})
    note(r, rep.pass, to_string(rep));
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balanced multiple q-zeta values and quasi-shuffle algebra", "qmzv"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::string config_path, format, beta;
  std::optional<int> order;
  unsigned seed = 1;
  app.add_option("--config", config_path, "key = value file (order, weight, depth, beta, format)");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--order", order, "q-expansion order N");
  app.add_option("--beta", beta, "JSON beta table; default: solved table");
  app.add_option("--seed", seed, "seed for randomized suites");

  std::string product = "balanced", arg1, arg2, dir = "fwd", predicate, mould = "G", mould_file, suite = "all";
  bool inverse = false;
  int depth = 2, degree = 4, maxwt = 6, rel_weight = 2, maxdep = 2, samples = 50;
  std::optional<int> verify_order;
  std::optional<double> target;

  auto* mul = app.add_subcommand("mul", "product of two linear combinations of words");
  mul->add_option("--product", product, "shuffle, stuffle, stuffle-bi, balanced, shuffle-py");
  mul->add_option("u", arg1)->required();
  mul->add_option("v", arg2)->required();

  auto* regc = app.add_subcommand("reg", "regularization on the B alphabet");
  regc->add_option("x", arg1)->required();
  regc->add_flag("--inverse", inverse, "show the full polynomial in T");

  auto* tau = app.add_subcommand("tau", "involution on B0 words or {p,y} words");
  tau->add_option("x", arg1)->required();

  auto* phi = app.add_subcommand("phi", "the isomorphism between the y(k|m) and B0 algebras");
  phi->add_option("--dir", dir, "fwd or inv")->check(CLI::IsMember({"fwd", "inv"}));
  phi->add_option("x", arg1)->required();

  auto* qexp = app.add_subcommand("qexp", "expand a generic q-zeta value zq(s1,...;R1,...)");
  qexp->add_option("expr", arg1)->required();

  auto* zq = app.add_subcommand("zq", "balanced q-zeta value, e.g. \"2,0,3\" or \"b2 b0 b3\"");
  zq->add_option("index", arg1)->required();

  auto* check = app.add_subcommand("check", "mould symmetry predicates");
  check->add_option("--predicate", predicate)->required()->check(
      CLI::IsMember({"symmetril", "b-symmetril", "swap-inv", "tau-inv"}));
  check->add_option("--depth", depth);
  check->add_option("--degree", degree);
  check->add_option("--mould", mould, "built-in mould: G, B, b, gstar")->check(CLI::IsMember({"G", "B", "b", "gstar"}));
  check->add_option("file", mould_file, "JSON mould {d: {\"e1,f1,...\": \"p/q\" or [q-coefficients]}}");

  auto* verify = app.add_subcommand("verify", "identity suites");
  verify->add_option("--suite", suite)->check(
      CLI::IsMember({"all", "tau", "product", "derivation", "hopf", "symmetry", "random-product"}));
  verify->add_option("--maxwt", maxwt);
  verify->add_option("--samples", samples);

  auto* rel = app.add_subcommand("relations", "exact linear relations among balanced q-zeta values of one weight");
  rel->add_option("--weight", rel_weight);
  rel->add_option("--maxdep", maxdep);
  rel->add_option("--verify-order", verify_order, "default: twice the order");

  auto* lim = app.add_subcommand("limit", "formal q -> 1 limit symbol");
  lim->add_option("x", arg1)->required();
  lim->add_option("--target", target, "advisory numeric comparison against this value");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    apply_environment(cfg);
    if (order) cfg.order = *order;
    if (!format.empty()) cfg.format = format;
    if (!beta.empty()) cfg.beta = beta;
    cfg.validate();
    const bool js = cfg.format == "json";

    if (*mul) {
      auto id = product_from_name(product);
      if (!id) throw DomainError("unknown product '" + product + "'");
      LinComb r = qshuffle(*id, parse_lincomb(arg1), parse_lincomb(arg2));
      out << (js ? lincomb_json(r).dump(2) : to_string(r)) << "\n";
    } else if (*regc) {
      LinComb x = parse_index_input(arg1);
      if (inverse) {
        PolyInT p;
        for (const auto& [w, c] : x) p += reg_t_inverse(w) * c;
        if (js) {
          json j = json::object();
          for (const auto& [k, v] : p.terms()) j[std::to_string(k)] = lincomb_json(v);
          out << json{{"T", j}}.dump(2) << "\n";
        } else {
          out << to_string(p) << "\n";
        }
      } else {
        LinComb r = reg(x);
        out << (js ? lincomb_json(r).dump(2) : to_string(r)) << "\n";
      }
    } else if (*tau) {
      LinComb x = parse_index_input(arg1);
      LinComb r = x.alphabet() && *x.alphabet() == Alphabet::PY ? tau_py(x) : tau_b(x);
      out << (js ? lincomb_json(r).dump(2) : to_string(r)) << "\n";
    } else if (*phi) {
      LinComb x = dir == "fwd" ? phi_sharp(parse_lincomb(arg1)) : phi_sharp_inv(parse_index_input(arg1));
      out << (js ? lincomb_json(x).dump(2) : to_string(x)) << "\n";
    } else if (*qexp) {
      QSeries f = parse_generic(arg1, cfg.order);
      out << (js ? qseries_json(f).dump(2) : to_string(f)) << "\n";
    } else if (*zq) {
      LinComb x = parse_index_input(arg1);
      auto m = model_for(cfg, block_depth(x), max_weight(x));
      QSeries f = m->zeta_q(x);
      out << (js ? qseries_json(f).dump(2) : to_string(f)) << "\n";
    } else if (*check) {
      Predicate p = *predicate_from_name(predicate);
      SymmetryReport r;
      if (!mould_file.empty()) {
        json j = json::parse(read_file(mould_file));
        if (has_series(j))
          r = run_check(read_mould<QSeries>(j, depth, series_value), p, depth, degree);
        else
          r = run_check(read_mould<Rational>(j, depth, rational_value), p, depth, degree);
      } else {
        auto m = model_for(cfg, depth, std::max(cfg.weight, degree + depth + 1));
        if (mould == "G") r = run_check(m->G(), p, depth, degree);
        else if (mould == "B") r = run_check(m->B(), p, depth, degree);
        else if (mould == "gstar") r = run_check(m->gstar(), p, depth, degree);
        else r = run_check(m->b(), p, depth, degree);
      }
      out << (js ? report_json(r).dump(2) : to_string(r)) << "\n";
      if (!r.pass) throw VerificationFailed{};
    } else if (*verify) {
      if (cfg.beta != "builtin") throw DomainError("verify runs on the solved beta table");
      std::vector<SuiteResult> res;
      auto want = [&](const char* s) { return suite == "all" || suite == s; };
      if (want("tau")) res.push_back(suite_tau(maxwt, cfg.order));
      if (want("product")) res.push_back(suite_product(maxwt, cfg.order));
      if (want("derivation")) res.push_back(suite_derivation(maxwt, cfg.order));
      if (want("hopf")) res.push_back(suite_hopf(std::min(maxwt, 5)));
      if (want("symmetry")) res.push_back(suite_symmetry(cfg.order));
      if (suite == "random-product") res.push_back(suite_random_product(maxwt, cfg.order, seed, samples));
      bool all = true;
      json j = json::array();
      for (const auto& s : res) {
        all = all && s.pass;
        if (js)
          j.push_back({{"suite", s.name}, {"pass", s.pass}, {"checks", s.checks}, {"first_failure", s.first_failure}});
        else
          out << s.name << ": " << (s.pass ? "PASS" : "FAIL") << " (" << s.checks << " checks)"
              << (s.pass ? "" : "; first failure: " + s.first_failure) << "\n";
      }
      if (js) out << j.dump(2) << "\n";
      if (!all) throw VerificationFailed{};
    } else if (*rel) {
      int vo = verify_order.value_or(2 * cfg.order);
      auto rels = find_relations(rel_weight, maxdep, cfg.order, vo);
      if (js) {
        json j = json::array();
        for (const auto& r : rels) {
          json v = json::array(), b = json::array();
          for (std::size_t i = 0; i < r.basis.size(); ++i) {
            b.push_back(to_string(r.basis[i]));
            v.push_back(to_string(r.vector[i]));
          }
          j.push_back({{"weight", r.weight}, {"basis", b}, {"vector", v}, {"checked_order", r.checked_order}});
        }
        out << j.dump(2) << "\n";
      } else {
        for (const auto& r : rels) out << to_string(r) << "\n";
        if (rels.empty()) out << "no relations\n";
      }
    } else if (*lim) {
      LinComb x = parse_index_input(arg1);
      LimitSymbol s = formal_limit(x);
      json j;
      if (js) {
        json terms = json::array();
        for (const auto& t : s)
          terms.push_back({{"shuffle", to_string(t.shuffle_word)},
                           {"stuffle", to_string(t.stuffle_word)},
                           {"coefficient", to_string(t.coefficient)}});
        j["terms"] = terms;
      } else {
        out << to_string(s) << "\n";
      }
      if (target) {
        if (x.size() != 1 || x.begin()->second != 1) throw DomainError("numeric limit needs a single word");
        NumericLimit n = numeric_limit_check(x.begin()->first, *target);
        if (js)
          j["numeric"] = {{"value", n.value}, {"target", n.target}, {"rel_error", n.rel_error}, {"advisory", true}};
        else
          out << "numeric (advisory): " << n.value << " vs " << n.target << ", relative error " << n.rel_error << "\n";
      }
      if (js) out << j.dump(2) << "\n";
    }
  } catch (const VerificationFailed&) {
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace qmzv
