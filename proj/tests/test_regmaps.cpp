#include <gtest/gtest.h>

#include "qmzv/errors.hpp"
#include "qmzv/regmaps.hpp"

using namespace qmzv;

namespace {

LinComb L(const Word& w, Rational c = 1) { return LinComb(w, c); }
LinComb P(const char* s) { return parse_lincomb(s); }

std::vector<Word> b_words_upto(int wt) {
  std::vector<Word> v;
  for (int w = 0; w <= wt; ++w)
    for (auto& x : b_words_of_weight(w)) v.push_back(x);
  return v;
}

std::vector<Word> b0_words_upto(int wt) {
  std::vector<Word> v;
  for (int w = 0; w <= wt; ++w)
    for (auto& x : b0_words_of_weight(w, w)) v.push_back(x);
  return v;
}

std::vector<Word> ybi_words_upto(int wt) {
  std::vector<Word> v;
  for (int w = 0; w <= wt; ++w)
    for (auto& x : ybi_words_of_weight(w, w)) v.push_back(x);
  return v;
}

Tensor tensor_lc(const LinComb& a, const LinComb& b) {
  Tensor t;
  for (const auto& [u, c] : a)
    for (const auto& [v, d] : b) t += tensor(u, v) * (c * d);
  return t;
}

}  // namespace

TEST(RegMaps, RegTInverseExamples) {
  PolyInT p = reg_t_inverse(Word::b({1, 0}));
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ(p.coefficient(0), P("b1 b0"));

  p = reg_t_inverse(Word::b({0}));
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p.coefficient(1), LinComb::one());
  EXPECT_TRUE(p.coefficient(0).is_zero());

  p = reg_t_inverse(Word::b({0, 1}));
  EXPECT_EQ(p.coefficient(0), P("-b1 b0"));
  EXPECT_EQ(p.coefficient(1), P("b1"));
}

TEST(RegMaps, RegExamples) {
  EXPECT_EQ(reg(Word::b({0, 1})), P("-b1 b0"));
  EXPECT_EQ(reg(Word::b({0, 2, 0})), P("-2*b2 b0 b0"));
  EXPECT_EQ(reg(Word::b({2, 0, 1})), P("b2 b0 b1"));
  for (int n = 1; n <= 5; ++n) EXPECT_TRUE(reg(Word::b(std::vector<int>(n, 0))).is_zero());
  EXPECT_EQ(reg(Word{}), LinComb::one());
}

TEST(RegMaps, ClosedFormulaMatchesElimination) {
  for (const auto& w : b_words_upto(6)) {
    EXPECT_EQ(reg(LinComb(w)), reg_by_elimination(LinComb(w))) << to_string(w);
  }
}

TEST(RegMaps, RegTInverseRoundTrip) {
  // sum_n P_n * b0^{*n} / ... must rebuild w, with b0^{*n} = n! b0^n
  for (const auto& w : b_words_upto(5)) {
    PolyInT p = reg_t_inverse(w);
    LinComb back;
    for (const auto& [n, x] : p.terms()) {
      LinComb pw = LinComb::one();
      for (int i = 0; i < n; ++i) pw = qshuffle(ProductId::Balanced, pw, LinComb(Word::b({0})));
      back += qshuffle(ProductId::Balanced, x, pw);
      for (const auto& [u, c] : x) EXPECT_FALSE(!u.empty() && u[0] == Letter::b(0));
    }
    EXPECT_EQ(back, LinComb(w)) << to_string(w);
  }
}

TEST(RegMaps, RegIsMorphism) {
  std::vector<Word> pool;
  for (const auto& w : b_words_upto(6)) {
    bool ok = true;
    for (const auto& a : w) ok = ok && a.i <= 3;
    if (ok) pool.push_back(w);
  }
  int n = 0;
  for (const auto& u : pool)
    for (const auto& v : pool) {
      if (weight(u) + weight(v) > 6 || u.size() + v.size() > 6) continue;
      LinComb lhs = reg(qshuffle(ProductId::Balanced, LinComb(u), LinComb(v)));
      LinComb rhs = qshuffle(ProductId::Balanced, reg(u), reg(v));
      ASSERT_EQ(lhs, rhs) << to_string(u) << " * " << to_string(v);
      ++n;
    }
  EXPECT_GT(n, 100);
}

TEST(RegMaps, RegIdempotent) {
  for (const auto& w : b_words_upto(6)) EXPECT_EQ(reg(reg(w)), reg(w));
  for (const auto& w : b0_words_upto(6)) EXPECT_EQ(reg(w), LinComb(w));
}

TEST(RegMaps, DeltaDec0Examples) {
  Tensor t = delta_dec0(Word::b({1, 0}));
  Tensor e = tensor(Word{}, Word::b({1, 0})) + tensor(Word::b({1, 0}), Word{});
  EXPECT_EQ(t, e);

  t = delta_dec0(Word::b({1, 0, 1}));
  e = tensor(Word{}, Word::b({1, 0, 1})) + tensor(Word::b({1}), Word::b({1, 0})) * Rational(-1) +
      tensor(Word::b({1, 0}), Word::b({1})) + tensor(Word::b({1, 0, 1}), Word{});
  EXPECT_EQ(t, e);

  EXPECT_THROW(delta_dec0(Word::b({0, 1})), DomainError);
}

TEST(RegMaps, DeltaDec0Coassociative) {
  for (const auto& w : b0_words_upto(5)) {
    Tensor t = delta_dec0(w);
    // (D0 x id) D0 vs (id x D0) D0, compared as triple tensors flattened with a separator-free key
    std::map<std::tuple<Word, Word, Word>, Rational> left, right;
    for (const auto& [uv, c] : t) {
      for (const auto& [ab, d] : delta_dec0(uv.first)) left[{ab.first, ab.second, uv.second}] += c * d;
      for (const auto& [ab, d] : delta_dec0(uv.second)) right[{uv.first, ab.first, ab.second}] += c * d;
    }
    std::erase_if(left, [](const auto& p) { return p.second == 0; });
    std::erase_if(right, [](const auto& p) { return p.second == 0; });
    EXPECT_EQ(left, right) << to_string(w);
  }
}

TEST(RegMaps, TauExamples) {
  EXPECT_EQ(tau_b(Word::b({2})), Word::b({1, 0}));
  EXPECT_EQ(tau_b(Word::b({2, 1})), Word::b({1, 1, 0}));
  EXPECT_EQ(tau_py(Word::py("ppy")), Word::py("pyy"));
  EXPECT_EQ(tau_py(Word{}), Word{});
  EXPECT_THROW(tau_b(Word::b({0, 2})), DomainError);
  for (const auto& w : b0_words_upto(6)) {
    EXPECT_EQ(tau_b(tau_b(w)), w);
    EXPECT_EQ(weight(tau_b(w)), weight(w));
  }
  for (const auto& w : b0_words_upto(5)) EXPECT_EQ(tau_py(embed_py(w)), embed_py(tau_b(w)));
}

TEST(RegMaps, EmbeddingIntertwinesProducts) {
  // i(u *_b v) = tau(tau i(u) sh_b tau i(v))
  auto pool = b0_words_upto(5);
  for (const auto& u : pool)
    for (const auto& v : pool) {
      if (weight(u) + weight(v) > 5) continue;
      LinComb lhs = embed_py(qshuffle(ProductId::Balanced, LinComb(u), LinComb(v)));
      LinComb rhs = tau_py(qshuffle(ProductId::ShufflePY, tau_py(embed_py(LinComb(u))), tau_py(embed_py(LinComb(v)))));
      ASSERT_EQ(lhs, rhs) << to_string(u) << " , " << to_string(v);
    }
}

TEST(RegMaps, PhiSharpExamples) {
  for (int k = 1; k <= 4; ++k)
    for (int m = 0; m <= 3; ++m) {
      std::vector<int> s{k};
      for (int i = 0; i < m; ++i) s.push_back(0);
      EXPECT_EQ(phi_sharp(Word::ybi({{k, m}})), L(Word::b(s), Rational(factorial(static_cast<unsigned>(m)))));
    }
  EXPECT_EQ(phi_sharp(Word::ybi({{2, 0}, {1, 1}})), P("b2 b1 b0"));
  EXPECT_THROW(phi_sharp_inv(Word::b({0, 1})), DomainError);
}

TEST(RegMaps, PhiSharpInverse) {
  for (const auto& w : ybi_words_upto(5)) EXPECT_EQ(phi_sharp_inv(phi_sharp(w)), LinComb(w)) << to_string(w);
  for (const auto& w : b0_words_upto(5)) EXPECT_EQ(phi_sharp(phi_sharp_inv(w)), LinComb(w)) << to_string(w);
}

TEST(RegMaps, PhiSharpIsMorphism) {
  auto pool = ybi_words_upto(4);
  for (const auto& u : pool)
    for (const auto& v : pool) {
      if (weight(u) + weight(v) > 5) continue;
      LinComb lhs = phi_sharp(qshuffle(ProductId::StuffleYbi, LinComb(u), LinComb(v)));
      LinComb rhs = qshuffle(ProductId::Balanced, phi_sharp(u), phi_sharp(v));
      ASSERT_EQ(lhs, rhs) << to_string(u) << " , " << to_string(v);
    }
}

TEST(RegMaps, HopfCompatibility) {
  for (const auto& w : ybi_words_upto(5)) {
    Tensor lhs;
    for (const auto& [uv, c] : delta_dec(w)) lhs += tensor_lc(phi_sharp(uv.first), phi_sharp(uv.second)) * c;
    EXPECT_EQ(lhs, delta_dec0(phi_sharp(w))) << to_string(w);
  }
}

TEST(RegMaps, SwapExamples) {
  EXPECT_EQ(swap_ybi(Word::ybi({{2, 0}})), L(Word::ybi({{1, 1}})));
  EXPECT_EQ(swap_ybi(Word::ybi({{1, 1}})), L(Word::ybi({{2, 0}})));
  // depth-one closed form: swap(y_{k,m}) = m!/(k-1)! y_{m+1,k-1}
  for (int k = 1; k <= 5; ++k)
    for (int m = 0; m <= 4; ++m)
      EXPECT_EQ(swap_ybi(Word::ybi({{k, m}})),
                L(Word::ybi({{m + 1, k - 1}}), Rational(factorial(static_cast<unsigned>(m))) /
                                                 Rational(factorial(static_cast<unsigned>(k - 1)))));
  EXPECT_EQ(phi_sharp(swap_ybi(Word::ybi({{2, 0}}))), P("b1 b0"));
}

TEST(RegMaps, SwapInvolutionAndTau) {
  for (const auto& w : ybi_words_upto(5)) {
    LinComb s = swap_ybi(w);
    EXPECT_EQ(swap_ybi(s), LinComb(w)) << to_string(w);
    for (const auto& [u, c] : s) EXPECT_EQ(weight(u), weight(w));
    EXPECT_EQ(phi_sharp(s), tau_b(phi_sharp(w))) << to_string(w);
  }
}
