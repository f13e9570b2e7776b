#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmzv/errors.hpp"
#include "qmzv/qseries.hpp"

using namespace qmzv;

namespace {

QSeries series(std::vector<long> c, int order) {
  std::vector<Rational> r;
  for (long x : c) r.emplace_back(x);
  return QSeries::from_coefficients(r, order);
}

// Brute-force nested sum: expand every factor by repeated multiplication with geometric series.
QSeries nested_oracle(const std::vector<int>& s, const std::vector<PolyR>& R, int N) {
  const int l = static_cast<int>(s.size());
  QSeries total(N);
  std::vector<int> n(static_cast<std::size_t>(l));
  auto factor = [&](int j, int nj) {
    QSeries f(N);
    for (std::size_t a = 0; a < R[static_cast<std::size_t>(j)].size(); ++a)
      f.add_term(static_cast<int>(a) * nj, R[static_cast<std::size_t>(j)][a]);
    QSeries geo(N);
    for (int k = 0; k * nj <= N; ++k) geo.add_term(k * nj, 1);
    for (int t = 0; t < s[static_cast<std::size_t>(j)]; ++t) f = f * geo;
    return f;
  };
  auto rec = [&](auto&& self, int j, int upper) -> void {
    if (j == l) {
      QSeries p = QSeries::constant(1, N);
      for (int t = 0; t < l; ++t) p = p * factor(t, n[static_cast<std::size_t>(t)]);
      total += p;
      return;
    }
    for (int v = 1; v < upper; ++v) {
      n[static_cast<std::size_t>(j)] = v;
      self(self, j + 1, v);
    }
  };
  rec(rec, 0, N + 1);
  return total;
}

}  // namespace

TEST(Bernoulli, Values) {
  EXPECT_EQ(bernoulli(0), 1);
  EXPECT_EQ(bernoulli(1), frac(-1, 2));
  EXPECT_EQ(bernoulli(2), frac(1, 6));
  EXPECT_EQ(bernoulli(3), 0);
  EXPECT_EQ(bernoulli(4), frac(-1, 30));
  EXPECT_EQ(bernoulli(12), frac(-691, 2730));
}

TEST(QSeriesArith, RingAxiomsAndOrders) {
  QSeries a = series({1, 2, 0, -3}, 5);
  QSeries b = series({0, 1, 1}, 3);
  QSeries c = a * b;
  EXPECT_EQ(c.order(), 3);
  EXPECT_EQ(c.coefficient(1), 1);
  EXPECT_EQ(c.coefficient(2), 3);
  EXPECT_EQ(c.coefficient(3), 2);
  EXPECT_THROW(c.coefficient(4), TruncationError);
  EXPECT_EQ(a + b, b + a);
  EXPECT_EQ((a + b).order(), 3);
  EXPECT_EQ(a * (b + a), a * b + a * a);
  EXPECT_TRUE((a - a).is_zero());
  QSeries one = QSeries::constant(1);
  EXPECT_EQ(one * a, a);
}

TEST(QSeriesArith, Qderiv) {
  EXPECT_TRUE(qderiv(QSeries::constant(1, 10)).is_zero());
  EXPECT_EQ(qderiv(series({0, 1, 3}, 5)), series({0, 1, 6}, 5));
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<long> x, y;
    for (int i = 0; i < 12; ++i) {
      x.push_back(static_cast<long>(rng() % 11) - 5);
      y.push_back(static_cast<long>(rng() % 11) - 5);
    }
    QSeries f = series(x, 11), g = series(y, 11);
    EXPECT_EQ(qderiv(f * g), qderiv(f) * g + f * qderiv(g));
  }
}

TEST(QSeriesArith, EvalFloat) {
  EXPECT_DOUBLE_EQ(eval_float(QSeries::constant(1, 5), 0.5), 1.0);
  EXPECT_DOUBLE_EQ(eval_float(QSeries::monomial(1, 1, 5), 0.5), 0.5);
  QSeries geo(50);
  for (int i = 0; i <= 50; ++i) geo.add_term(i, 1);
  double exact = (1 - std::pow(0.1, 51)) / (1 - 0.1);
  EXPECT_LT(std::abs(eval_float(geo, 0.1) - exact) / exact, 1e-12);
}

TEST(QSeriesArith, TextRoundTrip) {
  QSeries f = QSeries::from_coefficients({frac(-1, 24), 1, 3, 4, 7}, 4);
  EXPECT_EQ(to_string(f), "-1/24 + q + 3q^2 + 4q^3 + 7q^4");
  QSeries g = parse_qseries(to_string(f), 4);
  EXPECT_EQ(g, f);
  EXPECT_EQ(g.order(), 4);
  QSeries h = QSeries::from_coefficients({0, frac(1, 2), 0, frac(-5, 3)}, 6);
  EXPECT_EQ(to_string(h), "1/2*q - 5/3*q^3");
  EXPECT_EQ(parse_qseries(to_string(h), 6), h);
  EXPECT_EQ(parse_qseries("q + O(q^3)").order(), 2);
  EXPECT_THROW(parse_qseries("q + + q"), ParseError);
}

TEST(GenericQzeta, DepthOneExamples) {
  // sum_n q^n/(1-q^n)^2 = sum_{n,m} m q^{nm}
  QSeries z2 = generic_qzeta({2}, {{0, 1}}, 30);
  EXPECT_EQ(z2, divisor_sum(1, 0, 30));
  EXPECT_EQ(z2.truncated(4), series({0, 1, 3, 4, 7}, 4));
  QSeries z1 = generic_qzeta({1}, {{0, 1}}, 12);
  EXPECT_EQ(z1.truncated(4), series({0, 1, 2, 2, 3}, 4));
  EXPECT_EQ(z1, divisor_sum(0, 0, 12));
  EXPECT_EQ(generic_qzeta({}, {}, 10), QSeries::constant(1, 10));
}

TEST(GenericQzeta, MatchesNestedOracle) {
  std::vector<std::pair<std::vector<int>, std::vector<PolyR>>> cases = {
      {{2, 3}, {{0, 1}, {0, 0, 1}}},
      {{1, 0}, {{0, 1}, {1}}},
      {{3, 1, 2}, {{0, 1, 1}, {0, 1}, {frac(1, 2), 0, 1}}},
      {{2, 0, 2}, {{0, 2}, {0, 1}, {0, 1, 3}}},
  };
  for (const auto& [s, R] : cases) EXPECT_EQ(generic_qzeta(s, R, 24), nested_oracle(s, R, 24));
}

TEST(GenericQzeta, ProductRule) {
  std::vector<std::tuple<int, PolyR, int, PolyR>> cases = {
      {2, {0, 1}, 3, {0, 0, 1}}, {1, {0, 1}, 1, {0, 1}}, {4, {0, 1, 1, 1}, 2, {0, frac(3, 2)}}};
  const int N = 30;
  for (const auto& [s1, R1, s2, R2] : cases) {
    PolyR R12(R1.size() + R2.size() - 1);
    for (std::size_t i = 0; i < R1.size(); ++i)
      for (std::size_t j = 0; j < R2.size(); ++j) R12[i + j] += R1[i] * R2[j];
    QSeries lhs = generic_qzeta({s1}, {R1}, N) * generic_qzeta({s2}, {R2}, N);
    QSeries rhs = generic_qzeta({s1, s2}, {R1, R2}, N) + generic_qzeta({s2, s1}, {R2, R1}, N) +
                  generic_qzeta({s1 + s2}, {R12}, N);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(GenericQzeta, DivergentInputs) {
  EXPECT_THROW(generic_qzeta({0}, {{0, 1}}, 5), DomainError);
  EXPECT_THROW(generic_qzeta({2}, {{1, 1}}, 5), DomainError);
}

TEST(PartitionGen, DepthOneAgreesWithDivisorSums) {
  // f = X^a Y^c at a single part size i with multiplicity m: sum i^a m^c q^{im}
  for (int a = 0; a <= 3; ++a)
    for (int c = 0; c <= 3; ++c) EXPECT_EQ(partition_gen({a}, {c}, 30), divisor_sum(a, c, 30));
  QSeries ones = partition_gen({0}, {0}, 10);
  std::vector<long> tau = {0, 1, 2, 2, 3, 2, 4, 2, 4, 3, 4};
  EXPECT_EQ(ones, series(tau, 10));
}

TEST(PartitionGen, DepthTwoBruteForce) {
  // partitions of 5 with two distinct part sizes: 4+1, 3+2, 3+1+1, 2+2+1, 2+1+1+1
  QSeries f = partition_gen({0, 0}, {0, 0}, 5);
  EXPECT_EQ(f.coefficient(5), 5);
  QSeries g = partition_gen({1, 0}, {0, 1}, 5);  // i_1 * m_2
  EXPECT_EQ(g.coefficient(5), 4 * 1 + 3 * 1 + 3 * 2 + 2 * 1 + 2 * 3);
}

TEST(Depth1ClosedForm, Examples) {
  EXPECT_EQ(depth1_balanced_closed_form(2, 0, 4), QSeries::from_coefficients({frac(-1, 24), 1, 3, 4, 7}, 4));
  QSeries f = depth1_balanced_closed_form(1, 1, 4);
  EXPECT_EQ(f.coefficient(0), frac(-1, 24));
  EXPECT_EQ(f.coefficient(1), 1);
  EXPECT_EQ(f.coefficient(2), 3);
  // Both delta terms fire at (1,0): -B_1/2 - B_1/2 = 1/2.
  EXPECT_EQ(depth1_balanced_closed_form(1, 0, 4).coefficient(0), frac(1, 2));
  // k + m odd: no constant term
  EXPECT_EQ(depth1_balanced_closed_form(2, 1, 4).coefficient(0), 0);
}
