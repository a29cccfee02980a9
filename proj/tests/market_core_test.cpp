#include "mbstat/market_core.hpp"

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "mbstat/freq_stats.hpp"
#include "support.hpp"

namespace mbstat {
namespace {

using test::make_series;
using V = std::vector<double>;

constexpr double kTol = 1e-14;

TEST(Vwap, Examples) {
  EXPECT_EQ(vwap(Window(make_series({2, 4, 3}, {1, 2, 1}), 0, 3)), 3.25);
  EXPECT_EQ(vwap(Window(make_series({1, 3}, {5, 5}), 0, 2)), 2.0);
  EXPECT_DOUBLE_EQ(vwap(Window(make_series({5, 5, 5}, {0.3, 7, 2}), 0, 3)), 5.0);
}

TEST(PortfolioReturn, Examples) {
  EXPECT_DOUBLE_EQ(portfolio_return(V{2, 2, 0.5}, V{1, 2, 8}), 10.0 / 11.0);
  EXPECT_DOUBLE_EQ(portfolio_return(V{2, 2, 0.5}, V{3, 3, 3}), 1.5);
  EXPECT_EQ(portfolio_return(V{1.07}, V{100}), 1.07);
  EXPECT_MBSTAT_ERROR(portfolio_return(V{1, 2}, V{1, 0}), ErrorCode::NonPositiveInvestment);
  EXPECT_MBSTAT_ERROR(portfolio_return(V{1, 2}, V{1}), ErrorCode::LengthMismatch);
}

class WorkedReturns : public ::testing::Test {
 protected:
  // r = [2,2,0.5], past values [1,2,8], values [2,4,4].
  ReturnView rv = compute_returns(Window(test::worked_returns_series(), 1, 3), 1);
};

TEST_F(WorkedReturns, Vawar) {
  EXPECT_NEAR(vawar(rv), 10.0 / 11.0, kTol);
  EXPECT_EQ(vawar(rv), portfolio_return(rv.r, rv.c_past));
}

TEST_F(WorkedReturns, Volatility) {
  EXPECT_NEAR(mb_return_volatility(rv), 672.0 / 2783.0, kTol);
}

TEST_F(WorkedReturns, SameAssetCorrelationIsVolatility) {
  EXPECT_EQ(mb_corr_returns(rv, rv).market_corr(), mb_return_volatility(rv));
}

TEST_F(WorkedReturns, JointMoment) {
  const JointMoment jm = mb_joint_return_moment(rv, rv);
  const double h = 10.0 / 11.0;
  EXPECT_NEAR(jm.value, h * h + 672.0 / 2783.0, kTol);
  EXPECT_NEAR(jm.expansion, jm.value, kTol);
  EXPECT_NEAR(jm.value, 100.0 / 121.0 + 672.0 / 2783.0, kTol);
}

TEST(Returns, ConstantPastValues) {
  // p = [1,2,4,2]: past values p(t-1) U(t) = 4 when U = 4 / p(t-1).
  const SeriesPtr s = make_series({1, 2, 4, 2}, {1, 4, 2, 1});
  const ReturnView rv = compute_returns(Window(s, 1, 3), 1);
  EXPECT_EQ(rv.c_past, (V{4, 4, 4}));
  EXPECT_NEAR(vawar(rv), 1.5, kTol);
  EXPECT_NEAR(mb_return_volatility(rv), 0.5, kTol);
  EXPECT_NEAR(mb_joint_return_moment(rv, rv).value, 2.75, kTol);
  EXPECT_NEAR(mb_corr_returns(rv, rv).market_corr(), cov(rv.r, rv.r), kTol);
}

TEST(Returns, ConstantReturns) {
  const SeriesPtr s = make_series({1, 2, 4, 8, 16}, {1, 3, 2, 5, 1});
  const SeriesPtr other = test::make_synth(4, 5);
  const ReturnView rv = compute_returns(Window(s, 1, 4), 1);
  const ReturnView rv2 = compute_returns(Window(other, 1, 4), 1);
  EXPECT_NEAR(vawar(rv), 2.0, kTol);
  EXPECT_NEAR(mb_return_volatility(rv), 0.0, kTol);
  EXPECT_NEAR(mb_corr_returns(rv, rv2).market_corr(), 0.0, 1e-12);
  EXPECT_NEAR(mb_joint_return_moment(rv, rv).value, 4.0, 1e-13);
}

class WorkedPrices : public ::testing::Test {
 protected:
  Window w1{test::worked_asset1(), 0, 3};
  Window w2{test::worked_asset2(), 0, 3};
};

TEST_F(WorkedPrices, Correlation) {
  const CorrelationReport r = mb_corr_prices(w1, w2);
  EXPECT_NEAR(r.market_corr(), 0.375, kTol);
  EXPECT_EQ(r.closed.m1, 3.25);
  EXPECT_EQ(r.closed.m2, 1.5);
  EXPECT_NEAR(r.closed.denominator, 5.0 / 3.0, kTol);
  EXPECT_NEAR(r.closed.cov_cb, -7.0 / 9.0, kTol);
  EXPECT_NEAR(r.freq_corr, cov(V{2, 4, 3}, V{1, 2, 2}), kTol);
  EXPECT_EQ(r.family, CorrFamily::price_price);
  EXPECT_EQ(r.n, 3u);
}

TEST_F(WorkedPrices, JointMoment) {
  const JointMoment jm = mb_joint_price_moment(w1, w2);
  EXPECT_NEAR(jm.value, 5.25, kTol);
  EXPECT_NEAR(jm.expansion, 5.25, kTol);
}

TEST(Prices, Volatility) {
  const Window w(make_series({1, 3}, {1, 3}), 0, 2);
  EXPECT_NEAR(mb_price_volatility(w), 0.45, kTol);
  EXPECT_EQ(mb_corr_prices(w, w).market_corr(), mb_price_volatility(w));
  const JointMoment jm = mb_joint_price_moment(w, w);
  EXPECT_NEAR(jm.expansion, 6.7, kTol);
  EXPECT_NEAR(jm.value, 2.5 * 2.5 + 0.45, kTol);

  EXPECT_NEAR(mb_price_volatility(Window(make_series({1, 3}, {1, 1}), 0, 2)), 1.0, kTol);
  EXPECT_NEAR(mb_price_volatility(Window(make_series({4, 4, 4}, {1, 8, 3}), 0, 3)), 0.0, kTol);
  EXPECT_NEAR(mb_joint_price_moment(Window(make_series({4, 4}, {1, 8}), 0, 2),
                                    Window(make_series({4, 4}, {1, 8}), 0, 2))
                  .value,
              16.0, kTol);
}

TEST(Prices, SingleTickHasZeroCorrelation) {
  const Window a(make_series({2}, {3}), 0, 1), b(make_series({5}, {1}), 0, 1);
  EXPECT_EQ(mb_corr_prices(a, b).market_corr(), 0.0);
}

TEST(Prices, ConstantVolumesReduceToFrequencyCovariance) {
  const Window a(make_series({2, 7, 3, 9}, {2, 2, 2, 2}), 0, 4);
  const Window b(make_series({1, 4, 4, 6}, {5, 5, 5, 5}), 0, 4);
  const CorrelationReport r = mb_corr_prices(a, b);
  EXPECT_NEAR(r.market_corr(), r.freq_corr, 1e-12);
  EXPECT_NEAR(r.closed.m1, r.freq_mean1, 1e-14);
}

TEST(Prices, LaggedViewPairsEarlierTicks) {
  const SeriesPtr s2 = make_series({9, 1, 2, 2}, {7, 2, 1, 1});
  const CorrelationReport lagged =
      mb_corr_prices(Window(test::worked_asset1(), 0, 3), Window(s2, 2, 3, 1));
  EXPECT_NEAR(lagged.market_corr(), 0.375, kTol);
}

TEST(Prices, LengthMismatch) {
  EXPECT_MBSTAT_ERROR(mb_corr_prices(Window(test::worked_asset1(), 0, 3),
                                     Window(test::worked_asset2(), 0, 2)),
                      ErrorCode::LengthMismatch);
}

TEST(PriceReturn, DegenerateEqualsFrequencyCovariance) {
  // p1 = [2,4] with U1 = [1,1]; r2 = [2,0.5] with past values [1,1].
  const Window w1(make_series({2, 4}, {1, 1}), 0, 2);
  const SeriesPtr s2 = make_series({1, 2, 1}, {1, 1, 0.5});
  const ReturnView rv2 = compute_returns(Window(s2, 1, 2), 1);
  ASSERT_EQ(rv2.c_past, (V{1, 1}));
  const CorrelationReport r = mb_corr_price_return(w1, rv2);
  EXPECT_NEAR(r.market_corr(), -0.75, kTol);
  EXPECT_NEAR(r.freq_corr, -0.75, kTol);
  EXPECT_EQ(r.family, CorrFamily::price_return);
}

TEST(PriceReturn, ConstantSidesGiveZero) {
  const SeriesPtr s = test::make_synth(9, 40);
  const Window flat(make_series(V(30, 5.0), V(30, 1.5)), 0, 30);
  const ReturnView rv = compute_returns(Window(s, 2, 30), 2);
  EXPECT_NEAR(mb_corr_price_return(flat, rv).market_corr(), 0.0, 1e-12);

  const SeriesPtr growth = make_series({1, 2, 4, 8, 16, 32}, {1, 2, 1, 3, 1, 1});
  const ReturnView constant_r = compute_returns(Window(growth, 1, 5), 1);
  const Window w1(s, 0, 5);
  EXPECT_NEAR(mb_corr_price_return(w1, constant_r).market_corr(), 0.0, 1e-12);
}

TEST(ClosedForm, JointMomentRoutesAgreeOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SeriesPtr a = test::make_synth(seed, 80), b = test::make_synth(seed + 100, 80);
    const Window w1(a, 3, 70), w2(b, 3, 70, 2);
    const JointMoment jp = mb_joint_price_moment(w1, w2);
    EXPECT_NEAR(jp.value, jp.expansion, 1e-12 * jp.value);
    const ReturnView r1 = compute_returns(w1, 3), r2 = compute_returns(Window(b, 3, 70), 1);
    const JointMoment jr = mb_joint_return_moment(r1, r2);
    EXPECT_NEAR(jr.value, jr.expansion, 1e-12 * jr.value);
  }
}

TEST(ClosedForm, DegenerateDenominator) {
  FlowMoments m;
  m.b1 = m.b2 = 1;
  EXPECT_MBSTAT_ERROR(closed_form(m), ErrorCode::DegenerateDenominator);
}

}  // namespace
}  // namespace mbstat
