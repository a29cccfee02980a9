#include "mbstat/freq_stats.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "expect_error.hpp"

namespace mbstat {
namespace {

using V = std::vector<double>;

TEST(Mean, Basic) {
  EXPECT_DOUBLE_EQ(mean(V{2, 8, 3}), 13.0 / 3.0);
  EXPECT_EQ(mean(V{4.5}), 4.5);
  EXPECT_MBSTAT_ERROR(mean(V{}), ErrorCode::EmptyInput);
}

TEST(JointMoment, Basic) {
  EXPECT_DOUBLE_EQ(joint_moment(V{2, 8, 3}, V{2, 2, 2}), 26.0 / 3.0);
  EXPECT_DOUBLE_EQ(joint_moment(V{2, 8, 3}, V{1, 1, 1}), mean(V{2, 8, 3}));
  EXPECT_MBSTAT_ERROR(joint_moment(V{1, 2, 3}, V{1, 2}), ErrorCode::LengthMismatch);
}

TEST(Cov, Basic) {
  EXPECT_NEAR(cov(V{2, 8, 3}, V{2, 1, 1}), -7.0 / 9.0, 1e-15);
  EXPECT_EQ(cov(V{5, 5, 5}, V{1, 9, 4}), 0.0);
  EXPECT_EQ(cov(V{3}, V{7}), 0.0);
}

TEST(Moments, Basic) {
  const MomentSet m = moments(V{2, 4, 4});
  EXPECT_DOUBLE_EQ(m.mean, 10.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.second_moment, 12.0);
  EXPECT_NEAR(m.variance, 8.0 / 9.0, 1e-15);
  EXPECT_EQ(moments(V{3, 3, 3, 3}).variance, 0.0);
  EXPECT_EQ(moments(V{1, 3}).variance, 1.0);
}

TEST(Pearson, UndefinedForConstantSequences) {
  EXPECT_DOUBLE_EQ(pearson(1.0, 4.0, 1.0), 0.5);
  EXPECT_TRUE(std::isnan(pearson(0.0, 0.0, 1.0)));
}

class CovProperties : public ::testing::TestWithParam<int> {
 protected:
  V draw(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d(50.0, 10.0);
    V out(n);
    for (double& x : out) x = d(rng);
    return out;
  }
};

TEST_P(CovProperties, SymmetricBilinearAndConsistentWithVariance) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  const std::size_t n = 2 + static_cast<std::size_t>(GetParam()) * 13 % 200;
  const V x = draw(rng, n), y = draw(rng, n), z = draw(rng, n);
  const double scale = 1e-12 * 1e4;

  EXPECT_NEAR(cov(x, y), cov(y, x), scale);
  EXPECT_NEAR(cov(x, x), moments(x).variance, scale);
  EXPECT_GE(cov(x, x), 0.0);

  V combo(n);
  for (std::size_t i = 0; i < n; ++i) combo[i] = 2.5 * x[i] - 0.5 * z[i] + 7.0;
  EXPECT_NEAR(cov(combo, y), 2.5 * cov(x, y) - 0.5 * cov(z, y), scale);
  EXPECT_NEAR(joint_moment(x, y), cov(x, y) + mean(x) * mean(y), 1e-12 * joint_moment(x, y));
}

INSTANTIATE_TEST_SUITE_P(Seeds, CovProperties, ::testing::Range(0, 50));

TEST(CompensatedSum, SlidingWindowStaysAccurate) {
  std::mt19937_64 rng(1);
  std::lognormal_distribution<double> d(0.0, 3.0);
  V xs(100000);
  for (double& x : xs) x = d(rng);
  const std::size_t n = 64;
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s.add(xs[i]);
  for (std::size_t i = n; i < xs.size(); ++i) {
    s.add(xs[i]);
    s.subtract(xs[i - n]);
  }
  long double exact = 0;
  for (std::size_t i = xs.size() - n; i < xs.size(); ++i) exact += xs[i];
  EXPECT_NEAR(s.value(), static_cast<double>(exact), 1e-13 * static_cast<double>(exact));
}

TEST(CompensatedSum, ProductsAreExact) {
  CompensatedSum s;
  const double x = 1.0 + 0x1p-30, y = 1.0 - 0x1p-30;  // x*y = 1 - 2^-60
  s.add_product(x, y);
  s.subtract(1.0);
  EXPECT_EQ(s.precise_value(), -0x1p-60L);
}

}  // namespace
}  // namespace mbstat
