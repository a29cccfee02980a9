#include "mbstat/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "expect_error.hpp"

namespace mbstat::oracle {
namespace {

using V = std::vector<double>;

TEST(MakeWeights, VolumeProduct) {
  const WeightVector w = make_weights(WeightKind::volume_product, V{1, 2, 1}, V{2, 1, 1});
  ASSERT_EQ(w.weights.size(), 3u);
  EXPECT_DOUBLE_EQ(w.weights[0], 0.4);
  EXPECT_DOUBLE_EQ(w.weights[1], 0.4);
  EXPECT_DOUBLE_EQ(w.weights[2], 0.2);
}

TEST(MakeWeights, EqualVolumesAreUniform) {
  const WeightVector w = make_weights(WeightKind::volume, V{3, 3, 3, 3});
  for (double x : w.weights) EXPECT_DOUBLE_EQ(x, 0.25);
}

TEST(MakeWeights, PastValueProduct) {
  const WeightVector z = make_weights(WeightKind::past_value_product, V{1, 2, 8}, V{1, 2, 8});
  EXPECT_DOUBLE_EQ(z.weights[0], 1.0 / 69);
  EXPECT_DOUBLE_EQ(z.weights[1], 4.0 / 69);
  EXPECT_DOUBLE_EQ(z.weights[2], 64.0 / 69);
}

TEST(MakeWeights, Mixed) {
  const WeightVector psi = make_weights(WeightKind::mixed, V{1, 3}, V{2, 2});
  EXPECT_DOUBLE_EQ(psi.weights[0], 0.25);
  EXPECT_DOUBLE_EQ(psi.weights[1], 0.75);
}

TEST(MakeWeights, InvalidInputs) {
  EXPECT_MBSTAT_ERROR(make_weights(WeightKind::volume, V{1, 0}), ErrorCode::NonPositiveInput);
  EXPECT_MBSTAT_ERROR(make_weights(WeightKind::volume_product, V{1, 2}, V{1}),
                      ErrorCode::LengthMismatch);
}

TEST(EmExpectation, Examples) {
  const WeightVector w{WeightKind::volume_product, {0.4, 0.4, 0.2}};
  EXPECT_DOUBLE_EQ(em_expectation(V{2, 8, 6}, w), 5.2);
  const WeightVector u{WeightKind::volume, {0.25, 0.25, 0.25, 0.25}};
  EXPECT_DOUBLE_EQ(em_expectation(V{1, 2, 3, 6}, u), 3.0);
  const WeightVector bad{WeightKind::volume, {0.5, 0.4}};
  EXPECT_MBSTAT_ERROR(em_expectation(V{1, 1}, bad), ErrorCode::UnnormalizedWeights);
}

TEST(OracleCorr, PricePriceWorkedInstance) {
  const V p1{2, 4, 3}, u1{1, 2, 1}, p2{1, 2, 2}, u2{2, 1, 1};
  EXPECT_DOUBLE_EQ(weighted_average(p1, u1), 3.25);
  EXPECT_DOUBLE_EQ(weighted_average(p2, u2), 1.5);
  EXPECT_DOUBLE_EQ(oracle_corr(CorrKind::price_price, {p1, p2, u1, u2}), 0.375);
  EXPECT_DOUBLE_EQ(oracle_corr(CorrKind::price_price, {p1, p2, u1, u2}, 3.25, 1.5), 0.375);
}

TEST(OracleCorr, ReturnReturnWorkedInstance) {
  const V r{2, 2, 0.5}, co{1, 2, 8};
  EXPECT_DOUBLE_EQ(oracle_corr(CorrKind::return_return, {r, r, co, co}), 672.0 / 2783.0);
}

TEST(OracleCorr, ConstantFirstSequence) {
  const V flat{3, 3, 3}, y{1, 5, 2}, b1{1, 2, 3}, b2{4, 1, 2};
  EXPECT_EQ(oracle_corr(CorrKind::price_price, {flat, y, b1, b2}), 0.0);
  EXPECT_EQ(oracle_corr(CorrKind::price_return, {flat, y, b1, b2}), 0.0);
}

TEST(OracleCorr, AbsScaleBoundsValue) {
  const V x{2, 4, 3}, y{1, 2, 2}, b1{1, 2, 1}, b2{2, 1, 1};
  const CorrInputs in{x, y, b1, b2};
  EXPECT_GE(oracle_abs_scale(CorrKind::price_price, in),
            std::fabs(oracle_corr(CorrKind::price_price, in)));
}

}  // namespace
}  // namespace mbstat::oracle
