// Market-based (trade-weighted) averages, correlations and volatilities.
//
// Every market-based correlation here has the same shape. Each side i has a
// trade value C_i and a "base" B_i whose ratio is the quantity being
// correlated: price = C/U (base = volume), return = C/C_o (base = past value).
// With m_i = mean(C_i) / mean(B_i) the market-based average of side i,
//
//   corr = [cov(C1,C2) - m1 cov(B1,C2) - m2 cov(C1,B2) + m1 m2 cov(B1,B2)]
//          / mean(B1 B2)
//
// where cov is the frequency-based joint moment minus the product of means.
// Price/price uses (U1, U2), return/return (C_o1, C_o2), price/return (U1, C_o2).
// The closed forms only ever look at moments of C, U and C_o.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "mbstat/trade_series.hpp"

namespace mbstat {

enum class CorrFamily { price_price, return_return, price_return };

/// Frequency-based means, joint moments and covariances of two (value, base)
/// pairs. Carried in extended precision: the closed form subtracts terms that
/// can be many orders of magnitude larger than the result.
struct FlowMoments {
  long double c1 = 0, b1 = 0, c2 = 0, b2 = 0;          // means
  long double c1c2 = 0, b1c2 = 0, c1b2 = 0, b1b2 = 0;  // joint moments
  long double cov_cc = 0, cov_bc = 0, cov_cb = 0, cov_bb = 0;

  /// Covariances by the centered two-pass formula.
  static FlowMoments from_sequences(std::span<const double> value1, std::span<const double> base1,
                                    std::span<const double> value2, std::span<const double> base2);
  /// Fills the covariances as joint moment minus product of means (running sums).
  void derive_covariances() noexcept;
};

/// Closed-form output together with every term that enters it.
struct ClosedForm {
  double market_corr = 0.0;
  double m1 = 0.0;  // a1 or h1
  double m2 = 0.0;  // a2 or h2
  double denominator = 0.0;  // UU, C_oC_o or UC_o
  double cov_cc = 0.0;       // cov(C1, C2)
  double cov_bc = 0.0;       // cov(B1, C2): UC / C_oC / UC
  double cov_cb = 0.0;       // cov(C1, B2): CU / CC_o / CC_o
  double cov_bb = 0.0;       // cov(B1, B2): UU / C_oC_o / UC_o
  double c1c2 = 0.0;         // joint moment of values, used by the moment expansion

  /// Sum of the magnitudes of the numerator terms over the denominator. A
  /// natural scale for judging the rounding error of market_corr.
  double term_scale() const noexcept;
};

/// Throws DegenerateDenominator when mean(B1 B2) < 1e-300.
ClosedForm closed_form(const FlowMoments& m);

/// Joint market-based moment m1 m2 + corr, and its direct expansion
/// [CC - m1 cov(B1,C2) - m2 cov(C1,B2) + 2 m1 m2 cov(B1,B2)] / mean(B1 B2).
double joint_moment_from_corr(const ClosedForm& cf) noexcept;
double joint_moment_expansion(const ClosedForm& cf) noexcept;

struct CorrelationReport {
  CorrFamily family = CorrFamily::price_price;
  ClosedForm closed;          // market_corr and its components
  double freq_corr = 0.0;     // frequency covariance of the raw per-tick sequences
  double freq_mean1 = 0.0;    // pi or rho of side 1
  double freq_mean2 = 0.0;
  std::optional<double> freq_pearson;  // normalized frequency correlation, when defined
  std::size_t n = 0;
  std::int64_t lag1 = 0;  // 0 for prices, alpha for returns
  std::int64_t lag2 = 0;  // beta
  std::string asset1, asset2;

  double market_corr() const noexcept { return closed.market_corr; }
};

/// VWAP: mean(C) / mean(U).
double vwap(const Window& window);

/// Investment-weighted return sum(r X) / sum(X).
double portfolio_return(std::span<const double> r, std::span<const double> investments);

/// VaWAR: the past-value weighted mean of returns, portfolio_return(r, C_o).
double vawar(const ReturnView& returns);

/// Prices of w1 against prices of w2 (w2 is usually a lagged view).
CorrelationReport mb_corr_prices(const Window& w1, const Window& w2);
double mb_price_volatility(const Window& window);

CorrelationReport mb_corr_returns(const ReturnView& rv1, const ReturnView& rv2);
double mb_return_volatility(const ReturnView& rv);

CorrelationReport mb_corr_price_return(const Window& w1, const ReturnView& rv2);

struct JointMoment {
  double value = 0.0;      // m1 m2 + corr
  double expansion = 0.0;  // direct expansion in trade-flow moments
};

/// Market-based E[p1 p2]; throws IdentityViolation if the two routes disagree.
JointMoment mb_joint_price_moment(const Window& w1, const Window& w2);
/// Market-based E[r1 r2]; same contract.
JointMoment mb_joint_return_moment(const ReturnView& rv1, const ReturnView& rv2);

}  // namespace mbstat
