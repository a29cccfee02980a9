#include "mbstat/market_core.hpp"

#include <cmath>

#include "mbstat/errors.hpp"
#include "mbstat/freq_stats.hpp"

namespace mbstat {
namespace {

constexpr double kMinDenominator = 1e-300;
constexpr double kJointMomentAgreement = 1e-9;

void require_equal(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(a) + " vs " + std::to_string(b) + " ticks");
  }
}

void fill_frequency(CorrelationReport& report, std::span<const double> x1,
                    std::span<const double> x2) {
  report.freq_corr = cov(x1, x2);
  const MomentSet s1 = moments(x1);
  const MomentSet s2 = moments(x2);
  report.freq_mean1 = s1.mean;
  report.freq_mean2 = s2.mean;
  const double p = pearson(report.freq_corr, s1.variance, s2.variance);
  if (std::isfinite(p)) report.freq_pearson = p;
}

void check_joint(const JointMoment& jm, const ClosedForm& cf) {
  const double scale = std::fabs(jm.value) + cf.term_scale() + std::fabs(cf.m1 * cf.m2);
  if (!(std::fabs(jm.value - jm.expansion) <= kJointMomentAgreement * scale)) {
    throw Error(ErrorCode::IdentityViolation, "joint moment routes disagree");
  }
}

}  // namespace

FlowMoments FlowMoments::from_sequences(std::span<const double> value1,
                                        std::span<const double> base1,
                                        std::span<const double> value2,
                                        std::span<const double> base2) {
  require_equal(value1.size(), base1.size());
  require_equal(value1.size(), value2.size());
  require_equal(value2.size(), base2.size());
  if (value1.empty()) throw Error(ErrorCode::EmptyInput, "window has no ticks");
  const auto n = static_cast<long double>(value1.size());
  auto mean_of = [&](std::span<const double> x) {
    long double s = 0;
    for (double v : x) s += v;
    return s / n;
  };
  auto joint_of = [&](std::span<const double> x, std::span<const double> y) {
    long double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long double>(x[i]) * y[i];
    return s / n;
  };
  FlowMoments m;
  m.c1 = mean_of(value1);
  m.b1 = mean_of(base1);
  m.c2 = mean_of(value2);
  m.b2 = mean_of(base2);
  m.c1c2 = joint_of(value1, value2);
  m.b1c2 = joint_of(base1, value2);
  m.c1b2 = joint_of(value1, base2);
  m.b1b2 = joint_of(base1, base2);
  auto centered = [&](std::span<const double> x, long double mx, std::span<const double> y,
                      long double my) {
    long double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / n;
  };
  m.cov_cc = centered(value1, m.c1, value2, m.c2);
  m.cov_bc = centered(base1, m.b1, value2, m.c2);
  m.cov_cb = centered(value1, m.c1, base2, m.b2);
  m.cov_bb = centered(base1, m.b1, base2, m.b2);
  return m;
}

void FlowMoments::derive_covariances() noexcept {
  cov_cc = c1c2 - c1 * c2;
  cov_bc = b1c2 - b1 * c2;
  cov_cb = c1b2 - c1 * b2;
  cov_bb = b1b2 - b1 * b2;
}

double ClosedForm::term_scale() const noexcept {
  return (std::fabs(cov_cc) + std::fabs(m1 * cov_bc) + std::fabs(m2 * cov_cb) +
          std::fabs(m1 * m2 * cov_bb)) /
         denominator;
}

ClosedForm closed_form(const FlowMoments& m) {
  if (!(m.b1b2 >= kMinDenominator) || !(m.b1 > 0) || !(m.b2 > 0)) {
    throw Error(ErrorCode::DegenerateDenominator, "base joint moment underflows");
  }
  const long double m1 = m.c1 / m.b1;
  const long double m2 = m.c2 / m.b2;
  const long double corr =
      (m.cov_cc - m1 * m.cov_bc - m2 * m.cov_cb + m1 * m2 * m.cov_bb) / m.b1b2;
  ClosedForm cf;
  cf.market_corr = static_cast<double>(corr);
  cf.m1 = static_cast<double>(m1);
  cf.m2 = static_cast<double>(m2);
  cf.denominator = static_cast<double>(m.b1b2);
  cf.c1c2 = static_cast<double>(m.c1c2);
  cf.cov_cc = static_cast<double>(m.cov_cc);
  cf.cov_bc = static_cast<double>(m.cov_bc);
  cf.cov_cb = static_cast<double>(m.cov_cb);
  cf.cov_bb = static_cast<double>(m.cov_bb);
  return cf;
}

double joint_moment_from_corr(const ClosedForm& cf) noexcept {
  return cf.m1 * cf.m2 + cf.market_corr;
}

double joint_moment_expansion(const ClosedForm& cf) noexcept {
  return (cf.c1c2 - cf.m1 * cf.cov_bc - cf.m2 * cf.cov_cb + 2.0 * cf.m1 * cf.m2 * cf.cov_bb) /
         cf.denominator;
}

double vwap(const Window& window) {
  return mean(window.values()) / mean(window.volumes());
}

double portfolio_return(std::span<const double> r, std::span<const double> investments) {
  require_equal(r.size(), investments.size());
  if (r.empty()) throw Error(ErrorCode::EmptyInput, "no assets");
  CompensatedSum weighted;
  CompensatedSum total;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(investments[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveInvestment, "investment " + std::to_string(i));
    }
    weighted.add(r[i] * investments[i]);
    total.add(investments[i]);
  }
  return weighted.value() / total.value();
}

double vawar(const ReturnView& returns) { return portfolio_return(returns.r, returns.c_past); }

CorrelationReport mb_corr_prices(const Window& w1, const Window& w2) {
  require_equal(w1.count(), w2.count());
  const auto c1 = w1.values();
  const auto u1 = w1.volumes();
  const auto c2 = w2.values();
  const auto u2 = w2.volumes();
  CorrelationReport report;
  report.family = CorrFamily::price_price;
  report.closed = closed_form(FlowMoments::from_sequences(c1, u1, c2, u2));
  fill_frequency(report, w1.prices(), w2.prices());
  report.n = w1.count();
  report.lag1 = w1.lag();
  report.lag2 = w2.lag();
  report.asset1 = w1.series().asset_id();
  report.asset2 = w2.series().asset_id();
  return report;
}

double mb_price_volatility(const Window& window) {
  return mb_corr_prices(window, window).market_corr();
}

CorrelationReport mb_corr_returns(const ReturnView& rv1, const ReturnView& rv2) {
  require_equal(rv1.size(), rv2.size());
  CorrelationReport report;
  report.family = CorrFamily::return_return;
  report.closed =
      closed_form(FlowMoments::from_sequences(rv1.value, rv1.c_past, rv2.value, rv2.c_past));
  fill_frequency(report, rv1.r, rv2.r);
  report.n = rv1.size();
  report.lag1 = rv1.alpha;
  report.lag2 = rv2.alpha;
  return report;
}

double mb_return_volatility(const ReturnView& rv) { return mb_corr_returns(rv, rv).market_corr(); }

CorrelationReport mb_corr_price_return(const Window& w1, const ReturnView& rv2) {
  require_equal(w1.count(), rv2.size());
  const auto c1 = w1.values();
  const auto u1 = w1.volumes();
  CorrelationReport report;
  report.family = CorrFamily::price_return;
  report.closed = closed_form(FlowMoments::from_sequences(c1, u1, rv2.value, rv2.c_past));
  fill_frequency(report, w1.prices(), rv2.r);
  report.n = w1.count();
  report.lag1 = w1.lag();
  report.lag2 = rv2.alpha;
  report.asset1 = w1.series().asset_id();
  return report;
}

JointMoment mb_joint_price_moment(const Window& w1, const Window& w2) {
  const ClosedForm cf = mb_corr_prices(w1, w2).closed;
  JointMoment jm{joint_moment_from_corr(cf), joint_moment_expansion(cf)};
  check_joint(jm, cf);
  return jm;
}

JointMoment mb_joint_return_moment(const ReturnView& rv1, const ReturnView& rv2) {
  const ClosedForm cf = mb_corr_returns(rv1, rv2).closed;
  JointMoment jm{joint_moment_from_corr(cf), joint_moment_expansion(cf)};
  check_joint(jm, cf);
  return jm;
}

}  // namespace mbstat
