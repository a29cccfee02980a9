#include "mbstat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "mbstat/oracle.hpp"

namespace mbstat::verify {

using rolling::Stat;

double relative_deviation(double closed, double oracle, double scale) {
  const double diff = std::fabs(closed - oracle);
  if (diff == 0.0) return 0.0;
  const double denom = std::max({std::fabs(closed), std::fabs(oracle), std::fabs(scale)});
  return denom > 0.0 ? diff / denom : diff;
}

bool Summary::passed() const noexcept {
  return std::all_of(families.begin(), families.end(),
                     [&](const FamilyDeviation& f) { return f.max_deviation <= tolerance; });
}

Summary run(const rolling::Engine& engine, double tolerance) {
  const auto& cfg = engine.config();
  const auto& tr = engine.tracks();
  const std::size_t n = cfg.window;

  enum Slot { kPrice, kReturn, kPriceReturn, kPriceVol, kReturnVol, kJointPrice, kJointReturn };
  const char* names[] = {"price_corr", "return_corr", "price_return_corr", "price_vol",
                         "return_vol", "joint_price_moment", "joint_return_moment"};
  const bool wanted[] = {cfg.stats.has(Stat::price_corr),
                         cfg.stats.has(Stat::return_corr),
                         cfg.stats.has(Stat::price_return_corr),
                         cfg.stats.has(Stat::price_vol),
                         cfg.stats.has(Stat::return_vol),
                         cfg.stats.has(Stat::joint_moments),
                         cfg.stats.has(Stat::joint_moments)};
  std::vector<FamilyDeviation> dev(7);
  for (int i = 0; i < 7; ++i) dev[i].family = names[i];

  auto record = [&](int slot, const rolling::WindowResult& w, double closed, double oracle,
                    double scale) {
    FamilyDeviation& d = dev[slot];
    const double r = relative_deviation(closed, oracle, scale);
    if (d.windows == 0 || r > d.max_deviation) {
      d.max_deviation = r;
      d.worst_window = w.index;
      d.worst_t_center = w.t_center;
    }
    ++d.windows;
  };

  engine.for_each_window([&](const rolling::WindowResult& w) {
    const std::size_t off = w.index * cfg.stride;
    auto span_of = [&](const std::vector<double>& v) {
      return std::span<const double>(v).subspan(off, n);
    };
    using oracle::CorrKind;
    if (wanted[kPrice] || wanted[kJointPrice]) {
      const oracle::CorrInputs in{span_of(tr.p1), span_of(tr.p2l), span_of(tr.u1),
                                  span_of(tr.u2l)};
      const double a1 = oracle::weighted_average(in.x, in.base1);
      const double a2 = oracle::weighted_average(in.y, in.base2);
      const double corr = oracle::oracle_corr(CorrKind::price_price, in, a1, a2);
      const ClosedForm& cf = w.price_corr.closed;
      if (wanted[kPrice]) record(kPrice, w, cf.market_corr, corr, cf.term_scale());
      if (wanted[kJointPrice]) {
        record(kJointPrice, w, joint_moment_from_corr(cf), a1 * a2 + corr,
               cf.term_scale() + std::fabs(cf.m1 * cf.m2));
      }
    }
    if (wanted[kReturn] || wanted[kJointReturn]) {
      const oracle::CorrInputs in{span_of(tr.r1), span_of(tr.r2), span_of(tr.co1),
                                  span_of(tr.co2)};
      const double h1 = oracle::weighted_average(in.x, in.base1);
      const double h2 = oracle::weighted_average(in.y, in.base2);
      const double corr = oracle::oracle_corr(CorrKind::return_return, in, h1, h2);
      const ClosedForm& cf = w.return_corr.closed;
      if (wanted[kReturn]) record(kReturn, w, cf.market_corr, corr, cf.term_scale());
      if (wanted[kJointReturn]) {
        record(kJointReturn, w, joint_moment_from_corr(cf), h1 * h2 + corr,
               cf.term_scale() + std::fabs(cf.m1 * cf.m2));
      }
    }
    if (wanted[kPriceReturn]) {
      const oracle::CorrInputs in{span_of(tr.p1), span_of(tr.r2), span_of(tr.u1),
                                  span_of(tr.co2)};
      const ClosedForm& cf = w.price_return_corr.closed;
      record(kPriceReturn, w, cf.market_corr, oracle::oracle_corr(CorrKind::price_return, in),
             cf.term_scale());
    }
    if (wanted[kPriceVol]) {
      const oracle::CorrInputs in{span_of(tr.p1), span_of(tr.p1), span_of(tr.u1),
                                  span_of(tr.u1)};
      const ClosedForm& cf = w.price_vol.closed;
      record(kPriceVol, w, cf.market_corr, oracle::oracle_corr(CorrKind::price_price, in),
             cf.term_scale());
    }
    if (wanted[kReturnVol]) {
      const oracle::CorrInputs in{span_of(tr.r1), span_of(tr.r1), span_of(tr.co1),
                                  span_of(tr.co1)};
      const ClosedForm& cf = w.return_vol.closed;
      record(kReturnVol, w, cf.market_corr, oracle::oracle_corr(CorrKind::return_return, in),
             cf.term_scale());
    }
  });

  Summary summary;
  summary.tolerance = tolerance;
  for (int i = 0; i < 7; ++i) {
    if (wanted[i]) summary.families.push_back(dev[i]);
  }
  return summary;
}

}  // namespace mbstat::verify
