#include "mbstat/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mbstat/errors.hpp"

namespace mbstat {
namespace {

class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

void validate(const SynthConfig& c) {
  if (c.n_ticks < 2) throw Error(ErrorCode::InvalidConfig, "n_ticks must be at least 2");
  if (!(c.price_start > 0.0) || !std::isfinite(c.price_start)) {
    throw Error(ErrorCode::InvalidConfig, "price_start must be positive");
  }
  if (!(c.log_price_step_sd >= 0.0) || !(c.volume_log_sd >= 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "standard deviations must be nonnegative");
  }
  if (!std::isfinite(c.volume_log_mean)) {
    throw Error(ErrorCode::InvalidConfig, "volume_log_mean must be finite");
  }
  if (c.mode == SynthMode::constant_past_value &&
      (c.alpha < 1 || static_cast<std::size_t>(c.alpha) >= c.n_ticks)) {
    throw Error(ErrorCode::InvalidConfig, "constant_past_value needs 1 <= alpha < n_ticks");
  }
}

}  // namespace

TradeSeries gen_trades(const SynthConfig& config) {
  validate(config);
  NormalSource normal(config.seed);
  std::vector<TradeTick> ticks(config.n_ticks);
  const double constant_volume = std::exp(config.volume_log_mean);
  const double past_value = config.price_start * constant_volume;
  const auto horizon = static_cast<std::size_t>(config.alpha);

  double price = config.price_start;
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    if (i > 0) price *= std::exp(config.log_price_step_sd * normal.next());
    const double log_volume_draw = normal.next();
    TradeTick& tick = ticks[i];
    tick.t = config.t0 + static_cast<std::int64_t>(i);
    tick.price = price;
    switch (config.mode) {
      case SynthMode::free:
        tick.volume = std::exp(config.volume_log_mean + config.volume_log_sd * log_volume_draw);
        break;
      case SynthMode::constant_volume:
        tick.volume = constant_volume;
        break;
      case SynthMode::constant_past_value:
        tick.volume = past_value / (i >= horizon ? ticks[i - horizon].price : price);
        break;
    }
  }
  return TradeSeries(config.asset_id, std::move(ticks));
}

SynthMode parse_synth_mode(std::string_view name) {
  if (name == "free") return SynthMode::free;
  if (name == "constant-volume" || name == "constant_volume") return SynthMode::constant_volume;
  if (name == "constant-past-value" || name == "constant_past_value") {
    return SynthMode::constant_past_value;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(SynthMode mode) {
  switch (mode) {
    case SynthMode::free: return "free";
    case SynthMode::constant_volume: return "constant-volume";
    case SynthMode::constant_past_value: return "constant-past-value";
  }
  return "free";
}

}  // namespace mbstat
