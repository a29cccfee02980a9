// Seeded synthetic trade series.
//
// Generator: std::mt19937_64 seeded with `seed`; standard normals by the
// Box-Muller cosine branch from two 53-bit uniforms
//   u1 = ((x >> 11) + 1) * 2^-53,  u2 = (y >> 11) * 2^-53,
//   z  = sqrt(-2 ln u1) cos(2 pi u2).
// Prices follow p_i = p_{i-1} exp(sd * z_i); volumes are exp(mu + s * z').
// Draw order per tick: price step (skipped at tick 0), then volume.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mbstat/trade_series.hpp"

namespace mbstat {

inline constexpr std::string_view kGeneratorId = "mt19937_64+box-muller/v1";

enum class SynthMode { free, constant_volume, constant_past_value };

struct SynthConfig {
  std::size_t n_ticks = 1000;
  std::uint64_t seed = 0;
  double price_start = 100.0;
  double log_price_step_sd = 0.01;
  double volume_log_mean = 0.0;
  double volume_log_sd = 0.5;
  SynthMode mode = SynthMode::free;
  std::int64_t alpha = 1;  // horizon (grid steps) for constant_past_value
  std::int64_t t0 = 0;
  std::string asset_id = "synthetic";
};

/// constant_volume: every U = exp(volume_log_mean).
/// constant_past_value: U(t_i) = K / p(t_i - alpha) with K = price_start *
/// exp(volume_log_mean), so C_o(t_i, alpha) = K for every i >= alpha.
/// Throws InvalidConfig.
TradeSeries gen_trades(const SynthConfig& config);

SynthMode parse_synth_mode(std::string_view name);
std::string_view to_string(SynthMode mode);

}  // namespace mbstat
