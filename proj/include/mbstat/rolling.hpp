// Rolling-window evaluation of every statistic family over a pair of series.
//
// Two implementations of the same contract:
//   * `reference_window` rebuilds Window / ReturnView objects for one window
//     and calls the market_core operations. Serial, O(N) per window; kept
//     as the ground truth for the fast path and for benchmarks.
//   * `Engine::for_each_window` keeps compensated running sums of every
//     trade-flow sequence and pairwise product, updated add-one/drop-one.
//     Windows are cut into blocks of `recompute_every` positions; each block
//     starts from a full recomputation, so blocks are independent and are
//     evaluated in parallel with OpenMP. Results are delivered in window order
//     regardless of the thread count.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mbstat/freq_stats.hpp"
#include "mbstat/market_core.hpp"
#include "mbstat/trade_series.hpp"

namespace mbstat::rolling {

enum class Stat : unsigned {
  price_corr = 1u << 0,
  return_corr = 1u << 1,
  price_return_corr = 1u << 2,
  price_vol = 1u << 3,
  return_vol = 1u << 4,
  joint_moments = 1u << 5,
};

class StatSet {
 public:
  StatSet() = default;
  static StatSet all();
  /// Comma-separated names; throws InvalidConfig on unknown names.
  static StatSet parse(std::string_view list);

  StatSet& add(Stat s) noexcept {
    bits_ |= static_cast<unsigned>(s);
    return *this;
  }
  bool has(Stat s) const noexcept { return (bits_ & static_cast<unsigned>(s)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }

  bool needs_asset1_returns() const noexcept;
  bool needs_asset2_lagged() const noexcept;
  bool needs_asset2_returns() const noexcept;

 private:
  unsigned bits_ = 0;
};

struct EngineConfig {
  std::int64_t alpha = 1;  // return horizon of asset 1, time units
  std::int64_t beta = 0;   // price lag and return horizon of asset 2, time units
  std::size_t window = 256;
  std::size_t stride = 1;
  StatSet stats = StatSet::all();
  int threads = 1;  // <= 0: OpenMP default
  std::size_t recompute_every = 4096;
};

/// One statistic family evaluated on one window.
struct FamilyResult {
  ClosedForm closed;
  double freq_value = 0.0;  // frequency covariance (or variance)
  double freq_joint = 0.0;  // frequency joint moment (1/N) sum x y
};

struct WindowResult {
  std::size_t index = 0;  // window position
  double t_center = 0.0;
  FamilyResult price_corr;         // p1(t) vs p2(t - beta)
  FamilyResult return_corr;        // r1(t, alpha) vs r2(t, beta)
  FamilyResult price_return_corr;  // p1(t) vs r2(t, beta)
  FamilyResult price_vol;          // p1 against itself
  FamilyResult return_vol;         // r1 against itself
};

/// Anchor-time aligned per-tick inputs. Entry j belongs to anchor time
/// first_time + j * epsilon; unused tracks are empty.
struct AlignedTracks {
  std::int64_t first_time = 0;
  std::int64_t epsilon = 1;
  std::size_t size = 0;
  std::vector<double> p1, u1, c1, co1, r1;  // asset 1 at t (returns over alpha)
  std::vector<double> p2l, u2l, c2l;        // asset 2 at t - beta
  std::vector<double> c2, co2, r2;          // asset 2 at t (returns over beta)
};

class Engine {
 public:
  /// Validates the request against both grids. Throws InvalidConfig for bad
  /// flags, GridMismatch / LagNotOnGrid for incompatible grids, MissingHistory
  /// when fewer than `window` anchor times have all required history.
  Engine(SeriesPtr asset1, SeriesPtr asset2, EngineConfig config);

  const EngineConfig& config() const noexcept { return config_; }
  const AlignedTracks& tracks() const noexcept { return tracks_; }
  std::size_t window_count() const noexcept { return window_count_; }
  double t_center(std::size_t window_index) const noexcept;

  /// Incremental, block-parallel evaluation; `sink` sees windows in order.
  void for_each_window(const std::function<void(const WindowResult&)>& sink) const;

  /// Incremental evaluation of windows [first, last) on the calling thread,
  /// with a full recomputation at `first`.
  void compute_block(std::size_t first, std::size_t last, WindowResult* out) const;

  /// Serial reference through the public Window/ReturnView operations.
  WindowResult reference_window(std::size_t window_index) const;

 private:
  struct Slot {
    const double* a = nullptr;
    const double* b = nullptr;  // null for a plain sum
  };
  std::size_t slot(const std::vector<double>& a);
  std::size_t slot(const std::vector<double>& a, const std::vector<double>& b);
  static void accumulate(const Slot* slots, CompensatedSum* acc, std::size_t count,
                         std::size_t lo, std::size_t hi, bool remove);
  static void slide(const Slot* slots, CompensatedSum* acc, std::size_t count, std::size_t added,
                    std::size_t removed);
  void build_tracks();
  void plan_slots();
  void finalize(const std::vector<long double>& sums, std::size_t window_index,
                WindowResult& out) const;

  SeriesPtr asset1_;
  SeriesPtr asset2_;
  EngineConfig config_;
  AlignedTracks tracks_;
  std::size_t window_count_ = 0;
  std::vector<Slot> slots_;

  // Slot indices per family: value1, base1, value2, base2, c1c2, b1c2, c1b2,
  // b1b2, x1, x2, x1x2 (x = price or return).
  struct FamilySlots {
    std::size_t idx[11] = {};
  };
  FamilySlots price_slots_, return_slots_, price_return_slots_, price_vol_slots_,
      return_vol_slots_;
};

std::string_view family_name(Stat s);

}  // namespace mbstat::rolling
