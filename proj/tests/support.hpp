// Shared fixtures for the test binaries.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "mbstat/synth.hpp"
#include "mbstat/trade_series.hpp"

namespace mbstat::test {

inline SeriesPtr make_series(const std::vector<double>& prices, const std::vector<double>& volumes,
                             std::int64_t t0 = 0, std::string id = "x") {
  std::vector<TradeTick> ticks;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    ticks.push_back({t0 + static_cast<std::int64_t>(i), prices[i], volumes[i], 0.0});
  }
  return std::make_shared<const TradeSeries>(std::move(id), std::move(ticks));
}

inline SeriesPtr make_synth(std::uint64_t seed, std::size_t n, SynthMode mode = SynthMode::free,
                            std::int64_t alpha = 1) {
  SynthConfig c;
  c.seed = seed;
  c.n_ticks = n;
  c.mode = mode;
  c.alpha = alpha;
  return std::make_shared<const TradeSeries>(gen_trades(c));
}

/// The three-tick worked pair: p1=[2,4,3], U1=[1,2,1]; p2=[1,2,2], U2=[2,1,1].
inline SeriesPtr worked_asset1() { return make_series({2, 4, 3}, {1, 2, 1}, 0, "worked1"); }
inline SeriesPtr worked_asset2() { return make_series({1, 2, 2}, {2, 1, 1}, 0, "worked2"); }

/// Grid prices [1,2,4,2] at t=0..3 with volumes [1,1,1,2]; returns over one
/// step on t=1..3 are r=[2,2,0.5] with past values [1,2,8].
inline SeriesPtr worked_returns_series() { return make_series({1, 2, 4, 2}, {1, 1, 1, 2}); }

inline double rel_diff(double a, double b) {
  const double d = std::fabs(a - b);
  if (d == 0.0) return 0.0;
  return d / std::max(std::fabs(a), std::fabs(b));
}

/// A fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& stem) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (stem + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace mbstat::test
