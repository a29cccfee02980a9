// Tick-level trade data on a uniform time grid.
//
// Times are integers (grid units). A series has constant spacing epsilon;
// lags are expressed in the same time units and must be multiples of epsilon.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mbstat {

struct TradeTick {
  std::int64_t t = 0;
  double price = 0.0;
  double volume = 0.0;
  double value = 0.0;  // always price * volume after validation
};

class TradeSeries {
 public:
  /// Validates positivity and grid uniformity; recomputes value = price * volume.
  /// A declared value deviating more than 1e-9 relative is a ValueMismatch.
  TradeSeries(std::string asset_id, std::vector<TradeTick> ticks);

  const std::string& asset_id() const noexcept { return asset_id_; }
  std::int64_t epsilon() const noexcept { return epsilon_; }
  std::span<const TradeTick> ticks() const noexcept { return ticks_; }
  std::size_t size() const noexcept { return ticks_.size(); }
  const TradeTick& operator[](std::size_t i) const { return ticks_[i]; }
  std::int64_t start_time() const noexcept { return ticks_.front().t; }
  std::int64_t end_time() const noexcept { return ticks_.back().t; }

  /// Number of grid steps `lag` spans; throws LagNotOnGrid.
  std::int64_t lag_steps(std::int64_t lag) const;

 private:
  std::string asset_id_;
  std::vector<TradeTick> ticks_;
  std::int64_t epsilon_ = 1;
};

using SeriesPtr = std::shared_ptr<const TradeSeries>;

/// Parses `t,price,volume[,value]` CSV. Value column, when present, is only checked.
TradeSeries parse_trades(std::string_view text, std::string asset_id = {});

/// Canonical form: header `t,price,volume`, LF endings, shortest round-trip decimals.
std::string serialize_trades(const TradeSeries& series);

/// Reads and parses a CSV file; the asset id is the file stem.
TradeSeries load_trades(const std::filesystem::path& path);

/// N consecutive ticks of one series, optionally viewed `lag` time units in the past:
/// tick i of the window is the source tick at t_i - lag.
class Window {
 public:
  /// `anchor_index` is the series index of the first unlagged tick; only the
  /// lagged ticks have to exist.
  Window(SeriesPtr series, std::size_t anchor_index, std::size_t count, std::int64_t lag = 0);

  const TradeSeries& series() const noexcept { return *series_; }
  const SeriesPtr& series_ptr() const noexcept { return series_; }
  std::size_t anchor_index() const noexcept { return anchor_; }
  std::size_t count() const noexcept { return count_; }
  std::int64_t lag() const noexcept { return lag_; }

  /// Series index of the i-th windowed tick after applying the lag.
  std::size_t source_index(std::size_t i) const noexcept { return first_ + i; }
  const TradeTick& tick(std::size_t i) const noexcept { return (*series_)[first_ + i]; }

  std::vector<double> prices() const;
  std::vector<double> volumes() const;
  std::vector<double> values() const;

  friend bool operator==(const Window& a, const Window& b) noexcept {
    return a.series_ == b.series_ && a.anchor_ == b.anchor_ && a.count_ == b.count_ &&
           a.lag_ == b.lag_;
  }

 private:
  SeriesPtr series_;
  std::size_t anchor_;
  std::size_t count_;
  std::int64_t lag_;
  std::size_t first_;
};

/// Ticks with t in [center - half_width, center + half_width]; throws EmptyWindow.
Window slice_window(SeriesPtr series, std::int64_t center, std::int64_t half_width);

/// Shifts the window a further `lag` time units into the past.
Window lag_view(const Window& window, std::int64_t lag);

/// Per-tick returns over horizon alpha and the past values they imply.
struct ReturnView {
  std::vector<double> r;       // p(t_i) / p(t_i - alpha)
  std::vector<double> c_past;  // p(t_i - alpha) * U(t_i)
  std::vector<double> value;   // C(t_i) = p(t_i) * U(t_i)
  std::int64_t alpha = 0;

  std::size_t size() const noexcept { return r.size(); }
};

/// Throws MissingHistory / LagNotOnGrid; checks C = r * C_o to 1e-12 relative.
ReturnView compute_returns(const Window& window, std::int64_t alpha);

}  // namespace mbstat
