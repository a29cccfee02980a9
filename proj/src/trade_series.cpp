#include "mbstat/trade_series.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <utility>

#include "mbstat/errors.hpp"

namespace mbstat {
namespace {

constexpr double kValueTolerance = 1e-9;
constexpr double kReturnIdentityTolerance = 1e-12;

std::string row_label(std::size_t line) { return "line " + std::to_string(line); }

template <typename T>
T parse_number(std::string_view field, std::size_t line) {
  T out{};
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw Error(ErrorCode::MalformedInput,
                row_label(line) + ": cannot parse '" + std::string(field) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) {
      throw Error(ErrorCode::MalformedInput, row_label(line) + ": non-finite number");
    }
  }
  return out;
}

/// Splits a row into at most four fields; returns the field count (five
/// means "more than four").
std::size_t split_fields(std::string_view line, std::array<std::string_view, 4>& out) {
  std::size_t count = 0;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (count == out.size()) return count + 1;
    if (comma == std::string_view::npos) {
      out[count++] = line.substr(start);
      return count;
    }
    out[count++] = line.substr(start, comma - start);
    start = comma + 1;
  }
}

void append_double(std::string& out, double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, ptr);
}

}  // namespace

TradeSeries::TradeSeries(std::string asset_id, std::vector<TradeTick> ticks)
    : asset_id_(std::move(asset_id)), ticks_(std::move(ticks)) {
  if (ticks_.empty()) throw Error(ErrorCode::EmptyInput, "trade series has no ticks");
  if (ticks_.size() >= 2) epsilon_ = ticks_[1].t - ticks_[0].t;

  for (std::size_t i = 0; i < ticks_.size(); ++i) {
    TradeTick& tick = ticks_[i];
    auto where = [&] { return "tick " + std::to_string(i) + " (t=" + std::to_string(tick.t) + ")"; };
    if (!(tick.price > 0.0) || !std::isfinite(tick.price)) {
      throw Error(ErrorCode::NonPositivePrice, where());
    }
    if (!(tick.volume > 0.0) || !std::isfinite(tick.volume)) {
      throw Error(ErrorCode::NonPositiveVolume, where());
    }
    const double value = tick.price * tick.volume;
    // A zero declared value means "not given".
    if (tick.value != 0.0 && std::fabs(tick.value - value) > kValueTolerance * value) {
      throw Error(ErrorCode::ValueMismatch, where() + ": declared value differs from price*volume");
    }
    tick.value = value;
    if (i > 0) {
      const std::int64_t step = tick.t - ticks_[i - 1].t;
      if (step == 0) throw Error(ErrorCode::DuplicateTimestamp, where());
      if (step != epsilon_ || step < 0) {
        throw Error(ErrorCode::NonUniformSpacing,
                    where() + ": step " + std::to_string(step) + ", expected " +
                        std::to_string(epsilon_));
      }
    }
  }
}

std::int64_t TradeSeries::lag_steps(std::int64_t lag) const {
  if (lag < 0 || lag % epsilon_ != 0) {
    throw Error(ErrorCode::LagNotOnGrid, "lag " + std::to_string(lag) +
                                             " is not a nonnegative multiple of epsilon " +
                                             std::to_string(epsilon_));
  }
  return lag / epsilon_;
}

TradeSeries parse_trades(std::string_view text, std::string asset_id) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    while (pos < text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) return true;
    }
    return false;
  };

  std::string_view line;
  if (!next_line(line)) throw Error(ErrorCode::EmptyInput, "no header row");
  bool has_value = false;
  if (line == "t,price,volume,value") {
    has_value = true;
  } else if (line != "t,price,volume") {
    throw Error(ErrorCode::MalformedInput,
                "expected header 't,price,volume[,value]', got '" + std::string(line) + "'");
  }
  const std::size_t columns = has_value ? 4 : 3;

  std::vector<TradeTick> ticks;
  ticks.reserve(std::count(text.begin(), text.end(), '\n'));
  std::array<std::string_view, 4> fields;
  while (next_line(line)) {
    if (split_fields(line, fields) != columns) {
      throw Error(ErrorCode::MalformedInput, row_label(line_no) + ": expected " +
                                                 std::to_string(columns) + " fields");
    }
    TradeTick tick;
    tick.t = parse_number<std::int64_t>(fields[0], line_no);
    tick.price = parse_number<double>(fields[1], line_no);
    tick.volume = parse_number<double>(fields[2], line_no);
    if (has_value) {
      tick.value = parse_number<double>(fields[3], line_no);
      if (tick.value == 0.0) {
        throw Error(ErrorCode::ValueMismatch, row_label(line_no) + ": zero trade value");
      }
    }
    ticks.push_back(tick);
  }
  if (ticks.empty()) throw Error(ErrorCode::EmptyInput, "no data rows");
  return TradeSeries(std::move(asset_id), std::move(ticks));
}

std::string serialize_trades(const TradeSeries& series) {
  std::string out = "t,price,volume\n";
  out.reserve(series.size() * 40);
  for (const auto& tick : series.ticks()) {
    out += std::to_string(tick.t);
    out += ',';
    append_double(out, tick.price);
    out += ',';
    append_double(out, tick.volume);
    out += '\n';
  }
  return out;
}

TradeSeries load_trades(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  std::string text(std::filesystem::file_size(path), '\0');
  in.read(text.data(), static_cast<std::streamsize>(text.size()));
  if (in.gcount() != static_cast<std::streamsize>(text.size())) {
    throw std::ios_base::failure("cannot read " + path.string());
  }
  return parse_trades(text, path.stem().string());
}

Window::Window(SeriesPtr series, std::size_t anchor_index, std::size_t count, std::int64_t lag)
    : series_(std::move(series)), anchor_(anchor_index), count_(count), lag_(lag) {
  if (count_ == 0) throw Error(ErrorCode::EmptyWindow, "window has no ticks");
  const auto steps = static_cast<std::size_t>(series_->lag_steps(lag_));
  if (steps > anchor_) {
    throw Error(ErrorCode::MissingHistory,
                "lag " + std::to_string(lag_) + " reaches before the start of series '" +
                    series_->asset_id() + "'");
  }
  first_ = anchor_ - steps;
  if (first_ + count_ > series_->size()) {
    throw Error(ErrorCode::EmptyWindow, "window extends past the end of the series");
  }
}

std::vector<double> Window::prices() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = tick(i).price;
  return out;
}

std::vector<double> Window::volumes() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = tick(i).volume;
  return out;
}

std::vector<double> Window::values() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = tick(i).value;
  return out;
}

Window slice_window(SeriesPtr series, std::int64_t center, std::int64_t half_width) {
  if (half_width < 0) throw Error(ErrorCode::EmptyWindow, "negative half width");
  const std::int64_t lo = center - half_width;
  const std::int64_t hi = center + half_width;
  const std::int64_t start = series->start_time();
  const std::int64_t eps = series->epsilon();
  // First grid index with t >= lo and last with t <= hi.
  std::int64_t first = lo <= start ? 0 : (lo - start + eps - 1) / eps;
  std::int64_t last = hi < start ? -1 : (hi - start) / eps;
  last = std::min<std::int64_t>(last, static_cast<std::int64_t>(series->size()) - 1);
  if (first > last) {
    throw Error(ErrorCode::EmptyWindow, "no ticks in [" + std::to_string(lo) + ", " +
                                            std::to_string(hi) + "]");
  }
  return Window(std::move(series), static_cast<std::size_t>(first),
                static_cast<std::size_t>(last - first + 1));
}

Window lag_view(const Window& window, std::int64_t lag) {
  if (lag < 0) {
    throw Error(ErrorCode::LagNotOnGrid, "negative lag " + std::to_string(lag));
  }
  return Window(window.series_ptr(), window.anchor_index(), window.count(), window.lag() + lag);
}

ReturnView compute_returns(const Window& window, std::int64_t alpha) {
  const TradeSeries& series = window.series();
  const std::int64_t steps = series.lag_steps(alpha);
  if (steps < 1) {
    throw Error(ErrorCode::LagNotOnGrid, "return horizon must be at least one grid step");
  }
  if (static_cast<std::int64_t>(window.source_index(0)) < steps) {
    throw Error(ErrorCode::MissingHistory, "return horizon " + std::to_string(alpha) +
                                               " reaches before the start of series '" +
                                               series.asset_id() + "'");
  }
  ReturnView view;
  view.alpha = alpha;
  const std::size_t n = window.count();
  view.r.resize(n);
  view.c_past.resize(n);
  view.value.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = window.source_index(i);
    const TradeTick& now = series[k];
    const TradeTick& past = series[k - static_cast<std::size_t>(steps)];
    view.r[i] = now.price / past.price;
    view.c_past[i] = past.price * now.volume;
    view.value[i] = now.value;
    const double residual = std::fabs(view.value[i] - view.r[i] * view.c_past[i]);
    if (residual > kReturnIdentityTolerance * view.value[i]) {
      throw Error(ErrorCode::IdentityViolation, "C != r * C_o at t=" + std::to_string(now.t));
    }
  }
  return view;
}

}  // namespace mbstat
