#include "mbstat/rolling.hpp"

#include <algorithm>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mbstat/errors.hpp"
#include "mbstat/freq_stats.hpp"

namespace mbstat::rolling {
namespace {

constexpr std::pair<std::string_view, Stat> kStatNames[] = {
    {"price_corr", Stat::price_corr},   {"return_corr", Stat::return_corr},
    {"price_return_corr", Stat::price_return_corr}, {"price_vol", Stat::price_vol},
    {"return_vol", Stat::return_vol},   {"joint_moments", Stat::joint_moments},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
#define MBSTAT_FMA_CLONES __attribute__((target_clones("fma", "default")))
#else
#define MBSTAT_FMA_CLONES
#endif

FamilyResult from_report(const CorrelationReport& report, double freq_joint) {
  return FamilyResult{report.closed, report.freq_corr, freq_joint};
}

}  // namespace

StatSet StatSet::all() {
  StatSet s;
  for (const auto& [name, stat] : kStatNames) s.add(stat);
  return s;
}

StatSet StatSet::parse(std::string_view list) {
  StatSet out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    const std::string name = trim(list.substr(start, comma - start));
    if (name == "all") {
      out = all();
    } else if (!name.empty()) {
      const auto it = std::find_if(std::begin(kStatNames), std::end(kStatNames),
                                   [&](const auto& entry) { return entry.first == name; });
      if (it == std::end(kStatNames)) {
        throw Error(ErrorCode::InvalidConfig, "unknown statistic '" + name + "'");
      }
      out.add(it->second);
    }
    start = comma + 1;
  }
  if (out.empty()) throw Error(ErrorCode::InvalidConfig, "no statistics requested");
  return out;
}

bool StatSet::needs_asset1_returns() const noexcept {
  return has(Stat::return_corr) || has(Stat::return_vol) || has(Stat::joint_moments);
}

bool StatSet::needs_asset2_lagged() const noexcept {
  return has(Stat::price_corr) || has(Stat::joint_moments) || needs_asset2_returns();
}

bool StatSet::needs_asset2_returns() const noexcept {
  return has(Stat::return_corr) || has(Stat::price_return_corr) || has(Stat::joint_moments);
}

std::string_view family_name(Stat s) {
  for (const auto& [name, stat] : kStatNames) {
    if (stat == s) return name;
  }
  return "unknown";
}

Engine::Engine(SeriesPtr asset1, SeriesPtr asset2, EngineConfig config)
    : asset1_(std::move(asset1)), asset2_(std::move(asset2)), config_(std::move(config)) {
  if (config_.window < 1) throw Error(ErrorCode::InvalidConfig, "window must be at least 1");
  if (config_.stride < 1) throw Error(ErrorCode::InvalidConfig, "stride must be at least 1");
  if (config_.recompute_every < 1) {
    throw Error(ErrorCode::InvalidConfig, "recompute period must be at least 1");
  }
  if (config_.stats.empty()) throw Error(ErrorCode::InvalidConfig, "no statistics requested");
  if (config_.alpha < 0 || config_.beta < 0) {
    throw Error(ErrorCode::InvalidConfig, "lags must be nonnegative");
  }
  if (config_.stats.needs_asset1_returns() && config_.alpha < 1) {
    throw Error(ErrorCode::InvalidConfig, "return statistics need alpha >= 1");
  }
  if (config_.stats.needs_asset2_returns() && config_.beta < 1) {
    throw Error(ErrorCode::InvalidConfig,
                "return statistics of asset 2 need beta >= 1 (beta is its return horizon)");
  }
  build_tracks();
  plan_slots();
}

void Engine::build_tracks() {
  const StatSet& stats = config_.stats;
  const TradeSeries& s1 = *asset1_;
  const TradeSeries& s2 = *asset2_;
  const std::int64_t eps = s1.epsilon();
  const bool ret1 = stats.needs_asset1_returns();
  const bool lag2 = stats.needs_asset2_lagged();
  const bool ret2 = stats.needs_asset2_returns();

  const std::int64_t alpha_steps = ret1 ? s1.lag_steps(config_.alpha) : 0;
  std::int64_t beta_steps = 0;
  std::int64_t lo = s1.start_time() + alpha_steps * eps;
  std::int64_t hi = s1.end_time();
  if (lag2) {
    if (s2.epsilon() != eps && s2.size() > 1 && s1.size() > 1) {
      throw Error(ErrorCode::GridMismatch, "series have different spacing");
    }
    if ((s1.start_time() - s2.start_time()) % eps != 0) {
      throw Error(ErrorCode::GridMismatch, "series grids are offset");
    }
    beta_steps = s1.lag_steps(config_.beta);
    lo = std::max(lo, s2.start_time() + beta_steps * eps);
    hi = std::min(hi, s2.end_time() + beta_steps * eps);
    if (ret2) hi = std::min(hi, s2.end_time());
  }
  const std::int64_t anchors = hi >= lo ? (hi - lo) / eps + 1 : 0;
  if (anchors < static_cast<std::int64_t>(config_.window)) {
    throw Error(ErrorCode::MissingHistory,
                "only " + std::to_string(anchors) + " anchor times have the history needed for a " +
                    std::to_string(config_.window) + "-tick window");
  }

  AlignedTracks& tr = tracks_;
  tr.first_time = lo;
  tr.epsilon = eps;
  tr.size = static_cast<std::size_t>(anchors);
  window_count_ = (tr.size - config_.window) / config_.stride + 1;

  const std::size_t n = tr.size;
  const auto idx1 = static_cast<std::size_t>((lo - s1.start_time()) / eps);
  tr.p1.resize(n);
  tr.u1.resize(n);
  tr.c1.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const TradeTick& tick = s1[idx1 + j];
    tr.p1[j] = tick.price;
    tr.u1[j] = tick.volume;
    tr.c1[j] = tick.value;
  }
  if (ret1) {
    tr.co1.resize(n);
    tr.r1.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const TradeTick& now = s1[idx1 + j];
      const TradeTick& past = s1[idx1 + j - static_cast<std::size_t>(alpha_steps)];
      tr.r1[j] = now.price / past.price;
      tr.co1[j] = past.price * now.volume;
    }
  }
  if (lag2) {
    const auto idx2l = static_cast<std::size_t>((lo - s2.start_time()) / eps - beta_steps);
    tr.p2l.resize(n);
    tr.u2l.resize(n);
    tr.c2l.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const TradeTick& tick = s2[idx2l + j];
      tr.p2l[j] = tick.price;
      tr.u2l[j] = tick.volume;
      tr.c2l[j] = tick.value;
    }
  }
  if (ret2) {
    const auto idx2 = static_cast<std::size_t>((lo - s2.start_time()) / eps);
    tr.c2.resize(n);
    tr.co2.resize(n);
    tr.r2.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const TradeTick& now = s2[idx2 + j];
      const TradeTick& past = s2[idx2 + j - static_cast<std::size_t>(beta_steps)];
      tr.c2[j] = now.value;
      tr.r2[j] = now.price / past.price;
      tr.co2[j] = past.price * now.volume;
    }
  }
}

std::size_t Engine::slot(const std::vector<double>& a) {
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].a == a.data() && slots_[i].b == nullptr) return i;
  }
  slots_.push_back({a.data(), nullptr});
  return slots_.size() - 1;
}

std::size_t Engine::slot(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& s = slots_[i];
    if ((s.a == a.data() && s.b == b.data()) || (s.a == b.data() && s.b == a.data())) return i;
  }
  slots_.push_back({a.data(), b.data()});
  return slots_.size() - 1;
}

void Engine::plan_slots() {
  const StatSet& stats = config_.stats;
  const AlignedTracks& t = tracks_;
  auto plan = [&](FamilySlots& fs, const std::vector<double>& v1, const std::vector<double>& b1,
                  const std::vector<double>& v2, const std::vector<double>& b2,
                  const std::vector<double>& x1, const std::vector<double>& x2) {
    fs.idx[0] = slot(v1);
    fs.idx[1] = slot(b1);
    fs.idx[2] = slot(v2);
    fs.idx[3] = slot(b2);
    fs.idx[4] = slot(v1, v2);
    fs.idx[5] = slot(b1, v2);
    fs.idx[6] = slot(v1, b2);
    fs.idx[7] = slot(b1, b2);
    fs.idx[8] = slot(x1);
    fs.idx[9] = slot(x2);
    fs.idx[10] = slot(x1, x2);
  };
  if (stats.has(Stat::price_corr) || stats.has(Stat::joint_moments)) {
    plan(price_slots_, t.c1, t.u1, t.c2l, t.u2l, t.p1, t.p2l);
  }
  if (stats.has(Stat::return_corr) || stats.has(Stat::joint_moments)) {
    plan(return_slots_, t.c1, t.co1, t.c2, t.co2, t.r1, t.r2);
  }
  if (stats.has(Stat::price_return_corr)) {
    plan(price_return_slots_, t.c1, t.u1, t.c2, t.co2, t.p1, t.r2);
  }
  if (stats.has(Stat::price_vol)) {
    plan(price_vol_slots_, t.c1, t.u1, t.c1, t.u1, t.p1, t.p1);
  }
  if (stats.has(Stat::return_vol)) {
    plan(return_vol_slots_, t.c1, t.co1, t.c1, t.co1, t.r1, t.r1);
  }
}

double Engine::t_center(std::size_t window_index) const noexcept {
  const double first = static_cast<double>(tracks_.first_time) +
                       static_cast<double>(window_index * config_.stride) *
                           static_cast<double>(tracks_.epsilon);
  return first + 0.5 * static_cast<double>(config_.window - 1) *
                     static_cast<double>(tracks_.epsilon);
}

void Engine::finalize(const std::vector<long double>& sums, std::size_t window_index,
                      WindowResult& out) const {
  const long double inv_n = 1.0L / static_cast<long double>(config_.window);
  const bool single = config_.window == 1;
  auto family = [&](const FamilySlots& fs, FamilyResult& r) {
    const auto* i = fs.idx;
    FlowMoments m;
    m.c1 = sums[i[0]] * inv_n;
    m.b1 = sums[i[1]] * inv_n;
    m.c2 = sums[i[2]] * inv_n;
    m.b2 = sums[i[3]] * inv_n;
    m.c1c2 = sums[i[4]] * inv_n;
    m.b1c2 = sums[i[5]] * inv_n;
    m.c1b2 = sums[i[6]] * inv_n;
    m.b1b2 = sums[i[7]] * inv_n;
    m.derive_covariances();
    r.closed = closed_form(m);
    const long double joint = sums[i[10]] * inv_n;
    r.freq_joint = static_cast<double>(joint);
    r.freq_value =
        single ? 0.0 : static_cast<double>(joint - (sums[i[8]] * inv_n) * (sums[i[9]] * inv_n));
  };
  const StatSet& stats = config_.stats;
  out.index = window_index;
  out.t_center = t_center(window_index);
  if (stats.has(Stat::price_corr) || stats.has(Stat::joint_moments)) {
    family(price_slots_, out.price_corr);
  }
  if (stats.has(Stat::return_corr) || stats.has(Stat::joint_moments)) {
    family(return_slots_, out.return_corr);
  }
  if (stats.has(Stat::price_return_corr)) family(price_return_slots_, out.price_return_corr);
  if (stats.has(Stat::price_vol)) family(price_vol_slots_, out.price_vol);
  if (stats.has(Stat::return_vol)) family(return_vol_slots_, out.return_vol);
}

MBSTAT_FMA_CLONES
void Engine::accumulate(const Slot* slots, CompensatedSum* acc, std::size_t count, std::size_t lo,
                        std::size_t hi, bool remove) {
  for (std::size_t s = 0; s < count; ++s) {
    const Slot& sl = slots[s];
    CompensatedSum& c = acc[s];
    if (sl.b != nullptr) {
      for (std::size_t j = lo; j < hi; ++j) {
        remove ? c.subtract_product(sl.a[j], sl.b[j]) : c.add_product(sl.a[j], sl.b[j]);
      }
    } else {
      for (std::size_t j = lo; j < hi; ++j) remove ? c.subtract(sl.a[j]) : c.add(sl.a[j]);
    }
  }
}

MBSTAT_FMA_CLONES
void Engine::slide(const Slot* slots, CompensatedSum* acc, std::size_t count, std::size_t added,
                   std::size_t removed) {
  for (std::size_t s = 0; s < count; ++s) {
    const Slot& sl = slots[s];
    CompensatedSum& c = acc[s];
    if (sl.b != nullptr) {
      c.add_product(sl.a[added], sl.b[added]);
      c.subtract_product(sl.a[removed], sl.b[removed]);
    } else {
      c.add(sl.a[added]);
      c.subtract(sl.a[removed]);
    }
  }
}

void Engine::compute_block(std::size_t first, std::size_t last, WindowResult* out) const {
  if (first >= last) return;
  const std::size_t n = config_.window;
  const std::size_t stride = config_.stride;
  std::vector<CompensatedSum> acc(slots_.size());
  std::vector<long double> sums(slots_.size());

  const std::size_t count = slots_.size();
  auto apply = [&](std::size_t lo, std::size_t hi, bool remove) {
    accumulate(slots_.data(), acc.data(), count, lo, hi, remove);
  };

  std::size_t cur = first * stride;
  apply(cur, cur + n, false);
  for (std::size_t w = first; w < last; ++w) {
    if (w > first) {
      const std::size_t next = w * stride;
      if (stride >= n) {
        for (auto& c : acc) c.reset();
        apply(next, next + n, false);
      } else if (stride == 1) {
        slide(slots_.data(), acc.data(), count, cur + n, cur);
      } else {
        apply(cur + n, next + n, false);
        apply(cur, next, true);
      }
      cur = next;
    }
    for (std::size_t s = 0; s < acc.size(); ++s) sums[s] = acc[s].precise_value();
    finalize(sums, w, out[w - first]);
  }
}

void Engine::for_each_window(const std::function<void(const WindowResult&)>& sink) const {
  const std::size_t block = config_.recompute_every;
  int threads = config_.threads;
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#else
  threads = 1;
#endif
  const std::size_t blocks_per_chunk = static_cast<std::size_t>(std::max(threads, 1)) * 2;
  const std::size_t chunk = block * blocks_per_chunk;
  std::vector<WindowResult> buffer(std::min(chunk, window_count_));

  for (std::size_t chunk_first = 0; chunk_first < window_count_; chunk_first += chunk) {
    const std::size_t chunk_last = std::min(window_count_, chunk_first + chunk);
    const auto nblocks = static_cast<std::int64_t>((chunk_last - chunk_first + block - 1) / block);
    WindowResult* base = buffer.data();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
    for (std::int64_t b = 0; b < nblocks; ++b) {
      const std::size_t first = chunk_first + static_cast<std::size_t>(b) * block;
      const std::size_t last = std::min(chunk_last, first + block);
      compute_block(first, last, base + (first - chunk_first));
    }
    for (std::size_t w = chunk_first; w < chunk_last; ++w) sink(buffer[w - chunk_first]);
  }
}

WindowResult Engine::reference_window(std::size_t window_index) const {
  const StatSet& stats = config_.stats;
  const std::int64_t eps = tracks_.epsilon;
  const std::int64_t t0 =
      tracks_.first_time + static_cast<std::int64_t>(window_index * config_.stride) * eps;
  const std::size_t n = config_.window;
  const auto anchor = [&](const TradeSeries& s) {
    return static_cast<std::size_t>((t0 - s.start_time()) / eps);
  };

  WindowResult out;
  out.index = window_index;
  out.t_center = t_center(window_index);
  const Window w1(asset1_, anchor(*asset1_), n);
  const auto p1 = w1.prices();

  if (stats.has(Stat::price_corr) || stats.has(Stat::joint_moments)) {
    const Window w2(asset2_, anchor(*asset2_), n, config_.beta);
    out.price_corr = from_report(mb_corr_prices(w1, w2), joint_moment(p1, w2.prices()));
  }
  if (stats.has(Stat::price_vol)) {
    out.price_vol = from_report(mb_corr_prices(w1, w1), joint_moment(p1, p1));
  }
  std::optional<ReturnView> rv1;
  std::optional<ReturnView> rv2;
  if (stats.needs_asset1_returns()) rv1 = compute_returns(w1, config_.alpha);
  if (stats.needs_asset2_returns()) {
    rv2 = compute_returns(Window(asset2_, anchor(*asset2_), n), config_.beta);
  }
  if (stats.has(Stat::return_corr) || stats.has(Stat::joint_moments)) {
    out.return_corr = from_report(mb_corr_returns(*rv1, *rv2), joint_moment(rv1->r, rv2->r));
  }
  if (stats.has(Stat::return_vol)) {
    out.return_vol = from_report(mb_corr_returns(*rv1, *rv1), joint_moment(rv1->r, rv1->r));
  }
  if (stats.has(Stat::price_return_corr)) {
    out.price_return_corr = from_report(mb_corr_price_return(w1, *rv2), joint_moment(p1, rv2->r));
  }
  return out;
}

}  // namespace mbstat::rolling
