#include "mbstat/freq_stats.hpp"

#include <limits>
#include <string>

#include "mbstat/errors.hpp"

namespace mbstat {
namespace {

void require_nonempty(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorCode::EmptyInput, "sequence has no elements");
}

void require_same_length(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) + " elements");
  }
  require_nonempty(xs);
}

}  // namespace

double mean(std::span<const double> xs) {
  require_nonempty(xs);
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double joint_moment(std::span<const double> xs, std::span<const double> ys) {
  require_same_length(xs, ys);
  CompensatedSum s;
  for (std::size_t i = 0; i < xs.size(); ++i) s.add(xs[i] * ys[i]);
  return s.value() / static_cast<double>(xs.size());
}

double cov(std::span<const double> xs, std::span<const double> ys) {
  require_same_length(xs, ys);
  if (xs.size() == 1) return 0.0;
  const double mx = mean(xs);
  const double my = mean(ys);
  CompensatedSum s;
  for (std::size_t i = 0; i < xs.size(); ++i) s.add((xs[i] - mx) * (ys[i] - my));
  return s.value() / static_cast<double>(xs.size());
}

MomentSet moments(std::span<const double> xs) {
  require_nonempty(xs);
  MomentSet m;
  m.mean = mean(xs);
  if (xs.size() == 1) {
    m.second_moment = xs[0] * xs[0];
    m.variance = 0.0;
    return m;
  }
  m.second_moment = joint_moment(xs, xs);
  m.variance = cov(xs, xs);
  return m;
}

double pearson(double covariance, double var_x, double var_y) {
  if (!(var_x > 0.0) || !(var_y > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return covariance / std::sqrt(var_x * var_y);
}

}  // namespace mbstat
