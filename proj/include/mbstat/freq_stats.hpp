// Frequency-based (equal weight, 1/N) statistics of per-tick sequences.
//
// "Covariance" here is the joint moment minus the product of means, with no
// normalization by standard deviations. This is the quantity the market-based
// formulas are written in; a Pearson coefficient is offered separately.

#pragma once

#include <cmath>
#include <span>

namespace mbstat {

/// Neumaier-compensated running sum. Supports removal so it can back a
/// sliding window; the error stays O(eps * sum|x|) over many add/remove pairs.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void subtract(double x) noexcept { add(-x); }
  /// Adds x * y including the rounding error of the product (exact via fma).
  void add_product(double x, double y) noexcept {
    const double p = x * y;
    add(p);
    comp_ += std::fma(x, y, -p);
  }
  void subtract_product(double x, double y) noexcept { add_product(-x, y); }
  void reset() noexcept { sum_ = comp_ = 0.0; }
  double value() const noexcept { return sum_ + comp_; }
  /// The unrounded pair sum + compensation, in extended precision.
  long double precise_value() const noexcept {
    return static_cast<long double>(sum_) + static_cast<long double>(comp_);
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct MomentSet {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;  // second_moment - mean^2, centered
};

double mean(std::span<const double> xs);

/// (1/N) sum x_i * y_i.
double joint_moment(std::span<const double> xs, std::span<const double> ys);

/// joint_moment(x, y) - mean(x) * mean(y), evaluated as the mean of centered
/// products. Zero for N = 1.
double cov(std::span<const double> xs, std::span<const double> ys);

MomentSet moments(std::span<const double> xs);

/// cov / sqrt(var_x * var_y); NaN when either variance is not positive.
/// Not used by any market-based formula.
double pearson(double covariance, double var_x, double var_y);

}  // namespace mbstat
