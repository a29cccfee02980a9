#include "mbstat/oracle.hpp"

#include <cmath>
#include <string>

#include "mbstat/errors.hpp"

namespace mbstat::oracle {
namespace {

bool is_product_kind(WeightKind kind) {
  return kind == WeightKind::volume_product || kind == WeightKind::past_value_product ||
         kind == WeightKind::mixed;
}

WeightKind product_kind(CorrKind kind) {
  switch (kind) {
    case CorrKind::price_price: return WeightKind::volume_product;
    case CorrKind::return_return: return WeightKind::past_value_product;
    case CorrKind::price_return: return WeightKind::mixed;
  }
  return WeightKind::volume_product;
}

void check_lengths(const CorrInputs& in) {
  const auto n = in.x.size();
  if (in.y.size() != n || in.base1.size() != n || in.base2.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "oracle inputs differ in length");
  }
  if (n == 0) throw Error(ErrorCode::EmptyInput, "oracle inputs are empty");
}

}  // namespace

WeightVector make_weights(WeightKind kind, std::span<const double> first,
                          std::span<const double> second) {
  const bool product = is_product_kind(kind);
  if (product && second.size() != first.size()) {
    throw Error(ErrorCode::LengthMismatch, "weight inputs differ in length");
  }
  if (first.empty()) throw Error(ErrorCode::EmptyInput, "no weight inputs");

  WeightVector out{kind, std::vector<double>(first.size())};
  std::vector<long double> raw(first.size());
  long double total = 0.0L;
  for (std::size_t i = 0; i < first.size(); ++i) {
    long double v = first[i];
    if (product) v *= second[i];
    if (!(v > 0.0L)) {
      throw Error(ErrorCode::NonPositiveInput, "weight input " + std::to_string(i));
    }
    raw[i] = v;
    total += v;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.weights[i] = static_cast<double>(raw[i] / total);
  }
  return out;
}

double em_expectation(std::span<const double> values, const WeightVector& weights) {
  if (values.size() != weights.weights.size()) {
    throw Error(ErrorCode::LengthMismatch, "values and weights differ in length");
  }
  long double total_weight = 0.0L;
  long double acc = 0.0L;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total_weight += weights.weights[i];
    acc += static_cast<long double>(values[i]) * weights.weights[i];
  }
  if (std::fabs(static_cast<double>(total_weight) - 1.0) > 1e-9) {
    throw Error(ErrorCode::UnnormalizedWeights,
                "weights sum to " + std::to_string(static_cast<double>(total_weight)));
  }
  return static_cast<double>(acc);
}

double weighted_average(std::span<const double> x, std::span<const double> base) {
  return em_expectation(x, make_weights(WeightKind::volume, base));
}

double oracle_corr(CorrKind kind, const CorrInputs& in, double avg1, double avg2) {
  check_lengths(in);
  const WeightVector w = make_weights(product_kind(kind), in.base1, in.base2);
  std::vector<double> delta(in.x.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    delta[i] = static_cast<double>((static_cast<long double>(in.x[i]) - avg1) *
                                   (static_cast<long double>(in.y[i]) - avg2));
  }
  return em_expectation(delta, w);
}

double oracle_corr(CorrKind kind, const CorrInputs& in) {
  check_lengths(in);
  return oracle_corr(kind, in, weighted_average(in.x, in.base1), weighted_average(in.y, in.base2));
}

double oracle_abs_scale(CorrKind kind, const CorrInputs& in) {
  check_lengths(in);
  const double avg1 = weighted_average(in.x, in.base1);
  const double avg2 = weighted_average(in.y, in.base2);
  const WeightVector w = make_weights(product_kind(kind), in.base1, in.base2);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < in.x.size(); ++i) {
    acc += std::fabs((static_cast<long double>(in.x[i]) - avg1) *
                     (static_cast<long double>(in.y[i]) - avg2)) *
           w.weights[i];
  }
  return static_cast<double>(acc);
}

}  // namespace mbstat::oracle
