// Brute-force market-based expectations: build the normalized weight vector
// explicitly and average per-tick deviation products under it. Deliberately
// shares nothing with market_core or freq_stats so it can serve as ground
// truth for the closed forms.

#pragma once

#include <span>
#include <vector>

namespace mbstat::oracle {

enum class WeightKind {
  volume,              // u_i = U_i / sum U
  past_value,          // C_o,i / sum C_o
  volume_product,      // w_i = U1_i U2_i / sum U1 U2
  past_value_product,  // z_i = C_o1,i C_o2,i / sum C_o1 C_o2
  mixed,               // psi_i = U1_i C_o2,i / sum U1 C_o2
};

struct WeightVector {
  WeightKind kind = WeightKind::volume;
  std::vector<double> weights;
};

/// Single-input kinds ignore `second`. Throws LengthMismatch / NonPositiveInput.
WeightVector make_weights(WeightKind kind, std::span<const double> first,
                          std::span<const double> second = {});

/// sum values_i * weights_i; throws UnnormalizedWeights if sum(weights) is off by > 1e-9.
double em_expectation(std::span<const double> values, const WeightVector& weights);

enum class CorrKind { price_price, return_return, price_return };

/// Per-tick inputs for one deviation-product expectation.
/// For price_price: x = p1, y = p2 (lagged), base1 = U1, base2 = U2 (lagged).
/// For return_return: x = r1, y = r2, base1 = C_o1, base2 = C_o2.
/// For price_return: x = p1, y = r2, base1 = U1, base2 = C_o2.
struct CorrInputs {
  std::span<const double> x, y, base1, base2;
};

/// sum_i (x_i - avg1)(y_i - avg2) * weight_i with the kind's product weights.
double oracle_corr(CorrKind kind, const CorrInputs& in, double avg1, double avg2);

/// Same, with avg1/avg2 computed here as base-weighted means of x and y.
double oracle_corr(CorrKind kind, const CorrInputs& in);

/// sum_i |(x_i - avg1)(y_i - avg2)| * weight_i, the magnitude of what oracle_corr sums.
double oracle_abs_scale(CorrKind kind, const CorrInputs& in);

/// Base-weighted mean of x (VWAP for prices, VaWAR for returns).
double weighted_average(std::span<const double> x, std::span<const double> base);

}  // namespace mbstat::oracle
