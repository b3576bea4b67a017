#pragma once

#include <optional>

namespace mwa {

// The dimensionless pair that fixes every observable of the model:
// beta_e0 = E0/(kB T) and t_d = 2 lambda D/(a0 L).
struct ReducedParams {
    double beta_e0 = 0.0;
    double t_d = 0.0;
};

// Throws DomainError unless both fields are finite and nonnegative.
void validate(const ReducedParams& p);

struct CurvePoint {
    double t;
    double ratio;
};

struct ExtremaReport {
    std::optional<CurvePoint> valley;
    std::optional<CurvePoint> peak;
    std::optional<CurvePoint> approx_valley;  // closed form, beta_e0 > 0
    std::optional<CurvePoint> approx_peak;    // closed form, beta_e0 > 1
    bool monotonic = true;
};

namespace model {

// Positive root of exp(z) - 2z - 1 = 0, solved once on first use.
double z0();

// Forward wave-front weight exp(-beta_e0 e^{-t} - t) at t = p.t_d.
double partition_forward(const ReducedParams& p);

// Edge-diffracted weight [exp(-Z0 e^{-t}) - exp(-Z0)] / Z0.
double partition_diffracted(double t_r);

// Logarithms of the two weights; log_partition_diffracted(0) = -inf.
double log_partition_forward(const ReducedParams& p);
double log_partition_diffracted(double t_r);

// ln(Zd/Zf). The detection ratio is 1/(1 + exp of this).
double log_odds_residual(const ReducedParams& p);

// Probability that a particle reaches the screen.
double detection_ratio(const ReducedParams& p);
double log_detection_ratio(const ReducedParams& p);

// d ln(ratio)/d t_d, analytic.
double log_detection_ratio_slope(const ReducedParams& p);

// Small-t, large-beta_e0 form 1/(1 + e^{beta_e0 - Z0} t e^{-beta_e0 t}).
double detection_ratio_approx(const ReducedParams& p);

CurvePoint approx_valley(double beta_e0);
CurvePoint approx_peak(double beta_e0);

// Far-field form (Z0 + 1/2) e^{-t_d}.
double asymptotic_ratio(double t_d);

constexpr int kExtremaGridPoints = 2048;
constexpr double kExtremaGridStart = 1e-4;

ExtremaReport find_extrema(double beta_e0, double t_max = 50.0);

// Smallest beta_e0 at which find_extrema reports a valley/peak pair.
double monotonic_threshold();

}  // namespace model
}  // namespace mwa
