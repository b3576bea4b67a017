#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mwa {

struct Measurement {
    double screen_distance;        // m, > 0
    double ratio;                  // N(D)/N0 in (0, 1]
    std::optional<double> sigma;   // relative uncertainty, > 0
};

struct FitResult {
    double length_param = 0.0;  // m
    double beta_e0 = 0.0;
    bool beta_fitted = false;
    double residual_norm = 0.0;  // sqrt of the weighted log-residual sum
    int iterations = 0;          // outer golden-section iterations
    bool converged = false;
    std::vector<std::string> warnings;
};

struct FitOptions {
    int workers = 1;
};

namespace inference {

// Scaled-time window used to seed the bracket on L.
constexpr double kTimeFloor = 1e-3;
constexpr double kTimeCap = 50.0;
constexpr int kLengthGridPoints = 241;

// Search window for beta_e0 when it is fitted.
constexpr double kBetaMin = 1e-3;
constexpr double kBetaMax = 1e3;
constexpr int kBetaGridPoints = 61;

// Threshold on max_i |d ln N_i / d beta_e0| below which beta_e0 is
// reported as unidentifiable.
constexpr double kFlatSensitivity = 1e-3;

// Weighted sum of squared log residuals for a trial (L, beta_e0).
double objective(const std::vector<Measurement>& data, double wavelength,
                 double aperture_radius, double length_param, double beta_e0);

// L with beta_e0 held fixed.
FitResult fit_length_at_beta(const std::vector<Measurement>& data, double wavelength,
                             double aperture_radius, double beta_e0,
                             const FitOptions& options = {});

// L with beta_e0 derived from (mass, wavelength, temperature).
FitResult fit_length(const std::vector<Measurement>& data, double mass, double wavelength,
                     double aperture_radius, double temperature,
                     const FitOptions& options = {});

// L and beta_e0 jointly. Needs >= 3 points spanning a factor 3 in D.
FitResult fit_length_and_beta(const std::vector<Measurement>& data, double wavelength,
                              double aperture_radius, const FitOptions& options = {});

}  // namespace inference
}  // namespace mwa
