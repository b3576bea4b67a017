#pragma once

#include "mwa/errors.hpp"
#include "mwa/inference.hpp"
#include "mwa/model.hpp"
#include "mwa/units.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

// Command bodies behind the `mwa` executable. Each returns the complete
// document it would print so that tests can compare outputs byte for byte.
namespace mwa::cli {

class UsageError : public Error {
public:
    using Error::Error;
};

// 17 significant digits, independent of the global locale.
std::string format_number(double value);

struct SweepConfig {
    std::vector<double> beta_e0_list{1.0, 2.0, 4.0, 8.0, 16.0};
    double t_max = 10.0;
    double t_min = 1e-8;  // first grid point when log_axis
    int points = 400;
    bool log_axis = true;
    int workers = 1;
};

// Grid of scaled times used by sweep for one curve.
std::vector<double> sweep_grid(const SweepConfig& config);

// CSV: beta_e0,t_d,ratio,ln_ratio
std::string sweep(const SweepConfig& config);

std::string extrema(double beta_e0, double t_max = 50.0);

std::string threshold();

// CSV with a `# forward_weight=` comment line then chi,rho,cdf.
std::string density(const ReducedParams& params, int points);

struct McConfig {
    ReducedParams params;
    std::uint64_t n = 1000000;
    std::uint64_t seed = 42;
    std::uint64_t stream_id = 0;
    int bins = 50;
    int workers = 1;
};

std::string mc(const McConfig& config);

// Measurement CSV: header `screen_distance_m,ratio[,sigma]`, `#` comments.
std::vector<Measurement> read_measurements(std::istream& in);

enum class FitMode { LengthOnly, LengthAndBeta };

FitMode parse_fit_mode(const std::string& text);

struct FitConfig {
    FitMode mode = FitMode::LengthOnly;
    std::optional<double> mass;
    std::optional<double> wavelength;
    std::optional<double> aperture_radius;
    std::optional<double> temperature;
    int workers = 1;
};

std::string fit(const std::vector<Measurement>& data, const FitConfig& config);

std::string physical(const PhysicalSetup& setup);

}  // namespace mwa::cli
