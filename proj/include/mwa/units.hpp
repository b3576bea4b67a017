#pragma once

#include "mwa/model.hpp"

#include <optional>
#include <string>

namespace mwa {

// SI inputs. length_param is the model's unknown length L and has no default.
struct PhysicalSetup {
    double mass = 0.0;             // kg
    double wavelength = 0.0;       // m
    double aperture_radius = 0.0;  // m
    double length_param = 0.0;     // m
    double temperature = 0.0;      // K
    double screen_distance = 0.0;  // m, 0 allowed
};

namespace units {

inline constexpr double kPlanck = 6.62607015e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;      // J/K
inline constexpr double kElectronVolt = 1.602176634e-19;  // J

// Apertures narrower than this many wavelengths are rejected; below
// kApertureWarnRatio a warning is issued.
inline constexpr double kApertureMinRatio = 100.0;
inline constexpr double kApertureWarnRatio = 1000.0;

double kinetic_energy(double mass, double wavelength);
double group_velocity(double mass, double wavelength);
double scaled_time(double wavelength, double screen_distance,
                   double aperture_radius, double length_param);
double beta_e0(double mass, double wavelength, double temperature);

// Validates the full setup (DomainError on any violation) and returns an
// advisory message when a0/lambda lies in the warning band.
std::optional<std::string> check(const PhysicalSetup& setup);

double kinetic_energy(const PhysicalSetup& setup);
double group_velocity(const PhysicalSetup& setup);
double scaled_time(const PhysicalSetup& setup);
double beta_e0(const PhysicalSetup& setup);

// m a0 L / (2h); scaled_time == (D / V_g) / decoherence_timescale.
double decoherence_timescale(const PhysicalSetup& setup);

ReducedParams to_reduced(const PhysicalSetup& setup);

}  // namespace units
}  // namespace mwa
