#include "mwa/units.hpp"

#include "mwa/errors.hpp"

#include <cmath>

namespace mwa::units {

namespace {

void require_positive(double value, const char* name)
{
    if (!std::isfinite(value) || !(value > 0.0))
        throw DomainError(std::string(name) + " must be finite and > 0");
}

}  // namespace

double kinetic_energy(double mass, double wavelength)
{
    require_positive(mass, "mass");
    require_positive(wavelength, "wavelength");
    return kPlanck * kPlanck / (2.0 * mass * wavelength * wavelength);
}

double group_velocity(double mass, double wavelength)
{
    require_positive(mass, "mass");
    require_positive(wavelength, "wavelength");
    return kPlanck / (mass * wavelength);
}

double scaled_time(double wavelength, double screen_distance,
                   double aperture_radius, double length_param)
{
    require_positive(wavelength, "wavelength");
    require_positive(aperture_radius, "aperture_radius");
    require_positive(length_param, "length_param");
    if (!std::isfinite(screen_distance) || screen_distance < 0.0)
        throw DomainError("screen_distance must be finite and >= 0");
    return 2.0 * wavelength * screen_distance / (aperture_radius * length_param);
}

double beta_e0(double mass, double wavelength, double temperature)
{
    require_positive(temperature, "temperature");
    return kinetic_energy(mass, wavelength) / (kBoltzmann * temperature);
}

std::optional<std::string> check(const PhysicalSetup& s)
{
    require_positive(s.mass, "mass");
    require_positive(s.wavelength, "wavelength");
    require_positive(s.aperture_radius, "aperture_radius");
    require_positive(s.length_param, "length_param");
    require_positive(s.temperature, "temperature");
    if (!std::isfinite(s.screen_distance) || s.screen_distance < 0.0)
        throw DomainError("screen_distance must be finite and >= 0");

    const double ratio = s.aperture_radius / s.wavelength;
    if (ratio < kApertureMinRatio)
        throw DomainError("aperture_radius/wavelength = " + std::to_string(ratio) +
                          " is below the minimum of 100");
    if (ratio < kApertureWarnRatio)
        return "aperture_radius/wavelength = " + std::to_string(ratio) +
               " is below 1000; the zero-diffraction-angle assumption is marginal";
    return std::nullopt;
}

double kinetic_energy(const PhysicalSetup& s)
{
    check(s);
    return kinetic_energy(s.mass, s.wavelength);
}

double group_velocity(const PhysicalSetup& s)
{
    check(s);
    return group_velocity(s.mass, s.wavelength);
}

double scaled_time(const PhysicalSetup& s)
{
    check(s);
    return scaled_time(s.wavelength, s.screen_distance, s.aperture_radius, s.length_param);
}

double beta_e0(const PhysicalSetup& s)
{
    check(s);
    return beta_e0(s.mass, s.wavelength, s.temperature);
}

double decoherence_timescale(const PhysicalSetup& s)
{
    check(s);
    return s.mass * s.aperture_radius * s.length_param / (2.0 * kPlanck);
}

ReducedParams to_reduced(const PhysicalSetup& s)
{
    return {beta_e0(s), scaled_time(s)};
}

}  // namespace mwa::units
