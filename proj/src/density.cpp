#include "mwa/density.hpp"

#include "mwa/errors.hpp"

#include <cmath>

namespace mwa::density {

namespace {

void check_chi(const ReducedParams& p, double chi)
{
    validate(p);
    if (!std::isfinite(chi) || chi < -p.t_d || chi > p.t_d)
        throw DomainError("chi outside [-t_d, t_d]");
}

}  // namespace

double emission_weight(double u)
{
    return std::exp(-u - model::z0() * std::exp(-u));
}

double log_partition_total(const ReducedParams& p)
{
    return numerics::log_add_exp(model::log_partition_forward(p),
                                 model::log_partition_diffracted(p.t_d));
}

double forward_weight(const ReducedParams& p)
{
    return model::detection_ratio(p);
}

double residual_mass(const ReducedParams& p)
{
    validate(p);
    if (p.t_d == 0.0)
        return 0.0;
    return std::exp(model::log_partition_diffracted(p.t_d) - log_partition_total(p));
}

double rho_diffracted(const ReducedParams& p, double chi,
                      const numerics::QuadratureSpec& spec)
{
    check_chi(p, chi);
    if (chi == p.t_d)
        throw SingularPointError("rho_diffracted: density diverges at the screen");
    const double upper = 0.5 * (p.t_d + chi);
    if (upper <= 0.0)
        return 0.0;

    // w(u)/(2Z) folded into a single exponential to survive tiny Z.
    const double z = model::z0();
    const double log_norm = -std::log(2.0) - log_partition_total(p);
    const double t_d = p.t_d;
    auto integrand = [=](double u) {
        return std::exp(-u - z * std::exp(-u) + log_norm) / (t_d - u);
    };
    return numerics::integrate(integrand, 0.0, upper, spec);
}

double cdf_diffracted(const ReducedParams& p, double chi,
                      const numerics::QuadratureSpec& spec)
{
    check_chi(p, chi);
    if (chi == p.t_d)
        return residual_mass(p);
    const double upper = 0.5 * (p.t_d + chi);
    if (upper <= 0.0)
        return 0.0;

    const double z = model::z0();
    const double log_norm = -std::log(2.0) - log_partition_total(p);
    const double t_d = p.t_d;
    auto integrand = [=](double u) {
        return std::exp(-u - z * std::exp(-u) + log_norm) * (chi + t_d - 2.0 * u) /
               (t_d - u);
    };
    return numerics::integrate(integrand, 0.0, upper, spec);
}

DensityProfile profile(const ReducedParams& p, int n_points)
{
    validate(p);
    if (n_points < 2)
        throw DomainError("profile: n_points must be >= 2");

    DensityProfile out;
    out.params = p;
    out.forward_weight = forward_weight(p);
    if (p.t_d == 0.0)
        return out;

    const double lo = -p.t_d;
    const double hi = p.t_d * kGridCap;
    out.points.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double chi = i + 1 == n_points ? hi : lo + (hi - lo) * i / (n_points - 1);
        out.points.push_back({chi, rho_diffracted(p, chi), cdf_diffracted(p, chi)});
    }
    return out;
}

}  // namespace mwa::density
