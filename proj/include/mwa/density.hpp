#pragma once

#include "mwa/model.hpp"
#include "mwa/numerics.hpp"

#include <vector>

namespace mwa {

// Residual-position model between aperture and screen, in the scaled axial
// coordinate chi = 2 lambda x/(a0 L), chi in [-t_d, t_d]. Edge waves emitted
// at scaled time u in [0, t_d] have scaled radius t_d - u and project
// uniformly onto [2u - t_d, t_d].
struct DensityPoint {
    double chi;
    double rho;
    double cdf;
};

struct DensityProfile {
    ReducedParams params;
    double forward_weight = 1.0;
    std::vector<DensityPoint> points;
};

namespace density {

// Upper edge of tabulated grids, as a fraction of t_d.
constexpr double kGridCap = 1.0 - 1e-7;

// Emission-time weight e^{-u - Z0 e^{-u}}.
double emission_weight(double u);

// ln(Zf + Zd) at t = p.t_d.
double log_partition_total(const ReducedParams& p);

// Mass of the delta at the screen; equals detection_ratio(p).
double forward_weight(const ReducedParams& p);

// rho(chi) = 1/(2Z) * int_0^{(t_d+chi)/2} w(u)/(t_d - u) du on [-t_d, t_d).
// Throws SingularPointError at chi = t_d.
double rho_diffracted(const ReducedParams& p, double chi,
                      const numerics::QuadratureSpec& spec = {});

// P(residual, position <= chi), from the order-swapped integral
// 1/(2Z) * int_0^{(t_d+chi)/2} w(u) (chi + t_d - 2u)/(t_d - u) du,
// whose integrand is bounded. At chi = t_d the closed form Zd/Z is returned.
double cdf_diffracted(const ReducedParams& p, double chi,
                      const numerics::QuadratureSpec& spec = {});

// Total residual mass Zd/Z (closed form).
double residual_mass(const ReducedParams& p);

// n_points evenly spaced on [-t_d, t_d * kGridCap]; empty when t_d = 0.
DensityProfile profile(const ReducedParams& p, int n_points);

}  // namespace density
}  // namespace mwa
