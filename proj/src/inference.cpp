#include "mwa/inference.hpp"

#include "mwa/errors.hpp"
#include "mwa/model.hpp"
#include "mwa/numerics.hpp"
#include "mwa/parallel.hpp"
#include "mwa/units.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace mwa::inference {

namespace {

// Measurements expressed relative to the largest distance D_ref. The trial
// variable theta = ln(2 lambda D_ref/(a0 L)) is the log scaled time of D_ref,
// so point i sits at t_i = rel_i * e^theta and the problem depends on the
// data only through D_i/D_ref.
struct Problem {
    std::vector<double> rel;
    std::vector<double> log_ratio;
    std::vector<double> weight;
    double d_ref = 0.0;
    double d_min = 0.0;

    double operator()(double theta, double beta_e0) const
    {
        const double scale = std::exp(theta);
        double sum = 0.0;
        for (std::size_t i = 0; i < rel.size(); ++i) {
            const double r = log_ratio[i] - model::log_detection_ratio({beta_e0, rel[i] * scale});
            sum += weight[i] * r * r;
        }
        return sum;
    }

    // d/dtheta of operator(); d ln N/d theta = t * d ln N/dt.
    double slope(double theta, double beta_e0) const
    {
        const double scale = std::exp(theta);
        double sum = 0.0;
        for (std::size_t i = 0; i < rel.size(); ++i) {
            const ReducedParams p{beta_e0, rel[i] * scale};
            const double r = log_ratio[i] - model::log_detection_ratio(p);
            sum -= 2.0 * weight[i] * r * p.t_d * model::log_detection_ratio_slope(p);
        }
        return sum;
    }
};

Problem make_problem(const std::vector<Measurement>& data)
{
    if (data.size() < 2)
        throw DegenerateDataError("at least two measurements are required");

    std::set<double> distances;
    bool informative = false;
    for (const auto& m : data) {
        if (!std::isfinite(m.screen_distance) || !(m.screen_distance > 0.0))
            throw DataError("measurement screen_distance must be > 0");
        if (!std::isfinite(m.ratio) || !(m.ratio > 0.0) || m.ratio > 1.0)
            throw DataError("measurement ratio must lie in (0, 1]");
        if (m.sigma && (!std::isfinite(*m.sigma) || !(*m.sigma > 0.0)))
            throw DataError("measurement sigma must be > 0");
        distances.insert(m.screen_distance);
        informative = informative || m.ratio < 1.0;
    }
    if (distances.size() < 2)
        throw DegenerateDataError("all measurements share one screen distance; L is not identifiable");
    if (!informative)
        throw DegenerateDataError("every ratio equals 1; the data carry no information on L");

    Problem p;
    p.d_ref = *distances.rbegin();
    p.d_min = *distances.begin();
    for (const auto& m : data) {
        p.rel.push_back(m.screen_distance / p.d_ref);
        p.log_ratio.push_back(std::log(m.ratio));
        p.weight.push_back(m.sigma ? 1.0 / (*m.sigma * *m.sigma) : 1.0);
    }
    return p;
}

void require_geometry(double wavelength, double aperture_radius)
{
    if (!std::isfinite(wavelength) || !(wavelength > 0.0))
        throw DomainError("wavelength must be > 0");
    if (!std::isfinite(aperture_radius) || !(aperture_radius > 0.0))
        throw DomainError("aperture_radius must be > 0");
}

struct Minimum {
    double x = 0.0;
    double fx = 0.0;
    double cell_lo = 0.0;  // grid neighbours of the best point
    double cell_hi = 0.0;
    int iterations = 0;
    bool converged = true;
};

// Grid scan followed by golden-section refinement of the best cell. When
// `expansions` > 0 and the best grid point sits on an edge, that edge is
// pushed out by one decade (in L) and the scan repeated.
Minimum minimize_scan(const std::function<double(double)>& f, double lo, double hi,
                      int points, double tol, int workers, int expansions)
{
    std::vector<double> xs(static_cast<std::size_t>(points));
    std::vector<double> fs(xs.size());
    std::size_t best = 0;
    Minimum out;
    for (int round = 0;; ++round) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            xs[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        parallel_for(xs.size(), workers, [&](std::size_t i) { fs[i] = f(xs[i]); });
        best = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
        const bool low_edge = best == 0;
        const bool high_edge = best + 1 == xs.size();
        if (!low_edge && !high_edge)
            break;
        if (round >= expansions) {
            out.converged = false;
            out.x = xs[best];
            out.fx = fs[best];
            return out;
        }
        if (low_edge)
            lo -= std::log(10.0);
        else
            hi += std::log(10.0);
    }

    out.x = xs[best];
    out.fx = fs[best];
    out.cell_lo = xs[best - 1];
    out.cell_hi = xs[best + 1];
    int calls = 0;
    auto counted = [&](double x) {
        ++calls;
        return f(x);
    };
    try {
        const auto ext = numerics::refine_extremum(counted, {xs[best - 1], xs[best + 1]},
                                                   numerics::ExtremumKind::Min, tol);
        if (ext.fx <= out.fx) {
            out.x = ext.x;
            out.fx = ext.fx;
        }
    } catch (const NotFoundError&) {
        // minimum sits on the grid point itself to within tol
    }
    out.iterations = calls;
    return out;
}

double length_from_theta(const Problem& p, double theta, double wavelength,
                         double aperture_radius)
{
    return 2.0 * wavelength * p.d_ref / (aperture_radius * std::exp(theta));
}

std::pair<double, double> theta_window(const Problem& p)
{
    return {std::log(kTimeFloor), std::log(kTimeCap * p.d_ref / p.d_min)};
}

double beta_sensitivity(const Problem& p, double theta, double beta_e0)
{
    const double h = 1e-6 * std::max(1.0, beta_e0);
    const double lo = std::max(0.0, beta_e0 - h);
    const double hi = beta_e0 + h;
    const double scale = std::exp(theta);
    double worst = 0.0;
    for (double r : p.rel) {
        const double t = r * scale;
        const double d = (model::log_detection_ratio({hi, t}) - model::log_detection_ratio({lo, t})) /
                         (hi - lo);
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

}  // namespace

double objective(const std::vector<Measurement>& data, double wavelength,
                 double aperture_radius, double length_param, double beta_e0)
{
    require_geometry(wavelength, aperture_radius);
    if (!(length_param > 0.0))
        throw DomainError("length_param must be > 0");
    double sum = 0.0;
    for (const auto& m : data) {
        const double t = units::scaled_time(wavelength, m.screen_distance, aperture_radius,
                                            length_param);
        const double w = m.sigma ? 1.0 / (*m.sigma * *m.sigma) : 1.0;
        const double r = std::log(m.ratio) - model::log_detection_ratio({beta_e0, t});
        sum += w * r * r;
    }
    return sum;
}

FitResult fit_length_at_beta(const std::vector<Measurement>& data, double wavelength,
                             double aperture_radius, double beta_e0,
                             const FitOptions& options)
{
    require_geometry(wavelength, aperture_radius);
    validate(ReducedParams{beta_e0, 0.0});
    const Problem p = make_problem(data);
    const auto [lo, hi] = theta_window(p);

    Minimum m = minimize_scan([&](double theta) { return p(theta, beta_e0); }, lo, hi,
                              kLengthGridPoints, 1e-12, options.workers, 8);
    // Golden section resolves theta only to ~sqrt(eps); polish on the
    // analytic gradient, which crosses zero linearly.
    if (m.converged) {
        auto grad = [&](double theta) { return p.slope(theta, beta_e0); };
        const double g_lo = grad(m.cell_lo), g_hi = grad(m.cell_hi);
        if (g_lo < 0.0 && g_hi > 0.0) {
            const double x = numerics::find_root(grad, {m.cell_lo, m.cell_hi}, 1e-300, 400);
            const double fx = p(x, beta_e0);
            if (fx <= m.fx * (1.0 + 1e-12)) {
                m.x = x;
                m.fx = fx;
            }
        }
    }
    FitResult r;
    r.length_param = length_from_theta(p, m.x, wavelength, aperture_radius);
    r.beta_e0 = beta_e0;
    r.residual_norm = std::sqrt(m.fx);
    r.iterations = m.iterations;
    r.converged = m.converged;
    if (!m.converged)
        r.warnings.push_back("minimum of L lies on the edge of the expanded search window");
    return r;
}

FitResult fit_length(const std::vector<Measurement>& data, double mass, double wavelength,
                     double aperture_radius, double temperature, const FitOptions& options)
{
    return fit_length_at_beta(data, wavelength, aperture_radius,
                              units::beta_e0(mass, wavelength, temperature), options);
}

FitResult fit_length_and_beta(const std::vector<Measurement>& data, double wavelength,
                              double aperture_radius, const FitOptions& options)
{
    require_geometry(wavelength, aperture_radius);
    if (data.size() < 3)
        throw DegenerateDataError("joint fit needs at least three measurements");
    const Problem p = make_problem(data);
    if (p.d_ref < 3.0 * p.d_min)
        throw DegenerateDataError("joint fit needs screen distances spanning a factor of 3");
    const auto [lo, hi] = theta_window(p);

    const double log_beta_lo = std::log(kBetaMin), log_beta_hi = std::log(kBetaMax);
    auto inner = [&](double theta) {
        return minimize_scan([&](double lb) { return p(theta, std::exp(lb)); }, log_beta_lo,
                             log_beta_hi, kBetaGridPoints, 1e-11, 1, 0);
    };
    const Minimum outer = minimize_scan([&](double theta) { return inner(theta).fx; }, lo, hi,
                                        kLengthGridPoints, 1e-11, options.workers, 8);
    const Minimum beta = inner(outer.x);

    FitResult r;
    r.length_param = length_from_theta(p, outer.x, wavelength, aperture_radius);
    r.beta_e0 = std::exp(beta.x);
    r.beta_fitted = true;
    r.residual_norm = std::sqrt(outer.fx);
    r.iterations = outer.iterations;
    r.converged = outer.converged;
    if (!outer.converged)
        r.warnings.push_back("minimum of L lies on the edge of the expanded search window");
    if (!beta.converged)
        r.warnings.push_back("beta_e0 lies on the edge of its search window [1e-3, 1e3]");
    if (beta_sensitivity(p, outer.x, r.beta_e0) < kFlatSensitivity)
        r.warnings.push_back(
            "flat likelihood in beta_e0: data lie in the far-field exponential regime");
    return r;
}

}  // namespace mwa::inference
