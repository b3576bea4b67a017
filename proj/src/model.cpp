#include "mwa/model.hpp"

#include "mwa/errors.hpp"
#include "mwa/numerics.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mwa {

void validate(const ReducedParams& p)
{
    if (!std::isfinite(p.beta_e0) || p.beta_e0 < 0.0)
        throw DomainError("beta_e0 must be finite and >= 0");
    if (!std::isfinite(p.t_d) || p.t_d < 0.0)
        throw DomainError("t_d must be finite and >= 0");
}

namespace model {

double z0()
{
    static const double value = numerics::find_root(
        [](double z) { return std::exp(z) - 2.0 * z - 1.0; }, {0.5, 3.0}, 1e-15);
    return value;
}

double log_partition_forward(const ReducedParams& p)
{
    validate(p);
    return -p.beta_e0 * std::exp(-p.t_d) - p.t_d;
}

double partition_forward(const ReducedParams& p)
{
    return std::exp(log_partition_forward(p));
}

// e^{-Z0 e^{-t}} - e^{-Z0} = e^{-Z0} expm1(Z0 (1 - e^{-t})), accurate for small t.
double log_partition_diffracted(double t_r)
{
    if (!(t_r >= 0.0))
        throw DomainError("partition_diffracted: t_r must be >= 0");
    const double z = z0();
    const double bracket = std::expm1(-z * std::expm1(-t_r));
    return std::log(bracket) - z - std::log(z);
}

double partition_diffracted(double t_r)
{
    return std::exp(log_partition_diffracted(t_r));
}

double log_odds_residual(const ReducedParams& p)
{
    return log_partition_diffracted(p.t_d) - log_partition_forward(p);
}

double log_detection_ratio(const ReducedParams& p)
{
    return -numerics::softplus(log_odds_residual(p));
}

double log_detection_ratio_slope(const ReducedParams& p)
{
    validate(p);
    const double z = z0();
    const double t = p.t_d;
    const double a = -z * std::expm1(-t);
    // d/dt ln expm1(a) = a' e^a / expm1(a), a' = z e^{-t}; finite limit 1/t
    const double d_log_bracket = z * std::exp(-t) * std::exp(a) / std::expm1(a);
    const double d_log_odds = d_log_bracket - p.beta_e0 * std::exp(-t) + 1.0;
    const double odds = log_odds_residual(p);
    // d/dx softplus(x) = logistic(x)
    const double logistic = 1.0 / (1.0 + std::exp(-odds));
    return -logistic * d_log_odds;
}

double detection_ratio(const ReducedParams& p)
{
    return std::exp(log_detection_ratio(p));
}

double detection_ratio_approx(const ReducedParams& p)
{
    validate(p);
    if (p.t_d == 0.0)
        return 1.0;
    const double log_term =
        p.beta_e0 - z0() + std::log(p.t_d) - p.beta_e0 * p.t_d;
    return std::exp(-numerics::softplus(log_term));
}

CurvePoint approx_valley(double beta_e0)
{
    if (!(beta_e0 > 0.0) || !std::isfinite(beta_e0))
        throw DomainError("approx_valley: beta_e0 must be > 0");
    // beta/(beta + e^{beta - Z0}) written as a logistic in log space.
    const double ratio =
        std::exp(-numerics::softplus(beta_e0 - z0() - std::log(beta_e0)));
    return {1.0 / beta_e0, ratio};
}

CurvePoint approx_peak(double beta_e0)
{
    if (!(beta_e0 > 1.0) || !std::isfinite(beta_e0))
        throw DomainError("approx_peak: beta_e0 must be > 1");
    const double z = z0();
    return {std::log(beta_e0), z / (std::exp(1.0) * beta_e0 * (-std::expm1(-z)))};
}

double asymptotic_ratio(double t_d)
{
    if (!(t_d >= 0.0))
        throw DomainError("asymptotic_ratio: t_d must be >= 0");
    const double z = z0();
    return z / (-std::expm1(-z)) * std::exp(-t_d);
}

ExtremaReport find_extrema(double beta_e0, double t_max)
{
    validate({beta_e0, 0.0});
    if (!(t_max > kExtremaGridStart))
        throw DomainError("find_extrema: t_max must exceed the grid start");

    ExtremaReport report;
    if (beta_e0 > 0.0)
        report.approx_valley = approx_valley(beta_e0);
    if (beta_e0 > 1.0)
        report.approx_peak = approx_peak(beta_e0);

    auto log_ratio = [beta_e0](double t) { return log_detection_ratio({beta_e0, t}); };

    const int n = kExtremaGridPoints;
    const double step = std::log(t_max / kExtremaGridStart) / (n - 1);
    std::vector<double> t(n), y(n);
    for (int i = 0; i < n; ++i) {
        t[i] = kExtremaGridStart * std::exp(step * i);
        y[i] = log_ratio(t[i]);
    }
    t[n - 1] = t_max;

    for (int i = 1; i + 1 < n; ++i) {
        const bool is_min = y[i] < y[i - 1] && y[i] <= y[i + 1];
        const bool is_max = y[i] > y[i - 1] && y[i] >= y[i + 1];
        if (!is_min && !is_max)
            continue;
        const auto kind = is_min ? numerics::ExtremumKind::Min : numerics::ExtremumKind::Max;
        const double tol = 1e-10 * t[i];
        try {
            const auto ext = numerics::refine_extremum(log_ratio, {t[i - 1], t[i + 1]}, kind, tol);
            const CurvePoint point{ext.x, std::exp(ext.fx)};
            if (is_min && !report.valley)
                report.valley = point;
            else if (is_max && !report.peak)
                report.peak = point;
        } catch (const NotFoundError&) {
            // plateau in rounding noise; not a genuine stationary point
        }
    }
    report.monotonic = !report.valley && !report.peak;
    return report;
}

double monotonic_threshold()
{
    double lo = 4.0, hi = 5.0;
    if (!find_extrema(lo).monotonic || find_extrema(hi).monotonic)
        throw NotFoundError("monotonic_threshold: transition not bracketed by [4, 5]");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (find_extrema(mid).monotonic)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace model
}  // namespace mwa
