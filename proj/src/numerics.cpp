#include "mwa/numerics.hpp"

#include "mwa/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace mwa::numerics {

double log_add_exp(double a, double b)
{
    if (a < b)
        std::swap(a, b);
    if (a == -std::numeric_limits<double>::infinity())
        return a;
    return a + std::log1p(std::exp(b - a));
}

double softplus(double x)
{
    if (x > 0.0)
        return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

// ---------------------------------------------------------------------------
// Root finding

double find_root(const ScalarFunction& f, Bracket bracket, double tol,
                 int max_iterations)
{
    if (!(bracket.lo < bracket.hi))
        throw DomainError("find_root: bracket requires lo < hi");
    if (!(tol > 0.0))
        throw DomainError("find_root: tolerance must be positive");

    double lo = bracket.lo, hi = bracket.hi;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if (std::signbit(flo) == std::signbit(fhi))
        throw BracketError("find_root: no sign change on [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");

    bool force_bisect = false;
    for (int it = 0; it < max_iterations; ++it) {
        const double width = hi - lo;
        double x = 0.5 * (lo + hi);
        if (!force_bisect) {
            const double xs = hi - fhi * (hi - lo) / (fhi - flo);
            if (xs > lo && xs < hi)
                x = xs;
        }
        if (!(x > lo && x < hi))  // bracket at floating-point resolution
            return std::abs(flo) < std::abs(fhi) ? lo : hi;
        const double fx = f(x);
        if (std::abs(fx) <= tol)
            return x;
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        // A secant step that fails to halve the bracket hands over to bisection.
        force_bisect = (hi - lo) > 0.5 * width;
        if (hi - lo <= tol)
            return std::abs(flo) < std::abs(fhi) ? lo : hi;
    }
    throw ConvergenceError("find_root: iteration limit reached",
                           std::abs(flo) < std::abs(fhi) ? lo : hi);
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const ScalarFunction& f, double lo, double hi)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1)
            gauss += kWg[j / 2] * sum;
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

struct AdaptiveResult {
    double value;
    double error;
    bool converged;
};

AdaptiveResult adaptive(const ScalarFunction& f, double lo, double hi,
                        const QuadratureSpec& spec)
{
    std::priority_queue<Panel> panels;
    Panel first = gauss_kronrod(f, lo, hi);
    double total = first.value, error = first.error;
    panels.push(first);

    for (int split = 0;; ++split) {
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (std::isfinite(total) && error <= target)
            return {total, error, true};
        if (split >= spec.max_subdivisions)
            return {total, error, false};

        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi))
            return {total, error, false};
        const Panel left = gauss_kronrod(f, worst.lo, mid);
        const Panel right = gauss_kronrod(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
}

}  // namespace

double integrate(const ScalarFunction& f, double lo, double hi,
                 const QuadratureSpec& spec)
{
    if (!(lo <= hi))
        throw DomainError("integrate: requires lo <= hi");
    if (!(spec.abs_tol > 0.0 || spec.rel_tol > 0.0) || spec.max_subdivisions < 1)
        throw DomainError("integrate: invalid quadrature spec");
    if (lo == hi)
        return 0.0;

    const AdaptiveResult direct = adaptive(f, lo, hi, spec);
    if (direct.converged)
        return direct.value;

    // Right-endpoint regularisation: u = hi - w e^{-s}, du = w e^{-s} ds.
    // The range is cut where hi - u falls below a few ulps of hi; the
    // neglected tail is O(e^{-s_max}) times a logarithm.
    const double width = hi - lo;
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(hi), width);
    const double s_max = std::log(width / floor);
    auto transformed = [&](double s) {
        const double gap = width * std::exp(-s);
        const double u = hi - gap;
        if (!(u < hi))
            return 0.0;
        return f(u) * gap;
    };
    const AdaptiveResult regular = adaptive(transformed, 0.0, s_max, spec);
    // An integrable singularity leaves an exponentially small tail; a
    // non-integrable one (e.g. 1/(hi-u)) leaves the transformed integrand O(1).
    const double tail = std::abs(transformed(s_max * (1.0 - 1e-6)));
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(regular.value));
    if (regular.converged && tail <= target)
        return regular.value;

    const bool prefer_regular =
        std::isfinite(regular.value) &&
        (!std::isfinite(direct.value) || regular.error < direct.error);
    throw ConvergenceError("integrate: subdivision budget exhausted",
                           prefer_regular ? regular.value : direct.value);
}

// ---------------------------------------------------------------------------
// Extremum search

Extremum refine_extremum(const ScalarFunction& f, Bracket bracket,
                         ExtremumKind kind, double tol)
{
    if (!(bracket.lo < bracket.hi))
        throw DomainError("refine_extremum: bracket requires lo < hi");
    if (!(tol > 0.0))
        throw DomainError("refine_extremum: tolerance must be positive");

    const double sign = kind == ExtremumKind::Min ? 1.0 : -1.0;
    auto g = [&](double x) { return sign * f(x); };

    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = bracket.lo, b = bracket.hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double g1 = g(x1), g2 = g(x2);
    while (b - a > tol) {
        if (g1 < g2) {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - inv_phi * (b - a);
            g1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + inv_phi * (b - a);
            g2 = g(x2);
        }
    }
    const double x = 0.5 * (a + b);
    const double gx = g(x);

    // Collapse onto an end of the bracket means the extremum is not interior.
    const double g_lo = g(bracket.lo), g_hi = g(bracket.hi);
    if (x - bracket.lo <= tol || bracket.hi - x <= tol || !(gx < g_lo) || !(gx < g_hi))
        throw NotFoundError("refine_extremum: no interior extremum in bracket");
    return {x, sign * gx};
}

}  // namespace mwa::numerics
