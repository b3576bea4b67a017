#pragma once

#include <functional>
#include <utility>

namespace mwa::numerics {

using ScalarFunction = std::function<double(double)>;

struct Bracket {
    double lo;
    double hi;

    double width() const { return hi - lo; }
};

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 64;
};

enum class ExtremumKind { Min, Max };

struct Extremum {
    double x;
    double fx;
};

// Bisection safeguarded secant. Stops when |f(x)| <= tol or the bracket
// is narrower than tol.
double find_root(const ScalarFunction& f, Bracket bracket, double tol,
                 int max_iterations = 200);

// Adaptive Gauss-Kronrod (7/15) integration. If the subdivision budget runs
// out, the integral is retried after the substitution u = hi - (hi-lo)e^{-s},
// which regularises an integrable (e.g. logarithmic) singularity at hi.
double integrate(const ScalarFunction& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

// Golden-section search for a single interior extremum.
Extremum refine_extremum(const ScalarFunction& f, Bracket bracket,
                         ExtremumKind kind, double tol);

// ln(e^a + e^b) without overflow; handles -inf arguments.
double log_add_exp(double a, double b);

// ln(1 + e^x).
double softplus(double x);

}  // namespace mwa::numerics
