#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerics; formulas are written out directly.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

namespace oracle {

// Plain bisection for the positive root of e^z - 2z - 1.
inline double z0()
{
    double lo = 0.5, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::exp(mid) - 2 * mid - 1 < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double midpoint(const std::function<double(double)>& f, double lo, double hi, long n)
{
    const double h = (hi - lo) / static_cast<double>(n);
    double sum = 0.0;
    for (long i = 0; i < n; ++i)
        sum += f(lo + (static_cast<double>(i) + 0.5) * h);
    return sum * h;
}

inline double forward(double beta_e0, double t) { return std::exp(-beta_e0 * std::exp(-t) - t); }

inline double diffracted(double t)
{
    const double z = z0();
    return (std::exp(-z * std::exp(-t)) - std::exp(-z)) / z;
}

// Z_f / (Z_f + Z_d), evaluated literally.
inline double ratio_from_partitions(double beta_e0, double t)
{
    const double zf = forward(beta_e0, t);
    return zf / (zf + diffracted(t));
}

// Closed ratio Z0 / (Z0 + [..] exp(beta e^{-t} + t)) evaluated literally.
inline double ratio_closed(double beta_e0, double t)
{
    const double z = z0();
    return z / (z + (std::exp(-z * std::exp(-t)) - std::exp(-z)) *
                        std::exp(beta_e0 * std::exp(-t) + t));
}

struct GridExtremum {
    double x;
    double fx;
};

// Brute-force search over n evenly spaced points.
inline GridExtremum scan(const std::function<double(double)>& f, double lo, double hi, long n,
                         bool minimum)
{
    GridExtremum best{lo, f(lo)};
    for (long i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        const double fx = f(x);
        if (minimum ? fx < best.fx : fx > best.fx)
            best = {x, fx};
    }
    return best;
}

// Counts stationary points of g on a log grid by sign changes of successive
// differences.
inline int count_turns(const std::function<double(double)>& g, double lo, double hi, long n)
{
    int turns = 0;
    double prev = g(lo);
    double t = lo;
    const double step = std::log(hi / lo) / static_cast<double>(n);
    double prev_diff = 0.0;
    for (long i = 1; i <= n; ++i) {
        t = lo * std::exp(step * static_cast<double>(i));
        const double cur = g(t);
        const double diff = cur - prev;
        if (i > 1 && diff * prev_diff < 0)
            ++turns;
        if (diff != 0.0)
            prev_diff = diff;
        prev = cur;
    }
    return turns;
}

// Standard normal deviates from 53-bit uniforms (Box-Muller), portable
// across standard libraries.
class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : engine_(seed) {}

    double operator()()
    {
        const double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace oracle
