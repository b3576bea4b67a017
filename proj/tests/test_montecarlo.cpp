#include "mwa/density.hpp"
#include "mwa/errors.hpp"
#include "mwa/model.hpp"
#include "mwa/montecarlo.hpp"
#include "stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace mwa;
using namespace mwa::montecarlo;

TEST_CASE("RandomStream reproducibility")
{
    RandomStream a({42, 0}), b({42, 0}), c({42, 1}), d({43, 0}), e({42, 0}, 1);
    bool differs_c = false, differs_d = false, differs_e = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        differs_c |= x != c.uniform();
        differs_d |= x != d.uniform();
        differs_e |= x != e.uniform();
    }
    CHECK(differs_c);
    CHECK(differs_d);
    CHECK(differs_e);
}

TEST_CASE("sample_outcome: zero distance is always detected")
{
    RandomStream rng({1, 0});
    for (int i = 0; i < 10000; ++i)
        CHECK(sample_outcome(rng, {6.0, 0.0}).kind == OutcomeKind::Detected);
}

TEST_CASE("sample_outcome: residual support")
{
    for (const ReducedParams p : {ReducedParams{1.0, 1.0}, ReducedParams{8.0, 2.0},
                                  ReducedParams{20.0, 0.05}, ReducedParams{0.0, 12.0}}) {
        OutcomeSampler sampler(p);
        RandomStream rng({99, 3});
        int residuals = 0;
        for (int i = 0; i < 100000; ++i) {
            const auto s = sampler(rng);
            if (s.kind == OutcomeKind::Detected) {
                CHECK_FALSE(s.residual);
                continue;
            }
            ++residuals;
            REQUIRE(s.residual);
            const auto [chi, u] = *s.residual;
            CHECK(u >= 0.0);
            CHECK(u <= p.t_d);
            CHECK(chi >= 2.0 * u - p.t_d);
            CHECK(chi <= p.t_d);
        }
        CHECK(residuals > 0);
    }
}

TEST_CASE("estimate_ratio: detection fraction")
{
    const ReducedParams p{8.0, 2.0};
    const auto est = estimate_ratio({42, 0}, p, 1000000);
    CHECK(est.n == 1000000);
    CHECK(est.ratio_hat == static_cast<double>(est.detected) / 1e6);
    CHECK(est.std_error == doctest::Approx(std::sqrt(est.ratio_hat * (1 - est.ratio_hat) / 1e6)));
    CHECK(std::abs(est.ratio_hat - model::detection_ratio(p)) <= 4 * est.std_error);

    const auto zero = estimate_ratio({5, 0}, {3.0, 0.0}, 1000);
    CHECK(zero.ratio_hat == 1.0);
    CHECK(zero.std_error == 0.0);

    CHECK_THROWS_AS(estimate_ratio({1, 0}, p, 0), DomainError);
}

TEST_CASE("estimate_ratio: deterministic and worker independent")
{
    const ReducedParams p{5.0, 1.3};
    const auto a = estimate_ratio({7, 2}, p, 300001, 1);
    const auto b = estimate_ratio({7, 2}, p, 300001, 1);
    const auto c = estimate_ratio({7, 2}, p, 300001, 4);
    CHECK(a.detected == b.detected);
    CHECK(a.detected == c.detected);
    CHECK(a.ratio_hat == c.ratio_hat);
    CHECK(a.std_error == c.std_error);
    CHECK(residual_positions({7, 2}, p, 300001, 1) == residual_positions({7, 2}, p, 300001, 3));
}

TEST_CASE("residual positions follow the analytic CDF")
{
    const ReducedParams p{1.0, 1.0};
    const auto chi = residual_positions({42, 0}, p, 1000000, 2);
    const double mass = density::residual_mass(p);
    const double d = stats::ks_distance(chi, [&](double x) {
        return density::cdf_diffracted(p, std::clamp(x, -p.t_d, p.t_d)) / mass;
    });
    CHECK(d <= stats::ks_critical_1pct(chi.size()));
}

TEST_CASE("residual_histogram")
{
    const ReducedParams p{1.0, 1.0};
    const std::uint64_t n = 1000000;
    const auto run_out = run({42, 0}, p, n, 50, 2);
    const auto& hist = run_out.histogram;
    REQUIRE(hist.size() == 50);
    CHECK(hist == residual_histogram({42, 0}, p, n, 50, 1));

    std::uint64_t total = 0;
    for (const auto& bin : hist) {
        total += bin.count;
        const double expected = static_cast<double>(n) * (density::cdf_diffracted(p, bin.chi_hi) -
                                                          density::cdf_diffracted(p, bin.chi_lo));
        CHECK(std::abs(static_cast<double>(bin.count) - expected) <= 5 * std::sqrt(expected));
        if (bin.chi_hi <= 0.0)
            CHECK(bin.count > 0);
    }
    CHECK(total == n - run_out.estimate.detected);
    CHECK(hist.front().chi_lo == -1.0);
    CHECK(hist.back().chi_hi == 1.0);

    CHECK(residual_histogram({1, 0}, {4.0, 0.0}, 100, 10).empty());
    CHECK_THROWS_AS(residual_histogram({1, 0}, p, 100, 0), DomainError);
}

TEST_CASE("make_estimate")
{
    const auto e = make_estimate(400, 100);
    CHECK(e.ratio_hat == 0.25);
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 400)));
}
