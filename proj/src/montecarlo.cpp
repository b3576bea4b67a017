#include "mwa/montecarlo.hpp"

#include "mwa/errors.hpp"
#include "mwa/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace mwa {

namespace {

std::uint32_t low(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t high(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

std::mt19937_64 seeded_engine(RngState state, std::uint64_t substream)
{
    std::seed_seq seq{low(state.seed),      high(state.seed), low(state.stream_id),
                      high(state.stream_id), low(substream),   high(substream)};
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(RngState state, std::uint64_t substream)
    : engine_(seeded_engine(state, substream))
{
}

double RandomStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

namespace montecarlo {

OutcomeSampler::OutcomeSampler(const ReducedParams& p)
    : params_(p), detect_(model::detection_ratio(p)), z0_(model::z0())
{
    const double v_min = z0_ * std::exp(-p.t_d);
    exp_neg_vmin_ = std::exp(-v_min);
    // e^{-v_min} - e^{-Z0} = e^{-Z0} expm1(Z0 - v_min)
    exp_span_ = std::exp(-z0_) * std::expm1(z0_ - v_min);
}

SampleOutcome OutcomeSampler::operator()(RandomStream& rng) const
{
    if (rng.uniform() < detect_)
        return {OutcomeKind::Detected, std::nullopt};

    const double t_d = params_.t_d;
    const double v = -std::log(exp_neg_vmin_ - rng.uniform() * exp_span_);
    const double u = std::clamp(std::log(z0_ / v), 0.0, t_d);
    const double left = 2.0 * u - t_d;
    const double chi = std::min(left + rng.uniform() * (t_d - left), t_d);
    return {OutcomeKind::Residual, ResidualPosition{chi, u}};
}

SampleOutcome sample_outcome(RandomStream& rng, const ReducedParams& p)
{
    return OutcomeSampler(p)(rng);
}

McEstimate make_estimate(std::uint64_t n, std::uint64_t detected)
{
    McEstimate e;
    e.n = n;
    e.detected = detected;
    e.ratio_hat = n ? static_cast<double>(detected) / static_cast<double>(n) : 0.0;
    e.std_error = n ? std::sqrt(e.ratio_hat * (1.0 - e.ratio_hat) / static_cast<double>(n)) : 0.0;
    return e;
}

namespace {

std::uint64_t chunk_count(std::uint64_t n) { return (n + kChunkSize - 1) / kChunkSize; }

// Visits every draw of chunk k in order.
template <class Visit>
void draw_chunk(RngState rng, const OutcomeSampler& sampler, std::uint64_t n,
                std::uint64_t k, Visit&& visit)
{
    RandomStream stream(rng, k);
    const std::uint64_t begin = k * kChunkSize;
    const std::uint64_t end = std::min(n, begin + kChunkSize);
    for (std::uint64_t i = begin; i < end; ++i)
        visit(sampler(stream));
}

void require_draws(std::uint64_t n)
{
    if (n == 0)
        throw DomainError("Monte Carlo sample count must be >= 1");
}

}  // namespace

McRun run(RngState rng, const ReducedParams& p, std::uint64_t n, int bins, int workers)
{
    require_draws(n);
    if (bins < 1)
        throw DomainError("histogram needs at least one bin");
    const OutcomeSampler sampler(p);
    const std::uint64_t chunks = chunk_count(n);
    const bool with_histogram = p.t_d > 0.0;
    const auto n_bins = static_cast<std::size_t>(bins);

    std::vector<std::uint64_t> detected(chunks, 0);
    std::vector<std::vector<std::uint64_t>> counts(
        chunks, std::vector<std::uint64_t>(with_histogram ? n_bins : 0, 0));
    const double lo = -p.t_d;
    const double width = 2.0 * p.t_d;

    parallel_for(chunks, workers, [&](std::size_t k) {
        draw_chunk(rng, sampler, n, k, [&](const SampleOutcome& s) {
            if (s.kind == OutcomeKind::Detected) {
                ++detected[k];
                return;
            }
            const double frac = (s.residual->chi - lo) / width;
            const auto bin = std::min(n_bins - 1, static_cast<std::size_t>(
                                                      std::max(0.0, frac * bins)));
            ++counts[k][bin];
        });
    });

    McRun out;
    std::uint64_t total_detected = 0;
    for (auto d : detected)
        total_detected += d;
    out.estimate = make_estimate(n, total_detected);
    if (with_histogram) {
        out.histogram.reserve(n_bins);
        for (std::size_t b = 0; b < n_bins; ++b) {
            std::uint64_t c = 0;
            for (const auto& chunk : counts)
                c += chunk[b];
            out.histogram.push_back({lo + width * static_cast<double>(b) / bins,
                                     b + 1 == n_bins ? p.t_d
                                                     : lo + width * static_cast<double>(b + 1) / bins,
                                     c});
        }
    }
    return out;
}

McEstimate estimate_ratio(RngState rng, const ReducedParams& p, std::uint64_t n, int workers)
{
    return run(rng, p, n, 1, workers).estimate;
}

std::vector<HistogramBin> residual_histogram(RngState rng, const ReducedParams& p,
                                             std::uint64_t n, int bins, int workers)
{
    return run(rng, p, n, bins, workers).histogram;
}

std::vector<double> residual_positions(RngState rng, const ReducedParams& p,
                                       std::uint64_t n, int workers)
{
    require_draws(n);
    const OutcomeSampler sampler(p);
    const std::uint64_t chunks = chunk_count(n);
    std::vector<std::vector<double>> parts(chunks);
    parallel_for(chunks, workers, [&](std::size_t k) {
        draw_chunk(rng, sampler, n, k, [&](const SampleOutcome& s) {
            if (s.residual)
                parts[k].push_back(s.residual->chi);
        });
    });
    std::vector<double> out;
    for (auto& part : parts)
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

}  // namespace montecarlo
}  // namespace mwa
