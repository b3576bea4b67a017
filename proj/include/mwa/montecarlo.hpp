#pragma once

#include "mwa/model.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace mwa {

struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// One reproducible uniform stream. Streams are keyed by (seed, stream_id,
// substream); the substream index lets a single logical stream be cut into
// fixed-size chunks that can be drawn on any thread.
class RandomStream {
public:
    explicit RandomStream(RngState state, std::uint64_t substream = 0);

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

private:
    std::mt19937_64 engine_;
};

enum class OutcomeKind { Detected, Residual };

struct ResidualPosition {
    double chi;
    double emission_u;
};

struct SampleOutcome {
    OutcomeKind kind = OutcomeKind::Detected;
    std::optional<ResidualPosition> residual;  // present iff kind == Residual
};

struct McEstimate {
    std::uint64_t n = 0;
    std::uint64_t detected = 0;
    double ratio_hat = 0.0;
    double std_error = 0.0;  // sqrt(ratio_hat (1 - ratio_hat) / n)
};

struct HistogramBin {
    double chi_lo;
    double chi_hi;
    std::uint64_t count;

    bool operator==(const HistogramBin&) const = default;
};

namespace montecarlo {

// Draws per chunk; chunk k of stream (seed, stream_id) uses substream k.
constexpr std::uint64_t kChunkSize = 1u << 16;

// Exact two-stage sampler. A particle is detected with probability
// detection_ratio(p). Otherwise the emission time u has density
// proportional to e^{-u - Z0 e^{-u}} on [0, t_d], drawn by inverting the
// truncated exponential law of v = Z0 e^{-u} on [Z0 e^{-t_d}, Z0], and the
// position is uniform on [2u - t_d, t_d].
class OutcomeSampler {
public:
    explicit OutcomeSampler(const ReducedParams& p);

    SampleOutcome operator()(RandomStream& rng) const;

    const ReducedParams& params() const { return params_; }
    double detection_probability() const { return detect_; }

private:
    ReducedParams params_;
    double detect_;
    double z0_;
    double exp_neg_vmin_;
    double exp_span_;  // e^{-v_min} - e^{-v_max}
};

SampleOutcome sample_outcome(RandomStream& rng, const ReducedParams& p);

McEstimate make_estimate(std::uint64_t n, std::uint64_t detected);

McEstimate estimate_ratio(RngState rng, const ReducedParams& p, std::uint64_t n,
                          int workers = 1);

std::vector<HistogramBin> residual_histogram(RngState rng, const ReducedParams& p,
                                             std::uint64_t n, int bins, int workers = 1);

// Residual positions in draw order.
std::vector<double> residual_positions(RngState rng, const ReducedParams& p,
                                       std::uint64_t n, int workers = 1);

struct McRun {
    McEstimate estimate;
    std::vector<HistogramBin> histogram;
};

// Estimate and histogram from the same n draws.
McRun run(RngState rng, const ReducedParams& p, std::uint64_t n, int bins, int workers = 1);

}  // namespace montecarlo
}  // namespace mwa
