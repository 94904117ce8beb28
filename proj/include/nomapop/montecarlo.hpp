#pragma once

// Empirical pair outage over sampled Rayleigh-fading channel realizations.
//
// Trials are split into fixed-size chunks; chunk k draws from its own
// generator seeded by (seed, k), so counts do not depend on how chunks are
// spread across worker threads.

#include "nomapop/analytic.hpp"
#include "nomapop/model.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace nomapop {

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t chunk = 1u << 16;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
    /// Experimental: swap each draw so that g1 >= g2. The closed form assumes
    /// independent gains and will not match with this set.
    bool enforce_ordering = false;

    void validate() const;
};

struct McEstimate {
    double pop_hat = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    double std_err = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
};

/// Generator of one chunk's substream.
class GainSampler {
public:
    GainSampler(std::uint64_t seed, std::uint64_t stream);

    /// Independent exponential gains with means lambda1, lambda2 by inverse CDF.
    std::pair<double, double> sample_gains(double lambda1, double lambda2);

private:
    double uniform();

    std::mt19937_64 engine_;
};

McEstimate pop_estimate(const SystemConfig& config, double alpha, const McConfig& mc);

struct ValidationPoint {
    double alpha = 0.0;
    double analytic = 0.0;
    double empirical = 0.0;
    /// sqrt(p (1 - p) / N) at the analytic p: the spread of the estimate if
    /// the closed form is right.
    double std_err = 0.0;
    double z = 0.0;
    bool flagged = false;
};

struct ValidationReport {
    std::vector<ValidationPoint> points;

    bool any_flagged() const;
    std::size_t count_within(double z_limit) const;
};

/// Threshold on |z| above which a point is flagged.
inline constexpr double kFlagZ = 4.0;

/// One report line: z-score of `est` against the closed-form value.
ValidationPoint compare(double alpha, const PopValue& analytic, const McEstimate& est);

ValidationReport validate(const SystemConfig& config, std::span<const double> alphas, const McConfig& mc);

}  // namespace nomapop
