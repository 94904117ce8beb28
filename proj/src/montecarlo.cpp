#include "nomapop/montecarlo.hpp"

#include "nomapop/analytic.hpp"
#include "nomapop/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace nomapop {

namespace {

std::uint64_t run_chunk(const DerivedParams& d, double alpha, const McConfig& mc, std::uint64_t chunk_index,
                        std::uint64_t count)
{
    GainSampler sampler(mc.seed, chunk_index);
    std::uint64_t outages = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        auto [g1, g2] = sampler.sample_gains(d.lambda1, d.lambda2);
        if (mc.enforce_ordering && g1 < g2) {
            std::swap(g1, g2);
        }
        const SinrTuple s = sinrs(alpha, g1, g2, d.beta, d.rho_t);
        const bool served = s.gamma11 > d.pi1 && s.gamma21 > d.pi2 && s.gamma12 > d.pi1 && s.gamma22 > d.pi2;
        outages += served ? 0 : 1;
    }
    return outages;
}

}  // namespace

void McConfig::validate() const
{
    if (trials == 0) {
        throw Error(ErrorKind::InvalidInput, "Monte Carlo trial count must be positive");
    }
    if (chunk == 0) {
        throw Error(ErrorKind::InvalidInput, "Monte Carlo chunk size must be positive");
    }
}

GainSampler::GainSampler(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double GainSampler::uniform()
{
    // 53 random bits -> [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::pair<double, double> GainSampler::sample_gains(double lambda1, double lambda2)
{
    const double g1 = -lambda1 * std::log1p(-uniform());
    const double g2 = -lambda2 * std::log1p(-uniform());
    return {g1, g2};
}

McEstimate pop_estimate(const SystemConfig& config, double alpha, const McConfig& mc)
{
    mc.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorKind::InvalidInput, "power fraction alpha must lie in (0, 1)");
    }
    const DerivedParams d = derive(config);

    const std::uint64_t chunks = (mc.trials + mc.chunk - 1) / mc.chunk;
    std::vector<std::uint64_t> counts(chunks, 0);
    auto chunk_size = [&](std::uint64_t k) { return std::min(mc.chunk, mc.trials - k * mc.chunk); };

    unsigned workers = mc.workers != 0 ? mc.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

    if (workers <= 1) {
        for (std::uint64_t k = 0; k < chunks; ++k) {
            counts[k] = run_chunk(d, alpha, mc, k, chunk_size(k));
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t k = next++; k < chunks; k = next++) {
                    counts[k] = run_chunk(d, alpha, mc, k, chunk_size(k));
                }
            });
        }
    }

    McEstimate est;
    est.trials = mc.trials;
    est.outages = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    const double n = static_cast<double>(mc.trials);
    est.pop_hat = static_cast<double>(est.outages) / n;
    est.std_err = std::sqrt(est.pop_hat * (1.0 - est.pop_hat) / n);
    est.ci_lower = std::max(0.0, est.pop_hat - 1.96 * est.std_err);
    est.ci_upper = std::min(1.0, est.pop_hat + 1.96 * est.std_err);
    return est;
}

bool ValidationReport::any_flagged() const
{
    return std::any_of(points.begin(), points.end(), [](const ValidationPoint& p) { return p.flagged; });
}

std::size_t ValidationReport::count_within(double z_limit) const
{
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [&](const ValidationPoint& p) { return std::abs(p.z) <= z_limit; }));
}

ValidationPoint compare(double alpha, const PopValue& analytic, const McEstimate& est)
{
    ValidationPoint p;
    p.alpha = alpha;
    p.analytic = analytic.value;
    p.empirical = est.pop_hat;
    p.std_err = std::sqrt(analytic.value * analytic.success() / static_cast<double>(est.trials));
    const double diff = est.pop_hat - analytic.value;
    if (p.std_err > 0.0) {
        p.z = diff / p.std_err;
    } else {
        p.z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    p.flagged = !(std::abs(p.z) <= kFlagZ);
    return p;
}

ValidationReport validate(const SystemConfig& config, std::span<const double> alphas, const McConfig& mc)
{
    mc.validate();
    if (alphas.empty()) {
        throw Error(ErrorKind::InvalidInput, "validation needs at least one alpha");
    }
    const DerivedParams d = derive(config);
    ValidationReport report;
    report.points.reserve(alphas.size());
    for (const double alpha : alphas) {
        report.points.push_back(compare(alpha, pop(alpha, d), pop_estimate(config, alpha, mc)));
    }
    return report;
}

}  // namespace nomapop
