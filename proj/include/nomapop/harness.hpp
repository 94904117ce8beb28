#pragma once

// Experiment runner behind the CLI: parameter sweeps, the allocation scheme
// comparison, and closed-form vs Monte Carlo validation.

#include "nomapop/model.hpp"
#include "nomapop/montecarlo.hpp"
#include "nomapop/report.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nomapop {

enum class ExperimentKind {
    SweepThreshold,
    SweepAlpha,
    SweepSnr,
    CompareSchemes,
    SweepDistance,
    ValidateMc,
};

std::string to_string(ExperimentKind kind);

/// `count` evenly spaced values from `start` to `stop` inclusive.
struct SweepAxis {
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 2;

    std::vector<double> values() const;
};

inline constexpr double kEpaAlpha = 0.5;
inline constexpr double kFpaAlpha = 0.4;

struct Experiment {
    ExperimentKind kind = ExperimentKind::SweepAlpha;
    SystemConfig base = default_config();
    SweepAxis sweep;
    /// Fixed allocation for the threshold, SNR and distance sweeps.
    double alpha = kEpaAlpha;
    /// One curve per SNR (dB); empty means the SNR of `base`.
    std::vector<double> snr_db_series;
    /// For r1_th sweeps: one curve per far-user threshold; empty keeps `base`.
    std::vector<double> r2_series;
    /// Adds Monte Carlo columns where supported; required for ValidateMc.
    std::optional<McConfig> mc;
    /// Added to every closed-form value before comparison (detector check).
    double corrupt_analytic = 0.0;

    /// Throws Error(InvalidInput) for an axis outside its variable's domain.
    void validate() const;
};

struct ExperimentResult {
    Table table;
    /// Set by ValidateMc when some point has |z| > kFlagZ.
    bool validation_failed = false;
};

/// Reference experiment of each kind at the default configuration.
Experiment default_experiment(ExperimentKind kind);

ExperimentResult run_sweep_threshold(const Experiment& exp);
ExperimentResult run_sweep_alpha(const Experiment& exp);
ExperimentResult run_sweep_snr(const Experiment& exp);
ExperimentResult run_compare_schemes(const Experiment& exp);
ExperimentResult run_sweep_distance(const Experiment& exp);
ExperimentResult run_validate_mc(const Experiment& exp);
ExperimentResult run(const Experiment& exp);

/// Closed-form outage (and optionally a Monte Carlo estimate) at one alpha.
ExperimentResult evaluate_point(const SystemConfig& config, double alpha, const std::optional<McConfig>& mc);

/// Optimizer candidates with their feasibility and the resulting optimum.
ExperimentResult run_optimize(const SystemConfig& config);

/// Leading provenance line: tool version, experiment name, resolved config.
std::string provenance(const std::string& name, const SystemConfig& config, const std::string& extra = {});

/// Version string compiled into the library.
std::string version();

}  // namespace nomapop
