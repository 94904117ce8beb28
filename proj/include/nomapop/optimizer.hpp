#pragma once

// Global minimization of the pair outage probability over the power fraction.
//
// The outage is decreasing on Case1 and increasing on Case4, so the minimizer
// is one of the two corners shared with the middle cases or a stationary
// point of Case2/Case3. Those stationary points solve a quadratic in alpha
// that does not depend on the transmit SNR.

#include "nomapop/analytic.hpp"
#include "nomapop/model.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace nomapop {

/// a * alpha^2 + b * alpha + c = 0, produced by the stationarity condition of
/// `source_case` (Case2 or Case3).
struct QuadraticCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    CaseLabel source_case = CaseLabel::Case2;
};

QuadraticCoefficients case2_coefficients(const DerivedParams& derived);
QuadraticCoefficients case3_coefficients(const DerivedParams& derived);

/// Real roots, "+" root first. A leading coefficient below 1e-12 relative to
/// the others is treated as the linear equation b * alpha + c = 0.
std::vector<double> solve_quadratic(const QuadraticCoefficients& q);

std::vector<double> case2_roots(const DerivedParams& derived);
std::vector<double> case3_roots(const DerivedParams& derived);

/// Upper corner of Case1 and lower corner of Case4: (alpha5, alpha2) when
/// alpha5 < alpha2, (alpha2, alpha5) otherwise.
std::pair<double, double> corner_candidates(const DerivedParams& derived);

enum class CandidateKind { Corner1, Root1, Root2, Root3, Root4, Corner2 };

std::string_view to_string(CandidateKind kind);

struct Candidate {
    CandidateKind kind = CandidateKind::Corner1;
    bool exists = false;
    bool feasible = false;
    double alpha = 0.0;
    std::optional<PopValue> pop;
};

/// Corner1, Root1..Root4, Corner2 in that order.
struct CandidateSet {
    std::array<Candidate, 6> candidates;

    const Candidate& operator[](CandidateKind kind) const { return candidates[static_cast<std::size_t>(kind)]; }
};

CandidateSet candidate_set(const DerivedParams& derived);

struct Optimum {
    double alpha_star = 0.0;
    PopValue pop_star;
    CandidateSet candidates;
};

/// Closed-form minimizer. Ties between candidates go to the smallest alpha.
/// Throws Error(NoFeasibleAllocation) when every alpha is in certain outage.
Optimum optimize(const SystemConfig& config);
Optimum optimize(const DerivedParams& derived);

struct GridMinimum {
    double alpha_min = 0.0;
    PopValue pop_min;
};

/// Exhaustive search over {step, 2 step, ...} inside (0, 1); first grid point
/// wins ties. A verification fixture, not part of `optimize`.
GridMinimum grid_oracle(const SystemConfig& config, double step);
GridMinimum grid_oracle(const DerivedParams& derived, double step);

}  // namespace nomapop
