#pragma once

// Closed-form pair outage probability as a piecewise function of the power
// fraction alpha, and its derivative on each piece.

#include "nomapop/model.hpp"

#include <array>
#include <string_view>

namespace nomapop {

/// Which threshold pair is active: Case1 (zeta1, zeta3), Case2 (zeta1, zeta4),
/// Case3 (zeta2, zeta3), Case4 (zeta2, zeta4); Case5 is certain outage.
enum class CaseLabel { Case1 = 1, Case2, Case3, Case4, Case5 };

std::string_view to_string(CaseLabel label);

/// Half-open alpha interval [lower, upper).
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    bool empty() const { return !(lower < upper); }
    bool contains(double alpha) const { return lower <= alpha && alpha < upper; }
};

struct CaseRegion {
    CaseLabel label = CaseLabel::Case5;
    Interval active_interval;
};

struct PopValue {
    double value = 1.0;
    CaseLabel region = CaseLabel::Case5;
    double ccdf1 = 0.0;
    double ccdf2 = 0.0;

    /// ccdf1 * ccdf2, i.e. 1 - value without the cancellation near value ~ 1.
    double success() const { return ccdf1 * ccdf2; }
};

/// Exponential CCDF exp(-zeta / lambda) of a gain with mean `lambda`; 0 for
/// an infeasible threshold, 1 for zeta <= 0. The exponent is capped at 700.
double ccdf_gain(GainThreshold zeta, double lambda);

/// Interval of one of Case1..Case4, possibly empty. Shared boundaries go to
/// the right-hand case.
Interval case_interval(CaseLabel label, const DerivedParams& derived);

/// Intervals of Case1..Case4 in label order.
std::array<CaseRegion, 4> case_regions(const DerivedParams& derived);

CaseRegion classify_case(double alpha, const DerivedParams& derived);

/// Throws Error(InvalidInput) unless 0 < alpha < 1.
PopValue pop(double alpha, const DerivedParams& derived);

/// dPo/dalpha of the active case. Throws Error(NotDifferentiable) in Case5
/// and at the left edge of a case interval.
double dpop_dalpha(double alpha, const DerivedParams& derived);

}  // namespace nomapop
