#include "nomapop/analytic.hpp"

#include "nomapop/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nomapop {

namespace {

constexpr double kMaxExponent = 700.0;

Interval make(double lower, double upper)
{
    return {lower, upper};
}

// Slopes d(zeta_k / lambda)/dalpha in magnitude, one per gain threshold.
struct ThresholdSlopes {
    double zeta1;  // decreasing in alpha
    double zeta2;  // increasing
    double zeta3;  // decreasing
    double zeta4;  // increasing
};

ThresholdSlopes slopes(double alpha, const DerivedParams& d)
{
    const double s1 = d.beta * d.pi1 + 1.0;
    const double s2 = d.beta * d.pi2 + 1.0;
    const double t1 = d.pi1 + 1.0;
    const double t2 = d.pi2 + 1.0;
    const double u1 = alpha * s1 - d.beta * d.pi1;
    const double u2 = 1.0 - alpha * t2;
    const double u3 = alpha * t1 - d.pi1;
    const double u4 = 1.0 - alpha * s2;
    ThresholdSlopes k;
    k.zeta1 = d.pi1 * s1 / (d.lambda1 * d.rho_t * u1 * u1);
    k.zeta2 = d.pi2 * t2 / (d.lambda1 * d.rho_t * u2 * u2);
    k.zeta3 = d.pi1 * t1 / (d.lambda2 * d.rho_t * u3 * u3);
    k.zeta4 = d.pi2 * s2 / (d.lambda2 * d.rho_t * u4 * u4);
    return k;
}

}  // namespace

std::string_view to_string(CaseLabel label)
{
    switch (label) {
    case CaseLabel::Case1:
        return "Case1";
    case CaseLabel::Case2:
        return "Case2";
    case CaseLabel::Case3:
        return "Case3";
    case CaseLabel::Case4:
        return "Case4";
    case CaseLabel::Case5:
        return "Case5";
    }
    return "Case5";
}

double ccdf_gain(GainThreshold zeta, double lambda)
{
    if (!zeta.feasible()) {
        return 0.0;
    }
    if (zeta.value <= 0.0) {
        return 1.0;
    }
    return std::exp(-std::min(zeta.value / lambda, kMaxExponent));
}

Interval case_interval(CaseLabel label, const DerivedParams& derived)
{
    const auto& b = derived.breakpoints;
    const double a1 = b.alpha1, a2 = b.alpha2, a3 = b.alpha3;
    const double a4 = b.alpha4, a5 = b.alpha5, a6 = b.alpha6;

    // Each case is the intersection of one near-user branch, (a1, a2) or
    // (a2, a3), with one far-user branch, (a4, a5) or (a5, a6). Side
    // conditions pick the binding ends; ties go to the second alternative so
    // that every ordering of the breakpoints is covered.
    Interval iv;
    switch (label) {
    case CaseLabel::Case1:
        iv = (a5 < a2) ? make(a4, a5) : make(a4, a2);
        break;
    case CaseLabel::Case2:
        if (a5 > a1 && a6 < a2) {
            iv = make(a5, a6);
        } else if (a5 <= a1 && a6 >= a2) {
            iv = make(a1, a2);
        } else if (a5 <= a1 && a6 < a2) {
            iv = make(a1, a6);
        } else {
            iv = make(a5, a2);
        }
        break;
    case CaseLabel::Case3:
        if (a4 > a2 && a5 < a3) {
            iv = make(a4, a5);
        } else if (a4 <= a2 && a5 >= a3) {
            iv = make(a2, a3);
        } else if (a4 <= a2 && a5 < a3) {
            iv = make(a2, a5);
        } else {
            iv = make(a4, a3);
        }
        break;
    case CaseLabel::Case4:
        iv = (a5 < a2) ? make(a2, a3) : make(a5, a3);
        break;
    case CaseLabel::Case5:
        return {};
    }

    // Both CCDF factors are nonzero only on (a4, a3). This clip is inactive
    // whenever beta * pi1 * pi2 < 1; beyond that the breakpoint orderings the
    // table relies on no longer hold.
    iv.lower = std::max(iv.lower, a4);
    iv.upper = std::min(iv.upper, a3);
    return iv;
}

std::array<CaseRegion, 4> case_regions(const DerivedParams& derived)
{
    std::array<CaseRegion, 4> regions;
    for (int i = 0; i < 4; ++i) {
        const auto label = static_cast<CaseLabel>(i + 1);
        regions[i] = {label, case_interval(label, derived)};
    }
    return regions;
}

CaseRegion classify_case(double alpha, const DerivedParams& derived)
{
    const auto regions = case_regions(derived);
    double gap_lower = 0.0;
    double gap_upper = 1.0;
    for (const auto& r : regions) {
        if (r.active_interval.contains(alpha)) {
            return r;
        }
        if (r.active_interval.empty()) {
            continue;
        }
        if (r.active_interval.upper <= alpha) {
            gap_lower = std::max(gap_lower, r.active_interval.upper);
        } else if (r.active_interval.lower > alpha) {
            gap_upper = std::min(gap_upper, r.active_interval.lower);
        }
    }
    return {CaseLabel::Case5, {gap_lower, gap_upper}};
}

PopValue pop(double alpha, const DerivedParams& derived)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "power fraction alpha must lie in (0, 1), got " << alpha;
        throw Error(ErrorKind::InvalidInput, os.str());
    }
    const CaseRegion region = classify_case(alpha, derived);
    PopValue out;
    out.region = region.label;
    if (region.label == CaseLabel::Case5) {
        return out;
    }
    const ZetaTuple z = zetas(alpha, derived);
    const bool near_uses_zeta1 = region.label == CaseLabel::Case1 || region.label == CaseLabel::Case2;
    const bool far_uses_zeta3 = region.label == CaseLabel::Case1 || region.label == CaseLabel::Case3;
    out.ccdf1 = ccdf_gain(near_uses_zeta1 ? z.zeta1 : z.zeta2, derived.lambda1);
    out.ccdf2 = ccdf_gain(far_uses_zeta3 ? z.zeta3 : z.zeta4, derived.lambda2);
    out.value = 1.0 - out.ccdf1 * out.ccdf2;
    return out;
}

double dpop_dalpha(double alpha, const DerivedParams& derived)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorKind::InvalidInput, "power fraction alpha must lie in (0, 1)");
    }
    const CaseRegion region = classify_case(alpha, derived);
    if (region.label == CaseLabel::Case5) {
        throw Error(ErrorKind::NotDifferentiable, "outage is constant (Case5) at this alpha");
    }
    if (alpha == region.active_interval.lower) {
        throw Error(ErrorKind::NotDifferentiable, "alpha sits on a case breakpoint");
    }

    const ZetaTuple z = zetas(alpha, derived);
    const ThresholdSlopes k = slopes(alpha, derived);
    const double e1 = z.zeta1.value / derived.lambda1;
    const double e2 = z.zeta2.value / derived.lambda1;
    const double e3 = z.zeta3.value / derived.lambda2;
    const double e4 = z.zeta4.value / derived.lambda2;

    switch (region.label) {
    case CaseLabel::Case1:
        return -(k.zeta1 + k.zeta3) * std::exp(-e1 - e3);
    case CaseLabel::Case2:
        return (k.zeta4 - k.zeta1) * std::exp(-e4 - e1);
    case CaseLabel::Case3:
        return (k.zeta2 - k.zeta3) * std::exp(-e2 - e3);
    case CaseLabel::Case4:
        return (k.zeta4 + k.zeta2) * std::exp(-e4 - e2);
    case CaseLabel::Case5:
        break;
    }
    throw Error(ErrorKind::NotDifferentiable, "outage is constant (Case5) at this alpha");
}

}  // namespace nomapop
