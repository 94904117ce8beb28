#include "nomapop/optimizer.hpp"

#include "nomapop/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nomapop {

namespace {

// Strictly better outage; success products keep resolution where Po ~ 1.
bool better(double alpha, const PopValue& value, double best_alpha, const PopValue& best)
{
    if (value.success() != best.success()) {
        return value.success() > best.success();
    }
    return alpha < best_alpha;
}

void place_root(Candidate& slot, const std::vector<double>& roots, std::size_t index, const Interval& interval)
{
    if (index >= roots.size()) {
        return;
    }
    slot.exists = true;
    slot.alpha = roots[index];
    slot.feasible = slot.alpha > 0.0 && slot.alpha < 1.0 && interval.contains(slot.alpha);
}

void place_corner(Candidate& slot, double alpha, const Interval& interval)
{
    slot.exists = true;
    slot.alpha = alpha;
    slot.feasible = !interval.empty() && alpha > 0.0 && alpha < 1.0 && interval.lower <= alpha &&
                    alpha <= interval.upper;
}

}  // namespace

QuadraticCoefficients case2_coefficients(const DerivedParams& d)
{
    const double s1 = d.beta * d.pi1 + 1.0;
    const double s2 = d.beta * d.pi2 + 1.0;
    const double r1 = d.pi2 * d.lambda1 * s1 * s2;
    const double r2 = d.pi1 * d.lambda2 * s1 * s2;
    QuadraticCoefficients q;
    q.a = r1 * s1 - r2 * s2;
    q.b = 2.0 * (r2 - r1 * d.beta * d.pi1);
    q.c = d.pi1 * d.pi1 * d.pi2 * s2 * d.beta * d.beta * d.lambda1 - d.pi1 * s1 * d.lambda2;
    q.source_case = CaseLabel::Case2;
    return q;
}

QuadraticCoefficients case3_coefficients(const DerivedParams& d)
{
    const double t1 = d.pi1 + 1.0;
    const double t2 = d.pi2 + 1.0;
    const double q1 = d.pi1 * d.lambda1 * t1 * t2;
    const double q2 = d.pi2 * d.lambda2 * t1 * t2;
    QuadraticCoefficients q;
    q.a = q2 * t1 - q1 * t2;
    q.b = 2.0 * (q1 - q2 * d.pi1);
    q.c = d.pi1 * d.pi1 * d.pi2 * t2 * d.lambda2 - d.pi1 * t1 * d.lambda1;
    q.source_case = CaseLabel::Case3;
    return q;
}

std::vector<double> solve_quadratic(const QuadraticCoefficients& q)
{
    const double scale = std::max(std::abs(q.b), std::abs(q.c));
    if (std::abs(q.a) <= 1e-12 * scale) {
        if (q.b == 0.0) {
            return {};
        }
        return {-q.c / q.b};
    }
    const double disc = q.b * q.b - 4.0 * q.a * q.c;
    if (disc < 0.0) {
        return {};
    }
    // Cancellation-free pair: one root from q/a, the other from c/q.
    const double sq = std::sqrt(disc);
    const double h = -0.5 * (q.b + std::copysign(sq, q.b));
    const double from_a = h / q.a;
    const double from_c = h != 0.0 ? q.c / h : from_a;
    // b >= 0 makes h / a the "-" root.
    if (q.b >= 0.0) {
        return {from_c, from_a};
    }
    return {from_a, from_c};
}

std::vector<double> case2_roots(const DerivedParams& derived)
{
    return solve_quadratic(case2_coefficients(derived));
}

std::vector<double> case3_roots(const DerivedParams& derived)
{
    return solve_quadratic(case3_coefficients(derived));
}

std::pair<double, double> corner_candidates(const DerivedParams& derived)
{
    const auto& b = derived.breakpoints;
    if (b.alpha5 < b.alpha2) {
        return {b.alpha5, b.alpha2};
    }
    return {b.alpha2, b.alpha5};
}

std::string_view to_string(CandidateKind kind)
{
    switch (kind) {
    case CandidateKind::Corner1:
        return "c1";
    case CandidateKind::Root1:
        return "r1";
    case CandidateKind::Root2:
        return "r2";
    case CandidateKind::Root3:
        return "r3";
    case CandidateKind::Root4:
        return "r4";
    case CandidateKind::Corner2:
        return "c2";
    }
    return "?";
}

CandidateSet candidate_set(const DerivedParams& derived)
{
    CandidateSet set;
    for (std::size_t i = 0; i < set.candidates.size(); ++i) {
        set.candidates[i].kind = static_cast<CandidateKind>(i);
    }
    auto& c = set.candidates;

    const auto [corner1, corner2] = corner_candidates(derived);
    place_corner(c[0], corner1, case_interval(CaseLabel::Case1, derived));
    place_corner(c[5], corner2, case_interval(CaseLabel::Case4, derived));

    const auto roots2 = case2_roots(derived);
    const Interval case2 = case_interval(CaseLabel::Case2, derived);
    place_root(c[1], roots2, 0, case2);
    place_root(c[2], roots2, 1, case2);

    const auto roots3 = case3_roots(derived);
    const Interval case3 = case_interval(CaseLabel::Case3, derived);
    place_root(c[3], roots3, 0, case3);
    place_root(c[4], roots3, 1, case3);

    for (auto& candidate : c) {
        if (candidate.feasible) {
            candidate.pop = pop(candidate.alpha, derived);
        }
    }
    return set;
}

Optimum optimize(const DerivedParams& derived)
{
    Optimum best;
    best.candidates = candidate_set(derived);
    bool found = false;
    for (const auto& candidate : best.candidates.candidates) {
        if (!candidate.feasible) {
            continue;
        }
        if (!found || better(candidate.alpha, *candidate.pop, best.alpha_star, best.pop_star)) {
            best.alpha_star = candidate.alpha;
            best.pop_star = *candidate.pop;
            found = true;
        }
    }
    if (!found) {
        const auto& b = derived.breakpoints;
        std::ostringstream os;
        os.precision(10);
        if (!(b.alpha4 < b.alpha3)) {
            os << "no feasible power allocation: alpha4 = " << b.alpha4 << " >= alpha3 = " << b.alpha3
               << " (pi1 * pi2 = " << derived.pi1 * derived.pi2 << " >= 1), every alpha is in outage";
        } else {
            os << "no feasible power allocation: no candidate lies inside its case interval";
        }
        throw Error(ErrorKind::NoFeasibleAllocation, os.str());
    }
    return best;
}

Optimum optimize(const SystemConfig& config)
{
    return optimize(derive(config));
}

GridMinimum grid_oracle(const DerivedParams& derived, double step)
{
    if (!(step > 0.0 && step <= 1e-3)) {
        throw Error(ErrorKind::InvalidInput, "grid step must lie in (0, 1e-3]");
    }
    GridMinimum best;
    bool found = false;
    for (std::size_t k = 1;; ++k) {
        const double alpha = static_cast<double>(k) * step;
        if (alpha >= 1.0) {
            break;
        }
        const PopValue value = pop(alpha, derived);
        if (!found || better(alpha, value, best.alpha_min, best.pop_min)) {
            best.alpha_min = alpha;
            best.pop_min = value;
            found = true;
        }
    }
    return best;
}

GridMinimum grid_oracle(const SystemConfig& config, double step)
{
    return grid_oracle(derive(config), step);
}

}  // namespace nomapop
