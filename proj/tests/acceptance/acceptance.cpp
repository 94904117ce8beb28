// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and must not be relaxed.

#include "nomapop/analytic.hpp"
#include "nomapop/harness.hpp"
#include "nomapop/montecarlo.hpp"
#include "nomapop/optimizer.hpp"
#include "../reference.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef NOMAPOP_CLI
#error "NOMAPOP_CLI must name the CLI executable"
#endif
#ifndef NOMAPOP_SCRATCH
#error "NOMAPOP_SCRATCH must name a writable directory"
#endif

namespace {

using namespace nomapop;
namespace ref = nomapop::reference;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x, int precision = 6)
{
    std::ostringstream os;
    os.precision(precision);
    os << x;
    return os.str();
}

Outcome mc_agreement()
{
    const std::vector<double> alphas{0.2, 0.35, 0.5, 0.65, 0.8};
    const std::vector<double> snrs{40.0, 50.0, 60.0, 70.0, 80.0};
    McConfig mc;
    mc.trials = 1'000'000;
    mc.seed = 1;
    int points = 0, within3 = 0, above4 = 0;
    double worst = 0.0;
    for (const double snr : snrs) {
        const auto report = validate(with_snr_db(default_config(), snr), alphas, mc);
        for (const auto& p : report.points) {
            ++points;
            within3 += std::abs(p.z) <= 3.0 ? 1 : 0;
            above4 += std::abs(p.z) > 4.0 ? 1 : 0;
            worst = std::max(worst, std::abs(p.z));
        }
    }
    const bool pass = within3 >= 0.95 * points && above4 == 0;
    return {pass, std::to_string(within3) + "/" + std::to_string(points) + " points with |z| <= 3, " +
                      std::to_string(above4) + " above 4, max |z| = " + fmt(worst, 3)};
}

Outcome derivative()
{
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    int draws = 0, points = 0, failures = 0, by_rel = 0, by_abs = 0;
    double worst_rel = 0.0, worst_abs = 0.0;
    while (draws < 20) {
        const auto cfg = ref::random_config(rng);
        const auto d = derive(cfg);
        std::vector<Interval> live;
        for (const auto& r : case_regions(d)) {
            if (!r.active_interval.empty()) {
                live.push_back(r.active_interval);
            }
        }
        if (live.empty()) {
            continue;
        }
        ++draws;
        const auto p = ref::from(cfg);
        for (int k = 0; k < 5; ++k) {
            const Interval& iv = live[static_cast<std::size_t>(k) % live.size()];
            const double a = iv.lower + u(rng) * (iv.upper - iv.lower);
            const double analytic = dpop_dalpha(a, d);
            const double fd = static_cast<double>(ref::central_difference(a, 1e-7L, p));
            const double abs_err = std::abs(analytic - fd);
            const double rel_err = abs_err / std::abs(fd);
            ++points;
            if (rel_err <= 1e-6) {
                ++by_rel;
                worst_rel = std::max(worst_rel, rel_err);
            } else if (abs_err <= 1e-10) {
                ++by_abs;
                worst_abs = std::max(worst_abs, abs_err);
            } else {
                ++failures;
            }
        }
    }
    return {points == 100 && failures == 0,
            std::to_string(points) + " points over " + std::to_string(draws) + " draws, " +
                std::to_string(failures) + " failures; " + std::to_string(by_rel) +
                " within the relative bound (worst " + fmt(worst_rel, 3) + "), " + std::to_string(by_abs) +
                " near zero within the absolute bound (worst " + fmt(worst_abs, 3) + ")"};
}

Outcome optimizer_vs_grid()
{
    std::mt19937_64 rng(3003);
    int failures = 0;
    double worst_gap = 0.0, worst_excess = -1.0;
    for (int draw = 0; draw < 50; ++draw) {
        const auto d = derive(ref::random_config(rng));
        const auto opt = optimize(d);
        const auto grid = grid_oracle(d, 1e-5);
        const double gap = std::abs(opt.alpha_star - grid.alpha_min);
        const double excess = opt.pop_star.value - grid.pop_min.value;
        worst_gap = std::max(worst_gap, gap);
        worst_excess = std::max(worst_excess, excess);
        if (!(gap <= 1e-5 && excess <= 1e-10)) {
            ++failures;
        }
    }
    return {failures == 0, "50 draws, " + std::to_string(failures) + " failures, max |alpha* - grid| = " +
                               fmt(worst_gap, 3) + ", max pop excess = " + fmt(worst_excess, 3)};
}

Outcome snr_invariance()
{
    std::vector<double> stars;
    for (const double snr : {50.0, 60.0, 70.0}) {
        stars.push_back(optimize(with_snr_db(default_config(), snr)).alpha_star);
    }
    const double spread = *std::max_element(stars.begin(), stars.end()) - *std::min_element(stars.begin(), stars.end());
    return {spread <= 1e-9, "alpha* = " + fmt(stars[0], 16) + ", spread " + fmt(spread, 3)};
}

Outcome scheme_comparison()
{
    const auto t = run(default_experiment(ExperimentKind::CompareSchemes)).table;
    const auto opa = t.numbers("pop_opa");
    const auto epa = t.numbers("pop_epa");
    const auto fpa = t.numbers("pop_fpa");
    bool dominated = opa.size() == 15;
    for (std::size_t i = 0; i < opa.size(); ++i) {
        dominated = dominated && opa[i] <= epa[i] && opa[i] <= fpa[i];
    }
    const double vs_epa = t.summary_value("avg_improvement_vs_epa_pct");
    const double vs_fpa = t.summary_value("avg_improvement_vs_fpa_pct");
    const bool pass = dominated && vs_fpa > vs_epa && std::abs(vs_epa - 1.39) <= 1.0 && std::abs(vs_fpa - 14.60) <= 5.0;
    return {pass, std::string("OPA dominates: ") + (dominated ? "yes" : "no") + ", avg improvement vs EPA " +
                      fmt(vs_epa, 5) + "%, vs FPA " + fmt(vs_fpa, 5) + "%"};
}

Outcome monotonicity()
{
    std::mt19937_64 rng(6006);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    // Rounding slack for comparisons of equal values computed along different paths.
    const double slack = 1e-12;
    int points = 0, violations = 0;
    while (points < 1000) {
        auto base = ref::random_config(rng, {0.2, 0.2, 0.05, 0.5, 60.0, 300.0, 40.0, 80.0});
        const auto d = derive(base);
        const auto& b = d.breakpoints;
        if (!(b.alpha4 < b.alpha3)) {
            continue;
        }
        const double a = b.alpha4 + (0.01 + 0.98 * u(rng)) * (b.alpha3 - b.alpha4);
        ++points;
        const double p0 = pop(a, d).value;
        auto at = [&](SystemConfig c) { return pop(a, derive(c)).value; };

        auto c = base;
        c.r1_th *= 1.0 + u(rng);
        violations += at(c) >= p0 - slack ? 0 : 1;
        c = base;
        c.r2_th *= 1.0 + u(rng);
        violations += at(c) >= p0 - slack ? 0 : 1;
        c = base;
        c.d2 *= 1.0 + u(rng);
        violations += at(c) >= p0 - slack ? 0 : 1;
        c = base;
        c.rho_t_db += 10.0 * u(rng);
        violations += at(c) <= p0 + slack ? 0 : 1;

        // alpha4 and alpha3 do not depend on beta, so `a` stays feasible.
        auto b0 = base, b5 = base;
        b0.beta = 0.0;
        b5.beta = 0.5;
        const double p_b0 = at(b0), p_b5 = at(b5);
        violations += (p_b0 <= p0 + slack && p0 <= p_b5 + slack) ? 0 : 1;
    }
    return {violations == 0, std::to_string(points) + " points x 5 properties, " + std::to_string(violations) +
                                 " violations"};
}

Outcome continuity()
{
    std::mt19937_64 rng(7007);
    int boundaries = 0;
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const auto d = derive(ref::random_config(rng));
        std::vector<Interval> live;
        for (const auto& r : case_regions(d)) {
            if (!r.active_interval.empty()) {
                live.push_back(r.active_interval);
            }
        }
        for (std::size_t i = 1; i < live.size(); ++i) {
            if (live[i].lower != live[i - 1].upper) {
                continue;
            }
            const double x = live[i].lower;
            worst = std::max(worst, std::abs(pop(x - 1e-8, d).value - pop(x + 1e-8, d).value));
            ++boundaries;
        }
    }
    return {boundaries > 0 && worst <= 1e-6,
            std::to_string(boundaries) + " internal breakpoints, max jump " + fmt(worst, 3)};
}

Outcome breakpoint_algebra()
{
    std::mt19937_64 rng(8008);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const double pi1 = 4.0 * u(rng) + 1e-9;
        const double pi2 = 4.0 * u(rng) + 1e-9;
        const double beta = u(rng);  // in [0, 1)
        const auto b = breakpoints(pi1, pi2, beta);
        violations += (b.alpha4 > b.alpha1 && b.alpha6 > b.alpha3) ? 0 : 1;
    }
    const auto d = derive(default_config());
    const auto p = ref::from(default_config());
    const auto r = ref::breakpoints(p.pi1, p.pi2, p.beta);
    const auto got = d.breakpoints.as_array();
    const std::array<ref::real, 6> want{r.a1, r.a2, r.a3, r.a4, r.a5, r.a6};
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
        worst = std::max(worst, static_cast<double>(std::abs(got[i] - want[i])));
    }
    return {violations == 0 && worst <= 1e-12, "10000 draws, " + std::to_string(violations) +
                                                   " ordering violations, default breakpoint error " + fmt(worst, 3)};
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism()
{
    const std::filesystem::path dir(NOMAPOP_SCRATCH);
    std::filesystem::create_directories(dir);
    const auto a = dir / "validate_a.csv";
    const auto b = dir / "validate_b.csv";
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    auto run_cli = [](const std::filesystem::path& out, const char* workers) {
        const std::string cmd = std::string("\"") + NOMAPOP_CLI + "\" validate-mc --seed 12345 --workers " + workers +
                                " --out \"" + out.string() + "\"";
        return std::system(cmd.c_str());
    };
    const int rc_a = run_cli(a, "1");
    const int rc_b = run_cli(b, "4");
    const std::string text_a = slurp(a);
    const std::string text_b = slurp(b);
    const bool pass = rc_a == 0 && rc_b == 0 && !text_a.empty() && text_a == text_b;
    return {pass, "exit codes " + std::to_string(rc_a) + "/" + std::to_string(rc_b) + ", " +
                      std::to_string(text_a.size()) + " bytes, " + (text_a == text_b ? "identical" : "different")};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"analytic vs Monte Carlo agreement", mc_agreement},
        {"derivative vs finite differences", derivative},
        {"optimizer vs grid oracle", optimizer_vs_grid},
        {"SNR invariance of alpha*", snr_invariance},
        {"scheme comparison", scheme_comparison},
        {"monotonicity", monotonicity},
        {"piecewise continuity", continuity},
        {"breakpoint algebra", breakpoint_algebra},
        {"validate-mc determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << outcome.detail << " [" << fmt(seconds, 3) << " s]" << std::endl;
        failed += outcome.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
