#include "nomapop/harness.hpp"

#include "nomapop/analytic.hpp"
#include "nomapop/config_io.hpp"
#include "nomapop/error.hpp"
#include "nomapop/optimizer.hpp"

#include <cmath>
#include <sstream>

#ifndef NOMAPOP_VERSION
#define NOMAPOP_VERSION "unknown"
#endif

namespace nomapop {

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw Error(ErrorKind::InvalidInput, message);
    }
}

std::string case_name(CaseLabel label)
{
    return std::string(to_string(label));
}

SystemConfig apply(SystemConfig config, const std::string& variable, double value)
{
    if (variable == "rho_t_db") {
        return with_snr_db(std::move(config), value);
    }
    if (variable == "r_th") {
        config.r1_th = value;
        config.r2_th = value;
        return config;
    }
    if (variable == "alpha") {
        return config;
    }
    set_field(config, variable, format_number(value));
    return config;
}

std::vector<double> snr_curves(const Experiment& exp)
{
    if (exp.snr_db_series.empty()) {
        return {exp.base.rho_t_db};
    }
    return exp.snr_db_series;
}

PopValue corrupted(PopValue value, double offset)
{
    if (offset != 0.0) {
        value.value += offset;
        value.ccdf1 = 1.0 - value.value;
        value.ccdf2 = 1.0;
    }
    return value;
}

// Appends mc_pop, std_err, z for one point when Monte Carlo is requested.
void append_mc(std::vector<Cell>& row, const Experiment& exp, const SystemConfig& config, double alpha,
               const PopValue& analytic)
{
    if (!exp.mc) {
        return;
    }
    const McEstimate est = pop_estimate(config, alpha, *exp.mc);
    const ValidationPoint p = compare(alpha, corrupted(analytic, exp.corrupt_analytic), est);
    row.emplace_back(p.empirical);
    row.emplace_back(p.std_err);
    row.emplace_back(p.z);
}

void append_mc_columns(Table& table, const Experiment& exp)
{
    if (exp.mc) {
        table.columns.insert(table.columns.end(), {"mc_pop", "std_err", "z"});
    }
}

}  // namespace

std::string version()
{
    return NOMAPOP_VERSION;
}

std::string to_string(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::SweepThreshold:
        return "sweep-threshold";
    case ExperimentKind::SweepAlpha:
        return "sweep-alpha";
    case ExperimentKind::SweepSnr:
        return "sweep-snr";
    case ExperimentKind::CompareSchemes:
        return "compare";
    case ExperimentKind::SweepDistance:
        return "sweep-distance";
    case ExperimentKind::ValidateMc:
        return "validate-mc";
    }
    return "unknown";
}

std::vector<double> SweepAxis::values() const
{
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto n = static_cast<double>(count - 1);
        const auto k = static_cast<double>(i);
        out[i] = (start * (n - k) + stop * k) / n;
    }
    if (count > 0) {
        out.back() = stop;
    }
    return out;
}

void Experiment::validate() const
{
    base.validate();
    require(sweep.count >= 2, "a sweep needs at least two points");
    require(std::isfinite(sweep.start) && std::isfinite(sweep.stop) && sweep.start < sweep.stop,
            "sweep bounds must be finite with start < stop");
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");

    const std::string& v = sweep.variable;
    switch (kind) {
    case ExperimentKind::SweepThreshold:
        require(v == "r1_th" || v == "r2_th" || v == "r_th", "threshold sweeps vary r1_th, r2_th or r_th");
        break;
    case ExperimentKind::SweepAlpha:
    case ExperimentKind::ValidateMc:
        require(v == "alpha", "this experiment sweeps alpha");
        break;
    case ExperimentKind::SweepSnr:
        require(v == "rho_t_db", "SNR sweeps vary rho_t_db");
        break;
    case ExperimentKind::CompareSchemes:
    case ExperimentKind::SweepDistance:
        require(v == "d2", "this experiment sweeps d2");
        break;
    }

    if (v == "alpha") {
        require(sweep.start > 0.0 && sweep.stop < 1.0, "alpha sweep must stay inside (0, 1)");
    } else if (v == "r1_th" || v == "r2_th" || v == "r_th") {
        require(sweep.start > 0.0, "threshold rates must be positive");
    } else if (v == "d2") {
        require(sweep.start >= base.d1, "d2 sweep must not start below d1");
    }
    for (const double snr : snr_db_series) {
        require(std::isfinite(snr), "SNR values must be finite");
    }
    for (const double r2 : r2_series) {
        require(r2 > 0.0, "r2_th values must be positive");
    }
    require(r2_series.empty() || v == "r1_th", "r2_th curves apply to r1_th sweeps only");
    if (kind == ExperimentKind::ValidateMc) {
        require(mc.has_value(), "validate-mc needs a Monte Carlo configuration");
    }
    if (mc) {
        mc->validate();
    }
}

Experiment default_experiment(ExperimentKind kind)
{
    Experiment exp;
    exp.kind = kind;
    switch (kind) {
    case ExperimentKind::SweepThreshold:
        exp.sweep = {"r_th", 0.05, 1.0, 20};
        break;
    case ExperimentKind::SweepAlpha:
        exp.sweep = {"alpha", 0.01, 0.99, 99};
        break;
    case ExperimentKind::SweepSnr:
        exp.sweep = {"rho_t_db", 30.0, 80.0, 11};
        break;
    case ExperimentKind::CompareSchemes:
    case ExperimentKind::SweepDistance:
        exp.sweep = {"d2", 60.0, 200.0, 15};
        break;
    case ExperimentKind::ValidateMc:
        exp.sweep = {"alpha", 0.04, 0.96, 25};
        exp.mc = McConfig{};
        break;
    }
    return exp;
}

ExperimentResult run_sweep_threshold(const Experiment& exp)
{
    exp.validate();
    ExperimentResult result;
    Table& t = result.table;
    t.columns = {"r1_th", "r2_th", "rho_t_db", "pop", "case"};
    append_mc_columns(t, exp);

    std::vector<std::optional<double>> r2_curves;
    for (const double r2 : exp.r2_series) {
        r2_curves.emplace_back(r2);
    }
    if (r2_curves.empty()) {
        r2_curves.emplace_back(std::nullopt);
    }

    for (const double snr : snr_curves(exp)) {
        for (const auto& r2 : r2_curves) {
            SystemConfig curve = with_snr_db(exp.base, snr);
            if (r2) {
                curve.r2_th = *r2;
            }
            for (const double x : exp.sweep.values()) {
                const SystemConfig config = apply(curve, exp.sweep.variable, x);
                const PopValue value = pop(exp.alpha, derive(config));
                std::vector<Cell> row{config.r1_th, config.r2_th, config.rho_t_db, value.value,
                                      case_name(value.region)};
                append_mc(row, exp, config, exp.alpha, value);
                t.add_row(std::move(row));
            }
        }
    }
    return result;
}

ExperimentResult run_sweep_alpha(const Experiment& exp)
{
    exp.validate();
    ExperimentResult result;
    Table& t = result.table;
    t.columns = {"rho_t_db", "alpha", "pop", "case", "optimal"};

    for (const double snr : snr_curves(exp)) {
        const SystemConfig config = with_snr_db(exp.base, snr);
        const DerivedParams derived = derive(config);
        std::optional<double> alpha_star;
        try {
            alpha_star = optimize(derived).alpha_star;
            t.summary.emplace_back("alpha_star(rho_t_db=" + format_number(snr) + ")", *alpha_star);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoFeasibleAllocation) {
                throw;
            }
        }

        auto emit = [&](double alpha, bool optimal) {
            const PopValue value = pop(alpha, derived);
            t.add_row({snr, alpha, value.value, case_name(value.region), static_cast<long long>(optimal)});
        };
        bool marked = !alpha_star.has_value();
        for (const double alpha : exp.sweep.values()) {
            if (!marked && *alpha_star <= alpha) {
                if (*alpha_star < alpha) {
                    emit(*alpha_star, true);
                }
                marked = true;
                if (*alpha_star == alpha) {
                    emit(alpha, true);
                    continue;
                }
            }
            emit(alpha, false);
        }
        if (!marked) {
            emit(*alpha_star, true);
        }
    }
    return result;
}

ExperimentResult run_sweep_snr(const Experiment& exp)
{
    exp.validate();
    ExperimentResult result;
    Table& t = result.table;
    t.columns = {"rho_t_db", "alpha", "pop", "case"};
    append_mc_columns(t, exp);
    for (const double snr : exp.sweep.values()) {
        const SystemConfig config = with_snr_db(exp.base, snr);
        const PopValue value = pop(exp.alpha, derive(config));
        std::vector<Cell> row{snr, exp.alpha, value.value, case_name(value.region)};
        append_mc(row, exp, config, exp.alpha, value);
        t.add_row(std::move(row));
    }
    return result;
}

ExperimentResult run_sweep_distance(const Experiment& exp)
{
    exp.validate();
    ExperimentResult result;
    Table& t = result.table;
    t.columns = {"d2", "alpha", "pop", "case"};
    append_mc_columns(t, exp);
    for (const double d2 : exp.sweep.values()) {
        const SystemConfig config = apply(exp.base, "d2", d2);
        const PopValue value = pop(exp.alpha, derive(config));
        std::vector<Cell> row{d2, exp.alpha, value.value, case_name(value.region)};
        append_mc(row, exp, config, exp.alpha, value);
        t.add_row(std::move(row));
    }
    return result;
}

ExperimentResult run_compare_schemes(const Experiment& exp)
{
    exp.validate();
    ExperimentResult result;
    Table& t = result.table;
    t.columns = {"d2", "pop_opa", "pop_epa", "pop_fpa", "alpha_star"};

    double sum_vs_epa = 0.0;
    double sum_vs_fpa = 0.0;
    auto improvement = [](double scheme, double opa) { return scheme > 0.0 ? 100.0 * (scheme - opa) / scheme : 0.0; };
    for (const double d2 : exp.sweep.values()) {
        const SystemConfig config = apply(exp.base, "d2", d2);
        const DerivedParams derived = derive(config);
        const Optimum opt = optimize(derived);
        const double epa = pop(kEpaAlpha, derived).value;
        const double fpa = pop(kFpaAlpha, derived).value;
        t.add_row({d2, opt.pop_star.value, epa, fpa, opt.alpha_star});
        sum_vs_epa += improvement(epa, opt.pop_star.value);
        sum_vs_fpa += improvement(fpa, opt.pop_star.value);
    }
    const auto n = static_cast<double>(t.rows.size());
    t.summary.emplace_back("avg_improvement_vs_epa_pct", sum_vs_epa / n);
    t.summary.emplace_back("avg_improvement_vs_fpa_pct", sum_vs_fpa / n);
    return result;
}

ExperimentResult run_validate_mc(const Experiment& exp)
{
    exp.validate();
    ExperimentResult result;
    Table& t = result.table;
    const bool multi_snr = !exp.snr_db_series.empty();
    if (multi_snr) {
        t.columns.emplace_back("rho_t_db");
    }
    t.columns.insert(t.columns.end(), {"alpha", "analytic_pop", "mc_pop", "std_err", "z"});

    long long within = 0;
    long long flagged = 0;
    for (const double snr : snr_curves(exp)) {
        const SystemConfig config = with_snr_db(exp.base, snr);
        const DerivedParams derived = derive(config);
        for (const double alpha : exp.sweep.values()) {
            const PopValue analytic = corrupted(pop(alpha, derived), exp.corrupt_analytic);
            const ValidationPoint p = compare(alpha, analytic, pop_estimate(config, alpha, *exp.mc));
            std::vector<Cell> row;
            if (multi_snr) {
                row.emplace_back(snr);
            }
            row.insert(row.end(), {p.alpha, p.analytic, p.empirical, p.std_err, p.z});
            t.add_row(std::move(row));
            within += std::abs(p.z) <= 3.0 ? 1 : 0;
            flagged += p.flagged ? 1 : 0;
        }
    }
    t.summary.emplace_back("points", static_cast<double>(t.rows.size()));
    t.summary.emplace_back("within_3_std_err", static_cast<double>(within));
    t.summary.emplace_back("flagged", static_cast<double>(flagged));
    result.validation_failed = flagged > 0;
    return result;
}

ExperimentResult run(const Experiment& exp)
{
    switch (exp.kind) {
    case ExperimentKind::SweepThreshold:
        return run_sweep_threshold(exp);
    case ExperimentKind::SweepAlpha:
        return run_sweep_alpha(exp);
    case ExperimentKind::SweepSnr:
        return run_sweep_snr(exp);
    case ExperimentKind::CompareSchemes:
        return run_compare_schemes(exp);
    case ExperimentKind::SweepDistance:
        return run_sweep_distance(exp);
    case ExperimentKind::ValidateMc:
        return run_validate_mc(exp);
    }
    throw Error(ErrorKind::InvalidInput, "unknown experiment kind");
}

ExperimentResult evaluate_point(const SystemConfig& config, double alpha, const std::optional<McConfig>& mc)
{
    const PopValue value = pop(alpha, derive(config));
    ExperimentResult result;
    Table& t = result.table;
    t.columns = {"alpha", "pop", "case", "ccdf1", "ccdf2"};
    std::vector<Cell> row{alpha, value.value, case_name(value.region), value.ccdf1, value.ccdf2};
    if (mc) {
        t.columns.insert(t.columns.end(), {"mc_pop", "mc_std_err", "ci_lower", "ci_upper", "z"});
        const McEstimate est = pop_estimate(config, alpha, *mc);
        const ValidationPoint p = compare(alpha, value, est);
        row.insert(row.end(), {est.pop_hat, est.std_err, est.ci_lower, est.ci_upper, p.z});
        result.validation_failed = p.flagged;
    }
    t.add_row(std::move(row));
    return result;
}

ExperimentResult run_optimize(const SystemConfig& config)
{
    const Optimum opt = optimize(config);
    ExperimentResult result;
    Table& t = result.table;
    t.columns = {"candidate", "exists", "feasible", "alpha", "pop", "case"};
    for (const Candidate& c : opt.candidates.candidates) {
        std::vector<Cell> row{std::string(to_string(c.kind)), static_cast<long long>(c.exists),
                              static_cast<long long>(c.feasible)};
        if (c.exists) {
            row.emplace_back(c.alpha);
        } else {
            row.emplace_back(std::string{});
        }
        if (c.pop) {
            row.emplace_back(c.pop->value);
            row.emplace_back(case_name(c.pop->region));
        } else {
            row.emplace_back(std::string{});
            row.emplace_back(std::string{});
        }
        t.add_row(std::move(row));
    }
    t.summary.emplace_back("alpha_star", opt.alpha_star);
    t.summary.emplace_back("pop_star", opt.pop_star.value);
    return result;
}

std::string provenance(const std::string& name, const SystemConfig& config, const std::string& extra)
{
    std::ostringstream os;
    os << "nomapop " << version() << ' ' << name << ' ' << describe(config);
    if (!extra.empty()) {
        os << ' ' << extra;
    }
    return os.str();
}

}  // namespace nomapop
