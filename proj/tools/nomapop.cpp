// nomapop: pair outage probability of a two-user downlink NOMA pair with
// imperfect SIC. See README.md for the subcommands.

#include "nomapop/config_io.hpp"
#include "nomapop/error.hpp"
#include "nomapop/harness.hpp"
#include "nomapop/optimizer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace nomapop;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1'000'000;
    std::uint64_t chunk = 1u << 16;
    unsigned workers = 0;
    bool enforce_ordering = false;
    OutputFormat format = OutputFormat::Csv;
    std::vector<std::string> overrides;

    double alpha = kEpaAlpha;
    bool with_mc = false;
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<std::size_t> count;
    std::string variable;
    std::vector<double> snr_db;
    std::vector<double> r2_th;
    double corrupt_analytic = 0.0;
};

void add_common(CLI::App* cmd, CommonOptions& o)
{
    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};
    cmd->add_option("--config", o.config_path, "System configuration file (key = value)");
    cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    cmd->add_option("--set", o.overrides, "Override a configuration field, e.g. --set beta=0.3");
}

void add_mc(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    cmd->add_option("--chunk", o.chunk, "Trials per deterministic substream")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)");
    cmd->add_flag("--enforce-ordering", o.enforce_ordering,
                  "Experimental: force g1 >= g2 in every draw (breaks agreement with the closed form)");
}

void add_axis(CLI::App* cmd, CommonOptions& o)
{
    cmd->add_option("--start", o.start, "First sweep value");
    cmd->add_option("--stop", o.stop, "Last sweep value");
    cmd->add_option("--count", o.count, "Number of sweep points");
}

SystemConfig resolve_config(const CommonOptions& o)
{
    SystemConfig config = o.config_path.empty() ? default_config() : load_config(o.config_path);
    for (const auto& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidInput, "--set expects key=value, got '" + kv + "'");
        }
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        set_field(config, key, value);
        if (key == "rho_t_db") {
            // Keep a configured noise floor consistent with the new SNR.
            config = with_snr_db(config, config.rho_t_db);
        }
    }
    config.validate();
    return config;
}

McConfig mc_config(const CommonOptions& o)
{
    McConfig mc;
    mc.seed = o.seed;
    mc.trials = o.trials;
    mc.chunk = o.chunk;
    mc.workers = o.workers;
    mc.enforce_ordering = o.enforce_ordering;
    return mc;
}

std::string mc_note(const McConfig& mc)
{
    std::ostringstream os;
    os << "trials=" << mc.trials << " seed=" << mc.seed << " chunk=" << mc.chunk;
    if (mc.enforce_ordering) {
        os << " enforce_ordering=1";
    }
    return os.str();
}

Experiment build_experiment(ExperimentKind kind, const CommonOptions& o)
{
    Experiment exp = default_experiment(kind);
    exp.base = resolve_config(o);
    exp.alpha = o.alpha;
    if (!o.variable.empty()) {
        exp.sweep.variable = o.variable;
    }
    if (o.start) {
        exp.sweep.start = *o.start;
    }
    if (o.stop) {
        exp.sweep.stop = *o.stop;
    }
    if (o.count) {
        exp.sweep.count = *o.count;
    }
    exp.snr_db_series = o.snr_db;
    exp.r2_series = o.r2_th;
    if (kind == ExperimentKind::ValidateMc || o.with_mc) {
        exp.mc = mc_config(o);
    }
    exp.corrupt_analytic = o.corrupt_analytic;
    return exp;
}

std::string describe_experiment(const Experiment& exp)
{
    std::ostringstream os;
    os << "sweep=" << exp.sweep.variable << ':' << format_number(exp.sweep.start) << ':'
       << format_number(exp.sweep.stop) << ':' << exp.sweep.count;
    if (exp.kind != ExperimentKind::SweepAlpha && exp.kind != ExperimentKind::ValidateMc &&
        exp.kind != ExperimentKind::CompareSchemes) {
        os << " alpha=" << format_number(exp.alpha);
    }
    auto list = [&](const char* name, const std::vector<double>& values) {
        if (values.empty()) {
            return;
        }
        os << ' ' << name << '=';
        for (std::size_t i = 0; i < values.size(); ++i) {
            os << (i ? ";" : "") << format_number(values[i]);
        }
    };
    list("snr_db", exp.snr_db_series);
    list("r2_th", exp.r2_series);
    if (exp.mc) {
        os << ' ' << mc_note(*exp.mc);
    }
    if (exp.corrupt_analytic != 0.0) {
        os << " corrupt_analytic=" << format_number(exp.corrupt_analytic);
    }
    return os.str();
}

void emit(const CommonOptions& o, const Table& table, const std::string& prov)
{
    if (o.out_path.empty()) {
        write_table(std::cout, table, prov, o.format);
        return;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::InvalidInput, "cannot open output file '" + o.out_path + "'");
    }
    write_table(out, table, prov, o.format);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pair outage probability of two-user downlink NOMA with imperfect SIC"};
    app.require_subcommand(1);
    app.set_version_flag("--version", nomapop::version());

    CommonOptions o;

    auto* pop_cmd = app.add_subcommand("pop", "Closed-form outage at one power fraction");
    add_common(pop_cmd, o);
    add_mc(pop_cmd, o);
    pop_cmd->add_option("--alpha", o.alpha, "Power fraction of the near user");
    pop_cmd->add_flag("--mc", o.with_mc, "Add a Monte Carlo estimate");

    auto* alpha_cmd = app.add_subcommand("sweep-alpha", "Outage versus power fraction, optimum marked");
    add_common(alpha_cmd, o);
    add_axis(alpha_cmd, o);
    alpha_cmd->add_option("--snr-db", o.snr_db, "One curve per transmit SNR (dB)")->delimiter(',');

    auto* threshold_cmd = app.add_subcommand("sweep-threshold", "Outage versus threshold rate");
    add_common(threshold_cmd, o);
    add_mc(threshold_cmd, o);
    add_axis(threshold_cmd, o);
    threshold_cmd->add_option("--var", o.variable, "Swept rate: r1_th, r2_th or r_th (both)")
        ->check(CLI::IsMember({"r1_th", "r2_th", "r_th"}));
    threshold_cmd->add_option("--snr-db", o.snr_db, "One curve per transmit SNR (dB)")->delimiter(',');
    threshold_cmd->add_option("--r2", o.r2_th, "One curve per r2_th (with --var r1_th)")->delimiter(',');
    threshold_cmd->add_option("--alpha", o.alpha, "Power fraction of the near user");
    threshold_cmd->add_flag("--mc", o.with_mc, "Add Monte Carlo columns");

    auto* snr_cmd = app.add_subcommand("sweep-snr", "Outage versus transmit SNR");
    add_common(snr_cmd, o);
    add_mc(snr_cmd, o);
    add_axis(snr_cmd, o);
    snr_cmd->add_option("--alpha", o.alpha, "Power fraction of the near user");
    snr_cmd->add_flag("--mc", o.with_mc, "Add Monte Carlo columns");

    auto* distance_cmd = app.add_subcommand("sweep-distance", "Outage versus far-user distance");
    add_common(distance_cmd, o);
    add_mc(distance_cmd, o);
    add_axis(distance_cmd, o);
    distance_cmd->add_option("--alpha", o.alpha, "Power fraction of the near user");
    distance_cmd->add_flag("--mc", o.with_mc, "Add Monte Carlo columns");

    auto* compare_cmd = app.add_subcommand("compare", "Optimal vs equal (0.5) vs fixed (0.4) allocation over d2");
    add_common(compare_cmd, o);
    add_axis(compare_cmd, o);

    auto* validate_cmd = app.add_subcommand("validate-mc", "Closed form against Monte Carlo over an alpha grid");
    add_common(validate_cmd, o);
    add_mc(validate_cmd, o);
    add_axis(validate_cmd, o);
    validate_cmd->add_option("--snr-db", o.snr_db, "Repeat the grid at each transmit SNR (dB)")->delimiter(',');
    validate_cmd->add_option("--corrupt-analytic", o.corrupt_analytic,
                             "Offset added to closed-form values (detector self-check)");

    auto* optimize_cmd = app.add_subcommand("optimize", "Optimal power fraction and its candidate set");
    add_common(optimize_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const std::map<CLI::App*, ExperimentKind> experiments{
            {alpha_cmd, ExperimentKind::SweepAlpha},       {threshold_cmd, ExperimentKind::SweepThreshold},
            {snr_cmd, ExperimentKind::SweepSnr},           {distance_cmd, ExperimentKind::SweepDistance},
            {compare_cmd, ExperimentKind::CompareSchemes}, {validate_cmd, ExperimentKind::ValidateMc},
        };
        CLI::App* chosen = app.get_subcommands().front();

        if (chosen == pop_cmd) {
            const SystemConfig config = resolve_config(o);
            std::optional<McConfig> mc;
            if (o.with_mc) {
                mc = mc_config(o);
            }
            const ExperimentResult result = evaluate_point(config, o.alpha, mc);
            std::string extra = "alpha=" + format_number(o.alpha);
            if (mc) {
                extra += ' ' + mc_note(*mc);
            }
            emit(o, result.table, provenance("pop", config, extra));
            return 0;
        }
        if (chosen == optimize_cmd) {
            const SystemConfig config = resolve_config(o);
            emit(o, run_optimize(config).table, provenance("optimize", config));
            return 0;
        }

        const ExperimentKind kind = experiments.at(chosen);
        const Experiment exp = build_experiment(kind, o);
        const ExperimentResult result = run(exp);
        emit(o, result.table, provenance(to_string(kind), exp.base, describe_experiment(exp)));
        if (result.validation_failed) {
            std::cerr << "validation failed: at least one point has |z| > " << kFlagZ << '\n';
            return exit_code(ErrorKind::ValidationFailure);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
