#include "ddlyap/cli.hpp"

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddlyap/config.hpp"
#include "ddlyap/errors.hpp"
#include "ddlyap/report.hpp"

namespace ddlyap {

namespace {

struct CommandArgs {
    std::string config_path;
    std::string preset;
    double perturb_h = 0.0;
};

void add_source_options(CLI::App* sub, CommandArgs& args) {
    sub->add_option("config", args.config_path, "JSON configuration file");
    sub->add_option("--preset", args.preset,
                    "built-in system preset (kharitonov2006-example, scalar)");
}

AnalysisConfig make_config(const CommandArgs& args) {
    const bool has_path = !args.config_path.empty();
    const bool has_preset = !args.preset.empty();
    if (has_path == has_preset) {
        throw ConfigError("provide exactly one of a config file and --preset");
    }
    return has_path ? load_config(args.config_path) : config_from_preset(args.preset);
}

AuditOptions audit_options(const AnalysisConfig& cfg, double perturb_h) {
    AuditOptions opt;
    opt.rel_tol = cfg.rel_tol;
    opt.oracle = cfg.oracle_settings();
    opt.perturb_h = perturb_h;
    return opt;
}

int cmd_analyze(const AnalysisConfig& cfg, std::ostream& out) {
    const SystemSpec spec = cfg.resolve_system();
    const AuditReport report = run_audit(spec, audit_options(cfg, 0.0));
    write_report_file(report, cfg, "analyze", cfg.report_path);
    print_claim_table(report, out, cfg.verbosity);
    if (cfg.verbosity >= 1) {
        out << "report written to " << cfg.report_path << '\n';
    }
    return 0;
}

int cmd_verify(const AnalysisConfig& cfg, double perturb_h, std::ostream& out) {
    const SystemSpec spec = cfg.resolve_system();
    const AuditReport report = run_audit(spec, audit_options(cfg, perturb_h));
    write_report_file(report, cfg, "verify", cfg.report_path);
    print_claim_table(report, out, cfg.verbosity);
    return report.all_pass ? 0 : 1;
}

int cmd_oracle(const AnalysisConfig& cfg, std::ostream& out) {
    const SystemSpec spec = cfg.resolve_system();
    const OracleResult result = run_oracle(spec, cfg.oracle_settings());
    write_lyapunov_csv(result.samples, cfg.csv_path);
    write_oracle_report_file(result, spec, cfg, cfg.report_path);
    if (cfg.verbosity >= 1) {
        out << "decay time " << result.decay_time << ", integrated to " << result.horizon << '\n';
        for (const ClaimResult& c : oracle_claims(result)) {
            out << c.name << ": " << c.measured << " (threshold " << c.threshold << ") "
                << (c.pass ? "PASS" : "FAIL") << '\n';
        }
        out << "samples written to " << cfg.csv_path << ", report written to " << cfg.report_path
            << '\n';
    }
    return 0;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"audit of the two-point boundary value formulation of delay Lyapunov matrices",
                 "ddlyap"};
    app.require_subcommand(1);

    CommandArgs analyze_args;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "run all diagnostics and the oracle, write the full report");
    add_source_options(analyze, analyze_args);

    CommandArgs oracle_args;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "compute Lyapunov samples from the defining integral, write CSV and report");
    add_source_options(oracle, oracle_args);

    CommandArgs verify_args;
    CLI::App* verify =
        app.add_subcommand("verify", "run the audit and gate the exit code on the claims");
    add_source_options(verify, verify_args);
    verify->add_option("--perturb-h", verify_args.perturb_h,
                       "add this value to H(0,0) after assembly (negative control)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ddlyap");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) {
            return cmd_analyze(make_config(analyze_args), out);
        }
        if (oracle->parsed()) {
            return cmd_oracle(make_config(oracle_args), out);
        }
        return cmd_verify(make_config(verify_args), verify_args.perturb_h, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}

} // namespace ddlyap
