#pragma once

#include <optional>
#include <string>

#include "ddlyap/dde_oracle.hpp"
#include "ddlyap/system_spec.hpp"

namespace ddlyap {

// Everything a CLI run needs: the system under audit (inline matrices or a
// preset name — exactly one), the numeric parameters, and the output sinks.
struct AnalysisConfig {
    std::optional<std::string> preset;
    std::optional<SystemSpec> system;

    // numerics
    double dt = 1e-3;
    double tau_step = 1e-2;
    double rel_tol = 1e-8;
    double decay_threshold = 1e-8;
    std::size_t horizon_cap = 200; // delay intervals

    // outputs
    std::string report_path = "audit_report.json";
    std::string csv_path = "lyapunov_samples.csv";
    int verbosity = 1; // 0 silent, 1 summary table, 2 adds singular-value spectra

    // Resolves the preset or returns the inline system. Throws ConfigError
    // when neither or both are set.
    SystemSpec resolve_system() const;

    OracleSettings oracle_settings() const {
        OracleSettings s;
        s.dt = dt;
        s.tau_step = tau_step;
        s.decay_threshold = decay_threshold;
        s.horizon_cap = horizon_cap;
        return s;
    }
};

// Parses a JSON config file. The document may contain:
//   "preset"  : string — one of the built-in presets, or
//   "system"  : {"n", "A0", "W" required; "A1", "B0", "B1" default to zero;
//                "h" defaults to 1.0; "omega" defaults to pi},
//   "numerics": {"dt", "tau_step", "rel_tol", "decay_threshold", "horizon_cap"},
//   "outputs" : {"report_path", "csv_path", "verbosity"}.
// Matrices are row-major nested arrays. Unknown keys, type mismatches,
// non-positive numerics, and unreadable files all raise ConfigError.
AnalysisConfig load_config(const std::string& path);

// Config equivalent to {"preset": name} with all defaults.
AnalysisConfig config_from_preset(const std::string& name);

} // namespace ddlyap
