#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ddlyap/config.hpp"
#include "ddlyap/dde_oracle.hpp"
#include "ddlyap/lifted_bvp.hpp"
#include "ddlyap/system_spec.hpp"

namespace ddlyap {

// Thresholds behind every claim verdict. They are compile-time constants
// here and are also echoed into each emitted report, so a report is
// self-describing: no verdict depends on a number the file does not show.
inline constexpr double kSpectralDefectTol = 1e-9; // normalized odd coefficients
inline constexpr double kGapRatioMin = 1e4;        // singular-value gap at the rank cut
inline constexpr double kOracleResidualTol = 1e-3; // oracle property residuals
inline constexpr double kNullspaceRelTol = 1e-8;   // ||K delta|| <= this * ||delta||

// One audited claim: a measured number, the threshold it is held against,
// and the resulting verdict.
struct ClaimResult {
    std::string name;      // stable machine-readable identifier
    std::string statement; // human-readable comparison, e.g. "== 0 exactly"
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct AuditOptions {
    double rel_tol = 1e-8;
    OracleSettings oracle;
    // Added to H(0, 0) after assembly — a deliberate corruption that breaks
    // the exact antisymmetry, used as a negative control.
    double perturb_h = 0.0;
};

// The full audit of one system: structural diagnostics of the lifted
// boundary value problem plus the definition-based oracle, reduced to a
// claim list with verdicts.
struct AuditReport {
    SystemSpec spec;
    double rel_tol = 0.0;
    double perturb_h = 0.0;
    std::size_t dimension = 0; // 4n^2
    double antisymmetry = 0.0;
    double spectral_defect = 0.0;
    EigenspaceDiagnostics eigenspace;
    DependenceDiagnostics dependence;
    SolvabilityDiagnostics solvability;
    OracleSettings oracle_settings;
    OracleResult oracle;
    std::vector<ClaimResult> claims;
    bool all_pass = false;
};

// Runs every diagnostic and the oracle, then derives the claim verdicts.
AuditReport run_audit(const SystemSpec& spec, const AuditOptions& options);

// The oracle-residual subset of the claim list (used on its own by the
// oracle command, which skips the lifted diagnostics).
std::vector<ClaimResult> oracle_claims(const OracleResult& result);

// Serializes the full audit to a JSON document at `path`. Identical
// configuration and command produce byte-identical files. Throws
// ConfigError when the file cannot be written.
void write_report_file(const AuditReport& report, const AnalysisConfig& config,
                       const std::string& command, const std::string& path);

// JSON report for an oracle-only run: configuration echo, oracle numerics,
// residuals, and the oracle claims.
void write_oracle_report_file(const OracleResult& result, const SystemSpec& spec,
                              const AnalysisConfig& config, const std::string& path);

// CSV with header tau,u11,...,unn (row-major U entries), one row per tau,
// every value printed with 17 significant digits.
void write_lyapunov_csv(const LyapunovSamples& samples, const std::string& path);

// Claim table for the console: one line per claim plus a final verdict.
// verbosity 0 prints nothing; 2 adds the singular-value spectra.
void print_claim_table(const AuditReport& report, std::ostream& out, int verbosity);

} // namespace ddlyap
