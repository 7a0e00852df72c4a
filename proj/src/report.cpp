#include "ddlyap/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "ddlyap/errors.hpp"

namespace ddlyap {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string g6(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

ordered_json matrix_to_json(const DenseMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json vector_to_json(const DenseMatrix& v) {
    ordered_json out = ordered_json::array();
    for (std::size_t i = 0; i < v.rows(); ++i) {
        out.push_back(v(i, 0));
    }
    return out;
}

ordered_json rank_to_json(const RankDiagnostics& d) {
    ordered_json out;
    out["rank"] = d.rank;
    out["nullity"] = d.nullity;
    out["tolerance"] = d.tolerance;
    if (d.gap_ratio) {
        out["gap_ratio"] = *d.gap_ratio;
    } else {
        out["gap_ratio"] = nullptr;
    }
    out["singular_values"] = d.singular_values;
    return out;
}

ordered_json system_to_json(const SystemSpec& spec) {
    ordered_json out;
    out["n"] = spec.n;
    out["h"] = spec.h;
    out["omega"] = spec.omega;
    out["A0"] = matrix_to_json(spec.A0);
    out["A1"] = matrix_to_json(spec.A1);
    out["B0"] = matrix_to_json(spec.B0);
    out["B1"] = matrix_to_json(spec.B1);
    out["W"] = matrix_to_json(spec.W);
    return out;
}

ordered_json config_to_json(const AnalysisConfig& cfg) {
    ordered_json out;
    if (cfg.preset) {
        out["preset"] = *cfg.preset;
    }
    if (cfg.system) {
        out["system"] = system_to_json(*cfg.system);
    }
    out["numerics"] = {{"dt", cfg.dt},
                       {"tau_step", cfg.tau_step},
                       {"rel_tol", cfg.rel_tol},
                       {"decay_threshold", cfg.decay_threshold},
                       {"horizon_cap", cfg.horizon_cap}};
    out["outputs"] = {{"report_path", cfg.report_path},
                      {"csv_path", cfg.csv_path},
                      {"verbosity", cfg.verbosity}};
    return out;
}

ordered_json claims_to_json(const std::vector<ClaimResult>& claims) {
    ordered_json arr = ordered_json::array();
    for (const ClaimResult& c : claims) {
        ordered_json item;
        item["name"] = c.name;
        item["statement"] = c.statement;
        item["measured"] = c.measured;
        item["threshold"] = c.threshold;
        item["pass"] = c.pass;
        arr.push_back(std::move(item));
    }
    return arr;
}

ordered_json oracle_to_json(const OracleResult& res, const OracleSettings& settings) {
    ordered_json out;
    out["dt"] = settings.dt;
    out["tau_step"] = settings.tau_step;
    out["decay_threshold"] = settings.decay_threshold;
    out["horizon_cap"] = settings.horizon_cap;
    out["decay_time"] = res.decay_time;
    out["decay_norm"] = res.decay_norm;
    out["horizon"] = res.horizon;
    out["dynamic_residual"] = res.dynamic_residual;
    out["symmetry_residual"] = res.symmetry_residual;
    out["algebraic_residual"] = res.algebraic_residual;
    out["residual_tolerance"] = kOracleResidualTol;
    return out;
}

void dump_to_file(const ordered_json& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write report file '" + path + "'");
    }
    out << doc.dump(2) << '\n';
}

std::vector<ClaimResult> build_claims(const AuditReport& rep) {
    const double n2 = static_cast<double>(rep.spec.n * rep.spec.n);
    std::vector<ClaimResult> claims;

    claims.push_back({"lifted-antisymmetry", "|| J^T H J + H ||_F == 0 exactly",
                      rep.antisymmetry, 0.0, rep.antisymmetry == 0.0});

    claims.push_back({"spectral-negation-symmetry",
                      "normalized odd characteristic coefficients <= 1e-9", rep.spectral_defect,
                      kSpectralDefectTol, rep.spectral_defect <= kSpectralDefectTol});

    const auto eigenspace_ok = [&](const RankDiagnostics& d) {
        if (static_cast<double>(d.rank) != 2.0 * n2) {
            return false;
        }
        // A missing gap ratio at a deficient rank means the trailing
        // singular value is exactly zero — an infinite gap.
        return !d.gap_ratio.has_value() || *d.gap_ratio >= kGapRatioMin;
    };
    claims.push_back({"plus-eigenspace-rank", "rank(I - J e^H) == 2n^2, gap ratio >= 1e4",
                      static_cast<double>(rep.eigenspace.plus.rank), 2.0 * n2,
                      eigenspace_ok(rep.eigenspace.plus)});
    claims.push_back({"minus-eigenspace-rank", "rank(-I - J e^H) == 2n^2, gap ratio >= 1e4",
                      static_cast<double>(rep.eigenspace.minus.rank), 2.0 * n2,
                      eigenspace_ok(rep.eigenspace.minus)});

    claims.push_back({"boundary-dependence", "closed three-block rank < 3n^2 (dependent rows)",
                      static_cast<double>(rep.dependence.three_block.rank), 3.0 * n2,
                      rep.dependence.dependent});

    claims.push_back({"stacked-rank-deficiency", "closed stacked operator rank < 4n^2",
                      static_cast<double>(rep.solvability.operator_rank.rank), 4.0 * n2,
                      static_cast<double>(rep.solvability.operator_rank.rank) < 4.0 * n2});

    const bool family_ok =
        rep.solvability.consistent && rep.solvability.family_dim >= 1 &&
        rep.solvability.separation_residual <= kNullspaceRelTol * rep.solvability.separation_norm;
    claims.push_back({"solution-family",
                      "consistent, family dim >= 1, ||K delta|| <= 1e-8 ||delta||",
                      static_cast<double>(rep.solvability.family_dim), 1.0, family_ok});

    const std::vector<ClaimResult> oc = oracle_claims(rep.oracle);
    claims.insert(claims.end(), oc.begin(), oc.end());
    return claims;
}

} // namespace

std::vector<ClaimResult> oracle_claims(const OracleResult& result) {
    std::vector<ClaimResult> claims;
    claims.push_back({"oracle-dynamic-residual", "delay dynamics residual <= 1e-3",
                      result.dynamic_residual, kOracleResidualTol,
                      result.dynamic_residual <= kOracleResidualTol});
    claims.push_back({"oracle-symmetry-residual", "U(-tau) = U(tau)^T residual <= 1e-3",
                      result.symmetry_residual, kOracleResidualTol,
                      result.symmetry_residual <= kOracleResidualTol});
    claims.push_back({"oracle-algebraic-residual", "value condition residual <= 1e-3",
                      result.algebraic_residual, kOracleResidualTol,
                      result.algebraic_residual <= kOracleResidualTol});
    return claims;
}

AuditReport run_audit(const SystemSpec& spec, const AuditOptions& options) {
    spec.validate();

    AuditReport rep;
    rep.spec = spec;
    rep.rel_tol = options.rel_tol;
    rep.perturb_h = options.perturb_h;

    LiftedSystem lift = build_lifted_system(spec);
    if (options.perturb_h != 0.0) {
        lift.H(0, 0) += options.perturb_h;
    }
    rep.dimension = lift.H.rows();
    rep.antisymmetry = antisymmetry_residual(lift);
    rep.spectral_defect = spectral_symmetry_defect(lift);
    rep.eigenspace = eigenspace_diagnostics(lift, options.rel_tol);
    rep.dependence = dependence_diagnostics(spec, lift, options.rel_tol);
    rep.solvability = solvability_diagnostics(spec, lift, options.rel_tol);

    rep.oracle_settings = options.oracle;
    rep.oracle = run_oracle(spec, options.oracle);

    rep.claims = build_claims(rep);
    rep.all_pass = std::all_of(rep.claims.begin(), rep.claims.end(),
                               [](const ClaimResult& c) { return c.pass; });
    return rep;
}

void write_report_file(const AuditReport& report, const AnalysisConfig& config,
                       const std::string& command, const std::string& path) {
    ordered_json doc;
    doc["tool"] = "ddlyap";
    doc["command"] = command;
    doc["config"] = config_to_json(config);
    doc["system"] = system_to_json(report.spec);
    doc["perturb_h"] = report.perturb_h;

    ordered_json lifted;
    lifted["dimension"] = report.dimension;
    lifted["antisymmetry_residual"] = report.antisymmetry;
    lifted["spectral_symmetry_defect"] = report.spectral_defect;
    lifted["spectral_defect_tolerance"] = kSpectralDefectTol;
    doc["lifted"] = std::move(lifted);

    ordered_json eigenspace;
    eigenspace["plus"] = rank_to_json(report.eigenspace.plus);
    eigenspace["minus"] = rank_to_json(report.eigenspace.minus);
    eigenspace["gap_ratio_minimum"] = kGapRatioMin;
    doc["eigenspace"] = std::move(eigenspace);

    ordered_json dependence;
    dependence["rows"] = 3 * report.spec.n * report.spec.n;
    dependence["closed_operator"] = rank_to_json(report.dependence.three_block);
    dependence["squared_operator"] = rank_to_json(report.dependence.squared);
    dependence["verdict"] = report.dependence.dependent ? "dependent" : "independent";
    dependence["containment_residual"] = report.dependence.containment_residual;
    dependence["containment_tolerance"] = report.dependence.containment_tolerance;
    dependence["contained"] = report.dependence.contained;
    doc["dependence"] = std::move(dependence);

    ordered_json solvability;
    solvability["operator"] = rank_to_json(report.solvability.operator_rank);
    solvability["residual_norm"] = report.solvability.residual_norm;
    solvability["consistency_tolerance"] = report.solvability.consistency_tolerance;
    solvability["consistent"] = report.solvability.consistent;
    solvability["family_dim"] = report.solvability.family_dim;
    solvability["nullspace_rel_tol"] = kNullspaceRelTol;
    if (report.solvability.has_samples) {
        solvability["sample_a"] = vector_to_json(report.solvability.sample_a);
        solvability["sample_b"] = vector_to_json(report.solvability.sample_b);
        solvability["separation_norm"] = report.solvability.separation_norm;
        solvability["separation_residual"] = report.solvability.separation_residual;
    }
    doc["solvability"] = std::move(solvability);

    doc["oracle"] = oracle_to_json(report.oracle, report.oracle_settings);
    doc["claims"] = claims_to_json(report.claims);
    doc["verdict"] = report.all_pass ? "pass" : "fail";

    dump_to_file(doc, path);
}

void write_oracle_report_file(const OracleResult& result, const SystemSpec& spec,
                              const AnalysisConfig& config, const std::string& path) {
    ordered_json doc;
    doc["tool"] = "ddlyap";
    doc["command"] = "oracle";
    doc["config"] = config_to_json(config);
    doc["system"] = system_to_json(spec);
    doc["oracle"] = oracle_to_json(result, config.oracle_settings());
    const std::vector<ClaimResult> claims = oracle_claims(result);
    doc["claims"] = claims_to_json(claims);
    doc["verdict"] = std::all_of(claims.begin(), claims.end(),
                                 [](const ClaimResult& c) { return c.pass; })
                         ? "pass"
                         : "fail";
    dump_to_file(doc, path);
}

void write_lyapunov_csv(const LyapunovSamples& samples, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write CSV file '" + path + "'");
    }
    if (samples.values.empty()) {
        throw GridError("no Lyapunov samples to write");
    }
    const std::size_t n = samples.values.front().rows();
    out << "tau";
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            out << ",u" << i << j;
        }
    }
    out << '\n';
    for (std::size_t row = 0; row < samples.values.size(); ++row) {
        out << g17(samples.taus[row]);
        const DenseMatrix& u = samples.values[row];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out << ',' << g17(u(i, j));
            }
        }
        out << '\n';
    }
}

void print_claim_table(const AuditReport& report, std::ostream& out, int verbosity) {
    if (verbosity <= 0) {
        return;
    }
    out << "lifted dimension " << report.dimension << " (n = " << report.spec.n
        << "), rel_tol = " << g6(report.rel_tol);
    if (report.perturb_h != 0.0) {
        out << ", H perturbed by " << g6(report.perturb_h) << " at (0,0)";
    }
    out << '\n';
    out << "oracle: decay time " << g6(report.oracle.decay_time) << ", horizon "
        << g6(report.oracle.horizon) << ", ||Phi(decay)|| = " << g6(report.oracle.decay_norm)
        << '\n';

    std::size_t passed = 0;
    out << std::left << std::setw(28) << "claim" << std::setw(14) << "measured" << std::setw(14)
        << "threshold" << "result" << '\n';
    for (const ClaimResult& c : report.claims) {
        out << std::left << std::setw(28) << c.name << std::setw(14) << g6(c.measured)
            << std::setw(14) << g6(c.threshold) << (c.pass ? "PASS" : "FAIL") << '\n';
        if (c.pass) {
            ++passed;
        }
    }

    if (verbosity >= 2) {
        const auto print_spectrum = [&](const char* label, const RankDiagnostics& d) {
            out << label << " singular values:";
            for (double s : d.singular_values) {
                out << ' ' << g6(s);
            }
            out << " (tolerance " << g6(d.tolerance) << ")\n";
        };
        print_spectrum("I - J e^H", report.eigenspace.plus);
        print_spectrum("-I - J e^H", report.eigenspace.minus);
        print_spectrum("three-block operator", report.dependence.three_block);
        print_spectrum("stacked operator", report.solvability.operator_rank);
        out << "containment residual " << g6(report.dependence.containment_residual)
            << (report.dependence.contained ? " (contained)" : " (not contained)") << '\n';
    }

    out << "verdict: " << (report.all_pass ? "PASS" : "FAIL") << " (" << passed << "/"
        << report.claims.size() << " claims)" << '\n';
}

} // namespace ddlyap
