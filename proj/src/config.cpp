#include "ddlyap/config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <string>

#include <json.hpp>

#include "ddlyap/errors.hpp"

namespace ddlyap {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw ConfigError("unknown configuration key '" + item.key() + "' in " + where);
        }
    }
}

double positive_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_number()) {
        throw ConfigError("'" + key + "' must be a number");
    }
    const double value = obj[key].get<double>();
    if (!(value > 0.0)) {
        throw ConfigError("'" + key + "' must be positive");
    }
    return value;
}

DenseMatrix parse_matrix(const json& node, std::size_t n, const std::string& name) {
    if (!node.is_array() || node.size() != n) {
        throw ConfigError("'" + name + "' must be an array of " + std::to_string(n) + " rows");
    }
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = node[i];
        if (!row.is_array() || row.size() != n) {
            throw ConfigError("'" + name + "' row " + std::to_string(i) + " must hold " +
                              std::to_string(n) + " numbers");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!row[j].is_number()) {
                throw ConfigError("'" + name + "' entries must be numbers");
            }
            m(i, j) = row[j].get<double>();
        }
    }
    return m;
}

SystemSpec parse_system(const json& node) {
    if (!node.is_object()) {
        throw ConfigError("'system' must be an object");
    }
    reject_unknown_keys(node, {"n", "h", "omega", "A0", "A1", "B0", "B1", "W"}, "'system'");
    if (!node.contains("n") || !node["n"].is_number_unsigned() || node["n"].get<std::size_t>() == 0) {
        throw ConfigError("'system.n' must be a positive integer");
    }
    SystemSpec spec;
    spec.n = node["n"].get<std::size_t>();
    spec.h = positive_number(node, "h", 1.0);
    if (node.contains("omega")) {
        if (!node["omega"].is_number()) {
            throw ConfigError("'system.omega' must be a number");
        }
        spec.omega = node["omega"].get<double>();
    } else {
        spec.omega = std::numbers::pi;
    }
    if (!node.contains("A0") || !node.contains("W")) {
        throw ConfigError("'system' requires at least 'A0' and 'W'");
    }
    const DenseMatrix zero(spec.n, spec.n);
    spec.A0 = parse_matrix(node["A0"], spec.n, "system.A0");
    spec.A1 = node.contains("A1") ? parse_matrix(node["A1"], spec.n, "system.A1") : zero;
    spec.B0 = node.contains("B0") ? parse_matrix(node["B0"], spec.n, "system.B0") : zero;
    spec.B1 = node.contains("B1") ? parse_matrix(node["B1"], spec.n, "system.B1") : zero;
    spec.W = parse_matrix(node["W"], spec.n, "system.W");
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid 'system': ") + e.what());
    }
    return spec;
}

} // namespace

SystemSpec AnalysisConfig::resolve_system() const {
    if (preset.has_value() == system.has_value()) {
        throw ConfigError("exactly one of a preset name and inline system matrices is required");
    }
    return preset ? preset_spec(*preset) : *system;
}

AnalysisConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    reject_unknown_keys(doc, {"preset", "system", "numerics", "outputs"}, "config root");

    AnalysisConfig cfg;
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) {
            throw ConfigError("'preset' must be a string");
        }
        cfg.preset = doc["preset"].get<std::string>();
    }
    if (doc.contains("system")) {
        cfg.system = parse_system(doc["system"]);
    }
    if (cfg.preset.has_value() == cfg.system.has_value()) {
        throw ConfigError("config must provide exactly one of 'preset' and 'system'");
    }

    if (doc.contains("numerics")) {
        const json& num = doc["numerics"];
        if (!num.is_object()) {
            throw ConfigError("'numerics' must be an object");
        }
        reject_unknown_keys(num, {"dt", "tau_step", "rel_tol", "decay_threshold", "horizon_cap"},
                            "'numerics'");
        cfg.dt = positive_number(num, "dt", cfg.dt);
        cfg.tau_step = positive_number(num, "tau_step", cfg.tau_step);
        cfg.rel_tol = positive_number(num, "rel_tol", cfg.rel_tol);
        cfg.decay_threshold = positive_number(num, "decay_threshold", cfg.decay_threshold);
        if (num.contains("horizon_cap")) {
            if (!num["horizon_cap"].is_number_unsigned() || num["horizon_cap"].get<std::size_t>() == 0) {
                throw ConfigError("'horizon_cap' must be a positive integer");
            }
            cfg.horizon_cap = num["horizon_cap"].get<std::size_t>();
        }
    }

    if (doc.contains("outputs")) {
        const json& outputs = doc["outputs"];
        if (!outputs.is_object()) {
            throw ConfigError("'outputs' must be an object");
        }
        reject_unknown_keys(outputs, {"report_path", "csv_path", "verbosity"}, "'outputs'");
        if (outputs.contains("report_path")) {
            if (!outputs["report_path"].is_string()) {
                throw ConfigError("'report_path' must be a string");
            }
            cfg.report_path = outputs["report_path"].get<std::string>();
        }
        if (outputs.contains("csv_path")) {
            if (!outputs["csv_path"].is_string()) {
                throw ConfigError("'csv_path' must be a string");
            }
            cfg.csv_path = outputs["csv_path"].get<std::string>();
        }
        if (outputs.contains("verbosity")) {
            if (!outputs["verbosity"].is_number_integer()) {
                throw ConfigError("'verbosity' must be an integer");
            }
            cfg.verbosity = outputs["verbosity"].get<int>();
            if (cfg.verbosity < 0 || cfg.verbosity > 2) {
                throw ConfigError("'verbosity' must be 0, 1, or 2");
            }
        }
    }
    return cfg;
}

AnalysisConfig config_from_preset(const std::string& name) {
    AnalysisConfig cfg;
    cfg.preset = name;
    return cfg;
}

} // namespace ddlyap
