#include "ddlyap/system_spec.hpp"

#include <numbers>

namespace ddlyap {

namespace {

bool is_square_of(const DenseMatrix& m, std::size_t n) { return m.rows() == n && m.cols() == n; }

bool is_zero(const DenseMatrix& m) {
    for (double x : m.data()) {
        if (x != 0.0) {
            return false;
        }
    }
    return true;
}

} // namespace

void SystemSpec::validate() const {
    if (n == 0) {
        throw std::invalid_argument("SystemSpec: state dimension must be positive");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("SystemSpec: delay h must be positive");
    }
    const DenseMatrix* mats[] = {&A0, &A1, &B0, &B1, &W};
    const char* names[] = {"A0", "A1", "B0", "B1", "W"};
    for (std::size_t k = 0; k < 5; ++k) {
        if (!is_square_of(*mats[k], n)) {
            throw std::invalid_argument(std::string("SystemSpec: ") + names[k] + " must be " +
                                        std::to_string(n) + "x" + std::to_string(n));
        }
        if (!mats[k]->all_finite()) {
            throw std::invalid_argument(std::string("SystemSpec: ") + names[k] +
                                        " has non-finite entries");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (W(i, j) != W(j, i)) {
                throw std::invalid_argument("SystemSpec: W must be symmetric exactly as stored");
            }
        }
    }
}

bool SystemSpec::has_point_delay() const { return !is_zero(A1); }

bool SystemSpec::has_distributed_delay() const { return !is_zero(B0) || !is_zero(B1); }

SystemSpec preset_spec(const std::string& name) {
    if (name == "kharitonov2006-example") {
        SystemSpec s;
        s.n = 2;
        s.h = 1.0;
        s.omega = std::numbers::pi;
        s.A0 = DenseMatrix{{-1.0, 0.0}, {0.0, -1.0}};
        s.A1 = DenseMatrix{{0.0, 1.0}, {-1.0, 0.0}};
        s.B0 = DenseMatrix{{0.3, 0.0}, {0.0, 0.3}};
        s.B1 = DenseMatrix{{0.0, 0.3}, {-0.3, 0.0}};
        s.W = DenseMatrix::identity(2);
        return s;
    }
    if (name == "scalar") {
        SystemSpec s;
        s.n = 1;
        s.h = 1.0;
        s.omega = std::numbers::pi;
        s.A0 = DenseMatrix{{-1.0}};
        s.A1 = DenseMatrix{{0.0}};
        s.B0 = DenseMatrix{{0.0}};
        s.B1 = DenseMatrix{{0.0}};
        s.W = DenseMatrix{{1.0}};
        return s;
    }
    throw ConfigError("unknown preset '" + name +
                      "' (available: kharitonov2006-example, scalar)");
}

bool is_known_preset(const std::string& name) {
    return name == "kharitonov2006-example" || name == "scalar";
}

} // namespace ddlyap
