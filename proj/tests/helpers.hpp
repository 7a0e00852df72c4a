#pragma once

#include <numbers>
#include <random>

#include "ddlyap/dense_matrix.hpp"
#include "ddlyap/system_spec.hpp"

namespace testhelp {

inline ddlyap::DenseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ddlyap::DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = unit(rng);
        }
    }
    return m;
}

// Random system with entries in [-1, 1] and a W that is symmetric exactly
// as stored (mirrored entries share one draw).
inline ddlyap::SystemSpec random_spec(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ddlyap::SystemSpec spec;
    spec.n = n;
    spec.h = 1.0;
    spec.omega = std::numbers::pi;
    spec.A0 = random_matrix(rng, n, n);
    spec.A1 = random_matrix(rng, n, n);
    spec.B0 = random_matrix(rng, n, n);
    spec.B1 = random_matrix(rng, n, n);
    spec.W = ddlyap::DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double value = unit(rng);
            spec.W(i, j) = value;
            spec.W(j, i) = value;
        }
    }
    return spec;
}

} // namespace testhelp
