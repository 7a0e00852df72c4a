#pragma once

#include <optional>
#include <vector>

#include "ddlyap/dense_matrix.hpp"

namespace ddlyap {

// Result of a numerical rank decision, with the full singular spectrum kept
// so the decision is auditable after the fact.
struct RankDiagnostics {
    std::vector<double> singular_values; // descending, all >= 0
    double tolerance = 0.0;              // rel_tol * max(rows, cols) * sigma_max
    std::size_t rank = 0;                // count of singular values > tolerance
    std::size_t nullity = 0;             // columns - rank
    // sigma_rank / sigma_{rank+1}; absent when rank is 0 or full, or the
    // trailing value is exactly zero.
    std::optional<double> gap_ratio;
};

// Matrix exponential by scaling-and-squaring with a fixed degree-13 diagonal
// Pade approximant (1-norm based scaling). Delivers near machine precision
// for the modest norms arising here; accuracy_target is validated (> 0,
// >= 1e-15) and recorded as the caller's contract — the fixed-order kernel
// meets any achievable target without algorithm switching.
DenseMatrix mat_exp(const DenseMatrix& a, double accuracy_target = 1e-13);

// All min(rows, cols) singular values, descending. One-sided Jacobi
// iteration; invariant under transposition of the input.
std::vector<double> singular_values(const DenseMatrix& a);

// Rank decision at tolerance rel_tol * max(rows, cols) * sigma_max.
RankDiagnostics numerical_rank(const DenseMatrix& a, double rel_tol = 1e-8);

// Monic characteristic polynomial coefficients c[0..m] with c[m] = 1, for
// lambda^m + c[m-1] lambda^{m-1} + ... + c[0], by the Faddeev-LeVerrier
// recurrence.
std::vector<double> char_poly(const DenseMatrix& a);

struct MinNormSolution {
    DenseMatrix solution;       // minimum-norm least-squares solution
    double residual_norm = 0.0; // ||A x - b||_2
    // Orthonormal columns spanning the numerical nullspace of A at the rank
    // tolerance; empty when A has full column rank.
    std::vector<DenseMatrix> nullspace_basis; // each a cols(A) x 1 column
    RankDiagnostics rank;
};

// Minimum-norm least-squares solve via the singular spectrum, together with
// the numerical nullspace at the same tolerance.
MinNormSolution min_norm_solve(const DenseMatrix& a, const DenseMatrix& b, double rel_tol = 1e-8);

} // namespace ddlyap
