#pragma once

#include <string>
#include <vector>

#include "ddlyap/dense_matrix.hpp"
#include "ddlyap/numkit.hpp"
#include "ddlyap/system_spec.hpp"

namespace ddlyap {

// The Kronecker lifting of the auxiliary two-point boundary value problem for
// the delay Lyapunov matrix. The lifted state y stacks vec(Z), vec(V),
// vec(X0), vec(X1) — the Lyapunov matrix block, its delayed reflection, and
// the two kernel moment blocks — and evolves as y' = H y on [0, 1].
struct LiftedSystem {
    std::size_t n = 0;
    DenseMatrix H; // 4n^2 x 4n^2 lifted dynamics
    DenseMatrix J; // 4n^2 x 4n^2 symmetric involution built from T blocks
    DenseMatrix T; // n^2 x n^2 commutation matrix
};

// Boundary conditions in affine form M y(0) + N y(1) = rhs, with one textual
// tag per block row recording which identity the block encodes.
struct BoundaryOperator {
    DenseMatrix M;
    DenseMatrix N;
    DenseMatrix rhs; // column vector, one entry per row of M
    std::vector<std::string> row_labels;
};

// Assembles H, J, T for the given system. The derivation behind the block
// layout is specific to omega = pi and h = 1; anything else is rejected as an
// unsupported generalization.
LiftedSystem build_lifted_system(const SystemSpec& spec);

// Three-block boundary operator (3n^2 rows): the conditions
//   Z(0) = V(1),  X0(0) = X0^T(1),  X1(0) = -X1^T(1).
BoundaryOperator build_boundary_three_block(const SystemSpec& spec);

// Squared boundary operator (4n^2 rows): M = I, N = -J, encoding
//   Z(0) = V^T(1), V(0) = Z^T(1), X0(0) = X0^T(1), X1(0) = -X1^T(1),
// so the closed system reads (I - J e^H) y(0) = 0.
BoundaryOperator build_boundary_squared(const SystemSpec& spec);

// The -W row (n^2 rows): the algebraic property of the Lyapunov matrix at
// tau = 0, lifted through vec(ABC) = (C^T ox A) vec(B):
//   M = [A0^T ox I + I ox A0^T,  A1^T ox I + (I ox A1^T) T,
//        B0^T ox I + (I ox B0^T) T,  B1^T ox I + (I ox B1^T) T],
//   N = 0, rhs = vec(-W).
BoundaryOperator build_boundary_algebraic(const SystemSpec& spec);

// || J^T H J + H ||_F. The conjugation flips the sign of H exactly, and J is
// a signed permutation, so the result is 0.0 exactly (not merely small) for
// every valid system.
double antisymmetry_residual(const LiftedSystem& lift);

// Largest odd-degree coefficient of the characteristic polynomial of H after
// normalizing by the largest coefficient magnitude. Near zero confirms the
// spectrum is symmetric under negation (eigenvalues come in +/- pairs).
double spectral_symmetry_defect(const LiftedSystem& lift);

// Rank structure of the closed squared operator at both unit eigenvalues of
// J e^H: plus analyzes I - J e^H, minus analyzes -I - J e^H. For every valid
// system both have nullity 2n^2 — together they exhaust all 4n^2 dimensions.
struct EigenspaceDiagnostics {
    RankDiagnostics plus;
    RankDiagnostics minus;
};
EigenspaceDiagnostics eigenspace_diagnostics(const LiftedSystem& lift, double rel_tol = 1e-8);

// Rank of the closed three-block operator M3 + N3 e^H versus its 3n^2 rows,
// alongside the squared-system rank. The dependence verdict (rank < 3n^2) is
// the audited claim: the boundary conditions are linearly dependent, so the
// BVP cannot determine a unique solution.
//
// containment_residual measures whether the three-block rows annihilate the
// nullspace of I - J e^H (largest singular value of K3 * nullspace basis).
// The two operators differ in how the first block row treats v(1) (plain
// identity versus transpose), so containment can fail; it is reported, never
// asserted.
struct DependenceDiagnostics {
    RankDiagnostics three_block;
    RankDiagnostics squared;
    bool dependent = false;
    double containment_residual = 0.0;
    double containment_tolerance = 0.0;
    bool contained = false;
};
DependenceDiagnostics dependence_diagnostics(const SystemSpec& spec, double rel_tol = 1e-8);

// Same, but closing the boundary operators with a caller-supplied lifted
// system (e.g. one that was deliberately perturbed as a negative control).
DependenceDiagnostics dependence_diagnostics(const SystemSpec& spec, const LiftedSystem& lift,
                                             double rel_tol);

// Stacks the -W row and the three-block rows into the full 4n^2 x 4n^2
// affine system K y(0) = r with K = M + N e^H, and reports its rank,
// consistency, and the dimension of the solution family. When the family is
// nontrivial, two distinct solutions are exhibited whose difference lies in
// the numerical nullspace of K — the concrete demonstration that no unique
// solution exists.
struct SolvabilityDiagnostics {
    RankDiagnostics operator_rank;
    double residual_norm = 0.0;        // min-norm least-squares residual
    double consistency_tolerance = 0.0; // rel_tol * (1 + ||rhs||)
    bool consistent = false;
    std::size_t family_dim = 0;
    bool has_samples = false;
    DenseMatrix sample_a; // min-norm solution (when consistent)
    DenseMatrix sample_b; // sample_a shifted along the first nullspace column
    double separation_norm = 0.0;     // ||sample_b - sample_a||
    double separation_residual = 0.0; // ||K (sample_b - sample_a)||
};
SolvabilityDiagnostics solvability_diagnostics(const SystemSpec& spec, double rel_tol = 1e-8);

// Same, closing with a caller-supplied lifted system.
SolvabilityDiagnostics solvability_diagnostics(const SystemSpec& spec, const LiftedSystem& lift,
                                               double rel_tol);

} // namespace ddlyap
