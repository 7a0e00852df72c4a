#include "ddlyap/lifted_bvp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ddlyap/errors.hpp"
#include "ddlyap/kron.hpp"

namespace ddlyap {

namespace {

// Scatters `block` into the (bi, bj) cell of a matrix tiled in n^2 x n^2
// blocks.
void put_block(DenseMatrix& dest, std::size_t n2, std::size_t bi, std::size_t bj,
               const DenseMatrix& block) {
    dest.set_block(bi * n2, bj * n2, block);
}

} // namespace

LiftedSystem build_lifted_system(const SystemSpec& spec) {
    spec.validate();
    if (spec.h != 1.0) {
        throw UnsupportedSystemError(
            "unsupported generalization: the lifted formulation is derived for delay h = 1, got h = " +
            std::to_string(spec.h));
    }
    if (spec.omega != std::numbers::pi) {
        throw UnsupportedSystemError(
            "unsupported generalization: the lifted formulation requires kernel frequency omega = pi "
            "(one half-period of sin over the delay interval)");
    }

    const std::size_t n = spec.n;
    const std::size_t n2 = n * n;
    const double pi = std::numbers::pi;
    const DenseMatrix eye_n = DenseMatrix::identity(n);
    const DenseMatrix eye_n2 = DenseMatrix::identity(n2);

    LiftedSystem lift;
    lift.n = n;
    lift.T = commutation_matrix(n);
    lift.H = DenseMatrix(4 * n2, 4 * n2);
    lift.J = DenseMatrix(4 * n2, 4 * n2);

    // Block row of Z' = A0^T Z + A1^T V + B0^T X0 + B1^T X1 (left factors
    // lift to K ox I on column-major vec).
    put_block(lift.H, n2, 0, 0, kron(spec.A0.transpose(), eye_n));
    put_block(lift.H, n2, 0, 1, kron(spec.A1.transpose(), eye_n));
    put_block(lift.H, n2, 0, 2, kron(spec.B0.transpose(), eye_n));
    put_block(lift.H, n2, 0, 3, kron(spec.B1.transpose(), eye_n));

    // Block row of V' = -V A1 - Z ... the delayed reflection runs backwards,
    // so its right factors lift to -(I ox K^T) and the B1 term flips sign
    // with the cosine kernel's parity.
    put_block(lift.H, n2, 1, 0, -kron(eye_n, spec.A1.transpose()));
    put_block(lift.H, n2, 1, 1, -kron(eye_n, spec.A0.transpose()));
    put_block(lift.H, n2, 1, 2, -kron(eye_n, spec.B0.transpose()));
    put_block(lift.H, n2, 1, 3, kron(eye_n, spec.B1.transpose()));

    // Kernel moment blocks: X0' = -pi X1, X1' = Z + V + pi X0, the harmonic
    // oscillator driven by the Lyapunov blocks.
    put_block(lift.H, n2, 2, 3, -pi * eye_n2);
    put_block(lift.H, n2, 3, 0, eye_n2);
    put_block(lift.H, n2, 3, 1, eye_n2);
    put_block(lift.H, n2, 3, 2, pi * eye_n2);

    // J swaps the Z and V blocks through the commutation matrix and reflects
    // the moment blocks; it is an exact signed permutation, symmetric, and
    // its own inverse.
    put_block(lift.J, n2, 0, 1, lift.T);
    put_block(lift.J, n2, 1, 0, lift.T);
    put_block(lift.J, n2, 2, 2, lift.T);
    put_block(lift.J, n2, 3, 3, -lift.T);

    return lift;
}

BoundaryOperator build_boundary_three_block(const SystemSpec& spec) {
    const LiftedSystem lift = build_lifted_system(spec);
    const std::size_t n2 = spec.n * spec.n;
    const DenseMatrix eye_n2 = DenseMatrix::identity(n2);

    BoundaryOperator bc;
    bc.M = DenseMatrix(3 * n2, 4 * n2);
    bc.N = DenseMatrix(3 * n2, 4 * n2);
    bc.rhs = DenseMatrix(3 * n2, 1);

    bc.M.set_block(0 * n2, 0 * n2, eye_n2);
    bc.N.set_block(0 * n2, 1 * n2, -eye_n2);
    bc.M.set_block(1 * n2, 2 * n2, eye_n2);
    bc.N.set_block(1 * n2, 2 * n2, -lift.T);
    bc.M.set_block(2 * n2, 3 * n2, eye_n2);
    bc.N.set_block(2 * n2, 3 * n2, lift.T);

    bc.row_labels = {"Z(0) = V(1)", "X0(0) = X0(1)^T", "X1(0) = -X1(1)^T"};
    return bc;
}

BoundaryOperator build_boundary_squared(const SystemSpec& spec) {
    const LiftedSystem lift = build_lifted_system(spec);
    const std::size_t n2 = spec.n * spec.n;

    BoundaryOperator bc;
    bc.M = DenseMatrix::identity(4 * n2);
    bc.N = -lift.J;
    bc.rhs = DenseMatrix(4 * n2, 1);
    bc.row_labels = {"Z(0) = V(1)^T", "V(0) = Z(1)^T", "X0(0) = X0(1)^T",
                     "X1(0) = -X1(1)^T"};
    return bc;
}

BoundaryOperator build_boundary_algebraic(const SystemSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n;
    const std::size_t n2 = n * n;
    const DenseMatrix eye_n = DenseMatrix::identity(n);
    const DenseMatrix t = commutation_matrix(n);

    // vec(U K) = (K^T ox I) vec(U) and vec(K^T U) = (I ox K^T) vec(U);
    // transposed arguments route through the commutation matrix first.
    BoundaryOperator bc;
    bc.M = DenseMatrix(n2, 4 * n2);
    bc.N = DenseMatrix(n2, 4 * n2);

    const DenseMatrix block_z =
        kron(spec.A0.transpose(), eye_n) + kron(eye_n, spec.A0.transpose());
    const DenseMatrix block_v =
        kron(spec.A1.transpose(), eye_n) + kron(eye_n, spec.A1.transpose()) * t;
    const DenseMatrix block_x0 =
        kron(spec.B0.transpose(), eye_n) + kron(eye_n, spec.B0.transpose()) * t;
    const DenseMatrix block_x1 =
        kron(spec.B1.transpose(), eye_n) + kron(eye_n, spec.B1.transpose()) * t;

    bc.M.set_block(0, 0 * n2, block_z);
    bc.M.set_block(0, 1 * n2, block_v);
    bc.M.set_block(0, 2 * n2, block_x0);
    bc.M.set_block(0, 3 * n2, block_x1);

    bc.rhs = vec(-spec.W);
    bc.row_labels = {"algebraic value condition at tau = 0: matches -W"};
    return bc;
}

double antisymmetry_residual(const LiftedSystem& lift) {
    const DenseMatrix conj = lift.J.transpose() * lift.H * lift.J;
    return (conj + lift.H).frobenius_norm();
}

double spectral_symmetry_defect(const LiftedSystem& lift) {
    const std::vector<double> coeff = char_poly(lift.H);
    double max_all = 0.0;
    double max_odd = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        const double mag = std::abs(coeff[k]);
        max_all = std::max(max_all, mag);
        if (k % 2 == 1) {
            max_odd = std::max(max_odd, mag);
        }
    }
    return max_odd / max_all; // max_all >= 1: the polynomial is monic
}

EigenspaceDiagnostics eigenspace_diagnostics(const LiftedSystem& lift, double rel_tol) {
    const DenseMatrix eye = DenseMatrix::identity(lift.H.rows());
    const DenseMatrix s = lift.J * mat_exp(lift.H);
    EigenspaceDiagnostics diag;
    diag.plus = numerical_rank(eye - s, rel_tol);
    diag.minus = numerical_rank(-eye - s, rel_tol);
    return diag;
}

DependenceDiagnostics dependence_diagnostics(const SystemSpec& spec, double rel_tol) {
    return dependence_diagnostics(spec, build_lifted_system(spec), rel_tol);
}

DependenceDiagnostics dependence_diagnostics(const SystemSpec& spec, const LiftedSystem& lift,
                                             double rel_tol) {
    const DenseMatrix e = mat_exp(lift.H);
    const BoundaryOperator bc3 = build_boundary_three_block(spec);

    const DenseMatrix k3 = bc3.M + bc3.N * e;
    const DenseMatrix k_sq = DenseMatrix::identity(lift.H.rows()) - lift.J * e;

    DependenceDiagnostics diag;
    diag.three_block = numerical_rank(k3, rel_tol);
    diag.squared = numerical_rank(k_sq, rel_tol);
    diag.dependent = diag.three_block.rank < k3.rows();

    // Project the squared system's nullspace through the three-block rows.
    // An orthonormal basis makes the largest singular value of the product
    // independent of which basis the solver happened to return.
    const MinNormSolution null_sq =
        min_norm_solve(k_sq, DenseMatrix(k_sq.rows(), 1), rel_tol);
    const double k3_scale =
        diag.three_block.singular_values.empty() ? 0.0 : diag.three_block.singular_values.front();
    diag.containment_tolerance = rel_tol * (1.0 + k3_scale);
    if (null_sq.nullspace_basis.empty()) {
        diag.containment_residual = 0.0;
        diag.contained = true; // vacuously: nothing to contain
        return diag;
    }
    DenseMatrix basis(k_sq.cols(), null_sq.nullspace_basis.size());
    for (std::size_t j = 0; j < null_sq.nullspace_basis.size(); ++j) {
        for (std::size_t i = 0; i < basis.rows(); ++i) {
            basis(i, j) = null_sq.nullspace_basis[j](i, 0);
        }
    }
    const std::vector<double> proj_sv = singular_values(k3 * basis);
    diag.containment_residual = proj_sv.empty() ? 0.0 : proj_sv.front();
    diag.contained = diag.containment_residual <= diag.containment_tolerance;
    return diag;
}

SolvabilityDiagnostics solvability_diagnostics(const SystemSpec& spec, double rel_tol) {
    return solvability_diagnostics(spec, build_lifted_system(spec), rel_tol);
}

SolvabilityDiagnostics solvability_diagnostics(const SystemSpec& spec, const LiftedSystem& lift,
                                               double rel_tol) {
    const DenseMatrix e = mat_exp(lift.H);
    const BoundaryOperator bc_w = build_boundary_algebraic(spec);
    const BoundaryOperator bc3 = build_boundary_three_block(spec);

    const std::size_t n2 = spec.n * spec.n;
    const std::size_t dim = 4 * n2;
    DenseMatrix m_full(dim, dim);
    DenseMatrix n_full(dim, dim);
    DenseMatrix rhs(dim, 1);
    m_full.set_block(0, 0, bc_w.M);
    n_full.set_block(0, 0, bc_w.N);
    rhs.set_block(0, 0, bc_w.rhs);
    m_full.set_block(n2, 0, bc3.M);
    n_full.set_block(n2, 0, bc3.N);
    rhs.set_block(n2, 0, bc3.rhs);

    const DenseMatrix k = m_full + n_full * e;
    const MinNormSolution mns = min_norm_solve(k, rhs, rel_tol);

    SolvabilityDiagnostics diag;
    diag.operator_rank = mns.rank;
    diag.residual_norm = mns.residual_norm;
    diag.consistency_tolerance = rel_tol * (1.0 + vector_norm(rhs));
    diag.consistent = mns.residual_norm <= diag.consistency_tolerance;
    diag.family_dim = diag.consistent ? mns.nullspace_basis.size() : 0;
    diag.has_samples = diag.consistent && !mns.nullspace_basis.empty();
    if (diag.has_samples) {
        diag.sample_a = mns.solution;
        diag.sample_b = mns.solution + mns.nullspace_basis.front();
        const DenseMatrix delta = diag.sample_b - diag.sample_a;
        diag.separation_norm = vector_norm(delta);
        diag.separation_residual = vector_norm(k * delta);
    }
    return diag;
}

} // namespace ddlyap
