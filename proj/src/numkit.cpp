#include "ddlyap/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ddlyap {

namespace {

// ---------------------------------------------------------------------------
// LU with partial pivoting (small dense systems inside the Pade evaluation)
// ---------------------------------------------------------------------------

struct LuFactors {
    DenseMatrix lu;                 // packed L (unit diagonal) and U
    std::vector<std::size_t> perm;  // row permutation
};

LuFactors lu_factor(DenseMatrix a) {
    const std::size_t n = a.rows();
    LuFactors f{std::move(a), std::vector<std::size_t>(n)};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::abs(f.lu(i, k));
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (best == 0.0) {
            throw ConvergenceError("lu_factor: singular matrix in linear solve");
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(f.lu(k, j), f.lu(pivot, j));
            }
            std::swap(f.perm[k], f.perm[pivot]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = f.lu(i, k) / f.lu(k, k);
            f.lu(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) {
                f.lu(i, j) -= m * f.lu(k, j);
            }
        }
    }
    return f;
}

// Solves A X = B for all columns of B at once.
DenseMatrix lu_solve(const LuFactors& f, const DenseMatrix& b) {
    const std::size_t n = f.lu.rows();
    DenseMatrix x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            x(i, j) = b(f.perm[i], j);
        }
    }
    // forward substitution (unit lower triangle)
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            const double m = f.lu(i, k);
            if (m == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                x(i, j) -= m * x(k, j);
            }
        }
    }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
        const double d = f.lu(ii, ii);
        for (std::size_t k = ii + 1; k < n; ++k) {
            const double m = f.lu(ii, k);
            if (m == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                x(ii, j) -= m * x(k, j);
            }
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
            x(ii, j) /= d;
        }
    }
    return x;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD
// ---------------------------------------------------------------------------

struct JacobiSvd {
    // a ends up as U * diag(sigma); v accumulates the right rotations, so the
    // input factors as (U sigma) V^T with V orthogonal.
    std::vector<double> sigma; // descending
    DenseMatrix v;             // cols(a) x cols(a), columns ordered with sigma
};

// Runs one-sided Jacobi rotations on the columns of `a` (rows >= cols works
// best; callers arrange that). Convergence: all column pairs orthogonal to
// 1e-14 relative.
JacobiSvd jacobi_svd(DenseMatrix a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    DenseMatrix v = DenseMatrix::identity(n);
    constexpr double kOrthTol = 1e-14;
    constexpr int kMaxSweeps = 64;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double ap = a(i, p);
                    const double aq = a(i, q);
                    alpha += ap * ap;
                    beta += aq * aq;
                    gamma += ap * aq;
                }
                if (gamma == 0.0 || std::abs(gamma) <= kOrthTol * std::sqrt(alpha * beta)) {
                    continue;
                }
                converged = false;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double ap = a(i, p);
                    const double aq = a(i, q);
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = s * ap + c * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p);
                    const double vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged) {
        throw ConvergenceError("jacobi_svd: rotation sweeps did not converge");
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sum += a(i, j) * a(i, j);
        }
        sigma[j] = std::sqrt(sum);
    }
    // Sort descending, carrying the columns of V (and of the scaled U inside
    // `a`, which callers may rebuild from sigma when needed).
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
    JacobiSvd out{std::vector<double>(n), DenseMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.sigma[j] = sigma[order[j]];
        for (std::size_t i = 0; i < n; ++i) {
            out.v(i, j) = v(i, order[j]);
        }
    }
    return out;
}

RankDiagnostics rank_from_spectrum(std::vector<double> sigma, std::size_t rows, std::size_t cols,
                                   double rel_tol) {
    RankDiagnostics d;
    const double sigma_max = sigma.empty() ? 0.0 : sigma.front();
    d.tolerance = rel_tol * static_cast<double>(std::max(rows, cols)) * sigma_max;
    d.rank = 0;
    for (double s : sigma) {
        if (s > d.tolerance) {
            ++d.rank;
        }
    }
    d.nullity = cols - d.rank;
    if (d.rank > 0 && d.rank < sigma.size() && sigma[d.rank] > 0.0) {
        d.gap_ratio = sigma[d.rank - 1] / sigma[d.rank];
    }
    d.singular_values = std::move(sigma);
    return d;
}

} // namespace

// ---------------------------------------------------------------------------
// Matrix exponential
// ---------------------------------------------------------------------------

DenseMatrix mat_exp(const DenseMatrix& a, double accuracy_target) {
    if (a.rows() != a.cols()) {
        throw DimensionError("mat_exp: matrix must be square");
    }
    if (!a.all_finite()) {
        throw std::invalid_argument("mat_exp: entries must be finite");
    }
    if (!(accuracy_target > 0.0)) {
        throw std::invalid_argument("mat_exp: accuracy_target must be positive");
    }
    if (accuracy_target < 1e-15) {
        throw std::invalid_argument("mat_exp: accuracy_target below achievable precision (1e-15)");
    }

    const std::size_t n = a.rows();
    // Degree-13 diagonal Pade coefficients and its validity radius in the
    // 1-norm (Higham's theta_13).
    static const double kB[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                670442572800.0,      33522128640.0,       1323241920.0,
                                40840800.0,          960960.0,            16380.0,
                                182.0,               1.0};
    constexpr double kTheta13 = 5.371920351148152;

    const double norm = a.one_norm();
    int squarings = 0;
    if (norm > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    }
    DenseMatrix as = a;
    if (squarings > 0) {
        as *= std::ldexp(1.0, -squarings);
    }

    const DenseMatrix ident = DenseMatrix::identity(n);
    const DenseMatrix a2 = as * as;
    const DenseMatrix a4 = a2 * a2;
    const DenseMatrix a6 = a2 * a4;

    DenseMatrix u_inner = kB[13] * a6 + kB[11] * a4 + kB[9] * a2;
    DenseMatrix u = as * (a6 * u_inner + kB[7] * a6 + kB[5] * a4 + kB[3] * a2 + kB[1] * ident);
    DenseMatrix v_inner = kB[12] * a6 + kB[10] * a4 + kB[8] * a2;
    DenseMatrix v = a6 * v_inner + kB[6] * a6 + kB[4] * a4 + kB[2] * a2 + kB[0] * ident;

    // exp(as) ~ (V - U)^{-1} (V + U)
    DenseMatrix numer = v + u;
    DenseMatrix denom = v - u;
    DenseMatrix result = lu_solve(lu_factor(std::move(denom)), numer);
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Singular values / rank
// ---------------------------------------------------------------------------

std::vector<double> singular_values(const DenseMatrix& a) {
    if (!a.all_finite()) {
        throw std::invalid_argument("singular_values: entries must be finite");
    }
    // One-sided Jacobi prefers tall matrices; singular values are invariant
    // under transposition.
    if (a.rows() < a.cols()) {
        return jacobi_svd(a.transpose()).sigma;
    }
    return jacobi_svd(a).sigma;
}

RankDiagnostics numerical_rank(const DenseMatrix& a, double rel_tol) {
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("numerical_rank: rel_tol must be positive");
    }
    return rank_from_spectrum(singular_values(a), a.rows(), a.cols(), rel_tol);
}

// ---------------------------------------------------------------------------
// Characteristic polynomial (Faddeev-LeVerrier)
// ---------------------------------------------------------------------------

std::vector<double> char_poly(const DenseMatrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("char_poly: matrix must be square");
    }
    const std::size_t m = a.rows();
    std::vector<double> c(m + 1, 0.0);
    c[m] = 1.0;
    DenseMatrix work = DenseMatrix::identity(m); // M_0
    for (std::size_t k = 1; k <= m; ++k) {
        work = a * work;
        double trace = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            trace += work(i, i);
        }
        const double ck = -trace / static_cast<double>(k);
        c[m - k] = ck;
        for (std::size_t i = 0; i < m; ++i) {
            work(i, i) += ck;
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Minimum-norm least squares
// ---------------------------------------------------------------------------

MinNormSolution min_norm_solve(const DenseMatrix& a, const DenseMatrix& b, double rel_tol) {
    if (b.cols() != 1) {
        throw DimensionError("min_norm_solve: right-hand side must be a column vector");
    }
    if (b.rows() != a.rows()) {
        throw DimensionError("min_norm_solve: right-hand side has " + std::to_string(b.rows()) +
                             " rows, matrix has " + std::to_string(a.rows()));
    }
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("min_norm_solve: rel_tol must be positive");
    }

    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    // Work on a padded copy when A is wide so V spans all of column space.
    DenseMatrix work = a;
    DenseMatrix rhs = b;
    if (rows < cols) {
        DenseMatrix padded(cols, cols);
        padded.set_block(0, 0, a);
        work = std::move(padded);
        DenseMatrix prhs(cols, 1);
        prhs.set_block(0, 0, b);
        rhs = std::move(prhs);
    }

    JacobiSvd svd = jacobi_svd(work);
    MinNormSolution out;
    out.rank = rank_from_spectrum(svd.sigma, rows, cols, rel_tol);

    // x = sum over retained modes of v_j * (u_j . b) / sigma_j, where u_j is
    // the j-th column of the rotated matrix divided by sigma_j. Recompute
    // u_j . b directly as (A v_j) . b / sigma_j to avoid storing U.
    DenseMatrix x(cols, 1);
    for (std::size_t j = 0; j < out.rank.rank; ++j) {
        const double sigma = svd.sigma[j];
        // w = A * v_j (use the padded work matrix so shapes always agree)
        double dot = 0.0;
        for (std::size_t i = 0; i < work.rows(); ++i) {
            double wi = 0.0;
            for (std::size_t k = 0; k < cols; ++k) {
                wi += work(i, k) * svd.v(k, j);
            }
            dot += wi * rhs(i, 0);
        }
        const double coeff = dot / (sigma * sigma);
        for (std::size_t k = 0; k < cols; ++k) {
            x(k, 0) += coeff * svd.v(k, j);
        }
    }

    DenseMatrix residual = a * x - b;
    out.solution = std::move(x);
    out.residual_norm = residual.frobenius_norm();
    for (std::size_t j = out.rank.rank; j < cols; ++j) {
        DenseMatrix col(cols, 1);
        for (std::size_t k = 0; k < cols; ++k) {
            col(k, 0) = svd.v(k, j);
        }
        out.nullspace_basis.push_back(std::move(col));
    }
    return out;
}

} // namespace ddlyap
