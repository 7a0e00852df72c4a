#include "ddlyap/kron.hpp"

#include <string>

namespace ddlyap {

DenseMatrix vec(const DenseMatrix& m) {
    DenseMatrix v(m.rows() * m.cols(), 1);
    std::size_t k = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            v(k++, 0) = m(i, j);
        }
    }
    return v;
}

DenseMatrix unvec(const DenseMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1) {
        throw DimensionError("unvec: input must be a column vector");
    }
    if (v.rows() != rows * cols) {
        throw DimensionError("unvec: vector of length " + std::to_string(v.rows()) +
                             " cannot fill a " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " matrix");
    }
    DenseMatrix m(rows, cols);
    std::size_t k = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            m(i, j) = v(k++, 0);
        }
    }
    return m;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const double scale = a(ia, ja);
            if (scale == 0.0) {
                continue;
            }
            for (std::size_t ib = 0; ib < b.rows(); ++ib) {
                for (std::size_t jb = 0; jb < b.cols(); ++jb) {
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = scale * b(ib, jb);
                }
            }
        }
    }
    return out;
}

DenseMatrix commutation_matrix(std::size_t n) {
    if (n == 0) {
        throw DimensionError("commutation_matrix: n must be positive");
    }
    DenseMatrix t(n * n, n * n);
    // vec(A) carries A(r, c) at position c*n + r; vec(A^T) wants it at r*n + c.
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            t(r * n + c, c * n + r) = 1.0;
        }
    }
    return t;
}

} // namespace ddlyap
