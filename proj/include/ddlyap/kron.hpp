#pragma once

#include "ddlyap/dense_matrix.hpp"

namespace ddlyap {

// Column-stacking operator: vec(M) is the (rows*cols) x 1 vector holding the
// columns of M one below another. Defined by index mapping, independent of the
// (row-major) storage order of DenseMatrix.
DenseMatrix vec(const DenseMatrix& m);

// Inverse of vec: unvec(vec(M), M.rows, M.cols) == M exactly.
DenseMatrix unvec(const DenseMatrix& v, std::size_t rows, std::size_t cols);

// Kronecker product: block (i, j) of the result equals A(i, j) * B.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

// The n^2 x n^2 commutation matrix T with T * vec(A) = vec(A^T) for every
// n x n matrix A. T is a symmetric involutive permutation (T = T^T, T*T = I).
DenseMatrix commutation_matrix(std::size_t n);

} // namespace ddlyap
