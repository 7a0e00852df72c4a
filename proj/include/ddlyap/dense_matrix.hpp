#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ddlyap/errors.hpp"

namespace ddlyap {

// Real dense matrix, the universal carrier for all linear algebra in this
// project. Entries are stored row-major; the column-major semantics of vec()
// live in the index mapping, not in the physical layout. Column vectors are
// matrices with cols == 1.
class DenseMatrix {
public:
    DenseMatrix() = default;

    // rows x cols, zero-initialized.
    DenseMatrix(std::size_t rows, std::size_t cols);

    // Construction from nested row lists: DenseMatrix{{1, 2}, {3, 4}}.
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix zeros(std::size_t rows, std::size_t cols);
    static DenseMatrix column(const std::vector<double>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const;

    DenseMatrix transpose() const;

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(double scalar);

    // Copies `block` into this matrix with its top-left corner at (i0, j0).
    void set_block(std::size_t i0, std::size_t j0, const DenseMatrix& block);
    DenseMatrix block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const;

    double frobenius_norm() const;
    double max_abs() const;
    double one_norm() const; // max absolute column sum

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(const DenseMatrix& m);
DenseMatrix operator*(double scalar, DenseMatrix m);
DenseMatrix operator*(DenseMatrix m, double scalar);
DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs);
bool operator==(const DenseMatrix& lhs, const DenseMatrix& rhs);

// Euclidean norm of a column vector (cols == 1 enforced).
double vector_norm(const DenseMatrix& v);

} // namespace ddlyap
