#include "ddlyap/dense_matrix.hpp"

#include <cmath>
#include <string>

namespace ddlyap {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()) + " do not match");
    }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("DenseMatrix: dimensions must be positive");
    }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("DenseMatrix: dimensions must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("DenseMatrix: ragged initializer rows");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::zeros(std::size_t rows, std::size_t cols) { return DenseMatrix(rows, cols); }

DenseMatrix DenseMatrix::column(const std::vector<double>& entries) {
    DenseMatrix m(entries.size(), 1);
    m.data_ = entries;
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double x : data_) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double scalar) {
    for (double& x : data_) {
        x *= scalar;
    }
    return *this;
}

void DenseMatrix::set_block(std::size_t i0, std::size_t j0, const DenseMatrix& block) {
    if (i0 + block.rows_ > rows_ || j0 + block.cols_ > cols_) {
        throw DimensionError("set_block: block exceeds target bounds");
    }
    for (std::size_t i = 0; i < block.rows_; ++i) {
        for (std::size_t j = 0; j < block.cols_; ++j) {
            (*this)(i0 + i, j0 + j) = block(i, j);
        }
    }
}

DenseMatrix DenseMatrix::block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const {
    if (i0 + rows > rows_ || j0 + cols > cols_) {
        throw DimensionError("block: requested block exceeds source bounds");
    }
    DenseMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out(i, j) = (*this)(i0 + i, j0 + j);
        }
    }
    return out;
}

double DenseMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (double x : data_) {
        sum += x * x;
    }
    return std::sqrt(sum);
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double DenseMatrix::one_norm() const {
    double m = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
        double colsum = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            colsum += std::abs((*this)(i, j));
        }
        m = std::max(m, colsum);
    }
    return m;
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) {
    lhs += rhs;
    return lhs;
}

DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) {
    lhs -= rhs;
    return lhs;
}

DenseMatrix operator-(const DenseMatrix& m) {
    DenseMatrix out = m;
    out *= -1.0;
    return out;
}

DenseMatrix operator*(double scalar, DenseMatrix m) {
    m *= scalar;
    return m;
}

DenseMatrix operator*(DenseMatrix m, double scalar) {
    m *= scalar;
    return m;
}

DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw DimensionError("operator*: inner dimensions " + std::to_string(lhs.cols()) + " and " +
                             std::to_string(rhs.rows()) + " do not match");
    }
    DenseMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const double a = lhs(i, k);
            if (a == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols(); ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

bool operator==(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    return lhs.same_shape(rhs) && lhs.data() == rhs.data();
}

double vector_norm(const DenseMatrix& v) {
    if (v.cols() != 1) {
        throw DimensionError("vector_norm: expected a column vector");
    }
    return v.frobenius_norm();
}

} // namespace ddlyap
