// Dense complex matrices: the substrate for states, operators and bases.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinfo {

using complex = std::complex<double>;

// Hard cap on any matrix axis. Multi-qubit constructions (kron chains,
// tensor products) must stay within 2^12 per dimension.
inline constexpr std::size_t kDimensionBudget = std::size_t{1} << 12;

class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(check_shape(rows, cols), complex{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != check_shape(rows, cols))
            throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
        for (const complex& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<complex>& entries() const { return entries_; }

    ComplexMatrix operator+(const ComplexMatrix& other) const {
        require_same_shape(other, "operator+");
        ComplexMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + other.entries_[i];
        return out;
    }

    ComplexMatrix operator-(const ComplexMatrix& other) const {
        require_same_shape(other, "operator-");
        ComplexMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - other.entries_[i];
        return out;
    }

    ComplexMatrix operator*(complex scale) const {
        ComplexMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scale;
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const complex& z : entries_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const complex& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

private:
    static std::size_t check_shape(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: zero-sized axis");
        if (rows > kDimensionBudget || cols > kDimensionBudget)
            throw std::length_error("ComplexMatrix: dimension budget (2^12) exceeded");
        return rows * cols;
    }

    void require_same_shape(const ComplexMatrix& other, const char* op) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument(std::string("ComplexMatrix: shape mismatch in ") + op);
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<complex> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions disagree");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex aik = a(i, k);
            if (aik == complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

// Kronecker product, blockwise a_ij * b. Result axes multiply, so this is
// where the dimension budget usually trips.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() > kDimensionBudget / b.rows() || a.cols() > kDimensionBudget / b.cols())
        throw std::length_error("kron: dimension budget (2^12) exceeded");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const complex aij = a(i1, j1);
            if (aij == complex{}) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    out(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
        }
    return out;
}

inline complex trace(const ComplexMatrix& m) {
    if (!m.square())
        throw std::invalid_argument("trace: matrix is not square");
    complex t{0.0, 0.0};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(j, i) = std::conj(m(i, j));
    return out;
}

// Largest deviation from m = m^dagger.
inline double hermiticity_defect(const ComplexMatrix& m) {
    if (!m.square())
        throw std::invalid_argument("hermiticity_defect: matrix is not square");
    double defect = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
    return defect;
}

} // namespace qinfo
