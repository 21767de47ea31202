// Hermitian eigensolver: cyclic Jacobi with complex Givens rotations.
//
// Sized for the Hilbert dimensions this library works at (everything the
// scenario layer diagonalises is small or sparse), so no attempt is made
// at blocking or parallel sweeps.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qinfo/complex_matrix.hpp"

namespace qinfo {

inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kJacobiOffDiagonalThreshold = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

// Full real spectrum of a Hermitian matrix. Eigenvalues are sorted
// descending; eigenvectors are the matching orthonormal columns.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

namespace detail {

inline double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q)
            s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q). U has the 2x2 block
// [[c, -conj(s)], [s, c]] on rows/columns (p,q); applies A <- U^H A U
// and accumulates V <- V U.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const complex b = a(p, q);
    const double ab = std::abs(b);
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (aqq - app) / (2.0 * ab);
    const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(tau * tau + 1.0))
                                  : 1.0 / (-tau + std::sqrt(tau * tau + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const complex s = (t * c) * std::conj(b / ab);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) { // A <- A U
        const complex akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp + s * akq;
        a(k, q) = -std::conj(s) * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) { // A <- U^H A
        const complex apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk + std::conj(s) * aqk;
        a(q, k) = -s * apk + c * aqk;
    }
    a(p, q) = a(q, p) = complex{0.0, 0.0};
    a(p, p) = complex{a(p, p).real(), 0.0};
    a(q, q) = complex{a(q, q).real(), 0.0};

    for (std::size_t k = 0; k < n; ++k) {
        const complex vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp + s * vkq;
        v(k, q) = -std::conj(s) * vkp + c * vkq;
    }
}

// Fix each eigenvector's free global phase: the largest-magnitude entry is
// made real positive. Keeps golden tests reproducible.
inline void canonicalize_phases(ComplexMatrix& v) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
        std::size_t pivot = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < v.rows(); ++k) {
            const double mag = std::abs(v(k, j));
            if (mag > best + 1e-15) {
                best = mag;
                pivot = k;
            }
        }
        const complex z = v(pivot, j);
        if (std::abs(z) > 0.0) {
            const complex phase = std::conj(z) / std::abs(z);
            for (std::size_t k = 0; k < v.rows(); ++k) v(k, j) *= phase;
        }
    }
}

inline bool column_lex_less(const ComplexMatrix& v, std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < v.rows(); ++k) {
        if (v(k, a).real() != v(k, b).real()) return v(k, a).real() < v(k, b).real();
        if (v(k, a).imag() != v(k, b).imag()) return v(k, a).imag() < v(k, b).imag();
    }
    return false;
}

} // namespace detail

inline Spectrum hermitian_eigensystem(const ComplexMatrix& m) {
    if (!m.square())
        throw std::invalid_argument("hermitian_eigensystem: matrix is not square");
    if (hermiticity_defect(m) > kHermiticityTolerance)
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian within 1e-10");

    const std::size_t n = m.rows();
    // Symmetrize away float noise from kron / partial-trace chains.
    ComplexMatrix a = (m + adjoint(m)) * complex{0.5, 0.0};
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double tol = kJacobiOffDiagonalThreshold * std::max(1.0, a.frobenius_norm());
    const double skip = tol / static_cast<double>(n);

    bool converged = (n == 1);
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        if (detail::offdiag_norm(a) <= tol) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > skip) detail::jacobi_rotate(a, v, p, q);
    }
    if (!converged && detail::offdiag_norm(a) > tol)
        throw std::runtime_error("hermitian_eigensystem: no convergence within 100 sweeps");

    detail::canonicalize_phases(v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const double li = a(i, i).real(), lj = a(j, j).real();
        if (li != lj) return li > lj;
        return detail::column_lex_less(v, i, j);
    });

    Spectrum spec{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        spec.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t k = 0; k < n; ++k) spec.eigenvectors(k, j) = v(k, order[j]);
    }
    return spec;
}

} // namespace qinfo
