// Density matrices with subsystem bookkeeping and a cached spectrum.
//
// Every DensityMatrix is built through validate_density, so Hermiticity,
// unit trace and positivity hold for all live values. The dims list
// travels with the matrix; partial_trace never needs a caller-supplied
// shape.
#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qinfo/complex_matrix.hpp"
#include "qinfo/eigen.hpp"
#include "qinfo/state_vector.hpp"

namespace qinfo {

inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kEigenvalueFloor = -1e-10;

class DensityMatrix {
public:
    const ComplexMatrix& matrix() const { return matrix_; }
    const Spectrum& spectrum() const { return spectrum_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return matrix_.rows(); }

    friend DensityMatrix validate_density(const ComplexMatrix& m, const std::vector<std::size_t>& dims);

private:
    DensityMatrix(ComplexMatrix matrix, Spectrum spectrum, std::vector<std::size_t> dims)
        : matrix_(std::move(matrix)), spectrum_(std::move(spectrum)), dims_(std::move(dims)) {}

    ComplexMatrix matrix_;
    Spectrum spectrum_;
    std::vector<std::size_t> dims_;
};

// Checks the density-matrix axioms, renormalizing a trace that is off by
// at most 1e-8 and rejecting anything worse.
inline DensityMatrix validate_density(const ComplexMatrix& m, const std::vector<std::size_t>& dims) {
    if (!m.square())
        throw std::invalid_argument("validate_density: matrix is not square");
    if (dims.empty())
        throw std::invalid_argument("validate_density: empty dims list");
    std::size_t product = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("validate_density: zero subsystem dimension");
        product *= d;
    }
    if (product != m.rows())
        throw std::invalid_argument("validate_density: dims product does not match matrix size");
    if (hermiticity_defect(m) > kHermiticityTolerance)
        throw std::invalid_argument("validate_density: matrix is not Hermitian within 1e-10");

    const complex tr = trace(m);
    if (std::abs(tr - complex{1.0, 0.0}) > kTraceTolerance)
        throw std::invalid_argument("validate_density: trace differs from 1 by more than 1e-8");
    ComplexMatrix normalized = (tr == complex{1.0, 0.0}) ? m : m * (complex{1.0, 0.0} / tr);

    Spectrum spec = hermitian_eigensystem(normalized);
    for (double lambda : spec.eigenvalues)
        if (lambda < kEigenvalueFloor)
            throw std::invalid_argument("validate_density: negative eigenvalue below -1e-10");

    return DensityMatrix(std::move(normalized), std::move(spec), dims);
}

// |psi><psi| as a rank-1 projector over one 2-dim axis per qubit.
inline DensityMatrix pure_density(const StateVector& psi) {
    const std::size_t n = psi.dim();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (psi[i] == complex{}) continue;
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = psi[i] * std::conj(psi[j]);
    }
    std::vector<std::size_t> dims(std::max<std::size_t>(psi.qubit_count(), 1), 2);
    if (psi.qubit_count() == 0) dims = {1};
    return validate_density(m, dims);
}

// Tr rho^2, from the cached spectrum.
inline double purity(const DensityMatrix& rho) {
    double p = 0.0;
    for (double lambda : rho.spectrum().eigenvalues) p += lambda * lambda;
    return p;
}

// Reduced density matrix over the kept subsystems; the traced-out axes
// are summed on the diagonal. `keep` holds subsystem indices in the
// order declared by dims().
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
    const std::vector<std::size_t>& dims = rho.dims();
    if (keep.empty())
        throw std::invalid_argument("partial_trace: keep set is empty");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t idx : keep) {
        if (idx >= dims.size())
            throw std::invalid_argument("partial_trace: subsystem index out of range");
        if (kept[idx])
            throw std::invalid_argument("partial_trace: duplicate subsystem index");
        kept[idx] = true;
    }

    // Big-endian strides: dims[0] is the most significant axis.
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;)
        stride[i - 1] = stride[i] * dims[i];

    std::vector<std::size_t> keep_axes, trace_axes;
    for (std::size_t i = 0; i < dims.size(); ++i)
        (kept[i] ? keep_axes : trace_axes).push_back(i);

    // Flatten each axis group to a base-offset table into the full index.
    auto offsets = [&](const std::vector<std::size_t>& axes) {
        std::size_t count = 1;
        for (std::size_t ax : axes) count *= dims[ax];
        std::vector<std::size_t> table(count, 0);
        for (std::size_t flat = 0; flat < count; ++flat) {
            std::size_t rem = flat, off = 0;
            for (std::size_t i = axes.size(); i-- > 0;) {
                off += (rem % dims[axes[i]]) * stride[axes[i]];
                rem /= dims[axes[i]];
            }
            table[flat] = off;
        }
        return table;
    };
    const std::vector<std::size_t> keep_off = offsets(keep_axes);
    const std::vector<std::size_t> trace_off = offsets(trace_axes);

    const std::size_t nk = keep_off.size();
    ComplexMatrix out(nk, nk);
    const ComplexMatrix& full = rho.matrix();
    for (std::size_t r = 0; r < nk; ++r)
        for (std::size_t c = 0; c < nk; ++c) {
            complex acc{0.0, 0.0};
            for (std::size_t t : trace_off)
                acc += full(keep_off[r] + t, keep_off[c] + t);
            out(r, c) = acc;
        }

    std::vector<std::size_t> out_dims;
    for (std::size_t ax : keep_axes) out_dims.push_back(dims[ax]);
    return validate_density(out, out_dims);
}

// Product state rho_a (x) rho_b with concatenated dims.
inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    ComplexMatrix m = kron(a.matrix(), b.matrix());
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return validate_density(m, dims);
}

// alpha |Psi-><Psi-| + (1 - alpha) I/4, for alpha in [-1/3, 1].
inline DensityMatrix make_werner(double alpha) {
    if (!(alpha >= -1.0 / 3.0 && alpha <= 1.0))
        throw std::invalid_argument("make_werner: alpha outside [-1/3, 1]");
    const StateVector psi_minus = make_bell(BellKind::PsiMinus);
    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j)
            m(i, j) = alpha * psi_minus[i] * std::conj(psi_minus[j]);
        m(i, i) += (1.0 - alpha) / 4.0;
    }
    return validate_density(m, {2, 2});
}

// Maximally mixed state I/2^m over m qubits.
inline DensityMatrix make_mms(std::size_t m) {
    if (m < 1)
        throw std::invalid_argument("make_mms: need at least 1 qubit");
    if (m > 12)
        throw std::length_error("make_mms: dimension budget (2^12) exceeded");
    const std::size_t n = std::size_t{1} << m;
    ComplexMatrix mat(n, n);
    for (std::size_t i = 0; i < n; ++i) mat(i, i) = 1.0 / static_cast<double>(n);
    return validate_density(mat, std::vector<std::size_t>(m, 2));
}

} // namespace qinfo
