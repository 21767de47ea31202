// Pure qubit states and the 2x2 gate set used to prepare them.
//
// Index convention: the leftmost ket symbol is qubit 0 and the most
// significant bit of the basis index, so |001> puts qubit 2 in |1> and
// sits at index 1 of 8.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qinfo/complex_matrix.hpp"

namespace qinfo {

inline constexpr double kNormTolerance = 1e-10;

class StateVector {
public:
    StateVector(std::size_t qubit_count, std::vector<complex> amplitudes)
        : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {
        if (qubit_count_ > 12)
            throw std::length_error("StateVector: dimension budget (2^12) exceeded");
        if (amplitudes_.size() != (std::size_t{1} << qubit_count_))
            throw std::invalid_argument("StateVector: amplitude count is not 2^qubit_count");
        double norm2 = 0.0;
        for (const complex& c : amplitudes_) norm2 += std::norm(c);
        if (std::abs(norm2 - 1.0) > kNormTolerance)
            throw std::invalid_argument("StateVector: state is not normalized");
    }

    std::size_t dim() const { return amplitudes_.size(); }
    std::size_t qubit_count() const { return qubit_count_; }
    const std::vector<complex>& amplitudes() const { return amplitudes_; }
    const complex& operator[](std::size_t i) const { return amplitudes_[i]; }

private:
    std::size_t qubit_count_;
    std::vector<complex> amplitudes_;
};

inline complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("inner_product: dimension mismatch");
    complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

inline StateVector tensor_states(const StateVector& a, const StateVector& b) {
    std::vector<complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amps[i * b.dim() + j] = a[i] * b[j];
    return StateVector(a.qubit_count() + b.qubit_count(), std::move(amps));
}

enum class GateName { H, X, U3 };

class Gate {
public:
    static Gate h() {
        const double r = 1.0 / std::sqrt(2.0);
        return Gate(GateName::H, {0.0, 0.0, 0.0},
                    ComplexMatrix(2, 2, {r, r, r, -r}));
    }

    static Gate x() {
        return Gate(GateName::X, {0.0, 0.0, 0.0},
                    ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}));
    }

    // U3(theta, phi, lambda) =
    //   [ cos(theta/2)              -e^{i lambda} sin(theta/2)      ]
    //   [ e^{i phi} sin(theta/2)     e^{i(phi+lambda)} cos(theta/2) ]
    static Gate u3(double theta, double phi, double lambda = 0.0) {
        const double ct = std::cos(theta / 2.0);
        const double st = std::sin(theta / 2.0);
        const complex eip = std::polar(1.0, phi);
        const complex eil = std::polar(1.0, lambda);
        return Gate(GateName::U3, {theta, phi, lambda},
                    ComplexMatrix(2, 2, {complex{ct, 0.0}, -eil * st, eip * st, eip * eil * ct}));
    }

    GateName name() const { return name_; }
    double param(std::size_t i) const { return params_[i]; }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    Gate(GateName name, std::array<double, 3> params, ComplexMatrix matrix)
        : name_(name), params_(params), matrix_(std::move(matrix)) {
        const ComplexMatrix gram = adjoint(matrix_) * matrix_;
        if ((gram - ComplexMatrix::identity(2)).max_abs() > kNormTolerance)
            throw std::invalid_argument("Gate: matrix is not unitary");
    }

    GateName name_;
    std::array<double, 3> params_;
    ComplexMatrix matrix_;
};

inline StateVector apply_gate(const Gate& g, std::size_t target, const StateVector& psi) {
    if (target >= psi.qubit_count())
        throw std::invalid_argument("apply_gate: target qubit out of range");
    const std::size_t stride = std::size_t{1} << (psi.qubit_count() - 1 - target);
    const ComplexMatrix& u = g.matrix();
    std::vector<complex> amps = psi.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & stride) continue;
        const complex a0 = amps[i];
        const complex a1 = amps[i | stride];
        amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[i | stride] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return StateVector(psi.qubit_count(), std::move(amps));
}

// |b_0 b_1 ... b_{m-1}> as a standard-basis vector.
inline StateVector make_cb_state(const std::vector<int>& bits) {
    if (bits.empty())
        throw std::invalid_argument("make_cb_state: empty bit list");
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1)
            throw std::invalid_argument("make_cb_state: bits must be 0 or 1");
        index = index * 2 + static_cast<std::size_t>(b);
    }
    std::vector<complex> amps(std::size_t{1} << bits.size(), complex{0.0, 0.0});
    amps[index] = 1.0;
    return StateVector(bits.size(), std::move(amps));
}

// cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>
inline StateVector make_u3_state(double theta, double phi) {
    return apply_gate(Gate::u3(theta, phi), 0, make_cb_state({0}));
}

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline StateVector make_bell(BellKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<complex> amps(4, complex{0.0, 0.0});
    switch (kind) {
    case BellKind::PhiPlus:  amps[0] = r; amps[3] = r;  break;
    case BellKind::PhiMinus: amps[0] = r; amps[3] = -r; break;
    case BellKind::PsiPlus:  amps[1] = r; amps[2] = r;  break;
    case BellKind::PsiMinus: amps[1] = r; amps[2] = -r; break;
    }
    return StateVector(2, std::move(amps));
}

inline StateVector make_ghz(std::size_t m) {
    if (m < 2)
        throw std::invalid_argument("make_ghz: need at least 2 qubits");
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<complex> amps(std::size_t{1} << m, complex{0.0, 0.0});
    amps.front() = r;
    amps.back() = r;
    return StateVector(m, std::move(amps));
}

// Equal superposition of the m single-excitation basis states.
inline StateVector make_w(std::size_t m) {
    if (m < 2)
        throw std::invalid_argument("make_w: need at least 2 qubits");
    const double r = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<complex> amps(std::size_t{1} << m, complex{0.0, 0.0});
    for (std::size_t k = 0; k < m; ++k)
        amps[std::size_t{1} << k] = r;
    return StateVector(m, std::move(amps));
}

} // namespace qinfo
