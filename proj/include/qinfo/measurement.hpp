// Measurement bases and the Born rule.
//
// A PMF remembers the basis that produced it (basis_id); realized_density
// and pmf_induced_state refuse a mismatched basis, so outcomes of
// incompatible observables can never be mixed into one ensemble.
#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "qinfo/complex_matrix.hpp"
#include "qinfo/density_matrix.hpp"
#include "qinfo/state_vector.hpp"

namespace qinfo {

inline constexpr double kProbabilityClamp = 1e-12;

namespace detail {

inline std::string format_angle_id(double theta) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", theta);
    return buf;
}

} // namespace detail

class MeasurementBasis {
public:
    // `vectors` holds the basis kets as columns; `dims` declares the
    // product structure of the underlying space (one entry per axis).
    MeasurementBasis(std::string id, std::vector<std::string> labels, ComplexMatrix vectors,
                     std::vector<std::size_t> dims)
        : id_(std::move(id)), labels_(std::move(labels)), vectors_(std::move(vectors)),
          dims_(std::move(dims)) {
        if (!vectors_.square() || labels_.size() != vectors_.cols())
            throw std::invalid_argument("MeasurementBasis: label count must equal dimension");
        std::size_t product = 1;
        for (std::size_t d : dims_) product *= d;
        if (product != vectors_.rows())
            throw std::invalid_argument("MeasurementBasis: dims product does not match dimension");
        std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size())
            throw std::invalid_argument("MeasurementBasis: duplicate outcome labels");
        const ComplexMatrix gram = adjoint(vectors_) * vectors_;
        if ((gram - ComplexMatrix::identity(vectors_.cols())).max_abs() > kNormTolerance)
            throw std::invalid_argument("MeasurementBasis: columns are not orthonormal within 1e-10");
    }

    const std::string& id() const { return id_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const ComplexMatrix& vectors() const { return vectors_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return vectors_.rows(); }

private:
    std::string id_;
    std::vector<std::string> labels_;
    ComplexMatrix vectors_;
    std::vector<std::size_t> dims_;
};

class PMF {
public:
    PMF(std::vector<std::string> labels, std::vector<double> probs, std::string basis_id)
        : labels_(std::move(labels)), probs_(std::move(probs)), basis_id_(std::move(basis_id)) {
        if (labels_.size() != probs_.size())
            throw std::invalid_argument("PMF: label/probability count mismatch");
        double sum = 0.0;
        for (double& p : probs_) {
            if (p < -kProbabilityClamp)
                throw std::invalid_argument("PMF: negative probability");
            if (p < kProbabilityClamp) p = 0.0; // avoids 0 ln 0 downstream
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-10)
            throw std::invalid_argument("PMF: probabilities do not sum to 1");
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& probs() const { return probs_; }
    const std::string& basis_id() const { return basis_id_; }
    std::size_t size() const { return probs_.size(); }

private:
    std::vector<std::string> labels_;
    std::vector<double> probs_;
    std::string basis_id_;
};

// EOM rotations at the two Bell-test stations, in radians.
struct BellSetting {
    double alice_angle = 0.0;
    double bob_angle = 0.0;
};

// Computational basis over m qubits; labels are bit strings, or H/V
// strings for the photon-polarization reading of the same basis.
inline MeasurementBasis cb_basis(std::size_t m, bool hv_labels = false) {
    if (m < 1)
        throw std::invalid_argument("cb_basis: need at least 1 qubit");
    const std::size_t n = std::size_t{1} << m;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string label;
        for (std::size_t b = m; b-- > 0;) {
            const bool one = (i >> b) & 1;
            label += hv_labels ? (one ? 'V' : 'H') : (one ? '1' : '0');
        }
        labels[i] = label;
    }
    std::string id = "cb:" + std::to_string(m) + (hv_labels ? ":hv" : "");
    return MeasurementBasis(std::move(id), std::move(labels), ComplexMatrix::identity(n),
                            std::vector<std::size_t>(m, 2));
}

enum class PolarizationVariant { Primed, DoublePrimed };

// Rotated polarization bases:
//   primed        |H'>  = cos(t/2)|H> - sin(t/2)|V>,  |V'>  = sin(t/2)|H> + cos(t/2)|V>
//   double-primed |H''> = cos(t/2)|H> + sin(t/2)|V>,  |V''> = -sin(t/2)|H> + cos(t/2)|V>
// At t = 0 both collapse to the computational basis.
inline MeasurementBasis polarization_basis(double theta, PolarizationVariant variant) {
    if (theta == 0.0)
        return cb_basis(1, true);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const bool primed = variant == PolarizationVariant::Primed;
    ComplexMatrix vectors(2, 2);
    vectors(0, 0) = c;
    vectors(1, 0) = primed ? -s : s;
    vectors(0, 1) = primed ? s : -s;
    vectors(1, 1) = c;
    const char* mark = primed ? "'" : "''";
    std::vector<std::string> labels{std::string("H") + mark, std::string("V") + mark};
    std::string id = std::string(primed ? "primed:" : "dprimed:") + detail::format_angle_id(theta);
    return MeasurementBasis(std::move(id), std::move(labels), std::move(vectors), {2});
}

inline MeasurementBasis tensor_basis(const MeasurementBasis& a, const MeasurementBasis& b) {
    std::vector<std::string> labels;
    labels.reserve(a.dim() * b.dim());
    for (const std::string& la : a.labels())
        for (const std::string& lb : b.labels())
            labels.push_back(la + lb);
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return MeasurementBasis("(" + a.id() + ")x(" + b.id() + ")", std::move(labels),
                            kron(a.vectors(), b.vectors()), std::move(dims));
}

// The four Bell states as an orthonormal basis of the 2-qubit space.
inline MeasurementBasis bell_basis() {
    ComplexMatrix vectors(4, 4);
    const StateVector kets[4] = {make_bell(BellKind::PhiPlus), make_bell(BellKind::PhiMinus),
                                 make_bell(BellKind::PsiPlus), make_bell(BellKind::PsiMinus)};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i)
            vectors(i, j) = kets[j][i];
    return MeasurementBasis("bell-basis", {"Phi+", "Phi-", "Psi+", "Psi-"}, std::move(vectors),
                            {2, 2});
}

// P(chi_a) = |<chi_a|Psi>|^2
inline PMF born_pmf(const StateVector& psi, const MeasurementBasis& basis) {
    if (psi.dim() != basis.dim())
        throw std::invalid_argument("born_pmf: dimension mismatch");
    std::vector<double> probs(basis.dim());
    for (std::size_t a = 0; a < basis.dim(); ++a) {
        complex amp{0.0, 0.0};
        for (std::size_t i = 0; i < basis.dim(); ++i)
            amp += std::conj(basis.vectors()(i, a)) * psi[i];
        probs[a] = std::norm(amp);
    }
    return PMF(basis.labels(), std::move(probs), basis.id());
}

// P(chi_a) = <chi_a|rho|chi_a>
inline PMF born_pmf_mixed(const DensityMatrix& rho, const MeasurementBasis& basis) {
    if (rho.dim() != basis.dim())
        throw std::invalid_argument("born_pmf_mixed: dimension mismatch");
    std::vector<double> probs(basis.dim());
    for (std::size_t a = 0; a < basis.dim(); ++a) {
        complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < basis.dim(); ++i) {
            complex row{0.0, 0.0};
            for (std::size_t j = 0; j < basis.dim(); ++j)
                row += rho.matrix()(i, j) * basis.vectors()(j, a);
            acc += std::conj(basis.vectors()(i, a)) * row;
        }
        probs[a] = acc.real();
    }
    return PMF(basis.labels(), std::move(probs), basis.id());
}

namespace detail {

inline void require_matching_basis(const PMF& pmf, const MeasurementBasis& basis, const char* who) {
    if (pmf.basis_id() != basis.id() || pmf.size() != basis.dim())
        throw std::invalid_argument(std::string(who) + ": PMF was not produced from this basis");
}

} // namespace detail

// The post-measurement (collapsed, unread) ensemble:
// rho = sum_a |chi_a> p_a <chi_a|
inline DensityMatrix realized_density(const PMF& pmf, const MeasurementBasis& basis) {
    detail::require_matching_basis(pmf, basis, "realized_density");
    const std::size_t n = basis.dim();
    ComplexMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        const double p = pmf.probs()[a];
        if (p == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const complex vi = basis.vectors()(i, a);
            if (vi == complex{}) continue;
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) += p * vi * std::conj(basis.vectors()(j, a));
        }
    }
    return validate_density(m, basis.dims());
}

// sum_a sqrt(p_a) e^{i phi_a} |chi_a>; reproduces the PMF under born_pmf,
// whatever the phases. The phases themselves are unobservable.
inline StateVector pmf_induced_state(const PMF& pmf, const std::vector<double>& phases,
                                     const MeasurementBasis& basis) {
    detail::require_matching_basis(pmf, basis, "pmf_induced_state");
    if (phases.size() != pmf.size())
        throw std::invalid_argument("pmf_induced_state: phase count does not match outcome count");
    const std::size_t n = basis.dim();
    std::size_t qubits = 0;
    while ((std::size_t{1} << qubits) < n) ++qubits;
    if ((std::size_t{1} << qubits) != n)
        throw std::invalid_argument("pmf_induced_state: basis dimension is not a power of 2");
    std::vector<complex> amps(n, complex{0.0, 0.0});
    for (std::size_t a = 0; a < n; ++a) {
        const complex coeff = std::sqrt(pmf.probs()[a]) * std::polar(1.0, phases[a]);
        if (coeff == complex{}) continue;
        for (std::size_t i = 0; i < n; ++i)
            amps[i] += coeff * basis.vectors()(i, a);
    }
    return StateVector(qubits, std::move(amps));
}

namespace detail {

// Splits a joint outcome label into per-axis tokens: one alphanumeric
// character plus any trailing primes, e.g. "H'V''" -> {H', V''}.
inline std::vector<std::string> tokenize_label(const std::string& label) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < label.size()) {
        if (!std::isalnum(static_cast<unsigned char>(label[i])))
            throw std::invalid_argument("marginal_pmf: malformed outcome label '" + label + "'");
        std::string token(1, label[i++]);
        while (i < label.size() && label[i] == '\'') token += label[i++];
        tokens.push_back(std::move(token));
    }
    return tokens;
}

} // namespace detail

// Sums a joint PMF down to the marginal of one subsystem axis.
inline PMF marginal_pmf(const PMF& joint, std::size_t keep, const std::vector<std::size_t>& dims) {
    std::size_t product = 1;
    for (std::size_t d : dims) product *= d;
    if (product != joint.size())
        throw std::invalid_argument("marginal_pmf: dims product does not match outcome count");
    if (keep >= dims.size())
        throw std::invalid_argument("marginal_pmf: subsystem index out of range");

    std::size_t stride = 1;
    for (std::size_t i = dims.size(); i-- > keep + 1;) stride *= dims[i];

    std::vector<double> probs(dims[keep], 0.0);
    std::vector<std::string> labels(dims[keep]);
    for (std::size_t idx = 0; idx < joint.size(); ++idx) {
        const std::size_t k = (idx / stride) % dims[keep];
        probs[k] += joint.probs()[idx];
        const std::vector<std::string> tokens = detail::tokenize_label(joint.labels()[idx]);
        if (tokens.size() != dims.size())
            throw std::invalid_argument("marginal_pmf: malformed outcome label '" +
                                        joint.labels()[idx] + "'");
        if (labels[k].empty())
            labels[k] = tokens[keep];
        else if (labels[k] != tokens[keep])
            throw std::invalid_argument("marginal_pmf: inconsistent labels along kept axis");
    }
    std::string basis_id = "marginal:" + std::to_string(keep) + ":(" + joint.basis_id() + ")";
    return PMF(std::move(labels), std::move(probs), std::move(basis_id));
}

// Joint detector basis of a Bell test. Alice reads the primed basis at
// her EOM angle; Bob's station at angle t uses the double-primed basis
// of -t (the double-primed convention bakes the sign flip into the
// basis). At angle 0 either station reads plain H/V.
inline MeasurementBasis bell_setting_basis(const BellSetting& setting) {
    if (!std::isfinite(setting.alice_angle) || !std::isfinite(setting.bob_angle))
        throw std::invalid_argument("bell_setting_basis: angles must be finite");
    const MeasurementBasis alice = polarization_basis(setting.alice_angle, PolarizationVariant::Primed);
    const MeasurementBasis bob = polarization_basis(-setting.bob_angle, PolarizationVariant::DoublePrimed);
    return tensor_basis(alice, bob);
}

// Joint 4-outcome PMF of a Bell test, ordered (HH, HV, VH, VV) with the
// first letter naming Alice's detector.
inline PMF bell_joint_pmf(const StateVector& state, const BellSetting& setting) {
    if (state.qubit_count() != 2)
        throw std::invalid_argument("bell_joint_pmf: state must have exactly 2 qubits");
    return born_pmf(state, bell_setting_basis(setting));
}

} // namespace qinfo
