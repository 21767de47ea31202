// Scalar information quantities: von Neumann and Shannon entropy,
// information retrievability iR = e^{-S} (2^{-S} in base-2 units),
// information loss iL = 1 - iR, polar bias and mutual quantum entropy.
//
// Entropies are always computed from the eigenvalue spectrum, never from
// matrix logarithms.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qinfo/density_matrix.hpp"
#include "qinfo/measurement.hpp"

namespace qinfo {

enum class LogBase { Natural, Two };

namespace detail {

inline double log_in_base(double x, LogBase base) {
    return base == LogBase::Natural ? std::log(x) : std::log2(x);
}

inline double exp_in_base(double x, LogBase base) {
    return base == LogBase::Natural ? std::exp(x) : std::exp2(x);
}

// -sum p log p over a clamped probability list; 0 log 0 is 0 by the
// usual limit. Eigenvalues in [-1e-10, 0) count as clamps.
inline double entropy_of_probs(const std::vector<double>& probs, LogBase base,
                               std::size_t* clamp_count) {
    double s = 0.0;
    std::size_t clamps = 0;
    for (double p : probs) {
        if (p < 0.0) {
            ++clamps;
            continue;
        }
        if (p > 1.0) p = 1.0;
        if (p > 0.0) s -= p * log_in_base(p, base);
    }
    if (clamp_count) *clamp_count = clamps;
    return s;
}

} // namespace detail

inline double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::Natural,
                                  std::size_t* clamp_count = nullptr) {
    return detail::entropy_of_probs(rho.spectrum().eigenvalues, base, clamp_count);
}

inline double shannon_entropy(const PMF& pmf, LogBase base = LogBase::Natural) {
    return detail::entropy_of_probs(pmf.probs(), base, nullptr);
}

// iR(S) = e^{-S}; with base-2 entropies, 2^{-S}. Both give the same
// number for the same state.
inline double retrievability(double entropy, LogBase base = LogBase::Natural) {
    if (entropy < 0.0)
        throw std::invalid_argument("retrievability: negative entropy");
    return detail::exp_in_base(-entropy, base);
}

// Comparative retrievability between an initial and a final entropy.
// Values above 1 (entropy decreased) are permitted.
inline double comparative_ir(double s_final, double s_initial, LogBase base = LogBase::Natural) {
    if (s_final < 0.0 || s_initial < 0.0)
        throw std::invalid_argument("comparative_ir: negative entropy");
    return detail::exp_in_base(s_initial - s_final, base);
}

inline double info_loss(double s_final, double s_initial, LogBase base = LogBase::Natural) {
    return 1.0 - comparative_ir(s_final, s_initial, base);
}

// Comparative iR/iL with the direction of the entropy change made
// explicit, for transitions where the entropy may have gone down.
struct ComparisonReport {
    double retrievability = 1.0;
    double loss = 0.0;
    bool entropy_decreased = false;
};

inline ComparisonReport compare_entropies(double s_final, double s_initial,
                                          LogBase base = LogBase::Natural) {
    const double ir = comparative_ir(s_final, s_initial, base);
    return ComparisonReport{ir, 1.0 - ir, s_final < s_initial};
}

// beta(theta) = [cos^2(theta/2) - sin^2(theta/2)]^2 = cos^2(theta)
inline double polar_bias(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const double d = c * c - s * s;
    return d * d;
}

// S(rho_A) + S(rho_B) - S(rho_AB) over a declared bipartition.
inline double mutual_quantum_entropy(const DensityMatrix& rho_ab, LogBase base = LogBase::Natural) {
    if (rho_ab.dims().size() != 2)
        throw std::invalid_argument("mutual_quantum_entropy: state is not bipartite");
    const double s_a = von_neumann_entropy(partial_trace(rho_ab, {0}), base);
    const double s_b = von_neumann_entropy(partial_trace(rho_ab, {1}), base);
    return s_a + s_b - von_neumann_entropy(rho_ab, base);
}

// sum h_i p_i for outcome values h_i.
inline double expectation_value(const PMF& pmf, const std::vector<double>& values) {
    if (values.size() != pmf.size())
        throw std::invalid_argument("expectation_value: value count does not match outcome count");
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) acc += values[i] * pmf.probs()[i];
    return acc;
}

// The scalar bundle every scenario reports.
struct InfoReport {
    double entropy = 0.0;
    double retrievability = 1.0;
    double loss = 0.0;
    std::optional<double> bias;
    double purity = 1.0;
    LogBase base = LogBase::Natural;
};

inline InfoReport make_info_report(const DensityMatrix& rho, LogBase base = LogBase::Natural,
                                   std::optional<double> bias = std::nullopt) {
    InfoReport report;
    report.entropy = von_neumann_entropy(rho, base);
    report.retrievability = retrievability(report.entropy, base);
    report.loss = 1.0 - report.retrievability;
    report.bias = bias;
    report.purity = purity(rho);
    report.base = base;
    return report;
}

} // namespace qinfo
