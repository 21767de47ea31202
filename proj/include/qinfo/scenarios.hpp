// End-to-end analyses: parameter sweeps, the Bell inequality check,
// teleportation entropy accounting, GHZ/W robustness and the Werner
// family. Sweep rows are closed forms; the test suite replays each one
// through the full state -> PMF -> spectrum pipeline.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qinfo/density_matrix.hpp"
#include "qinfo/info_metrics.hpp"
#include "qinfo/measurement.hpp"
#include "qinfo/state_vector.hpp"

namespace qinfo {

struct SweepRow {
    double theta = 0.0;
    double entropy = 0.0;
    double retrievability = 1.0;
    double loss = 0.0;
    double bias = 1.0;
};

namespace detail {

// Runs f(i) for i in [0, count); each index writes only its own slot, so
// the result is bitwise independent of the worker count.
template <typename F>
inline void parallel_index_for(std::size_t count, unsigned jobs, F&& f) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) f(i);
        });
    for (std::thread& t : pool) t.join();
}

inline void require_grid(const std::vector<double>& grid, const char* who) {
    if (grid.empty())
        throw std::invalid_argument(std::string(who) + ": empty grid");
    for (double x : grid)
        if (!std::isfinite(x))
            throw std::invalid_argument(std::string(who) + ": non-finite grid point");
}

} // namespace detail

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    if (points == 0)
        throw std::invalid_argument("uniform_grid: need at least one point");
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    for (std::size_t k = 0; k < points; ++k)
        grid[k] = lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(points - 1));
    grid.back() = hi;
    return grid;
}

inline std::vector<double> default_single_qubit_grid() {
    return uniform_grid(0.0, std::numbers::pi, 181);
}

inline std::vector<double> default_bell_grid() {
    return uniform_grid(0.0, std::numbers::pi / 2.0, 181);
}

// One qubit prepared at polar angle theta and measured in CB. The
// realized spectrum is {1-x, x} with x = sin^2(theta/2).
inline std::vector<SweepRow> single_qubit_sweep(const std::vector<double>& thetas,
                                                LogBase base = LogBase::Natural,
                                                unsigned jobs = 1) {
    detail::require_grid(thetas, "single_qubit_sweep");
    std::vector<SweepRow> rows(thetas.size());
    detail::parallel_index_for(thetas.size(), jobs, [&](std::size_t i) {
        const double theta = thetas[i];
        const double s = std::sin(theta / 2.0);
        const double x = s * s;
        double entropy = 0.0;
        if (x > 0.0) entropy -= x * detail::log_in_base(x, base);
        if (x < 1.0) entropy -= (1.0 - x) * detail::log_in_base(1.0 - x, base);
        const double ir = retrievability(entropy, base);
        rows[i] = SweepRow{theta, entropy, ir, 1.0 - ir, polar_bias(theta)};
    });
    return rows;
}

// Bell state measured at setting (theta, 0). The realized spectrum is
// {c/2, c/2, s/2, s/2} with c = cos^2(theta/2), s = sin^2(theta/2).
inline std::vector<SweepRow> bell_sweep(const std::vector<double>& thetas,
                                        LogBase base = LogBase::Natural,
                                        unsigned jobs = 1) {
    detail::require_grid(thetas, "bell_sweep");
    std::vector<SweepRow> rows(thetas.size());
    detail::parallel_index_for(thetas.size(), jobs, [&](std::size_t i) {
        const double theta = thetas[i];
        const double c2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
        const double s2 = std::sin(theta / 2.0) * std::sin(theta / 2.0);
        double entropy = 0.0;
        if (c2 > 0.0) entropy -= c2 * detail::log_in_base(c2 / 2.0, base);
        if (s2 > 0.0) entropy -= s2 * detail::log_in_base(s2 / 2.0, base);
        const double ir = retrievability(entropy, base);
        rows[i] = SweepRow{theta, entropy, ir, 1.0 - ir, polar_bias(theta)};
    });
    return rows;
}

struct BellInequalityVerdict {
    double theta = 0.0;
    double lhs = 0.0; // P(H,H') at setting (theta, 0)
    double rhs = 0.0; // P(H',H'') at (theta, -theta) + P(H,V'') at (0, -theta)
    bool violated = false;
};

// P(H,H') <= P(H',H'') + P(H,V'') evaluated on a shared |Phi+> pair.
inline BellInequalityVerdict bell_inequality_check(double theta) {
    const StateVector phi_plus = make_bell(BellKind::PhiPlus);
    const double lhs = bell_joint_pmf(phi_plus, {theta, 0.0}).probs()[0];
    const double rhs = bell_joint_pmf(phi_plus, {theta, -theta}).probs()[0] +
                       bell_joint_pmf(phi_plus, {0.0, -theta}).probs()[1];
    return BellInequalityVerdict{theta, lhs, rhs, lhs > rhs + 1e-12};
}

// Same check with the pair replaced by a 2-qubit MMS (uncorrelated
// marginals). Never violated.
inline BellInequalityVerdict bell_inequality_check_mms(double theta) {
    const DensityMatrix mms = make_mms(2);
    const double lhs = born_pmf_mixed(mms, bell_setting_basis({theta, 0.0})).probs()[0];
    const double rhs = born_pmf_mixed(mms, bell_setting_basis({theta, -theta})).probs()[0] +
                       born_pmf_mixed(mms, bell_setting_basis({0.0, -theta})).probs()[1];
    return BellInequalityVerdict{theta, lhs, rhs, lhs > rhs + 1e-12};
}

// Entropy accounting when Alice and Bob cannot pool their records: each
// marginal is maximally mixed and the joint entropy saturates at 2 log 2.
struct NoCommReport {
    double theta = 0.0;
    double joint_entropy = 0.0;
    double alice_marginal_entropy = 0.0;
    double bob_marginal_entropy = 0.0;
    double extra_entropy = 0.0;
};

inline double no_comm_extra_entropy(double theta, LogBase base = LogBase::Natural) {
    const double s_theta = bell_sweep({theta}, base).front().entropy;
    return std::max(0.0, 2.0 * detail::log_in_base(2.0, base) - s_theta);
}

inline NoCommReport no_comm_report(double theta, LogBase base = LogBase::Natural) {
    const PMF joint = bell_joint_pmf(make_bell(BellKind::PhiPlus), {theta, 0.0});
    NoCommReport report;
    report.theta = theta;
    report.joint_entropy = bell_sweep({theta}, base).front().entropy;
    report.alice_marginal_entropy = shannon_entropy(marginal_pmf(joint, 0, {2, 2}), base);
    report.bob_marginal_entropy = shannon_entropy(marginal_pmf(joint, 1, {2, 2}), base);
    report.extra_entropy = no_comm_extra_entropy(theta, base);
    return report;
}

struct TeleportationReport {
    double alice_entropy = 0.0;
    double alice_ir = 1.0;
    double alice_il = 0.0;
    int classical_bits = 2;
    double bob_state_fidelity = 1.0;         // worst case over the four outcomes
    std::array<double, 4> bell_probs{};      // ordered Phi+, Phi-, Psi+, Psi-
    LogBase base = LogBase::Natural;
};

// Teleports a|0> + b|1> through a shared |Phi+> pair: Alice's Bell
// measurement realizes a 4-outcome MMS (2 classical bits), and each
// outcome's correction returns Bob's photon to the input state.
inline TeleportationReport teleportation_report(complex a, complex b,
                                                LogBase base = LogBase::Natural) {
    const double norm2 = std::norm(a) + std::norm(b);
    if (std::abs(norm2 - 1.0) > kTraceTolerance)
        throw std::invalid_argument("teleportation_report: |a|^2 + |b|^2 must be 1");
    const double scale = 1.0 / std::sqrt(norm2);
    a *= scale;
    b *= scale;

    // Qubit order (C, D, B): the shared pair on (C, D), the input on B.
    const StateVector input(1, {a, b});
    const StateVector state = tensor_states(make_bell(BellKind::PhiPlus), input);

    const MeasurementBasis bell = bell_basis();
    TeleportationReport report;
    report.base = base;
    double min_fidelity = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
        // Amplitude of Bell outcome k on (C, B) with Bob's photon in |j>.
        std::array<complex, 2> bob{};
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t bb = 0; bb < 2; ++bb)
                    bob[j] += std::conj(bell.vectors()(c * 2 + bb, k)) * state[c * 4 + j * 2 + bb];

        const double p = std::norm(bob[0]) + std::norm(bob[1]);
        report.bell_probs[k] = p;

        const double inv = 1.0 / std::sqrt(p);
        complex c0 = bob[0] * inv, c1 = bob[1] * inv;
        switch (k) {
        case 0: break;                                          // Phi+: identity
        case 1: c1 = -c1; break;                                // Phi-: Z
        case 2: std::swap(c0, c1); break;                       // Psi+: X
        case 3: { const complex t = c0; c0 = -c1; c1 = t; } break; // Psi-: X Z
        }
        const double fidelity = std::norm(std::conj(a) * c0 + std::conj(b) * c1);
        min_fidelity = std::min(min_fidelity, fidelity);
    }

    const PMF bell_pmf(bell.labels(), {report.bell_probs.begin(), report.bell_probs.end()},
                       bell.id());
    report.alice_entropy = von_neumann_entropy(realized_density(bell_pmf, bell), base);
    report.alice_ir = retrievability(report.alice_entropy, base);
    report.alice_il = 1.0 - report.alice_ir;
    report.bob_state_fidelity = min_fidelity;
    return report;
}

// Spectrum of GHZ_m after one qubit is traced out: {1/2, 1/2},
// independent of m.
inline InfoReport ghz_measure_one(std::size_t m, LogBase base = LogBase::Natural) {
    if (m < 3)
        throw std::invalid_argument("ghz_measure_one: need at least 3 qubits");
    const DensityMatrix rho = pure_density(make_ghz(m));
    std::vector<std::size_t> keep(m - 1);
    for (std::size_t i = 0; i < m - 1; ++i) keep[i] = i + 1;
    return make_info_report(partial_trace(rho, keep), base);
}

// Largest qubit count for which w_measure_one cross-checks its closed
// form against the dense partial-trace pipeline.
inline constexpr std::size_t kWNumericCrossCheckMax = 10;

// Spectrum of W_m after one qubit is traced out: {(m-1)/m, 1/m}, so
// S = log m - (1 - 1/m) log(m-1), strictly decreasing in m.
inline InfoReport w_measure_one(std::size_t m, LogBase base = LogBase::Natural) {
    if (m < 3)
        throw std::invalid_argument("w_measure_one: need at least 3 qubits");
    const double dm = static_cast<double>(m);
    InfoReport report;
    report.base = base;
    report.entropy = detail::log_in_base(dm, base) -
                     (1.0 - 1.0 / dm) * detail::log_in_base(dm - 1.0, base);
    report.retrievability = retrievability(report.entropy, base);
    report.loss = 1.0 - report.retrievability;
    report.purity = ((dm - 1.0) * (dm - 1.0) + 1.0) / (dm * dm);

    if (m <= kWNumericCrossCheckMax) {
        const DensityMatrix rho = pure_density(make_w(m));
        std::vector<std::size_t> keep(m - 1);
        for (std::size_t i = 0; i < m - 1; ++i) keep[i] = i + 1;
        const DensityMatrix reduced = partial_trace(rho, keep);
        if (std::abs(von_neumann_entropy(reduced, base) - report.entropy) > 1e-9 ||
            std::abs(purity(reduced) - report.purity) > 1e-9)
            throw std::runtime_error("w_measure_one: closed form disagrees with partial trace");
    }
    return report;
}

struct WernerRow {
    double alpha = 0.0;
    double s_alpha = 0.0;
    double ir_bell_to_werner = 1.0; // pure Bell state -> Werner(alpha)
    double ir_werner_to_mms = 1.0;  // Werner(alpha) -> 2-qubit MMS
    double ir_bell_to_mms = 0.25;   // the composition of the two
    bool separable_ppt = false;
    bool separable_vnei_necessary = false;
};

// Closed-form Werner entropy from the spectrum
// {(1-a)/4 x3, (1+3a)/4}, in nats.
inline double werner_entropy(double alpha) {
    if (!(alpha >= -1.0 / 3.0 && alpha <= 1.0))
        throw std::invalid_argument("werner_entropy: alpha outside [-1/3, 1]");
    const double lo = (1.0 - alpha) / 4.0;
    const double hi = (1.0 + 3.0 * alpha) / 4.0;
    double s = 0.0;
    if (lo > 0.0) s -= 3.0 * lo * std::log(lo);
    if (hi > 0.0) s -= hi * std::log(hi);
    return s;
}

inline std::vector<WernerRow> werner_report(const std::vector<double>& alphas,
                                            LogBase base = LogBase::Natural) {
    detail::require_grid(alphas, "werner_report");
    const double ln2 = std::log(2.0);
    std::vector<WernerRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas) {
        const double s_nats = werner_entropy(alpha); // range-checks alpha
        const double s_alpha = base == LogBase::Natural ? s_nats : s_nats / ln2;
        const double s_mms = 2.0 * detail::log_in_base(2.0, base);
        WernerRow row;
        row.alpha = alpha;
        row.s_alpha = s_alpha;
        row.ir_bell_to_werner = comparative_ir(s_alpha, 0.0, base);
        row.ir_werner_to_mms = comparative_ir(s_mms, s_alpha, base);
        row.ir_bell_to_mms = comparative_ir(s_mms, 0.0, base);
        row.separable_ppt = alpha <= 1.0 / 3.0 + 1e-12;
        row.separable_vnei_necessary = s_nats >= ln2 - 1e-12;
        rows.push_back(row);
    }
    return rows;
}

// alpha at which the Werner entropy crosses ln 2 (the vNEI margin of
// separability), by bisection on the decreasing branch [0, 1].
inline double solve_vnei_alpha() {
    const double target = std::log(2.0);
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (werner_entropy(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct MeeMeiSummary {
    double mee = 0.0;
    double mei = 0.0;
    double witness_bell = 0.0;
    double witness_ghz3 = 0.0;
    double witness_ghz5 = 0.0;
    double witness_ghz8 = 0.0;
    double witness_werner_vnei = 0.0;
    double vnei_alpha = 0.0;
    LogBase base = LogBase::Natural;
};

// Bell tests, GHZ_m and the vNEI-marginal Werner state share one minimal
// entanglement entropy gain (log 2) and so one minimal info loss (1/2).
inline MeeMeiSummary mee_mei_summary(LogBase base = LogBase::Natural) {
    MeeMeiSummary summary;
    summary.base = base;

    double min_bell = std::numeric_limits<double>::infinity();
    for (const SweepRow& row : bell_sweep(default_bell_grid(), base))
        min_bell = std::min(min_bell, row.entropy);
    summary.witness_bell = min_bell;

    summary.witness_ghz3 = ghz_measure_one(3, base).entropy;
    summary.witness_ghz5 = ghz_measure_one(5, base).entropy;
    summary.witness_ghz8 = ghz_measure_one(8, base).entropy;

    summary.vnei_alpha = solve_vnei_alpha();
    const double s_nats = werner_entropy(summary.vnei_alpha);
    summary.witness_werner_vnei = base == LogBase::Natural ? s_nats : s_nats / std::log(2.0);

    summary.mee = summary.witness_bell;
    const double witnesses[] = {summary.witness_ghz3, summary.witness_ghz5, summary.witness_ghz8,
                                summary.witness_werner_vnei};
    for (double w : witnesses)
        if (std::abs(w - summary.mee) > 1e-9)
            throw std::runtime_error("mee_mei_summary: witnesses disagree on the minimal gain");
    summary.mei = 1.0 - detail::exp_in_base(-summary.mee, base);
    return summary;
}

struct SeparableCheckReport {
    double s_initial = 0.0;
    double s_final = 0.0;
    double retrievability = 1.0;
    double loss = 0.0;
    std::vector<double> pmf;
};

// |HH> measured at setting (0, 0): the state is already a detector basis
// vector, so nothing collapses and nothing is lost.
inline SeparableCheckReport separable_state_check(LogBase base = LogBase::Natural) {
    const StateVector hh = make_cb_state({0, 0});
    const MeasurementBasis basis = bell_setting_basis({0.0, 0.0});
    const PMF pmf = born_pmf(hh, basis);
    const DensityMatrix realized = realized_density(pmf, basis);
    SeparableCheckReport report;
    report.s_initial = von_neumann_entropy(pure_density(hh), base);
    report.s_final = von_neumann_entropy(realized, base);
    report.retrievability = comparative_ir(report.s_final, report.s_initial, base);
    report.loss = 1.0 - report.retrievability;
    report.pmf = pmf.probs();
    return report;
}

} // namespace qinfo
