// Built-in verification: every published number the library is expected
// to reproduce, plus randomized property suites with fixed seeds. The
// CLI `selftest` command runs these and reports one line per check.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qinfo/density_matrix.hpp"
#include "qinfo/eigen.hpp"
#include "qinfo/info_metrics.hpp"
#include "qinfo/measurement.hpp"
#include "qinfo/scenarios.hpp"
#include "qinfo/state_vector.hpp"

namespace qinfo::selftest {

// ---------------------------------------------------------------------
// Deterministic random inputs for the property suites.

inline StateVector random_state(std::size_t qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<complex> amps(std::size_t{1} << qubits);
    double norm2 = 0.0;
    for (complex& a : amps) {
        a = complex{gauss(rng), gauss(rng)};
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (complex& a : amps) a *= inv;
    return StateVector(qubits, std::move(amps));
}

inline DensityMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = complex{gauss(rng), gauss(rng)};
    ComplexMatrix rho = g * adjoint(g);
    rho = rho * (complex{1.0, 0.0} / trace(rho));
    return validate_density(rho, {dim});
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    ComplexMatrix a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        a(i, i) = uniform(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            a(i, j) = complex{uniform(rng), uniform(rng)};
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

inline std::vector<double> random_pmf(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> probs(n);
    double sum = 0.0;
    for (double& p : probs) {
        p = -std::log(1.0 - uniform(rng));
        sum += p;
    }
    for (double& p : probs) p /= sum;
    return probs;
}

// ---------------------------------------------------------------------
// Property suites. Each returns its worst-case error over all trials;
// the caller pins the tolerance.

inline double max_additivity_error(std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_dim(2, 4);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const DensityMatrix a = random_density(pick_dim(rng), rng);
        const DensityMatrix b = random_density(pick_dim(rng), rng);
        const double joint = von_neumann_entropy(tensor(a, b));
        const double split = von_neumann_entropy(a) + von_neumann_entropy(b);
        worst = std::max(worst, std::abs(joint - split));
    }
    return worst;
}

inline double max_ir_spectral_identity_error(std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_dim(2, 8);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const DensityMatrix rho = random_density(pick_dim(rng), rng);
        double product = 1.0;
        for (double eta : rho.spectrum().eigenvalues)
            if (eta > 0.0) product *= std::pow(eta, eta);
        const double ir_natural = retrievability(von_neumann_entropy(rho, LogBase::Natural));
        const double ir_base2 =
            retrievability(von_neumann_entropy(rho, LogBase::Two), LogBase::Two);
        worst = std::max(worst, std::abs(product - ir_natural));
        worst = std::max(worst, std::abs(ir_base2 - ir_natural));
    }
    return worst;
}

inline double max_pmf_round_trip_error(std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_qubits(1, 3);
    std::uniform_real_distribution<double> pick_phase(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t qubits = pick_qubits(rng);
        const std::size_t n = std::size_t{1} << qubits;

        // Alternate the plain CB with an orthonormal basis drawn from a
        // random Hermitian's eigenvectors.
        MeasurementBasis basis = cb_basis(qubits);
        if (t % 2 == 1) {
            Spectrum spec = hermitian_eigensystem(random_hermitian(n, rng));
            std::vector<std::string> labels(n);
            for (std::size_t i = 0; i < n; ++i) labels[i] = "e" + std::to_string(i);
            basis = MeasurementBasis("random:" + std::to_string(t), std::move(labels),
                                     std::move(spec.eigenvectors), {n});
        }

        const PMF pmf(basis.labels(), random_pmf(n, rng), basis.id());
        std::vector<double> phases(n);
        for (double& phi : phases) phi = pick_phase(rng);
        const PMF back = born_pmf(pmf_induced_state(pmf, phases, basis), basis);
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(back.probs()[i] - pmf.probs()[i]));
    }
    return worst;
}

inline double max_eigen_reconstruction_error(std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_dim(2, 16);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = pick_dim(rng);
        const ComplexMatrix a = random_hermitian(n, rng);
        const Spectrum spec = hermitian_eigensystem(a);

        ComplexMatrix lambda(n, n);
        for (std::size_t i = 0; i < n; ++i) lambda(i, i) = spec.eigenvalues[i];
        const ComplexMatrix rebuilt = spec.eigenvectors * lambda * adjoint(spec.eigenvectors);
        worst = std::max(worst, (rebuilt - a).max_abs());

        const ComplexMatrix gram = adjoint(spec.eigenvectors) * spec.eigenvectors;
        worst = std::max(worst, (gram - ComplexMatrix::identity(n)).max_abs());
    }
    return worst;
}

inline double max_bell_marginal_error(std::size_t settings, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick_angle(-std::numbers::pi, std::numbers::pi);
    const BellKind kinds[] = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                              BellKind::PsiMinus};
    double worst = 0.0;
    for (std::size_t t = 0; t < settings; ++t) {
        const BellSetting setting{pick_angle(rng), pick_angle(rng)};
        for (BellKind kind : kinds) {
            const PMF joint = bell_joint_pmf(make_bell(kind), setting);
            for (std::size_t axis = 0; axis < 2; ++axis) {
                const PMF marginal = marginal_pmf(joint, axis, {2, 2});
                for (double p : marginal.probs())
                    worst = std::max(worst, std::abs(p - 0.5));
            }
        }
    }
    return worst;
}

// ---------------------------------------------------------------------
// Named checks.

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

namespace detail {

class Check {
public:
    explicit Check(std::string name) : result_{std::move(name), true, {}} {}

    void require(bool condition, const std::string& what) {
        if (!condition && result_.passed) {
            result_.passed = false;
            result_.detail = what;
        }
    }

    void require_close(double actual, double expected, double tol, const std::string& what) {
        if (std::abs(actual - expected) > tol && result_.passed) {
            std::ostringstream oss;
            oss.precision(12);
            oss << what << ": expected " << expected << ", got " << actual;
            result_.passed = false;
            result_.detail = oss.str();
        }
    }

    CheckResult result() const { return result_; }

private:
    CheckResult result_;
};

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool matrix_close(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).max_abs() <= tol;
}

} // namespace detail

// Runs every check. `fault` names an intentional perturbation used to
// prove the harness actually detects failures; empty means none.
inline std::vector<CheckResult> run_all_checks(const std::string& fault = "") {
    std::vector<CheckResult> results;
    auto run = [&](const char* name, const std::function<void(detail::Check&)>& body) {
        detail::Check check(name);
        try {
            body(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        results.push_back(check.result());
    };

    const double ln2 = std::log(2.0);
    const double ln4 = std::log(4.0);
    const double pi = std::numbers::pi;

    run("gate-composition", [&](detail::Check& c) {
        const StateVector minus = apply_gate(Gate::h(), 0, apply_gate(Gate::x(), 0, make_cb_state({0})));
        const double r = 1.0 / std::sqrt(2.0);
        c.require_close(minus[0].real(), r, 1e-12, "HX|0> first amplitude");
        c.require_close(minus[1].real(), -r, 1e-12, "HX|0> second amplitude");
        const double phase = 0.7;
        const StateVector shifted = apply_gate(Gate::u3(0.0, 0.0, phase), 0, minus);
        c.require_close(std::abs(shifted[1] - (-r) * std::polar(1.0, phase)), 0.0, 1e-12,
                        "U3(0,0,phi) phase action");
    });

    run("eigensystem-projector", [&](detail::Check& c) {
        const ComplexMatrix rho(2, 2, {0.5, -0.5, -0.5, 0.5});
        const Spectrum spec = hermitian_eigensystem(rho);
        c.require_close(spec.eigenvalues[0], 1.0, 1e-12, "top eigenvalue");
        c.require_close(spec.eigenvalues[1], 0.0, 1e-12, "bottom eigenvalue");
    });

    run("werner-spectrum", [&](detail::Check& c) {
        const DensityMatrix rho = make_werner(1.0 / 3.0);
        const std::vector<double>& eta = rho.spectrum().eigenvalues;
        c.require_close(eta[0], 0.5, 1e-9, "lambda_4");
        for (int k = 1; k < 4; ++k)
            c.require_close(eta[k], 1.0 / 6.0, 1e-9, "lambda_" + std::to_string(k));
    });

    run("kron-mms", [&](detail::Check& c) {
        const ComplexMatrix half = ComplexMatrix::identity(2) * complex{0.5, 0.0};
        const ComplexMatrix quarter = ComplexMatrix::identity(4) * complex{0.25, 0.0};
        c.require(detail::matrix_close(kron(half, half), quarter, 1e-15), "I/2 (x) I/2 = I/4");
    });

    run("partial-trace-bell", [&](detail::Check& c) {
        const DensityMatrix reduced =
            partial_trace(pure_density(make_bell(BellKind::PhiPlus)), {0});
        const ComplexMatrix half = ComplexMatrix::identity(2) * complex{0.5, 0.0};
        c.require(detail::matrix_close(reduced.matrix(), half, 1e-12), "Tr_B |Phi+><Phi+| = I/2");
    });

    run("partial-trace-ghz3", [&](detail::Check& c) {
        const DensityMatrix reduced = partial_trace(pure_density(make_ghz(3)), {0, 1});
        ComplexMatrix expected(4, 4);
        expected(0, 0) = 0.5;
        expected(3, 3) = 0.5;
        c.require(detail::matrix_close(reduced.matrix(), expected, 1e-12), "Tr_3 of GHZ_3");
    });

    run("partial-trace-w3", [&](detail::Check& c) {
        const DensityMatrix reduced = partial_trace(pure_density(make_w(3)), {0, 1});
        const StateVector psi_plus = make_bell(BellKind::PsiPlus);
        ComplexMatrix expected(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                expected(i, j) = (2.0 / 3.0) * psi_plus[i] * std::conj(psi_plus[j]);
        expected(0, 0) += 1.0 / 3.0;
        c.require(detail::matrix_close(reduced.matrix(), expected, 1e-12),
                  "Tr_3 of W_3 = (2/3)|Psi+><Psi+| + (1/3)|00><00|");
    });

    run("born-pmf", [&](detail::Check& c) {
        const MeasurementBasis cb = cb_basis(1);
        c.require_close(born_pmf(make_cb_state({0}), cb).probs()[0], 1.0, 1e-15, "P(0) for |0>");
        const StateVector minus = make_u3_state(pi / 2.0, pi); // (|0> - |1>)/sqrt(2)
        const PMF unbiased = born_pmf(minus, cb);
        c.require_close(unbiased.probs()[0], 0.5, 1e-12, "P(0) for |->");
        c.require_close(unbiased.probs()[1], 0.5, 1e-12, "P(1) for |->");

        const double r = 1.0 / std::sqrt(2.0);
        const MeasurementBasis sigma_x("sigma-x", {"up_x", "down_x"},
                                       ComplexMatrix(2, 2, {r, r, r, -r}), {2});
        const PMF pinned = born_pmf(minus, sigma_x);
        c.require_close(pinned.probs()[0], 0.0, 1e-12, "P(up_x) for |->");
        c.require_close(pinned.probs()[1], 1.0, 1e-12, "P(down_x) for |->");
    });

    run("realized-density", [&](detail::Check& c) {
        const MeasurementBasis cb = cb_basis(1);
        const DensityMatrix mms = realized_density(PMF(cb.labels(), {0.5, 0.5}, cb.id()), cb);
        c.require_close(von_neumann_entropy(mms), ln2, 1e-12, "uniform PMF entropy");
        const DensityMatrix pure = realized_density(PMF(cb.labels(), {1.0, 0.0}, cb.id()), cb);
        c.require_close(von_neumann_entropy(pure), 0.0, 1e-12, "one-hot PMF entropy");
        c.require_close(purity(pure), 1.0, 1e-12, "one-hot PMF purity");

        const double theta = pi / 3.0;
        const double x = std::sin(theta / 2.0) * std::sin(theta / 2.0);
        const DensityMatrix biased = realized_density(PMF(cb.labels(), {1.0 - x, x}, cb.id()), cb);
        c.require_close(biased.matrix()(0, 0).real(), 1.0 - x, 1e-12, "realized rho_00");
        c.require_close(biased.matrix()(1, 1).real(), x, 1e-12, "realized rho_11");
        c.require_close(std::abs(biased.matrix()(0, 1)), 0.0, 1e-15, "realized rho_01");
    });

    run("pmf-induced-state", [&](detail::Check& c) {
        const MeasurementBasis cb = cb_basis(1);
        const PMF half(cb.labels(), {0.5, 0.5}, cb.id());
        const StateVector induced = pmf_induced_state(half, {0.0, pi}, cb);
        const double r = 1.0 / std::sqrt(2.0);
        c.require_close(std::abs(induced[0] - complex{r, 0.0}), 0.0, 1e-12, "induced amplitude 0");
        c.require_close(std::abs(induced[1] + complex{r, 0.0}), 0.0, 1e-12, "induced amplitude 1");
        const PMF back = born_pmf(induced, cb);
        c.require_close(back.probs()[0], 0.5, 1e-12, "round-trip P(0)");
    });

    run("entropy-mms", [&](detail::Check& c) {
        double ln2_ref = ln2;
        if (fault == "entropy-constant") ln2_ref += 1e-3;
        for (std::size_t m = 1; m <= 3; ++m) {
            const DensityMatrix mms = make_mms(m);
            c.require_close(von_neumann_entropy(mms), static_cast<double>(m) * ln2_ref, 1e-9,
                            "S(MMS_" + std::to_string(m) + ") in nats");
            c.require_close(von_neumann_entropy(mms, LogBase::Two), static_cast<double>(m),
                            1e-9, "S(MMS_" + std::to_string(m) + ") in bits");
            c.require_close(purity(mms), std::pow(2.0, -static_cast<double>(m)), 1e-12,
                            "purity of MMS_" + std::to_string(m));
        }
    });

    run("single-qubit-table", [&](detail::Check& c) {
        const std::vector<SweepRow> rows = single_qubit_sweep({0.0, pi / 3.0, pi / 2.0});
        const double expected[3][4] = {{0.0, 1.0, 0.0, 1.0},
                                       {0.5623, 0.5699, 0.4301, 0.25},
                                       {ln2, 0.5, 0.5, 0.0}};
        for (int i = 0; i < 3; ++i) {
            c.require_close(rows[i].entropy, expected[i][0], 5e-5, "S row " + std::to_string(i));
            c.require_close(rows[i].retrievability, expected[i][1], 5e-5, "iR row " + std::to_string(i));
            c.require_close(rows[i].loss, expected[i][2], 5e-5, "iL row " + std::to_string(i));
            c.require_close(rows[i].bias, expected[i][3], 5e-5, "beta row " + std::to_string(i));
        }
    });

    run("bell-sweep-endpoints", [&](detail::Check& c) {
        const std::vector<SweepRow> rows = bell_sweep({0.0, pi / 3.0, pi / 2.0});
        c.require_close(rows[0].retrievability, 0.5, 1e-12, "iR(0)");
        c.require_close(rows[1].retrievability, 0.285, 5e-4, "iR(pi/3)");
        c.require_close(rows[2].retrievability, 0.25, 1e-12, "iR(pi/2)");
        for (const SweepRow& row : rows)
            c.require(row.loss + row.retrievability == 1.0, "iL complement exactness");
    });

    run("bell-inequality", [&](detail::Check& c) {
        const BellInequalityVerdict at_pi3 = bell_inequality_check(pi / 3.0);
        c.require_close(at_pi3.lhs, 0.375, 1e-12, "lhs at pi/3");
        c.require_close(at_pi3.rhs, 0.25, 1e-12, "rhs at pi/3");
        c.require(at_pi3.violated, "violation at pi/3");
        const BellInequalityVerdict at_zero = bell_inequality_check(0.0);
        c.require(!at_zero.violated, "no violation at 0");
        const BellInequalityVerdict mms = bell_inequality_check_mms(pi / 3.0);
        c.require_close(mms.lhs, 0.25, 1e-12, "MMS lhs");
        c.require_close(mms.rhs, 0.5, 1e-12, "MMS rhs");
        c.require(!mms.violated, "MMS never violates");
    });

    run("mqe-bell", [&](detail::Check& c) {
        const double mqe = mutual_quantum_entropy(pure_density(make_bell(BellKind::PhiPlus)));
        c.require_close(mqe, ln4, 1e-9, "MQE of |Phi+>");
        c.require_close(info_loss(mqe, 0.0), 0.75, 1e-12, "MQI of |Phi+>");
        const DensityMatrix product = tensor(make_mms(1), make_mms(1));
        c.require_close(mutual_quantum_entropy(product), 0.0, 1e-12, "MQE of a product state");
    });

    run("no-comm-extra-entropy", [&](detail::Check& c) {
        c.require_close(no_comm_extra_entropy(0.0), ln2, 1e-12, "extra gain at 0");
        c.require_close(no_comm_extra_entropy(pi / 2.0), 0.0, 1e-12, "extra gain at pi/2");
        c.require_close(no_comm_extra_entropy(pi / 3.0), 2.0 * ln2 - 1.2555, 5e-5,
                        "extra gain at pi/3");
        const NoCommReport report = no_comm_report(pi / 3.0);
        c.require_close(report.alice_marginal_entropy, ln2, 1e-12, "Alice marginal entropy");
        c.require_close(report.bob_marginal_entropy, ln2, 1e-12, "Bob marginal entropy");
    });

    run("teleportation", [&](detail::Check& c) {
        std::mt19937_64 rng(0x7e1e);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < 12; ++t) {
            complex a{1.0, 0.0}, b{0.0, 0.0};
            if (t == 1) std::swap(a, b);
            if (t >= 2) {
                a = complex{gauss(rng), gauss(rng)};
                b = complex{gauss(rng), gauss(rng)};
                const double inv = 1.0 / std::sqrt(std::norm(a) + std::norm(b));
                a *= inv;
                b *= inv;
            }
            const TeleportationReport report = teleportation_report(a, b);
            c.require_close(report.alice_entropy, ln4, 1e-9, "Alice entropy");
            for (double p : report.bell_probs)
                c.require_close(p, 0.25, 1e-12, "Bell outcome probability");
            c.require_close(report.bob_state_fidelity, 1.0, 1e-10, "Bob fidelity");
            c.require(report.classical_bits == 2, "classical bits");
        }
    });

    run("ghz-measure-one", [&](detail::Check& c) {
        for (std::size_t m = 3; m <= 8; ++m) {
            const InfoReport report = ghz_measure_one(m);
            c.require_close(report.entropy, ln2, 1e-9, "S for m=" + std::to_string(m));
            c.require_close(report.retrievability, 0.5, 1e-9, "iR for m=" + std::to_string(m));
        }
    });

    run("w-measure-one", [&](detail::Check& c) {
        const InfoReport w3 = w_measure_one(3);
        c.require_close(w3.entropy, 0.6365, 5e-5, "S of W_3 remainder");
        c.require_close(w3.retrievability, 0.5291, 5e-5, "iR of W_3 remainder");
        c.require_close(w3.loss, 0.4709, 5e-5, "iL of W_3 remainder");
        c.require_close(w_measure_one(4).entropy, std::log(4.0 / std::pow(3.0, 0.75)), 1e-12,
                        "S of W_4 remainder");
        double previous = w_measure_one(3).entropy;
        for (std::size_t m = 4; m <= 64; ++m) {
            const double current = w_measure_one(m).entropy;
            c.require(current < previous, "W entropy decreasing at m=" + std::to_string(m));
            previous = current;
        }
    });

    run("werner-table", [&](detail::Check& c) {
        const std::vector<double> alphas{0.0, 1.0 / 3.0, 0.7476, 1.0};
        const std::vector<WernerRow> rows = werner_report(alphas);
        const double expected[4][4] = {
            // bell->werner dS, IR; werner->mms dS, IR
            {ln4, 0.25, 0.0, 1.0},
            {1.242, 0.2887, 0.144, 0.866},
            {ln2, 0.5, ln2, 0.5},
            {0.0, 1.0, ln4, 0.25},
        };
        for (int i = 0; i < 4; ++i) {
            c.require_close(rows[i].s_alpha, expected[i][0], 5e-4, "dS Bell->Werner");
            c.require_close(rows[i].ir_bell_to_werner, expected[i][1], 5e-4, "IR Bell->Werner");
            c.require_close(2.0 * ln2 - rows[i].s_alpha, expected[i][2], 5e-4, "dS Werner->MMS");
            c.require_close(rows[i].ir_werner_to_mms, expected[i][3], 5e-4, "IR Werner->MMS");
            c.require_close(rows[i].ir_bell_to_werner * rows[i].ir_werner_to_mms,
                            rows[i].ir_bell_to_mms, 1e-12, "chain identity");
        }
        c.require(rows[1].separable_ppt && !rows[2].separable_ppt, "PPT flags");
        c.require(rows[2].separable_vnei_necessary && !rows[3].separable_vnei_necessary,
                  "vNEI flags");
        c.require_close(solve_vnei_alpha(), 0.7476, 5e-5, "vNEI alpha");
    });

    run("mee-mei", [&](detail::Check& c) {
        const MeeMeiSummary summary = mee_mei_summary();
        c.require_close(summary.mee, ln2, 1e-9, "MEE");
        c.require_close(summary.mei, 0.5, 1e-9, "MEI");
        c.require_close(summary.witness_werner_vnei, ln2, 1e-9, "Werner witness");
    });

    run("separable-state", [&](detail::Check& c) {
        const SeparableCheckReport report = separable_state_check();
        c.require_close(report.loss, 0.0, 1e-12, "loss for |HH>");
        c.require_close(report.pmf[0], 1.0, 1e-12, "P(HH)");
        const PMF contrast = bell_joint_pmf(make_bell(BellKind::PhiPlus), {0.0, 0.0});
        const DensityMatrix rho_zz = realized_density(contrast, bell_setting_basis({0.0, 0.0}));
        c.require_close(info_loss(von_neumann_entropy(rho_zz), 0.0), 0.5, 1e-12,
                        "loss for |Phi+> contrast");
    });

    run("prop-entropy-additivity", [&](detail::Check& c) {
        c.require_close(max_additivity_error(500, 11), 0.0, 1e-9, "max additivity error");
    });

    run("prop-ir-spectral-identity", [&](detail::Check& c) {
        c.require_close(max_ir_spectral_identity_error(500, 12), 0.0, 1e-9, "max identity error");
    });

    run("prop-pmf-round-trip", [&](detail::Check& c) {
        c.require_close(max_pmf_round_trip_error(500, 13), 0.0, 1e-10, "max round-trip error");
    });

    run("prop-eigen-reconstruction", [&](detail::Check& c) {
        c.require_close(max_eigen_reconstruction_error(500, 14), 0.0, 1e-9,
                        "max reconstruction error");
    });

    run("prop-bell-marginals", [&](detail::Check& c) {
        c.require_close(max_bell_marginal_error(50, 15), 0.0, 1e-12, "max marginal error");
    });

    return results;
}

// Prints one line per check plus a summary; returns true iff all passed.
inline bool run_selftest(std::ostream& out, const std::string& fault = "") {
    const std::vector<CheckResult> results = run_all_checks(fault);
    std::size_t failures = 0;
    for (const CheckResult& result : results) {
        if (result.passed) {
            out << "ok   " << result.name << '\n';
        } else {
            ++failures;
            out << "FAIL " << result.name << ": " << result.detail << '\n';
        }
    }
    if (failures == 0)
        out << "all checks passed\n";
    else
        out << failures << " check(s) failed\n";
    return failures == 0;
}

} // namespace qinfo::selftest
