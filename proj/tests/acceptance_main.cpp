// Acceptance suite: one criterion per check, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qinfo/qinfo.hpp"
#include "qinfo/selftest.hpp"
#include "subprocess.hpp"

using namespace qinfo;

namespace {

const double pi = std::numbers::pi;
const double ln2 = std::log(2.0);
const double ln4 = std::log(4.0);

int g_failures = 0;

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)) {}

    void expect(bool condition, const std::string& what) {
        if (!condition && ok_) {
            ok_ = false;
            detail_ = what;
        }
    }

    void expect_close(double actual, double expected, double tol, const std::string& what) {
        if (!(std::abs(actual - expected) <= tol) && ok_) {
            std::ostringstream oss;
            oss.precision(12);
            oss << what << " (expected " << expected << ", got " << actual << ", tol " << tol
                << ")";
            ok_ = false;
            detail_ = oss.str();
        }
    }

    void finish() const {
        if (ok_) {
            std::cout << "PASS " << name_ << "\n";
        } else {
            ++g_failures;
            std::cout << "FAIL " << name_ << ": " << detail_ << "\n";
        }
    }

private:
    std::string name_;
    bool ok_ = true;
    std::string detail_;
};

void run(const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion criterion(name);
    try {
        body(criterion);
    } catch (const std::exception& e) {
        criterion.expect(false, std::string("exception: ") + e.what());
    }
    criterion.finish();
}

std::string fmt6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value == 0.0 ? 0.0 : value);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : QINFO_CLI_PATH;

    run("criterion-1 single-qubit table 4.1", [](Criterion& c) {
        const std::vector<SweepRow> rows = single_qubit_sweep({0.0, pi / 3.0, pi / 2.0});
        const double expected[3][4] = {{0.0, 1.0, 0.0, 1.0},
                                       {0.5623, 0.5699, 0.4301, 0.25},
                                       {0.6931, 0.5, 0.5, 0.0}};
        const char* cols[4] = {"S", "iR", "iL", "beta"};
        for (int i = 0; i < 3; ++i) {
            const double actual[4] = {rows[i].entropy, rows[i].retrievability, rows[i].loss,
                                      rows[i].bias};
            for (int j = 0; j < 4; ++j)
                c.expect_close(actual[j], expected[i][j], 5e-5,
                               std::string(cols[j]) + " at grid point " + std::to_string(i));
        }
    });

    run("criterion-2 bell sweep endpoints", [](Criterion& c) {
        const std::vector<SweepRow> rows = bell_sweep({0.0, pi / 3.0, pi / 2.0});
        c.expect_close(rows[0].retrievability, 0.5, 1e-9, "iR(0)");
        c.expect_close(rows[1].retrievability, 0.285, 5e-4, "iR(pi/3)");
        c.expect_close(rows[2].retrievability, 0.25, 1e-9, "iR(pi/2)");
        for (const SweepRow& row : rows)
            c.expect(row.loss + row.retrievability == 1.0, "iL complement exactness");
    });

    run("criterion-3 bell inequality at pi/3", [](Criterion& c) {
        const BellInequalityVerdict verdict = bell_inequality_check(pi / 3.0);
        c.expect_close(verdict.lhs, 0.375, 1e-12, "lhs");
        c.expect_close(verdict.rhs, 0.25, 1e-12, "rhs");
        c.expect(verdict.violated, "violated flag");
        const BellInequalityVerdict mms = bell_inequality_check_mms(pi / 3.0);
        c.expect_close(mms.lhs, 0.25, 1e-12, "MMS lhs");
        c.expect_close(mms.rhs, 0.5, 1e-12, "MMS rhs");
        c.expect(!mms.violated, "MMS not violated");
    });

    run("criterion-4 Bell MQE and MQI", [](Criterion& c) {
        for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                              BellKind::PsiMinus}) {
            const double mqe = mutual_quantum_entropy(pure_density(make_bell(kind)));
            c.expect_close(mqe, ln4, 1e-9, "MQE");
            c.expect(fmt6(info_loss(mqe, 0.0)) == "0.750000", "MQI at printed precision");
        }
    });

    run("criterion-5 teleportation", [](Criterion& c) {
        std::mt19937_64 rng(0xacce5);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            complex a{gauss(rng), gauss(rng)};
            complex b{gauss(rng), gauss(rng)};
            const double inv = 1.0 / std::sqrt(std::norm(a) + std::norm(b));
            const TeleportationReport report = teleportation_report(a * inv, b * inv);
            c.expect_close(report.alice_entropy, ln4, 1e-9, "Alice entropy");
            for (double p : report.bell_probs)
                c.expect_close(p, 0.25, 1e-12, "Bell outcome probability");
            c.expect_close(report.bob_state_fidelity, 1.0, 1e-10, "Bob fidelity");
        }
    });

    run("criterion-6 GHZ and W reductions", [](Criterion& c) {
        for (std::size_t m = 3; m <= 10; ++m)
            c.expect_close(ghz_measure_one(m).entropy, ln2, 1e-9,
                           "GHZ entropy at m=" + std::to_string(m));
        const InfoReport w3 = w_measure_one(3);
        c.expect_close(w3.entropy, 0.6365, 5e-5, "W_3 entropy");
        c.expect_close(w3.retrievability, 0.5291, 5e-5, "W_3 iR");
        c.expect_close(w3.loss, 0.4709, 5e-5, "W_3 iL");
        double previous = w3.entropy;
        for (std::size_t m = 4; m <= 64; ++m) {
            const double current = w_measure_one(m).entropy;
            c.expect(current < previous, "W entropy strictly decreasing at m=" + std::to_string(m));
            previous = current;
        }
    });

    run("criterion-7 Werner table 9.1", [](Criterion& c) {
        const std::vector<WernerRow> rows = werner_report({0.0, 1.0 / 3.0, 0.7476, 1.0});
        const double expected[4][2] = {{1.386, 0.25}, {1.242, 0.2887}, {0.6931, 0.5}, {0.0, 1.0}};
        for (int i = 0; i < 4; ++i) {
            c.expect_close(rows[i].s_alpha, expected[i][0], 5e-4,
                           "dS Bell->Werner at column " + std::to_string(i));
            c.expect_close(rows[i].ir_bell_to_werner, expected[i][1], 5e-4,
                           "IR Bell->Werner at column " + std::to_string(i));
            c.expect_close(rows[i].ir_bell_to_werner * rows[i].ir_werner_to_mms,
                           rows[i].ir_bell_to_mms, 1e-12, "chain identity");
        }
        c.expect_close(solve_vnei_alpha(), 0.7476, 5e-5, "vNEI alpha by bisection");
    });

    run("criterion-8 MEE/MEI commonality", [](Criterion& c) {
        const MeeMeiSummary summary = mee_mei_summary();
        c.expect_close(summary.witness_bell, ln2, 1e-9, "Bell witness");
        c.expect_close(summary.witness_ghz3, ln2, 1e-9, "GHZ_3 witness");
        c.expect_close(summary.witness_ghz5, ln2, 1e-9, "GHZ_5 witness");
        c.expect_close(summary.witness_ghz8, ln2, 1e-9, "GHZ_8 witness");
        c.expect_close(summary.witness_werner_vnei, ln2, 1e-9, "Werner vNEI witness");
        c.expect_close(summary.mee, ln2, 1e-9, "MEE");
        c.expect_close(summary.mei, 0.5, 1e-9, "MEI");
    });

    run("criterion-9 property suites", [](Criterion& c) {
        c.expect_close(selftest::max_additivity_error(500, 11), 0.0, 1e-9,
                       "(a) entropy additivity, 500 product states");
        c.expect_close(selftest::max_ir_spectral_identity_error(500, 12), 0.0, 1e-9,
                       "(b) iR spectral identity, 500 densities");
        c.expect_close(selftest::max_pmf_round_trip_error(500, 13), 0.0, 1e-10,
                       "(c) born/induced round-trip, 500 PMFs");
        c.expect_close(selftest::max_eigen_reconstruction_error(500, 14), 0.0, 1e-9,
                       "(d) eigensolver reconstruction, 500 matrices");
        c.expect_close(selftest::max_bell_marginal_error(50, 15), 0.0, 1e-12,
                       "(e) Bell marginals at 50 settings");
    });

    run("criterion-10 CLI determinism", [&](Criterion& c) {
        const std::vector<std::string> commands = {
            "sweep-1q --points 181",
            "sweep-1q --points 181 --jobs 4",
            "bell-sweep --points 181 --jobs 4",
            "bell-ineq --theta pi/3",
            "no-comm --theta pi/3",
            "teleport --a 0.6 --b 0.8i",
            "ghz --m 3 --to 8",
            "w --m 3 --to 8",
            "werner --points 41",
            "mee",
            "selftest",
        };
        for (const std::string& command : commands) {
            const std::string full = "\"" + cli_path + "\" " + command + " 2>/dev/null";
            const subprocess::RunResult first = subprocess::run(full);
            const subprocess::RunResult second = subprocess::run(full);
            c.expect(first.exit_code == 0, "exit code for: " + command);
            c.expect(!first.output.empty(), "output for: " + command);
            c.expect(first.output == second.output, "byte-identical reruns of: " + command);
        }
        const subprocess::RunResult serial =
            subprocess::run("\"" + cli_path + "\" sweep-1q --points 181 2>/dev/null");
        const subprocess::RunResult parallel =
            subprocess::run("\"" + cli_path + "\" sweep-1q --points 181 --jobs 4 2>/dev/null");
        c.expect(serial.output == parallel.output, "jobs=1 vs jobs=4 output");
    });

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed\n";
    return 1;
}
