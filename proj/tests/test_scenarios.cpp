#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "qinfo/scenarios.hpp"
#include "test_helpers.hpp"

using namespace qinfo;
using Catch::Matchers::WithinAbs;

namespace {
const double pi = std::numbers::pi;
const double ln2 = std::log(2.0);
const double ln4 = std::log(4.0);

// Full-pipeline entropy of a 1-qubit state prepared at (theta, phi) and
// measured in CB: state -> PMF -> realized density -> spectrum.
double pipeline_1q_entropy(double theta, double phi) {
    const MeasurementBasis cb = cb_basis(1);
    const PMF pmf = born_pmf(make_u3_state(theta, phi), cb);
    return von_neumann_entropy(realized_density(pmf, cb));
}

// Same for the Bell scenario at setting (theta, 0).
double pipeline_bell_entropy(double theta) {
    const MeasurementBasis basis = bell_setting_basis({theta, 0.0});
    const PMF pmf = born_pmf(make_bell(BellKind::PhiPlus), basis);
    return von_neumann_entropy(realized_density(pmf, basis));
}
} // namespace

TEST_CASE("uniform_grid", "[scenarios]") {
    const std::vector<double> grid = uniform_grid(0.0, pi, 181);
    REQUIRE(grid.size() == 181);
    REQUIRE(grid.front() == 0.0);
    REQUIRE(grid.back() == pi);
    REQUIRE(grid[90] == pi / 2.0);
    REQUIRE_THROWS_AS(uniform_grid(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("single_qubit_sweep", "[scenarios]") {
    SECTION("characteristic bias table") {
        const std::vector<SweepRow> rows = single_qubit_sweep({0.0, pi / 3.0, pi / 2.0});
        REQUIRE_THAT(rows[0].entropy, WithinAbs(0.0, 5e-5));
        REQUIRE_THAT(rows[0].retrievability, WithinAbs(1.0, 5e-5));
        REQUIRE_THAT(rows[0].bias, WithinAbs(1.0, 5e-5));
        REQUIRE_THAT(rows[1].entropy, WithinAbs(0.5623, 5e-5));
        REQUIRE_THAT(rows[1].retrievability, WithinAbs(0.5699, 5e-5));
        REQUIRE_THAT(rows[1].loss, WithinAbs(0.4301, 5e-5));
        REQUIRE_THAT(rows[1].bias, WithinAbs(0.25, 5e-5));
        REQUIRE_THAT(rows[2].entropy, WithinAbs(ln2, 1e-12));
        REQUIRE_THAT(rows[2].retrievability, WithinAbs(0.5, 1e-12));
        REQUIRE_THAT(rows[2].bias, WithinAbs(0.0, 1e-12));
    }

    SECTION("agrees with the measurement pipeline") {
        for (double theta : {0.0, 0.3, pi / 3.0, 1.9, pi / 2.0, 2.8, pi})
            REQUIRE_THAT(single_qubit_sweep({theta}).front().entropy,
                         WithinAbs(pipeline_1q_entropy(theta, 0.37), 1e-9));
    }

    SECTION("entropy is symmetric about pi/2 with zeros at the poles") {
        const std::vector<double> grid = uniform_grid(0.0, pi, 61);
        const std::vector<SweepRow> rows = single_qubit_sweep(grid);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            REQUIRE_THAT(rows[k].entropy, WithinAbs(rows[rows.size() - 1 - k].entropy, 1e-9));
            REQUIRE(rows[k].entropy <= ln2 + 1e-12);
        }
        REQUIRE(rows.front().entropy == 0.0);
        REQUIRE(rows.back().entropy == 0.0);
        REQUIRE_THAT(rows[30].entropy, WithinAbs(ln2, 1e-12));
    }

    SECTION("rows satisfy the report identities") {
        const std::vector<SweepRow> rows = single_qubit_sweep(uniform_grid(0.0, pi, 37));
        for (const SweepRow& row : rows) {
            REQUIRE(row.retrievability == std::exp(-row.entropy));
            REQUIRE(row.loss + row.retrievability == 1.0);
        }
    }

    SECTION("parallel evaluation is bitwise identical") {
        const std::vector<double> grid = uniform_grid(0.0, pi, 97);
        const std::vector<SweepRow> serial = single_qubit_sweep(grid, LogBase::Natural, 1);
        const std::vector<SweepRow> parallel = single_qubit_sweep(grid, LogBase::Natural, 4);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            REQUIRE(serial[k].entropy == parallel[k].entropy);
            REQUIRE(serial[k].retrievability == parallel[k].retrievability);
        }
    }

    SECTION("empty grids are rejected") {
        REQUIRE_THROWS_AS(single_qubit_sweep({}), std::invalid_argument);
    }
}

TEST_CASE("bell_sweep", "[scenarios]") {
    SECTION("representative retrievabilities") {
        const std::vector<SweepRow> rows = bell_sweep({0.0, pi / 3.0, pi / 2.0});
        REQUIRE_THAT(rows[0].retrievability, WithinAbs(0.5, 1e-12));
        REQUIRE_THAT(rows[1].retrievability, WithinAbs(0.285, 5e-4));
        REQUIRE_THAT(rows[2].retrievability, WithinAbs(0.25, 1e-12));
        REQUIRE_THAT(rows[1].entropy, WithinAbs(1.2555, 5e-5));
        for (const SweepRow& row : rows) REQUIRE(row.loss + row.retrievability == 1.0);
    }

    SECTION("agrees with the measurement pipeline") {
        for (double theta : {0.0, 0.4, pi / 3.0, 1.2, pi / 2.0})
            REQUIRE_THAT(bell_sweep({theta}).front().entropy,
                         WithinAbs(pipeline_bell_entropy(theta), 1e-9));
    }

    SECTION("entropy spans [log 2, 2 log 2] over the quarter turn") {
        const std::vector<SweepRow> rows = bell_sweep(default_bell_grid());
        double lo = rows.front().entropy, hi = rows.front().entropy;
        for (const SweepRow& row : rows) {
            lo = std::min(lo, row.entropy);
            hi = std::max(hi, row.entropy);
        }
        REQUIRE_THAT(lo, WithinAbs(ln2, 1e-12));
        REQUIRE_THAT(hi, WithinAbs(2.0 * ln2, 1e-12));
        REQUIRE_THAT(rows.front().entropy, WithinAbs(ln2, 1e-12));
        REQUIRE_THAT(rows.back().entropy, WithinAbs(2.0 * ln2, 1e-12));
    }

    SECTION("base 2 halves the nat values") {
        const SweepRow row = bell_sweep({0.0}, LogBase::Two).front();
        REQUIRE_THAT(row.entropy, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(row.retrievability, WithinAbs(0.5, 1e-12));
    }
}

TEST_CASE("bell_inequality_check", "[scenarios]") {
    SECTION("theta = pi/3 violates") {
        const BellInequalityVerdict verdict = bell_inequality_check(pi / 3.0);
        REQUIRE_THAT(verdict.lhs, WithinAbs(0.375, 1e-12));
        REQUIRE_THAT(verdict.rhs, WithinAbs(0.25, 1e-12));
        REQUIRE(verdict.violated);
    }

    SECTION("theta = 0 sits exactly on the boundary") {
        const BellInequalityVerdict verdict = bell_inequality_check(0.0);
        REQUIRE_THAT(verdict.lhs, WithinAbs(0.5, 1e-12));
        REQUIRE_THAT(verdict.rhs, WithinAbs(0.5, 1e-12));
        REQUIRE(!verdict.violated);
    }

    SECTION("violation holds on (0, pi/2) and nowhere else") {
        bool seen_pi3 = false;
        for (double theta : uniform_grid(0.01, pi, 180)) {
            const bool expected = theta < pi / 2.0 - 1e-9;
            const BellInequalityVerdict verdict = bell_inequality_check(theta);
            REQUIRE(verdict.violated == expected);
            if (std::abs(theta - pi / 3.0) < 1e-9) seen_pi3 = true;
        }
        REQUIRE(bell_inequality_check(pi / 3.0).violated);
        (void)seen_pi3;
    }

    SECTION("the MMS variant never violates") {
        for (double theta : {0.0, 0.7, pi / 3.0, pi / 2.0}) {
            const BellInequalityVerdict verdict = bell_inequality_check_mms(theta);
            REQUIRE_THAT(verdict.lhs, WithinAbs(0.25, 1e-12));
            REQUIRE_THAT(verdict.rhs, WithinAbs(0.5, 1e-12));
            REQUIRE(!verdict.violated);
        }
    }
}

TEST_CASE("no_comm accounting", "[scenarios]") {
    REQUIRE_THAT(no_comm_extra_entropy(0.0), WithinAbs(ln2, 1e-12));
    REQUIRE_THAT(no_comm_extra_entropy(pi / 2.0), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(no_comm_extra_entropy(pi / 3.0), WithinAbs(0.1308, 5e-5));

    const NoCommReport report = no_comm_report(0.9);
    REQUIRE_THAT(report.alice_marginal_entropy, WithinAbs(ln2, 1e-12));
    REQUIRE_THAT(report.bob_marginal_entropy, WithinAbs(ln2, 1e-12));
    REQUIRE_THAT(report.extra_entropy, WithinAbs(2.0 * ln2 - report.joint_entropy, 1e-12));
    REQUIRE(report.extra_entropy >= 0.0);
}

TEST_CASE("teleportation_report", "[scenarios]") {
    SECTION("teleporting |0> sends Bob the expected conditional states") {
        const TeleportationReport report = teleportation_report({1.0, 0.0}, {0.0, 0.0});
        REQUIRE_THAT(report.alice_entropy, WithinAbs(ln4, 1e-12));
        REQUIRE_THAT(report.alice_ir, WithinAbs(0.25, 1e-12));
        REQUIRE_THAT(report.alice_il, WithinAbs(0.75, 1e-12));
        REQUIRE(report.classical_bits == 2);
        for (double p : report.bell_probs) REQUIRE_THAT(p, WithinAbs(0.25, 1e-12));
        REQUIRE_THAT(report.bob_state_fidelity, WithinAbs(1.0, 1e-12));
    }

    SECTION("fidelity is 1 for random inputs") {
        std::mt19937_64 rng(701);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < 25; ++t) {
            complex a{gauss(rng), gauss(rng)};
            complex b{gauss(rng), gauss(rng)};
            const double inv = 1.0 / std::sqrt(std::norm(a) + std::norm(b));
            const TeleportationReport report = teleportation_report(a * inv, b * inv);
            REQUIRE_THAT(report.alice_entropy, WithinAbs(ln4, 1e-9));
            REQUIRE_THAT(report.bob_state_fidelity, WithinAbs(1.0, 1e-10));
        }
    }

    SECTION("unnormalized inputs are rejected, near-normalized accepted") {
        REQUIRE_THROWS_AS(teleportation_report({1.0, 0.0}, {1.0, 0.0}), std::invalid_argument);
        const TeleportationReport report =
            teleportation_report({1.0 + 2e-9, 0.0}, {0.0, 0.0});
        REQUIRE_THAT(report.bob_state_fidelity, WithinAbs(1.0, 1e-10));
    }
}

TEST_CASE("ghz_measure_one", "[scenarios]") {
    const InfoReport m3 = ghz_measure_one(3);
    REQUIRE_THAT(m3.entropy, WithinAbs(ln2, 1e-12));
    REQUIRE_THAT(m3.retrievability, WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(m3.loss, WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(m3.purity, WithinAbs(0.5, 1e-12));

    SECTION("independent of m") {
        for (std::size_t m = 4; m <= 10; ++m)
            REQUIRE_THAT(ghz_measure_one(m).entropy, WithinAbs(m3.entropy, 1e-12));
    }

    REQUIRE_THROWS_AS(ghz_measure_one(2), std::invalid_argument);
}

TEST_CASE("w_measure_one", "[scenarios]") {
    const InfoReport m3 = w_measure_one(3);
    REQUIRE_THAT(m3.entropy, WithinAbs(0.6365, 5e-5));
    REQUIRE_THAT(m3.retrievability, WithinAbs(0.5291, 5e-5));
    REQUIRE_THAT(m3.loss, WithinAbs(0.4709, 5e-5));

    SECTION("closed form at m = 4") {
        REQUIRE_THAT(w_measure_one(4).entropy, WithinAbs(std::log(4.0 / std::pow(3.0, 0.75)), 1e-12));
    }

    SECTION("strictly decreasing, always below the GHZ gain") {
        double previous = w_measure_one(3).entropy;
        REQUIRE(previous < ln2);
        for (std::size_t m = 4; m <= 64; ++m) {
            const double current = w_measure_one(m).entropy;
            REQUIRE(current < previous);
            REQUIRE(current < ln2);
            previous = current;
        }
    }

    REQUIRE_THROWS_AS(w_measure_one(2), std::invalid_argument);
}

TEST_CASE("werner_report", "[scenarios]") {
    SECTION("characteristic alpha table") {
        const std::vector<WernerRow> rows =
            werner_report({0.0, 1.0 / 3.0, 0.7476, 1.0});
        REQUIRE_THAT(rows[0].s_alpha, WithinAbs(1.386, 5e-4));
        REQUIRE_THAT(rows[0].ir_bell_to_werner, WithinAbs(0.25, 5e-4));
        REQUIRE_THAT(rows[0].ir_werner_to_mms, WithinAbs(1.0, 5e-4));
        REQUIRE_THAT(rows[1].s_alpha, WithinAbs(1.242, 5e-4));
        REQUIRE_THAT(rows[1].ir_bell_to_werner, WithinAbs(0.2887, 5e-4));
        REQUIRE_THAT(rows[1].ir_werner_to_mms, WithinAbs(0.866, 5e-4));
        REQUIRE_THAT(rows[2].s_alpha, WithinAbs(ln2, 5e-4));
        REQUIRE_THAT(rows[2].ir_bell_to_werner, WithinAbs(0.5, 5e-4));
        REQUIRE_THAT(rows[3].s_alpha, WithinAbs(0.0, 5e-4));
        REQUIRE_THAT(rows[3].ir_bell_to_werner, WithinAbs(1.0, 5e-4));
        REQUIRE_THAT(rows[3].ir_werner_to_mms, WithinAbs(0.25, 5e-4));
        for (const WernerRow& row : rows) {
            REQUIRE_THAT(row.ir_bell_to_mms, WithinAbs(0.25, 1e-12));
            REQUIRE_THAT(row.ir_bell_to_werner * row.ir_werner_to_mms,
                         WithinAbs(row.ir_bell_to_mms, 1e-12));
        }
        REQUIRE(rows[0].separable_ppt);
        REQUIRE(rows[1].separable_ppt);
        REQUIRE(!rows[2].separable_ppt);
        REQUIRE(rows[2].separable_vnei_necessary);
        REQUIRE(!rows[3].separable_vnei_necessary);
    }

    SECTION("closed form matches the spectral recomputation") {
        for (double alpha : uniform_grid(-1.0 / 3.0, 1.0, 29)) {
            const double closed = werner_report({alpha}).front().s_alpha;
            const double spectral = von_neumann_entropy(make_werner(alpha));
            REQUIRE_THAT(closed, WithinAbs(spectral, 1e-9));
        }
    }

    SECTION("out-of-range alpha is rejected") {
        REQUIRE_THROWS_AS(werner_report({-0.5}), std::invalid_argument);
        REQUIRE_THROWS_AS(werner_report({1.1}), std::invalid_argument);
        REQUIRE_THROWS_AS(werner_report({}), std::invalid_argument);
    }

    SECTION("vNEI margin solves S = ln 2") {
        const double alpha = solve_vnei_alpha();
        REQUIRE_THAT(alpha, WithinAbs(0.7476, 5e-5));
        REQUIRE_THAT(werner_entropy(alpha), WithinAbs(ln2, 1e-10));
    }
}

TEST_CASE("mee_mei_summary", "[scenarios]") {
    const MeeMeiSummary summary = mee_mei_summary();
    REQUIRE_THAT(summary.mee, WithinAbs(ln2, 1e-9));
    REQUIRE_THAT(summary.mei, WithinAbs(0.5, 1e-9));
    REQUIRE_THAT(summary.witness_bell, WithinAbs(ln2, 1e-9));
    REQUIRE_THAT(summary.witness_ghz3, WithinAbs(ln2, 1e-9));
    REQUIRE_THAT(summary.witness_ghz5, WithinAbs(ln2, 1e-9));
    REQUIRE_THAT(summary.witness_ghz8, WithinAbs(ln2, 1e-9));
    REQUIRE_THAT(summary.witness_werner_vnei, WithinAbs(ln2, 1e-9));
    REQUIRE_THAT(summary.vnei_alpha, WithinAbs(0.7476, 5e-5));
}

TEST_CASE("separable_state_check", "[scenarios]") {
    const SeparableCheckReport report = separable_state_check();
    REQUIRE(report.s_initial == 0.0);
    REQUIRE_THAT(report.s_final, WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(report.retrievability, WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(report.loss, WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(report.pmf[0], WithinAbs(1.0, 1e-12));

    SECTION("the entangled contrast loses half") {
        const MeasurementBasis basis = bell_setting_basis({0.0, 0.0});
        const PMF pmf = bell_joint_pmf(make_bell(BellKind::PhiPlus), {0.0, 0.0});
        const double s_f = von_neumann_entropy(realized_density(pmf, basis));
        REQUIRE_THAT(info_loss(s_f, 0.0), WithinAbs(0.5, 1e-12));
    }
}
