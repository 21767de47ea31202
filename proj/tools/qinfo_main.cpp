// qinfo: deterministic entropy/retrievability reports for measured
// quantum states. One subcommand per scenario; CSV or JSON on stdout.
//
// Exit codes: 0 success, 1 domain or selftest failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qinfo/qinfo.hpp"
#include "qinfo/selftest.hpp"

namespace {

using namespace qinfo;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const char* what) {
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
        throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
    return value;
}

// Angles: plain radians, or exact pi fractions ("pi", "pi/3", "-pi/4").
// With --degrees, plain numbers are degrees; pi tokens stay in radians.
double parse_angle(const std::string& text, bool degrees) {
    std::string body = text;
    double sign = 1.0;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        if (body[0] == '-') sign = -1.0;
        body.erase(0, 1);
    }
    if (body == "pi") return sign * std::numbers::pi;
    if (body.rfind("pi/", 0) == 0) {
        const double denom = parse_double(body.substr(3), "angle denominator");
        if (denom == 0.0) throw UsageError("angle denominator must be nonzero");
        return sign * std::numbers::pi / denom;
    }
    const double value = sign * parse_double(body, "angle");
    return degrees ? value * std::numbers::pi / 180.0 : value;
}

// Complex literals: "1", "-0.5", "0.6+0.8i", "0.8i", "i", "-i".
complex parse_complex(const std::string& text, const char* what) {
    if (text.empty()) throw UsageError(std::string("empty value for ") + what);
    if (text.back() != 'i') return complex{parse_double(text, what), 0.0};

    std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto parse_imag = [&](std::string s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_double(s, what);
    };
    if (split == std::string::npos) return complex{0.0, parse_imag(body)};
    return complex{parse_double(body.substr(0, split), what), parse_imag(body.substr(split))};
}

struct CommonOptions {
    std::string format = "csv";
    std::string base = "e";
    std::string out_path;

    TableFormat table_format() const {
        return format == "json" ? TableFormat::Json : TableFormat::Csv;
    }
    LogBase log_base() const { return base == "2" ? LogBase::Two : LogBase::Natural; }
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--base", opts.base, "Logarithm base for entropies")
        ->check(CLI::IsMember({"e", "2"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out_path, "Write the table to a file instead of stdout");
}

void emit(const OutputTable& table, const CommonOptions& opts) {
    if (opts.out_path.empty()) {
        render_table(table, opts.table_format(), std::cout);
        return;
    }
    std::ofstream file(opts.out_path, std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot open output file '" + opts.out_path + "'");
    render_table(table, opts.table_format(), file);
}

OutputTable sweep_table(const std::vector<SweepRow>& rows) {
    OutputTable table{{"theta", "S", "iR", "iL", "beta"}, {}};
    for (const SweepRow& row : rows)
        table.add_row({row.theta, row.entropy, row.retrievability, row.loss, row.bias});
    return table;
}

OutputTable report_table(const std::vector<std::pair<long long, InfoReport>>& rows) {
    OutputTable table{{"m", "S", "iR", "iL", "purity"}, {}};
    for (const auto& [m, report] : rows)
        table.add_row({m, report.entropy, report.retrievability, report.loss, report.purity});
    return table;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy gain and information loss of measured quantum states"};
    app.require_subcommand(1);

    // sweep-1q / bell-sweep
    CommonOptions sweep1q_opts, bellsweep_opts;
    std::size_t sweep1q_points = 181, bellsweep_points = 181;
    unsigned sweep1q_jobs = 1, bellsweep_jobs = 1;
    CLI::App* sweep1q = app.add_subcommand(
        "sweep-1q", "Entropy, iR, iL and polar bias of a 1-qubit state over theta in [0, pi]");
    sweep1q->add_option("--points", sweep1q_points, "Grid points")->capture_default_str();
    sweep1q->add_option("--jobs", sweep1q_jobs, "Worker threads")->capture_default_str();
    add_common_options(sweep1q, sweep1q_opts);

    CLI::App* bellsweep = app.add_subcommand(
        "bell-sweep", "Entropy, iR, iL and bias of a measured Bell pair over theta in [0, pi/2]");
    bellsweep->add_option("--points", bellsweep_points, "Grid points")->capture_default_str();
    bellsweep->add_option("--jobs", bellsweep_jobs, "Worker threads")->capture_default_str();
    add_common_options(bellsweep, bellsweep_opts);

    // bell-ineq
    CommonOptions bellineq_opts;
    std::string bellineq_theta;
    bool bellineq_mms = false, bellineq_degrees = false;
    CLI::App* bellineq =
        app.add_subcommand("bell-ineq", "Bell inequality P(H,H') <= P(H',H'') + P(H,V'')");
    bellineq->add_option("--theta", bellineq_theta, "Relative EOM angle")->required();
    bellineq->add_flag("--mms", bellineq_mms, "Replace the Bell pair with a 2-qubit MMS");
    bellineq->add_flag("--degrees", bellineq_degrees, "Interpret numeric angles as degrees");
    add_common_options(bellineq, bellineq_opts);

    // no-comm
    CommonOptions nocomm_opts;
    std::string nocomm_theta;
    bool nocomm_degrees = false;
    CLI::App* nocomm = app.add_subcommand(
        "no-comm", "Marginal entropies and extra entropy gain without classical communication");
    nocomm->add_option("--theta", nocomm_theta, "Relative EOM angle")->required();
    nocomm->add_flag("--degrees", nocomm_degrees, "Interpret numeric angles as degrees");
    add_common_options(nocomm, nocomm_opts);

    // teleport
    CommonOptions teleport_opts;
    std::string teleport_a = "1", teleport_b = "0";
    CLI::App* teleport =
        app.add_subcommand("teleport", "Entropy accounting of teleporting a|0> + b|1>");
    teleport->add_option("--a", teleport_a, "Amplitude of |0>")->capture_default_str();
    teleport->add_option("--b", teleport_b, "Amplitude of |1>")->capture_default_str();
    add_common_options(teleport, teleport_opts);

    // ghz / w
    CommonOptions ghz_opts, w_opts;
    std::size_t ghz_m = 0, w_m = 0, ghz_to = 0, w_to = 0;
    CLI::App* ghz =
        app.add_subcommand("ghz", "Report after one qubit of GHZ_m is traced out");
    ghz->add_option("--m", ghz_m, "Qubit count (>= 3)")->required();
    ghz->add_option("--to", ghz_to, "Emit one row per m up to this count");
    add_common_options(ghz, ghz_opts);

    CLI::App* w = app.add_subcommand("w", "Report after one qubit of W_m is traced out");
    w->add_option("--m", w_m, "Qubit count (>= 3)")->required();
    w->add_option("--to", w_to, "Emit one row per m up to this count");
    add_common_options(w, w_opts);

    // werner
    CommonOptions werner_opts;
    double werner_alpha = 0.0;
    std::size_t werner_points = 181;
    CLI::App* werner =
        app.add_subcommand("werner", "Werner state entropy, comparative iR and separability flags");
    CLI::Option* werner_alpha_opt = werner->add_option("--alpha", werner_alpha, "Single alpha");
    werner->add_option("--points", werner_points, "Grid points over [-1/3, 1]")
        ->capture_default_str();
    add_common_options(werner, werner_opts);

    // mee
    CommonOptions mee_opts;
    CLI::App* mee = app.add_subcommand(
        "mee", "Common minimal entanglement entropy gain across Bell, GHZ and Werner witnesses");
    add_common_options(mee, mee_opts);

    // selftest
    std::string selftest_fault;
    CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in verification suite");
    selftest->add_option("--inject-fault", selftest_fault, "Perturb a named constant")
        ->group(""); // test hook, hidden from help

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (app.got_subcommand(sweep1q)) {
            const auto grid = uniform_grid(0.0, std::numbers::pi, sweep1q_points);
            emit(sweep_table(single_qubit_sweep(grid, sweep1q_opts.log_base(),
                                                std::max(1u, sweep1q_jobs))),
                 sweep1q_opts);
        } else if (app.got_subcommand(bellsweep)) {
            const auto grid = uniform_grid(0.0, std::numbers::pi / 2.0, bellsweep_points);
            emit(sweep_table(bell_sweep(grid, bellsweep_opts.log_base(),
                                        std::max(1u, bellsweep_jobs))),
                 bellsweep_opts);
        } else if (app.got_subcommand(bellineq)) {
            const double theta = parse_angle(bellineq_theta, bellineq_degrees);
            const BellInequalityVerdict verdict =
                bellineq_mms ? bell_inequality_check_mms(theta) : bell_inequality_check(theta);
            OutputTable table{{"theta", "lhs", "rhs", "violated"}, {}};
            table.add_row({verdict.theta, verdict.lhs, verdict.rhs, verdict.violated});
            emit(table, bellineq_opts);
        } else if (app.got_subcommand(nocomm)) {
            const double theta = parse_angle(nocomm_theta, nocomm_degrees);
            const NoCommReport report = no_comm_report(theta, nocomm_opts.log_base());
            OutputTable table{{"theta", "S", "S_alice", "S_bob", "extra_S"}, {}};
            table.add_row({report.theta, report.joint_entropy, report.alice_marginal_entropy,
                           report.bob_marginal_entropy, report.extra_entropy});
            emit(table, nocomm_opts);
        } else if (app.got_subcommand(teleport)) {
            const TeleportationReport report =
                teleportation_report(parse_complex(teleport_a, "--a"),
                                     parse_complex(teleport_b, "--b"),
                                     teleport_opts.log_base());
            OutputTable table{
                {"alice_entropy", "alice_ir", "alice_il", "classical_bits", "bob_state_fidelity"},
                {}};
            table.add_row({report.alice_entropy, report.alice_ir, report.alice_il,
                           static_cast<long long>(report.classical_bits),
                           report.bob_state_fidelity});
            emit(table, teleport_opts);
        } else if (app.got_subcommand(ghz)) {
            const std::size_t last = ghz->count("--to") ? ghz_to : ghz_m;
            if (last < ghz_m) throw UsageError("--to must be at least --m");
            std::vector<std::pair<long long, InfoReport>> rows;
            for (std::size_t m = ghz_m; m <= last; ++m)
                rows.emplace_back(static_cast<long long>(m),
                                  ghz_measure_one(m, ghz_opts.log_base()));
            emit(report_table(rows), ghz_opts);
        } else if (app.got_subcommand(w)) {
            const std::size_t last = w->count("--to") ? w_to : w_m;
            if (last < w_m) throw UsageError("--to must be at least --m");
            std::vector<std::pair<long long, InfoReport>> rows;
            for (std::size_t m = w_m; m <= last; ++m)
                rows.emplace_back(static_cast<long long>(m), w_measure_one(m, w_opts.log_base()));
            emit(report_table(rows), w_opts);
        } else if (app.got_subcommand(werner)) {
            const std::vector<double> alphas =
                werner_alpha_opt->count() ? std::vector<double>{werner_alpha}
                                          : uniform_grid(-1.0 / 3.0, 1.0, werner_points);
            OutputTable table{{"alpha", "S_alpha", "iR_bell_to_werner", "iR_werner_to_mms",
                               "iR_bell_to_mms", "separable_ppt", "separable_vnei_necessary"},
                              {}};
            for (const WernerRow& row : werner_report(alphas, werner_opts.log_base()))
                table.add_row({row.alpha, row.s_alpha, row.ir_bell_to_werner,
                               row.ir_werner_to_mms, row.ir_bell_to_mms, row.separable_ppt,
                               row.separable_vnei_necessary});
            emit(table, werner_opts);
        } else if (app.got_subcommand(mee)) {
            const MeeMeiSummary summary = mee_mei_summary(mee_opts.log_base());
            OutputTable table{{"mee", "mei", "witness_bell", "witness_ghz3", "witness_ghz5",
                               "witness_ghz8", "witness_werner_vnei", "vnei_alpha"},
                              {}};
            table.add_row({summary.mee, summary.mei, summary.witness_bell, summary.witness_ghz3,
                           summary.witness_ghz5, summary.witness_ghz8,
                           summary.witness_werner_vnei, summary.vnei_alpha});
            emit(table, mee_opts);
        } else if (app.got_subcommand(selftest)) {
            return qinfo::selftest::run_selftest(std::cout, selftest_fault) ? 0 : 1;
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
