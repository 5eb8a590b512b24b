// Command-line front end: builds the exact approximation sets, reports their
// measures, and runs the seeded Monte Carlo cross-checks. Reports go to
// stdout as a single JSON object (default) or as CSV rows; diagnostics go to
// stderr. Exit codes: 0 success, 2 invalid input, 3 computation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "padic/padic.hpp"
#include "padic/psi_json.hpp"

namespace {

using nlohmann::ordered_json;
using namespace padic;

struct OutputOptions {
    std::string format = "json";
};

void add_format_flag(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

struct PsiOptions {
    std::string inline_json;
    std::string file;

    PsiSpec resolve() const {
        if (!inline_json.empty() && !file.empty())
            throw domain_error("give either --psi or --psi-file, not both");
        if (!inline_json.empty()) return psi_from_string(inline_json);
        if (file.empty()) throw domain_error("a psi spec is required (--psi or --psi-file)");
        std::ifstream in(file);
        if (!in) throw domain_error("cannot open psi file '" + file + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return psi_from_string(buffer.str());
    }
};

void add_psi_flags(CLI::App* cmd, PsiOptions& psi) {
    cmd->add_option("--psi", psi.inline_json, "Inline psi spec as JSON");
    cmd->add_option("--psi-file", psi.file, "Path to a psi spec document");
}

void require_prime_flag(std::int64_t p) {
    if (!is_prime(p)) throw domain_error("--p must be a prime number");
}

Rational parse_rational_flag(const std::string& s, const char* flag) {
    try {
        return parse_fraction(s);
    } catch (const domain_error& e) {
        throw domain_error(std::string(flag) + ": " + e.what());
    }
}

std::vector<int> parse_bits(const std::string& s) {
    std::vector<int> bits;
    for (char c : s) {
        if (c != '0' && c != '1') throw domain_error("--bits must be a string of 0s and 1s");
        bits.push_back(c - '0');
    }
    return bits;
}

ordered_json balls_to_json(const BallUnion& u) {
    auto rows = ordered_json::array();
    for (const auto& b : u.balls()) rows.push_back({{"depth", b.depth}, {"residue", b.residue.str()}});
    return rows;
}

ordered_json intervals_to_json(const IntervalUnion& u) {
    auto rows = ordered_json::array();
    for (const auto& [lo, hi] : u.intervals())
        rows.push_back({to_fraction_string(lo), to_fraction_string(hi)});
    return rows;
}

void emit_json(const ordered_json& j) { std::cout << j.dump() << "\n"; }

void emit_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
    std::cout << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
        std::cout << "\n";
    }
}

std::string fmt_double(double v) {
    ordered_json j = v;
    return j.dump();
}

// ---- measure ----------------------------------------------------------

struct MeasureArgs {
    std::int64_t p = 2;
    std::int64_t n = 1;
    std::string set = "A";
    PsiOptions psi;
    OutputOptions out;
};

void run_measure(const MeasureArgs& args) {
    require_prime_flag(args.p);
    const SetKind kind = set_kind_from_string(args.set);
    const PsiSpec psi = args.psi.resolve();
    const BallUnion u = build_set(kind, args.p, args.n, psi);
    const std::string measure = to_fraction_string(u.measure());
    if (args.out.format == "csv") {
        emit_csv({"p", "n", "set", "measure"},
                 {{std::to_string(args.p), std::to_string(args.n), to_string(kind), measure}});
        return;
    }
    ordered_json j;
    j["command"] = "measure";
    j["p"] = args.p;
    j["n"] = args.n;
    j["set"] = to_string(kind);
    j["measure"] = measure;
    j["balls"] = balls_to_json(u);
    emit_json(j);
}

// ---- window ------------------------------------------------------------

struct WindowArgs {
    std::int64_t p = 2;
    std::string set = "B";
    std::int64_t m = 1;
    std::int64_t N = 1;
    std::vector<std::int64_t> ladder;
    PsiOptions psi;
    OutputOptions out;
};

void run_window(const WindowArgs& args) {
    require_prime_flag(args.p);
    const SetKind kind = set_kind_from_string(args.set);
    const PsiSpec psi = args.psi.resolve();
    std::vector<std::int64_t> ladder = args.ladder;
    if (ladder.empty()) ladder.push_back(args.m);
    const WindowReport report = limsup_ladder(args.p, psi, kind, args.N, ladder);
    if (args.out.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : report.rows)
            rows.push_back({std::to_string(row.start), std::to_string(row.end),
                            to_fraction_string(row.measure)});
        emit_csv({"m", "N", "measure"}, rows);
        return;
    }
    ordered_json j;
    j["command"] = "window";
    j["p"] = args.p;
    j["set"] = to_string(kind);
    j["N"] = args.N;
    auto rows = ordered_json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"m", row.start},
                        {"N", row.end},
                        {"measure", to_fraction_string(row.measure)},
                        {"balls", balls_to_json(row.set)}});
    }
    j["rows"] = std::move(rows);
    emit_json(j);
}

// ---- spectrum ----------------------------------------------------------

struct SpectrumArgs {
    std::int64_t p = 2;
    std::string bits;
    std::int64_t N = 1;
    OutputOptions out;
};

void run_spectrum(const SpectrumArgs& args) {
    require_prime_flag(args.p);
    const std::vector<int> bits = parse_bits(args.bits);
    const BallUnion predicted = predicted_spectrum_set(args.p, bits);
    const BallUnion window = window_union(args.p, PsiSpec::psi_x(args.p, bits), SetKind::B, 1, args.N);
    const std::string predicted_measure = to_fraction_string(predicted.measure());
    const std::string window_measure = to_fraction_string(window.measure());
    const bool equal = predicted == window;
    if (args.out.format == "csv") {
        emit_csv({"p", "bits", "N", "predicted", "window", "equal"},
                 {{std::to_string(args.p), args.bits, std::to_string(args.N), predicted_measure,
                   window_measure, equal ? "true" : "false"}});
        return;
    }
    ordered_json j;
    j["command"] = "spectrum";
    j["p"] = args.p;
    j["bits"] = args.bits;
    j["N"] = args.N;
    j["predicted"] = predicted_measure;
    j["window"] = window_measure;
    j["equal"] = equal;
    emit_json(j);
}

// ---- lambda ------------------------------------------------------------

struct LambdaArgs {
    std::int64_t n = 1;
    PsiOptions psi;
    OutputOptions out;
};

void run_lambda(const LambdaArgs& args) {
    const PsiSpec psi = args.psi.resolve();
    const IntervalUnion u = build_A_inf(args.n, psi);
    const std::string total = to_fraction_string(lambda(u));
    if (args.out.format == "csv") {
        emit_csv({"n", "lambda"}, {{std::to_string(args.n), total}});
        return;
    }
    ordered_json j;
    j["command"] = "lambda";
    j["n"] = args.n;
    j["lambda"] = total;
    j["intervals"] = intervals_to_json(u);
    emit_json(j);
}

// ---- qia ---------------------------------------------------------------

struct QiaArgs {
    std::int64_t K = 1;
    std::int64_t cap = 100000;
    PsiOptions psi;
    OutputOptions out;
};

void run_qia(const QiaArgs& args) {
    if (args.K < 1) throw domain_error("--K must be positive");
    const PsiSpec psi = args.psi.resolve();
    std::vector<std::vector<std::string>> csv_rows;
    auto rows = ordered_json::array();
    for (std::int64_t K = 1; K <= args.K; ++K) {
        const std::int64_t N = find_NK(psi, K, args.cap);
        const Rational statistic = qia_statistic(psi, N);
        if (args.out.format == "csv") {
            csv_rows.push_back({std::to_string(K), std::to_string(N), to_fraction_string(statistic)});
        } else {
            rows.push_back({{"K", K}, {"N", N}, {"qia", to_fraction_string(statistic)}});
        }
    }
    if (args.out.format == "csv") {
        emit_csv({"K", "N", "qia"}, csv_rows);
        return;
    }
    ordered_json j;
    j["command"] = "qia";
    j["K"] = args.K;
    j["rows"] = std::move(rows);
    emit_json(j);
}

// ---- pv ----------------------------------------------------------------

struct PvArgs {
    std::int64_t max_n = 50;
    PsiOptions psi;
    OutputOptions out;
};

void run_pv(const PvArgs& args) {
    if (args.max_n < 2) throw domain_error("--max-n must be at least 2");
    const PsiSpec psi = args.psi.resolve();
    std::vector<IntervalUnion> sets;
    sets.reserve(static_cast<std::size_t>(args.max_n));
    for (std::int64_t n = 1; n <= args.max_n; ++n) sets.push_back(build_A_inf(n, psi));
    auto rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv_rows;
    Rational max_ratio(0);
    bool any_ratio = false;
    for (std::int64_t n = 2; n <= args.max_n; ++n) {
        for (std::int64_t m = 1; m < n; ++m) {
            const PairStatistics st = pv_rhs(m, n, psi);
            const Rational overlap =
                intersection_length(sets[static_cast<std::size_t>(m - 1)], sets[static_cast<std::size_t>(n - 1)]);
            const Rational lm = sets[static_cast<std::size_t>(m - 1)].length();
            const Rational ln = sets[static_cast<std::size_t>(n - 1)].length();
            const bool lhs_defined = lm != 0 && ln != 0;
            const Rational lhs = lhs_defined ? Rational(overlap / (lm * ln)) : Rational(0);
            const bool ratio_defined = lhs_defined && st.rhs() != 0;
            Rational ratio(0);
            if (ratio_defined) {
                ratio = lhs / st.rhs();
                if (!any_ratio || ratio > max_ratio) {
                    max_ratio = ratio;
                    any_ratio = true;
                }
            }
            if (args.out.format == "csv") {
                csv_rows.push_back({std::to_string(m), std::to_string(n), std::to_string(st.gcd),
                                    to_fraction_string(st.big_m), st.indicator ? "true" : "false",
                                    to_fraction_string(st.pv_product), to_fraction_string(overlap),
                                    lhs_defined ? to_fraction_string(lhs) : "",
                                    ratio_defined ? to_fraction_string(ratio) : ""});
            } else {
                ordered_json row;
                row["m"] = m;
                row["n"] = n;
                row["gcd"] = st.gcd;
                row["big_m"] = to_fraction_string(st.big_m);
                row["indicator"] = st.indicator;
                row["pv_product"] = to_fraction_string(st.pv_product);
                row["intersect"] = to_fraction_string(overlap);
                if (lhs_defined) row["lhs"] = to_fraction_string(lhs);
                if (ratio_defined) row["ratio"] = to_fraction_string(ratio);
                rows.push_back(std::move(row));
            }
        }
    }
    if (args.out.format == "csv") {
        emit_csv({"m", "n", "gcd", "big_m", "indicator", "pv_product", "intersect", "lhs", "ratio"}, csv_rows);
        return;
    }
    ordered_json j;
    j["command"] = "pv";
    j["max_n"] = args.max_n;
    j["rows"] = std::move(rows);
    if (any_ratio) j["max_ratio"] = to_fraction_string(max_ratio);
    emit_json(j);
}

// ---- et ----------------------------------------------------------------

struct EtArgs {
    std::int64_t X = 1;
    std::int64_t Y = 1;
    std::string t = "1";
    std::string threshold = "10";
    PsiOptions psi;
    OutputOptions out;
};

void run_et(const EtArgs& args) {
    const Rational t = parse_rational_flag(args.t, "--t");
    const Rational threshold = parse_rational_flag(args.threshold, "--threshold");
    const PsiSpec psi = args.psi.resolve();
    const EtResult result = et_enumerate(args.X, args.Y, t, psi, threshold);
    if (args.out.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [v, w] : result.pairs) rows.push_back({std::to_string(v), std::to_string(w)});
        emit_csv({"v", "w"}, rows);
        return;
    }
    ordered_json j;
    j["command"] = "et";
    j["X"] = args.X;
    j["Y"] = args.Y;
    j["t"] = to_fraction_string(t);
    j["threshold"] = to_fraction_string(threshold);
    auto pairs = ordered_json::array();
    for (const auto& [v, w] : result.pairs) pairs.push_back({v, w});
    j["pairs"] = std::move(pairs);
    j["count"] = result.pairs.size();
    j["weighted_sum"] = to_fraction_string(result.weighted_sum);
    emit_json(j);
}

// ---- mertens -----------------------------------------------------------

struct MertensArgs {
    std::vector<std::int64_t> xs;
    OutputOptions out;
};

void run_mertens(const MertensArgs& args) {
    if (args.xs.empty()) throw domain_error("--x is required");
    auto rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv_rows;
    for (const std::int64_t x : args.xs) {
        const Rational sum = mertens_sum(x);
        const double loglog = std::log(std::log(static_cast<double>(x)));
        const double deviation = to_double(sum) - loglog - mertens_b;
        if (args.out.format == "csv") {
            csv_rows.push_back({std::to_string(x), to_fraction_string(sum), fmt_double(loglog),
                                fmt_double(deviation)});
        } else {
            rows.push_back({{"x", x},
                            {"sum", to_fraction_string(sum)},
                            {"loglog_x", loglog},
                            {"deviation", deviation}});
        }
    }
    if (args.out.format == "csv") {
        emit_csv({"x", "sum", "loglog_x", "deviation"}, csv_rows);
        return;
    }
    ordered_json j;
    j["command"] = "mertens";
    j["b"] = mertens_b;
    j["rows"] = std::move(rows);
    emit_json(j);
}

// ---- simulate ----------------------------------------------------------

struct SimulateArgs {
    std::int64_t p = 2;
    std::string set = "B";
    std::int64_t m = 1;
    std::int64_t N = 1;
    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
    PsiOptions psi;
    OutputOptions out;
};

void run_simulate(const SimulateArgs& args) {
    require_prime_flag(args.p);
    const SetKind kind = set_kind_from_string(args.set);
    const PsiSpec psi = args.psi.resolve();
    const BallUnion u = window_union(args.p, psi, kind, args.m, args.N);
    const Estimate est = estimate_measure(args.p, psi, kind, args.m, args.N, args.trials, args.seed);
    const std::string exact = to_fraction_string(u.measure());
    const std::string point = to_fraction_string(est.point);
    if (args.out.format == "csv") {
        emit_csv({"p", "set", "m", "N", "trials", "seed", "hits", "point", "std_error", "exact"},
                 {{std::to_string(args.p), to_string(kind), std::to_string(args.m), std::to_string(args.N),
                   std::to_string(args.trials), std::to_string(args.seed), std::to_string(est.hits), point,
                   fmt_double(est.std_error), exact}});
        return;
    }
    ordered_json j;
    j["command"] = "simulate";
    j["p"] = args.p;
    j["set"] = to_string(kind);
    j["m"] = args.m;
    j["N"] = args.N;
    j["trials"] = args.trials;
    j["seed"] = args.seed;
    j["precision"] = std::max(1, u.max_depth());
    j["exact"] = exact;
    j["hits"] = est.hits;
    j["point"] = point;
    j["std_error"] = est.std_error;
    emit_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact p-adic approximation sets, measures, and Monte Carlo cross-checks"};
    app.require_subcommand(1);

    MeasureArgs measure_args;
    auto* measure = app.add_subcommand("measure", "Exact Haar measure of one approximation set");
    measure->add_option("--p", measure_args.p, "Prime")->required();
    measure->add_option("--n", measure_args.n, "Denominator n")->required()->check(CLI::PositiveNumber);
    measure->add_option("--set", measure_args.set, "Set family: A or B");
    add_psi_flags(measure, measure_args.psi);
    add_format_flag(measure, measure_args.out);

    WindowArgs window_args;
    auto* window = app.add_subcommand("window", "Window unions over [m, N] with a ladder of starts");
    window->add_option("--p", window_args.p, "Prime")->required();
    window->add_option("--set", window_args.set, "Set family: A or B");
    window->add_option("--m", window_args.m, "Window start")->check(CLI::PositiveNumber);
    window->add_option("--N", window_args.N, "Window end")->required()->check(CLI::PositiveNumber);
    window->add_option("--ladder", window_args.ladder, "Comma-separated window starts")->delimiter(',');
    add_psi_flags(window, window_args.psi);
    add_format_flag(window, window_args.out);

    SpectrumArgs spectrum_args;
    auto* spectrum = app.add_subcommand("spectrum", "Predicted annulus union vs the built window");
    spectrum->add_option("--p", spectrum_args.p, "Prime")->required();
    spectrum->add_option("--bits", spectrum_args.bits, "Bit list, e.g. 101")->required();
    spectrum->add_option("--N", spectrum_args.N, "Window end")->required()->check(CLI::PositiveNumber);
    add_format_flag(spectrum, spectrum_args.out);

    LambdaArgs lambda_args;
    auto* lambda_cmd = app.add_subcommand("lambda", "Lebesgue measure of the real interval union");
    lambda_cmd->add_option("--n", lambda_args.n, "Denominator n")->required()->check(CLI::PositiveNumber);
    add_psi_flags(lambda_cmd, lambda_args.psi);
    add_format_flag(lambda_cmd, lambda_args.out);

    QiaArgs qia_args;
    auto* qia = app.add_subcommand("qia", "Quasi-independence statistic along the N_K ladder");
    qia->add_option("--K", qia_args.K, "Ladder height")->required()->check(CLI::PositiveNumber);
    qia->add_option("--cap", qia_args.cap, "Search cap for N_K")->check(CLI::PositiveNumber);
    add_psi_flags(qia, qia_args.psi);
    add_format_flag(qia, qia_args.out);

    PvArgs pv_args;
    auto* pv = app.add_subcommand("pv", "Pairwise overlap ratios against the product bound");
    pv->add_option("--max-n", pv_args.max_n, "Grid bound: all pairs m < n <= max-n")->required();
    add_psi_flags(pv, pv_args.psi);
    add_format_flag(pv, pv_args.out);

    EtArgs et_args;
    auto* et = app.add_subcommand("et", "Enumerate the correlated-pair set on a grid");
    et->add_option("--X", et_args.X, "Grid start")->required()->check(CLI::PositiveNumber);
    et->add_option("--Y", et_args.Y, "Grid end")->required()->check(CLI::PositiveNumber);
    et->add_option("--t", et_args.t, "Parameter t >= 1, as num or num/den");
    et->add_option("--threshold", et_args.threshold, "Prime-sum threshold, default 10");
    add_psi_flags(et, et_args.psi);
    add_format_flag(et, et_args.out);

    MertensArgs mertens_args;
    auto* mertens = app.add_subcommand("mertens", "Exact prime reciprocal sums vs ln ln x + b");
    mertens->add_option("--x", mertens_args.xs, "Evaluation points (repeat or comma-separate)")
        ->required()
        ->delimiter(',');
    add_format_flag(mertens, mertens_args.out);

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo estimate of a window union");
    simulate->add_option("--p", simulate_args.p, "Prime")->required();
    simulate->add_option("--set", simulate_args.set, "Set family: A or B");
    simulate->add_option("--m", simulate_args.m, "Window start")->check(CLI::PositiveNumber);
    simulate->add_option("--N", simulate_args.N, "Window end")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--trials", simulate_args.trials, "Number of samples")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", simulate_args.seed, "Stream seed");
    add_psi_flags(simulate, simulate_args.psi);
    add_format_flag(simulate, simulate_args.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (measure->parsed()) run_measure(measure_args);
        if (window->parsed()) run_window(window_args);
        if (spectrum->parsed()) run_spectrum(spectrum_args);
        if (lambda_cmd->parsed()) run_lambda(lambda_args);
        if (qia->parsed()) run_qia(qia_args);
        if (pv->parsed()) run_pv(pv_args);
        if (et->parsed()) run_et(et_args);
        if (mertens->parsed()) run_mertens(mertens_args);
        if (simulate->parsed()) run_simulate(simulate_args);
    } catch (const computation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
