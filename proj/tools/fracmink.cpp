// Command line front end: operator evaluation, scenario checks, the canned
// examples, seeded fuzzing and margin plots.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "fracmink/errors.hpp"
#include "fracmink/funclang.hpp"
#include "fracmink/harness.hpp"
#include "fracmink/operators.hpp"

namespace {

using namespace fracmink;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Output {
    std::string format = "text";
    std::string out;
    std::string svg;

    void add(CLI::App* cmd, const char* default_format) {
        format = default_format;
        cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "csv", "svg"}));
        cmd->add_option("--out", out, "Write the report to this file instead of stdout");
        cmd->add_option("--svg", svg, "Also write a margin scatter plot (SVG) to this file");
    }

    void write(const SuiteResult& r) const {
        const ReportFormat fmt = *parse_report_format(format);
        if (out.empty()) emit_report(r, fmt, std::cout);
        else emit_report(r, fmt, out);
        if (!svg.empty()) emit_report(r, ReportFormat::SvgMargins, svg);
    }
};

int suite_exit(const SuiteResult& r, bool violations_fail) {
    if (violations_fail && r.any_admissible_violation()) return kExitViolation;
    if (r.any_numerical_failure()) return kExitNumerical;
    return kExitOk;
}

void print_value(const char* label, const OperatorValue& v) {
    std::cout << label << " value=" << g17(v.value) << " error_estimate=" << g17(v.error_estimate)
              << " method=" << method_name(v.method) << " terms_or_cells=" << v.terms_or_cells << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional integrals with analytic kernels and numerical checks of reverse Minkowski inequalities"};
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate one left fractional integral at x");
    std::string kernel_spec = "rl";
    double alpha = 1.0;
    double beta = 0.0;
    std::string f_text = "1";
    double a = 0.0;
    double x = 1.0;
    std::string method = "direct";
    QuadratureSpec quad;
    double series_tol = kDefaultSeriesTol;
    eval->add_option("--kernel", kernel_spec,
                     "rl | constant:c=V | proportional:rho=V | prabhakar:rho=V,omega=V | series:coeff=EXPR,radius=V");
    eval->add_option("--alpha", alpha, "Order alpha > 0");
    eval->add_option("--beta", beta, "Order beta >= 0");
    eval->add_option("--f", f_text, "Integrand as an expression in theta");
    eval->add_option("--a", a, "Lower limit");
    eval->add_option("--x", x, "Evaluation point (x > a)");
    eval->add_option("--method", method, "direct | series | both")->check(CLI::IsMember({"direct", "series", "both"}));
    eval->add_option("--abs-tol", quad.abs_tol, "Quadrature absolute tolerance");
    eval->add_option("--rel-tol", quad.rel_tol, "Quadrature relative tolerance");
    eval->add_option("--series-tol", series_tol, "Series truncation tolerance");

    // check
    auto* check = app.add_subcommand("check", "Check inequality theorems on a scenario file");
    std::string scenario_path;
    std::string theorem_list = "all";
    std::size_t parallelism = 1;
    Output check_out;
    check->add_option("--scenario", scenario_path, "Scenario file")->required();
    check->add_option("--theorems", theorem_list, "Comma separated theorem ids (thm31 ... thm46) or all");
    check->add_option("-j,--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);
    check_out.add(check, "text");

    // examples
    auto* examples = app.add_subcommand("examples", "Run the canned example scenarios");
    std::string example_id = "all";
    double ell = 1.0;
    double ex_alpha = 1.0;
    double ex_beta = 0.0;
    std::string ex_kernel = "rl";
    double ex_p = 2.0;
    double ex_phi = 0.5;
    double ex_a = 1.0;
    double ex_x = 2.0;
    Output examples_out;
    examples->add_option("--id", example_id, "1..8 or all");
    examples->add_option("--ell", ell, "Shift ell > 0 in f1 = theta + ell");
    examples->add_option("--alpha", ex_alpha, "Order alpha");
    examples->add_option("--beta", ex_beta, "Order beta");
    examples->add_option("--kernel", ex_kernel, "Kernel spec (see eval --help)");
    examples->add_option("--p", ex_p, "Exponent p >= 1");
    examples->add_option("--phi", ex_phi, "Shift phi for the shifted sandwich (0 < phi < 1)");
    examples->add_option("--a", ex_a, "Lower limit (>= 1)");
    examples->add_option("--x", ex_x, "Evaluation point");
    examples_out.add(examples, "text");

    // fuzz
    auto* fuzz = app.add_subcommand("fuzz", "Check all theorems on seeded random scenarios");
    std::uint64_t seeds = 200;
    std::uint64_t seed0 = 1;
    std::string family_text = "admissible";
    bool fail_on_violation = false;
    std::size_t fuzz_parallelism = std::max(1u, std::thread::hardware_concurrency());
    std::string fuzz_theorems = "all";
    Output fuzz_out;
    fuzz->add_option("--seeds", seeds, "Number of scenarios");
    fuzz->add_option("--seed0", seed0, "First seed");
    fuzz->add_option("--family", family_text, "rl | constant | prabhakar | proportional-report-only | admissible");
    fuzz->add_flag("--fail-on-violation", fail_on_violation, "Exit with status 2 on any admissible violation");
    fuzz->add_option("-j,--parallelism", fuzz_parallelism, "Worker threads")->check(CLI::PositiveNumber);
    fuzz->add_option("--theorems", fuzz_theorems, "Comma separated theorem ids or all");
    fuzz_out.add(fuzz, "csv");

    // plot
    auto* plot = app.add_subcommand("plot", "Draw the margin scatter of a CSV report");
    std::string plot_in;
    std::string plot_out;
    plot->add_option("--in", plot_in, "CSV report")->required();
    plot->add_option("--out", plot_out, "SVG output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*eval) {
            const FractionalOrder order = FractionalOrder::make(alpha, beta);
            const AnalyticKernel kernel = kernel_from_spec(kernel_spec, order);
            const FunctionExpr f = FunctionExpr::parse(f_text);
            const RealFunction fn = [&f](double t) { return f.eval(t); };
            const Interval iv = Interval::left(a, x);
            std::optional<OperatorValue> direct;
            std::optional<OperatorValue> series;
            if (method != "series") {
                direct = frac_integral_direct(kernel, order, fn, iv, quad);
                print_value("direct", *direct);
            }
            if (method != "direct") {
                series = frac_integral_series(kernel, order, fn, iv, quad, series_tol);
                print_value("series", *series);
            }
            if (direct && series) {
                const double diff = std::abs(direct->value - series->value);
                std::cout << "difference abs=" << g17(diff)
                          << " rel=" << g17(diff / std::max(std::abs(direct->value), 1e-300)) << '\n';
            }
            return kExitOk;
        }
        if (*check) {
            const Scenario s = load_scenario(scenario_path);
            const SuiteResult r = run_suite({s}, parse_theorem_list(theorem_list), parallelism);
            check_out.write(r);
            return suite_exit(r, true);
        }
        if (*examples) {
            const FractionalOrder order = FractionalOrder::make(ex_alpha, ex_beta);
            const AnalyticKernel kernel = kernel_from_spec(ex_kernel, order);
            const Interval iv = Interval::left(ex_a, ex_x);
            std::vector<int> ids;
            if (example_id == "all") {
                for (int i = 1; i <= kCannedExampleCount; ++i) ids.push_back(i);
            } else {
                std::size_t used = 0;
                int id = 0;
                try {
                    id = std::stoi(example_id, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != example_id.size()) throw Error(ErrorKind::Range, "--id must be 1..8 or all");
                ids.push_back(id);
            }
            std::vector<Scenario> scenarios;
            for (int id : ids) scenarios.push_back(canned_example(id, ell, order, kernel, iv, ex_p, ex_phi));
            const std::vector<Theorem> all(std::begin(kAllTheorems), std::end(kAllTheorems));
            const SuiteResult r = run_suite(scenarios, all, 1);
            examples_out.write(r);
            return suite_exit(r, true);
        }
        if (*fuzz) {
            const auto family = parse_family(family_text);
            if (!family) throw Error(ErrorKind::Parse, "unknown family '" + family_text + "'");
            std::vector<Scenario> scenarios;
            scenarios.reserve(seeds);
            for (std::uint64_t k = 0; k < seeds; ++k) scenarios.push_back(random_scenario(seed0 + k, *family));
            SuiteResult r = run_suite(scenarios, parse_theorem_list(fuzz_theorems), fuzz_parallelism);
            r.seed = seed0;
            fuzz_out.write(r);
            std::cerr << summary_line(r.counts) << " seeds=" << seed0 << ".." << seed0 + seeds - 1
                      << " wall_seconds=" << r.wall_seconds << '\n';
            for (const SuiteEntry& e : r.entries) {
                if (e.report.verdict == Verdict::Violated) {
                    std::cerr << "violation: " << e.scenario_id << ' ' << theorem_name(e.report.theorem)
                              << " margin=" << g17(e.report.margin) << " budget=" << g17(e.report.error_budget)
                              << '\n';
                }
            }
            if (fail_on_violation && r.any_admissible_violation()) return kExitViolation;
            return kExitOk;
        }
        if (*plot) {
            const SuiteResult r = read_csv_report(plot_in);
            emit_report(r, ReportFormat::SvgMargins, plot_out);
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_numerical(e.kind()) ? kExitNumerical : kExitInput;
    }
    return kExitOk;
}
