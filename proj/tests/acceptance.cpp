// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fracmink/errors.hpp"
#include "fracmink/funclang.hpp"
#include "fracmink/harness.hpp"
#include "fracmink/kernels.hpp"
#include "fracmink/operators.hpp"
#include "fracmink/special_functions.hpp"

namespace {

using namespace fracmink;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel_err(double got, double want) {
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

RealFunction fn(const std::string& text) {
    const FunctionExpr e = FunctionExpr::parse(text);
    return [e](double t) { return e.eval(t); };
}

std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. General operator with the RL kernel against the monomial closed form.
Outcome rl_oracle() {
    double worst = 0.0;
    for (double sigma : {0.5, 1.0, 2.0}) {
        for (double mu : {0.0, 1.0, 2.5}) {
            const RealFunction f = [mu](double t) { return std::pow(t, mu); };
            const double got =
                frac_integral_direct(make_rl_kernel(sigma), {sigma, 0.0}, f, Interval::left(0.0, 1.5)).value;
            worst = std::max(worst, rel_err(got, rl_monomial_closed_form(sigma, mu, 0.0, 1.5)));
        }
    }
    return {worst <= 1e-8, "9 cases, max rel err " + g(worst)};
}

// 2. Series route against direct quadrature over the kernel x function x interval matrix.
Outcome cross_method() {
    struct K {
        AnalyticKernel k;
        FractionalOrder o;
    };
    std::vector<K> kernels;
    for (double a : {0.5, 1.0, 1.5}) kernels.push_back({make_rl_kernel(a), {a, 0.0}});
    kernels.push_back({make_constant_kernel(1.5), {0.8, 0.0}});
    for (double rho : {0.5, 1.0}) kernels.push_back({make_proportional_kernel(rho, 1.3), {1.3, 1.0}});
    for (double rho : {0.5, 1.0, 2.0}) {
        for (double omega : {0.0, 0.3, 1.0}) {
            kernels.push_back({make_prabhakar_kernel(rho, omega, {1.2, 0.7}), {1.2, 0.7}});
        }
    }
    const char* const functions[] = {"1", "theta", "theta^2", "sin(theta) + 2", "exp(theta)"};
    const Interval intervals[] = {Interval::left(0.0, 1.0), Interval::left(1.0, 2.0)};
    std::size_t combos = 0;
    std::size_t bad = 0;
    double worst = 0.0;
    for (const K& k : kernels) {
        for (const char* ftext : functions) {
            const RealFunction f = fn(ftext);
            for (const Interval& iv : intervals) {
                const OperatorValue d = frac_integral_direct(k.k, k.o, f, iv);
                const OperatorValue s = frac_integral_series(k.k, k.o, f, iv);
                const double diff = std::abs(d.value - s.value);
                const double rel = rel_err(s.value, d.value);
                worst = std::max(worst, rel);
                if (rel > 1e-6 || diff > 10.0 * (d.error_estimate + s.error_estimate) + 1e-13 * std::abs(d.value)) {
                    ++bad;
                    std::printf("  mismatch: %s f=%s a=%g direct=%.17g series=%.17g\n", k.k.name().c_str(), ftext,
                                iv.a, d.value, s.value);
                }
                ++combos;
            }
        }
    }
    return {bad == 0 && combos >= 60,
            std::to_string(combos) + " combinations, " + std::to_string(bad) + " mismatches, max rel diff " + g(worst)};
}

// 3. Reduction identities.
Outcome reductions() {
    double w_rl = 0.0;
    for (double alpha : {0.5, 1.0, 1.7}) {
        for (double beta : {0.3, 1.0}) {
            for (const char* ftext : {"1", "theta^2 + 1", "cos(theta)"}) {
                const RealFunction f = fn(ftext);
                const Interval iv = Interval::left(0.5, 1.8);
                const double p = frac_integral_direct(make_prabhakar_kernel(1.3, 0.0, {alpha, beta}), {alpha, beta},
                                                      f, iv)
                                     .value;
                const double r = frac_integral_direct(make_rl_kernel(alpha), {alpha, 0.0}, f, iv).value;
                w_rl = std::max(w_rl, rel_err(p, r));
            }
        }
    }
    double w_tr = 0.0;
    for (double rho : {0.5, 1.0, 2.0}) {
        for (double omega : {0.3, 1.0, 2.0}) {
            for (int i = 0; i <= 9; ++i) {
                const double x = 0.09 * i / omega; // omega x in [0, 0.81]
                for (double wx : {omega * x, 0.9}) {
                    const double u = wx / omega;
                    const FractionalOrder o{1.1, 0.6};
                    const double got = kernel_transform_eval(make_prabhakar_kernel(rho, omega, o), o, u).value;
                    w_tr = std::max(w_tr, rel_err(got, std::pow(1.0 - omega * u, -rho)));
                }
            }
        }
    }
    double w_ml = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double z = -5.0 + 0.01 * i;
        w_ml = std::max(w_ml, rel_err(mittag_leffler3({1.0, 1.0, 1.0, z}), std::exp(z)));
    }
    return {w_rl <= 1e-10 && w_tr <= 1e-8 && w_ml <= 1e-10,
            "Prabhakar(omega=0) vs RL " + g(w_rl) + ", A_Gamma vs (1-omega x)^-rho " + g(w_tr) + ", E(1,1,1) vs exp " +
                g(w_ml)};
}

// 4. Equality cases f1 = f2, tau1 = tau2 = 1.
Outcome equality_cases() {
    // The budget is ten times the quadrature error estimates, so at the default
    // 1e-9 relative tolerance sides of order ten give budgets near 2e-7.
    constexpr double kEqualityTol = 1e-10;
    double worst_budget = 0.0;
    std::size_t bad = 0;
    std::size_t n = 0;
    struct K {
        AnalyticKernel k;
        FractionalOrder o;
    };
    const K kernels[] = {{make_rl_kernel(1.5), {1.5, 0.0}}, {make_rl_kernel(0.5), {0.5, 0.0}},
                         {make_prabhakar_kernel(1.2, 0.3, {1.0, 0.8}), {1.0, 0.8}}};
    for (const K& k : kernels) {
        for (const char* ftext : {"1", "theta + 1", "2 + sin(theta)"}) {
            Scenario s;
            s.id = "equality";
            s.kernel = k.k;
            s.order = k.o;
            s.iv = Interval::left(1.0, 2.0);
            s.f1 = fn(ftext);
            s.f2 = fn(ftext);
            s.bounds = {1.0, 1.0};
            s.quad.abs_tol = kEqualityTol;
            s.quad.rel_tol = kEqualityTol;
            for (Theorem t : {Theorem::T31, Theorem::T32, Theorem::T41, Theorem::T45, Theorem::T46}) {
                const InequalityReport r = run_theorem(t, s);
                ++n;
                worst_budget = std::max(worst_budget, r.error_budget);
                if (!(std::abs(r.margin) <= r.error_budget && r.error_budget <= 1e-7)) {
                    ++bad;
                    std::printf("  %s %s f=%s margin=%.3g budget=%.3g\n", k.k.name().c_str(),
                                std::string(theorem_name(t)).c_str(), ftext, r.margin, r.error_budget);
                }
            }
        }
    }
    return {bad == 0, std::to_string(n) + " reports at quadrature tolerance " + g(kEqualityTol) + ", " +
                          std::to_string(bad) + " outside, max budget " + g(worst_budget)};
}

// 5. Canned examples on RL and Prabhakar kernels.
Outcome examples() {
    std::vector<Scenario> scenarios;
    auto add = [&](const FractionalOrder& o, const AnalyticKernel& k, const std::string& tag) {
        for (int id = 1; id <= kCannedExampleCount; ++id) {
            Scenario s = canned_example(id, 1.0, o, k, Interval::left(1.0, 2.0), 2.0);
            s.id = tag + "-example" + std::to_string(id);
            scenarios.push_back(std::move(s));
        }
    };
    for (double a : {0.5, 1.0, 1.5}) add({a, 0.0}, make_rl_kernel(a), "rl" + g(a));
    add({1.0, 0.8}, make_prabhakar_kernel(1.2, 0.3, {1.0, 0.8}), "prabhakar");
    const std::vector<Theorem> all(std::begin(kAllTheorems), std::end(kAllTheorems));
    const SuiteResult r = run_suite(scenarios, all, 1);
    bool ok = r.entries.size() == 32 && r.counts.holds == 32;
    double min_margin = INFINITY;
    bool seven_sixths = true;
    for (const SuiteEntry& e : r.entries) {
        min_margin = std::min(min_margin, e.report.margin);
        if (!(e.report.margin >= -1e-9)) ok = false;
        if (e.report.theorem == Theorem::T31) {
            const Side* c = e.report.find("C");
            seven_sixths = seven_sixths && c != nullptr && c->value == 7.0 / 6.0;
        }
    }
    return {ok && seven_sixths, std::to_string(r.entries.size()) + " reports, " + summary_line(r.counts) +
                                    ", min margin " + g(min_margin) + ", C == 7/6: " + (seven_sixths ? "yes" : "no")};
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// 6. Fuzz suite over 200 admissible seeds.
Outcome fuzz() {
    std::vector<Scenario> scenarios;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) scenarios.push_back(random_scenario(seed, Family::Admissible));
    const std::vector<Theorem> all(std::begin(kAllTheorems), std::end(kAllTheorems));
    const SuiteResult r = run_suite(scenarios, all, workers());
    for (const SuiteEntry& e : r.entries) {
        if (e.report.verdict == Verdict::Violated) {
            std::printf("  violation: %s %s margin=%.17g budget=%.3g\n", e.scenario_id.c_str(),
                        std::string(theorem_name(e.report.theorem)).c_str(), e.report.margin, e.report.error_budget);
        }
    }
    return {r.counts.violated == 0 && r.counts.total() == 1600,
            summary_line(r.counts) + " over " + std::to_string(r.counts.total()) + " reports"};
}

// 7. Byte-identical CSV at parallelism 1 and 8.
Outcome determinism() {
    std::vector<Scenario> scenarios;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) scenarios.push_back(random_scenario(seed, Family::Admissible));
    const std::vector<Theorem> all(std::begin(kAllTheorems), std::end(kAllTheorems));
    std::ostringstream one;
    std::ostringstream eight;
    emit_report(run_suite(scenarios, all, 1), ReportFormat::Csv, one);
    emit_report(run_suite(scenarios, all, 8), ReportFormat::Csv, eight);
    return {one.str() == eight.str(), std::to_string(one.str().size()) + " bytes, " +
                                          (one.str() == eight.str() ? "identical" : "different")};
}

// 8. Gamma recurrence, reflection and the value at one half.
Outcome gamma_properties() {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> rec(0.1, 50.0);
    std::uniform_real_distribution<double> refl(1e-6, 1.0 - 1e-6);
    double w_rec = 0.0;
    double w_refl = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = rec(rng);
        w_rec = std::max(w_rec, rel_err(fracmink::gamma(x + 1.0), x * fracmink::gamma(x)));
        const double y = refl(rng);
        w_refl = std::max(w_refl, std::abs(fracmink::gamma(y) * fracmink::gamma(1.0 - y) *
                                               std::sin(std::numbers::pi * y) / std::numbers::pi -
                                           1.0));
    }
    const double w_half = rel_err(fracmink::gamma(0.5), std::sqrt(std::numbers::pi));
    return {w_rec <= 1e-12 && w_refl <= 1e-10 && w_half <= 1e-13,
            "recurrence " + g(w_rec) + ", reflection " + g(w_refl) + ", Gamma(0.5) " + g(w_half)};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "RL operator matches monomial closed form", 5.0, rl_oracle},
        {2, "series and direct routes agree", 60.0, cross_method},
        {3, "reduction identities", 60.0, reductions},
        {4, "equality cases within error budget", 60.0, equality_cases},
        {5, "canned examples hold", 30.0, examples},
        {6, "fuzz suite has no violations", 600.0, fuzz},
        {7, "fuzz CSV independent of parallelism", 600.0, determinism},
        {8, "gamma function properties", 60.0, gamma_properties},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds) {
            o.pass = false;
            o.detail += "; exceeded " + g(c.limit_seconds) + " s";
        }
        std::printf("criterion %d %s: %s (%s; %.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d of 8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
