#include "fracmink/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "fracmink/funclang.hpp"

namespace fracmink {

namespace {

RealFunction compile(const std::string& text) {
    const FunctionExpr e = FunctionExpr::parse(text);
    return [e](double t) { return e.eval(t); };
}

void set_functions(Scenario& s, const std::string& f1, const std::string& f2) {
    s.f1 = compile(f1);
    s.f2 = compile(f2);
    s.f1_text = FunctionExpr::parse(f1).to_string();
    s.f2_text = FunctionExpr::parse(f2).to_string();
}

// Shortest text that reads back to the same double.
std::string num(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    return v < 0.0 ? "(" + s + ")" : s;
}

// Uniform double in [lo, hi] from the top 53 bits; identical on every platform.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    double operator()(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace

Scenario canned_example(int id, double ell, const FractionalOrder& order, const AnalyticKernel& kernel,
                        const Interval& iv, double p, double phi) {
    if (id < 1 || id > kCannedExampleCount) {
        throw Error(ErrorKind::Range, "example id must be in 1..8, got " + std::to_string(id));
    }
    if (!(ell > 0.0) || !std::isfinite(ell)) throw Error(ErrorKind::Constraint, "ell must be positive");
    Scenario s;
    s.id = "example" + std::to_string(id);
    s.kernel = kernel;
    s.order = order;
    s.iv = iv;
    s.p = p;
    s.q = conjugate_exponent(p);
    static constexpr Theorem kBinding[] = {Theorem::T31, Theorem::T32, Theorem::T41, Theorem::T42,
                                           Theorem::T43, Theorem::T44, Theorem::T45, Theorem::T46};
    s.theorems = {kBinding[id - 1]};

    if (id == 6) {
        set_functions(s, "sin(theta)^2", "cos(theta)^2");
        s.box = Box{0.0, 1.0, 0.0, 1.0};
        s.bounds = {1.0, 1.0};
    } else {
        if (!(iv.a >= 1.0)) {
            throw Error(ErrorKind::Constraint, "example " + std::to_string(id) + " needs a >= 1");
        }
        set_functions(s, "theta + " + num(ell), "theta");
        s.bounds = {1.0, ell + 1.0};
        if (id == 5) s.phi = phi;
        if (id == 8) {
            const std::string ups =
                "max(" + num(ell * (2.0 + ell)) + " + theta, theta*" + num(1.0 + ell) + " - " + num(ell) + ")";
            s.upsilon = compile(ups);
            s.upsilon_text = FunctionExpr::parse(ups).to_string();
        }
    }
    s.validate();
    return s;
}

Scenario canned_example(int id, double alpha) {
    const FractionalOrder order = FractionalOrder::make(alpha, 0.0);
    return canned_example(id, 1.0, order, make_rl_kernel(alpha), Interval::left(1.0, 2.0), 2.0);
}

std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::Rl: return "rl";
        case Family::Constant: return "constant";
        case Family::Prabhakar: return "prabhakar";
        case Family::ProportionalReportOnly: return "proportional-report-only";
        case Family::Admissible: return "admissible";
    }
    return "admissible";
}

std::optional<Family> parse_family(std::string_view name) {
    if (name == "rl") return Family::Rl;
    if (name == "constant") return Family::Constant;
    if (name == "prabhakar") return Family::Prabhakar;
    if (name == "proportional-report-only" || name == "proportional") return Family::ProportionalReportOnly;
    if (name == "admissible") return Family::Admissible;
    return std::nullopt;
}

Scenario random_scenario(std::uint64_t seed, Family family) {
    if (family == Family::Admissible) {
        static constexpr Family kCycle[] = {Family::Rl, Family::Constant, Family::Prabhakar};
        family = kCycle[seed % 3];
    }
    Draw draw(seed);
    Scenario s;
    s.id = "seed-" + std::to_string(seed);

    const double alpha = draw(0.3, 2.5);
    const double beta_draw = draw(0.0, 1.5);
    const bool flat = family == Family::Rl || family == Family::Constant;
    s.order = FractionalOrder::make(alpha, flat ? 0.0 : beta_draw);

    const double a = draw(0.0, 2.0);
    const double len = draw(0.2, 2.0);
    s.iv = Interval::left(a, a + len);

    const double tau1 = draw(0.2, 2.0);
    const double spread = draw(0.0, 3.0);
    s.bounds = {tau1, tau1 + spread};
    s.p = draw(1.0, 4.0);
    s.q = conjugate_exponent(s.p);

    const double c0 = draw(0.1, 2.0);
    const double c1 = draw(0.0, 1.0);
    const double c2 = draw(0.0, 1.0);
    const double omega = draw(0.5, 6.0);
    const double phase = draw(0.0, 2.0 * std::numbers::pi);
    const std::string f2 = num(c0) + " + " + num(c1) + "*theta + " + num(c2) + "*theta^2";
    const std::string r = num(tau1) + " + " + num(spread) + "*(1 + sin(" + num(omega) + "*theta + " + num(phase) + "))/2";
    set_functions(s, "(" + r + ")*(" + f2 + ")", f2);

    s.phi = tau1 / 2.0;
    // f2 is nondecreasing for theta >= 0, so its extremes sit at the endpoints.
    const double f2_lo = s.f2(s.iv.a);
    const double f2_hi = s.f2(s.iv.x);
    constexpr double slack = 1e-9;
    s.box = Box{tau1 * f2_lo * (1.0 - slack), s.bounds.tau2 * f2_hi * (1.0 + slack), f2_lo * (1.0 - slack),
                f2_hi * (1.0 + slack)};

    const double k1 = draw(0.0, 1.0);
    const double k2 = draw(0.0, 1.0);
    switch (family) {
        case Family::Rl: s.kernel = make_rl_kernel(alpha); break;
        case Family::Constant: s.kernel = make_constant_kernel(0.2 + 2.8 * k1); break;
        case Family::Prabhakar: s.kernel = make_prabhakar_kernel(2.0 * k1, 1.5 * k2, s.order); break;
        case Family::ProportionalReportOnly: s.kernel = make_proportional_kernel(0.2 + 0.75 * k1, alpha); break;
        case Family::Admissible: break;
    }
    s.validate();
    return s;
}

bool SuiteResult::any_admissible_violation() const {
    return std::any_of(entries.begin(), entries.end(), [](const SuiteEntry& e) {
        return e.report.verdict == Verdict::Violated && e.report.kernel_admissible;
    });
}

bool SuiteResult::any_numerical_failure() const {
    return std::any_of(entries.begin(), entries.end(),
                       [](const SuiteEntry& e) { return e.failure && is_numerical(*e.failure); });
}

bool natural_less(std::string_view a, std::string_view b) {
    std::size_t i = 0;
    std::size_t j = 0;
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            std::size_t ie = i;
            std::size_t je = j;
            while (ie < a.size() && digit(a[ie])) ++ie;
            while (je < b.size() && digit(b[je])) ++je;
            std::string_view da = a.substr(i, ie - i);
            std::string_view db = b.substr(j, je - j);
            while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
            while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
            if (da.size() != db.size()) return da.size() < db.size();
            if (da != db) return da < db;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;
}

SuiteResult run_suite(const std::vector<Scenario>& scenarios, const std::vector<Theorem>& theorems,
                      std::size_t parallelism) {
    const auto start = std::chrono::steady_clock::now();
    struct Job {
        std::size_t scenario;
        Theorem theorem;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        for (Theorem t : theorems) {
            if (scenarios[i].applicable(t)) jobs.push_back({i, t});
        }
    }

    SuiteResult result;
    result.entries.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < jobs.size(); k = next.fetch_add(1)) {
            const Job& job = jobs[k];
            const Scenario& s = scenarios[job.scenario];
            SuiteEntry& entry = result.entries[k];
            entry.scenario_id = s.id;
            try {
                entry.report = run_theorem(job.theorem, s);
            } catch (const Error& e) {
                entry.failure = e.kind();
                entry.report = InequalityReport{};
                entry.report.theorem = job.theorem;
                entry.report.margin = std::nan("");
                entry.report.relative_margin = std::nan("");
                entry.report.verdict = Verdict::Inconclusive;
                entry.report.note = e.what();
                try {
                    entry.report.kernel_admissible = validate_kernel(s.kernel, s.order, s.iv).admissible;
                } catch (const Error&) {
                    entry.report.kernel_admissible = false;
                }
            }
        }
    };

    const std::size_t n_threads = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(jobs.size(), 1));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    std::stable_sort(result.entries.begin(), result.entries.end(), [](const SuiteEntry& l, const SuiteEntry& r) {
        if (l.scenario_id != r.scenario_id) return natural_less(l.scenario_id, r.scenario_id);
        return l.report.theorem < r.report.theorem;
    });
    for (const SuiteEntry& e : result.entries) {
        switch (e.report.verdict) {
            case Verdict::Holds: ++result.counts.holds; break;
            case Verdict::Violated: ++result.counts.violated; break;
            case Verdict::Inconclusive: ++result.counts.inconclusive; break;
        }
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace fracmink
