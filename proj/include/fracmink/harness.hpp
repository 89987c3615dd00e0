#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracmink/errors.hpp"
#include "fracmink/inequalities.hpp"

namespace fracmink {

// ---------------------------------------------------------------------------
// Scenario files
//
// INI-style text, one scenario per file:
//
//   id = optional-name
//   [kernel]      type = rl | constant | proportional | prabhakar | series
//                 c, rho, omega, coeff (expression in n), radius (number or inf)
//   [order]       alpha, beta
//   [interval]    a, x, b (b defaults to x)
//   [functions]   f1, f2, upsilon (expressions in theta)
//   [hypothesis]  p, q, tau1, tau2, phi, box = "m, M, n, N", grid
//   [tolerances]  abs_tol, rel_tol, series_tol, max_subdivisions, method = direct | series
//
// Lines starting with ';' or '#' are comments.
// ---------------------------------------------------------------------------

/// Parses scenario text. Error(Parse) for malformed text or values,
/// Error(Constraint) for values that parse but violate a scenario invariant;
/// either lists every offending field. When tau1 / tau2 are absent they are
/// taken from the grid check of f1/f2.
Scenario load_scenario_text(std::string_view text, std::string_view default_id = "scenario");
/// Reads the file and parses it; Error(Io) when unreadable. The id defaults to the file stem.
Scenario load_scenario(const std::string& path);

/// Builds a kernel from a short spec such as "rl", "constant:c=2",
/// "proportional:rho=0.5", "prabhakar:rho=1.2,omega=0.3" or
/// "series:coeff=exp(-lgamma(n+1)),radius=inf". The order supplies alpha and beta.
AnalyticKernel kernel_from_spec(std::string_view spec, const FractionalOrder& order);

// ---------------------------------------------------------------------------
// Canned and random scenarios
// ---------------------------------------------------------------------------

inline constexpr int kCannedExampleCount = 8;

/// Example scenario `id` in 1..8, bound to its theorem (1: thm31, 2: thm32,
/// 3: thm41, 4: thm42, 5: thm43, 6: thm44, 7: thm45, 8: thm46).
/// Ids other than 6 use f1 = theta + ell, f2 = theta, tau1 = 1, tau2 = ell + 1
/// and need a >= 1. Id 6 uses f1 = sin^2, f2 = cos^2 with box (0, 1, 0, 1).
/// Id 8 carries max{ell(2+ell) + theta, theta(1+ell) - ell} as its Upsilon.
/// Error(Range) for an id outside 1..8, Error(Constraint) for a < 1.
Scenario canned_example(int id, double ell, const FractionalOrder& order, const AnalyticKernel& kernel,
                        const Interval& iv, double p, double phi = 0.5);

/// Defaults: ell = 1, a = 1, x = 2, p = 2, phi = 0.5, RL kernel of order alpha.
Scenario canned_example(int id, double alpha = 1.0);

enum class Family { Rl, Constant, Prabhakar, ProportionalReportOnly, Admissible };

std::string_view family_name(Family f) noexcept;
/// Accepts rl, constant, prabhakar, proportional-report-only (or proportional), admissible.
std::optional<Family> parse_family(std::string_view name);

/// Deterministic in (seed, family). f2 = c0 + c1 theta + c2 theta^2 and
/// f1 = r(theta) f2 with r between tau1 and tau2, so the ratio hypothesis
/// holds by construction. Every scenario carries phi = tau1/2 and a box.
/// Family::Admissible cycles through rl, constant and prabhakar by seed.
Scenario random_scenario(std::uint64_t seed, Family family);

// ---------------------------------------------------------------------------
// Suites and reports
// ---------------------------------------------------------------------------

struct SuiteEntry {
    std::string scenario_id;
    InequalityReport report;
    /// Set when the checker threw; the report is then inconclusive with the message as note.
    std::optional<ErrorKind> failure;
};

struct SuiteCounts {
    std::size_t holds = 0;
    std::size_t violated = 0;
    std::size_t inconclusive = 0;
    std::size_t total() const { return holds + violated + inconclusive; }
};

struct SuiteResult {
    std::vector<SuiteEntry> entries;
    SuiteCounts counts;
    std::optional<std::uint64_t> seed;
    double wall_seconds = 0.0;

    bool any_admissible_violation() const;
    bool any_numerical_failure() const;
};

/// Runs every applicable (scenario, theorem) pair on up to `parallelism`
/// threads. Checker errors are recorded per pair. Entries are ordered by
/// scenario id (digit runs compared numerically) and then theorem.
SuiteResult run_suite(const std::vector<Scenario>& scenarios, const std::vector<Theorem>& theorems,
                      std::size_t parallelism = 1);

/// Orders "seed-9" before "seed-10".
bool natural_less(std::string_view a, std::string_view b);

enum class ReportFormat { Csv, SvgMargins, Text };
std::optional<ReportFormat> parse_report_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "scenario_id,theorem,side_labels,side_values,margin,relative_margin,error_budget,verdict,kernel_admissible";

/// "holds=H violated=V inconclusive=I".
std::string summary_line(const SuiteCounts& c);

void emit_report(const SuiteResult& r, ReportFormat format, std::ostream& out);
/// Writes to a file; Error(Io) when it cannot be written.
void emit_report(const SuiteResult& r, ReportFormat format, const std::string& path);

/// Reads a CSV produced by emit_report back into entries (sides, margins,
/// verdicts; error estimates are not stored and read back as zero).
SuiteResult read_csv_report(std::istream& in);
SuiteResult read_csv_report(const std::string& path);

} // namespace fracmink
