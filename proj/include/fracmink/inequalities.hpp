#pragma once

// Numerical checks of reverse-Minkowski-type inequalities for the generalized
// fractional integral I = I^{alpha,beta}_{a+} with analytic kernel A.
//
// Every checker evaluates the sides of one inequality at the point x of the
// scenario interval, propagates the operator error estimates to a budget and
// turns the signed margin into a verdict.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracmink/kernels.hpp"
#include "fracmink/operators.hpp"
#include "fracmink/quadrature.hpp"

namespace fracmink {

/// 0 < tau1 <= f1/f2 <= tau2 on [a, x].
struct RatioBounds {
    double tau1 = 1.0;
    double tau2 = 1.0;
    static RatioBounds make(double tau1, double tau2);
};

/// Pointwise box m <= f1 <= M, n <= f2 <= N.
struct Box {
    double m = 0.0;
    double M = 0.0;
    double n = 0.0;
    double N = 0.0;
    static Box make(double m, double M, double n, double N);
};

enum class Theorem { T31, T32, T41, T42, T43, T44, T45, T46 };

inline constexpr Theorem kAllTheorems[] = {Theorem::T31, Theorem::T32, Theorem::T41, Theorem::T42,
                                           Theorem::T43, Theorem::T44, Theorem::T45, Theorem::T46};

/// "thm31", "thm32", "thm41", ... "thm46".
std::string_view theorem_name(Theorem t) noexcept;
std::optional<Theorem> parse_theorem(std::string_view name);
/// Comma separated list of theorem names or "all". Error(Parse) on unknown names.
std::vector<Theorem> parse_theorem_list(std::string_view list);

inline constexpr std::size_t kDefaultHypothesisGrid = 1025;

struct Scenario {
    std::string id = "scenario";
    AnalyticKernel kernel = make_rl_kernel(1.0);
    FractionalOrder order{1.0, 0.0};
    Interval iv{0.0, 1.0, 1.0};
    RealFunction f1;
    RealFunction f2;
    std::string f1_text;
    std::string f2_text;
    double p = 2.0;
    /// Conjugate exponent; +infinity when p == 1.
    double q = 2.0;
    RatioBounds bounds;
    std::optional<double> phi;
    std::optional<Box> box;
    /// Replaces the pointwise max functional of thm46 when present.
    std::optional<RealFunction> upsilon;
    std::string upsilon_text;
    /// Theorems this scenario is meant for; empty means every applicable one.
    std::vector<Theorem> theorems;
    QuadratureSpec quad;
    Method method = Method::Direct;
    double series_tol = kDefaultSeriesTol;
    std::size_t grid = kDefaultHypothesisGrid;

    /// One line per violated scenario invariant, prefixed with the field name.
    std::vector<std::string> problems() const;
    /// Error(Constraint) listing every entry of problems().
    void validate() const;
    /// True when the scenario carries what the theorem needs (phi for thm43, a box for thm44).
    bool applicable(Theorem t) const;
};

/// q = p / (p - 1), or +infinity for p == 1.
double conjugate_exponent(double p);

struct HypothesisReport {
    std::size_t grid_size = 0;
    double tau1_star = 0.0; ///< min f1/f2 on the grid
    double tau2_star = 0.0; ///< max f1/f2 on the grid
    double theta_tau1 = 0.0;
    double theta_tau2 = 0.0;
};

/// Verifies f1 > 0, f2 > 0 and tau1 <= f1/f2 <= tau2 on grid_size
/// Chebyshev-Lobatto points of [a, x] (relative slack 1e-12). Throws
/// Error(HypothesisViolation) naming the first failing theta and quantity.
HypothesisReport check_hypothesis(const Scenario& s, std::size_t grid_size = kDefaultHypothesisGrid);

/// Grid check of the box; Error(BoxViolation) on failure.
void check_box(const Scenario& s, std::size_t grid_size = kDefaultHypothesisGrid);

enum class Verdict { Holds, Violated, Inconclusive };
std::string_view verdict_name(Verdict v) noexcept;

struct Side {
    std::string label;
    double value = 0.0;
    double error = 0.0;
};

struct InequalityReport {
    Theorem theorem = Theorem::T31;
    std::vector<Side> sides;
    /// Theorem constants (error free), e.g. the reverse Minkowski factor.
    std::vector<Side> constants;
    double margin = 0.0;
    double relative_margin = 0.0;
    double error_budget = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    bool kernel_admissible = false;
    /// Why the verdict is inconclusive when it is not decided by the margin.
    std::string note;

    /// Looks up a side or constant by label; nullptr if absent.
    const Side* find(std::string_view label) const;
};

/// Safety factor applied to propagated operator errors in the budget.
inline constexpr double kBudgetSafety = 10.0;

InequalityReport thm31_reverse_minkowski(const Scenario& s);
InequalityReport thm32_product_bound(const Scenario& s);
InequalityReport thm41_holder_type(const Scenario& s);
InequalityReport thm42_young_type(const Scenario& s);
InequalityReport thm43_shifted_sandwich(const Scenario& s);
InequalityReport thm44_boxed_minkowski(const Scenario& s);
InequalityReport thm45_product_sandwich(const Scenario& s);
InequalityReport thm46_max_functional(const Scenario& s);

InequalityReport run_theorem(Theorem t, const Scenario& s);

/// max{ tau2 [ (tau2/tau1 + 1) v1 - tau2 v2 ], ((tau2 + tau1) v2 - v1) / tau1 }.
double upsilon(double v1, double v2, const RatioBounds& bounds);

} // namespace fracmink
