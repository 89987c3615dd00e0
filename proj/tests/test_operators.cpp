#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fracmink/errors.hpp"
#include "fracmink/funclang.hpp"
#include "fracmink/operators.hpp"
#include "support.hpp"

using namespace fracmink;
using testing::rel_err;

namespace {

RealFunction fn(const std::string& text) {
    const FunctionExpr e = FunctionExpr::parse(text);
    return [e](double t) { return e.eval(t); };
}

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

// RL integral of t^mu from 0 by Simpson after x - t = w^2, which turns the
// weight (x-t)^(sigma-1) dt into 2 w^(2 sigma - 1) dw. Independent of the
// library quadrature; smooth whenever 2 sigma - 1 is a nonnegative integer.
double rl_simpson(double sigma, double mu, double x) {
    const auto g = [&](double w) { return 2.0 * std::pow(w, 2.0 * sigma - 1.0) * std::pow(x - w * w, mu); };
    return testing::simpson(g, 0.0, std::sqrt(x), 2000) / std::tgamma(sigma);
}

struct NamedKernel {
    AnalyticKernel kernel;
    FractionalOrder order;
};

} // namespace

TEST_CASE("Riemann-Liouville reference values") {
    CHECK(rel_err(rl_integral(1.0, fn("1"), 0.0, 1.0).value, 1.0) <= 1e-12);
    CHECK(rel_err(rl_integral(0.5, fn("1"), 0.0, 1.0).value, 2.0 / std::sqrt(std::numbers::pi)) <= 1e-12);
    CHECK(rel_err(rl_integral(1.0, fn("theta"), 0.0, 1.0).value, 0.5) <= 1e-12);

    const double got = rl_integral(1.5, fn("theta^2"), 0.0, 2.0).value;
    CHECK(rel_err(got, 2.0 / std::tgamma(4.5) * std::pow(2.0, 3.5)) <= 1e-10);
    CHECK(rel_err(got, 1.9453185482) <= 1e-10);
    CHECK(rel_err(got, rl_simpson(1.5, 2.0, 2.0)) <= 1e-9);
}

TEST_CASE("monomial closed form agrees with independent oracles") {
    CHECK(rel_err(rl_monomial_closed_form(0.5, 2.5, 0.0, 1.0), 0.5538918284) <= 1e-9);
    CHECK(rel_err(rl_monomial_closed_form(0.5, 3.0, 0.0, 1.0), std::tgamma(4.0) / std::tgamma(4.5)) <= 1e-13);
    testing::Uniform u(31);
    for (int i = 0; i < 200; ++i) {
        const double sigma = u(0.2, 3.0);
        const double mu = u(0.0, 4.0);
        const double x = u(0.3, 2.5);
        // Gamma(mu+1)/Gamma(mu+sigma+1) = B(mu+1, sigma)/Gamma(sigma)
        const double want = std::beta(mu + 1.0, sigma) / std::tgamma(sigma) * std::pow(x, mu + sigma);
        CHECK(rel_err(rl_monomial_closed_form(sigma, mu, 0.0, x), want) <= 1e-12);
    }
    CHECK(kind_of([] { rl_monomial_closed_form(0.5, -1.0, 0.0, 1.0); }) == ErrorKind::Domain);
    CHECK(kind_of([] { rl_monomial_closed_form(0.5, -2.5, 0.0, 1.0); }) == ErrorKind::Domain);
}

TEST_CASE("rl_integral matches the closed form on random monomials") {
    testing::Uniform u(32);
    for (int i = 0; i < 100; ++i) {
        const double sigma = u(0.2, 3.0);
        const int mu = u.integer(0, 4);
        const double a = u(0.0, 1.0);
        const double x = a + u(0.1, 2.0);
        const RealFunction f = [a, mu](double t) { return std::pow(t - a, mu); };
        const OperatorValue v = rl_integral(sigma, f, a, x);
        const double want = rl_monomial_closed_form(sigma, mu, a, x);
        // Default tolerances are 1e-9 absolute and relative.
        CHECK(std::abs(v.value - want) <= 1e-9 + 1e-8 * std::abs(want));
        CHECK(std::abs(v.value - want) <= 10.0 * v.error_estimate + 1e-14 * std::abs(want));
    }
}

TEST_CASE("direct quadrature reference values") {
    const OperatorValue c =
        frac_integral_direct(make_constant_kernel(1.0), {1.0, 0.0}, fn("sin(theta)^2"),
                             Interval::left(1.0, 1.0 + std::numbers::pi));
    CHECK(rel_err(c.value, std::numbers::pi / 2) <= 1e-9);
    CHECK(c.method == Method::Direct);

    const OperatorValue e = frac_integral_direct(make_prabhakar_kernel(1.0, 1.0, {1.0, 1.0}), {1.0, 1.0}, fn("1"),
                                                 Interval::left(0.0, 1.0));
    CHECK(rel_err(e.value, std::numbers::e - 1.0) <= 1e-9);

    // A(u) = I0(2 sqrt(u)); the integral over [0, 1] of the constant 1 is I1(2).
    const AnalyticKernel bessel =
        make_series_kernel(FunctionExpr::parse("exp(-2*lgamma(n+1))", "n"), kInfiniteRadius);
    const OperatorValue b = frac_integral_direct(bessel, {1.0, 1.0}, fn("1"), Interval::left(0.0, 1.0));
    CHECK(rel_err(b.value, 1.5906368546373291) <= 1e-9);
}

TEST_CASE("direct route reduces to rl_integral for the RL kernel") {
    testing::Uniform u(33);
    for (int i = 0; i < 30; ++i) {
        const double alpha = u(0.2, 2.5);
        const double a = u(0.0, 1.0);
        const Interval iv = Interval::left(a, a + u(0.2, 2.0));
        const RealFunction f = fn("1 + theta*sin(theta)");
        const double d = frac_integral_direct(make_rl_kernel(alpha), {alpha, 0.0}, f, iv).value;
        const double r = rl_integral(alpha, f, iv.a, iv.x).value;
        CHECK(rel_err(d, r) <= 1e-9);
    }
}

TEST_CASE("series route agrees with direct and collapses at beta = 0") {
    const AnalyticKernel p = make_prabhakar_kernel(1.2, 0.3, {1.0, 0.8});
    const RealFunction f = fn("theta + 1");
    const Interval iv = Interval::left(1.0, 2.0);
    const OperatorValue d = frac_integral_direct(p, {1.0, 0.8}, f, iv);
    const OperatorValue s = frac_integral_series(p, {1.0, 0.8}, f, iv);
    CHECK(s.method == Method::Series);
    CHECK(s.sup_norm == doctest::Approx(3.0));
    CHECK(rel_err(s.value, d.value) <= 1e-8);

    const OperatorValue flat = frac_integral_series(make_constant_kernel(2.5), {0.7, 0.0}, f, iv);
    const double want = 2.5 * std::tgamma(0.7) * rl_integral(0.7, f, iv.a, iv.x).value;
    CHECK(rel_err(flat.value, want) <= 1e-10);
}

TEST_CASE("series route reports divergence when the transformed series does not converge") {
    // a_n = 1 with radius 2: A converges on [0, 1], but a_n Gamma(n + 1) grows factorially.
    const AnalyticKernel geom = make_series_kernel(FunctionExpr::parse("1", "n"), 2.0);
    const ErrorKind k =
        kind_of([&] { frac_integral_series(geom, {1.0, 1.0}, fn("1"), Interval::left(0.0, 1.0)); });
    CHECK((k == ErrorKind::Divergence || k == ErrorKind::Overflow));
}

TEST_CASE("right operator") {
    const Interval iv = Interval::make(-1.0, 0.0, 1.0);
    CHECK(rel_err(frac_integral_right(make_rl_kernel(1.0), {1.0, 0.0}, fn("1"), iv).value, 1.0) <= 1e-12);
    CHECK(rel_err(frac_integral_right(make_rl_kernel(0.5), {0.5, 0.0}, fn("1"), iv).value,
                  2.0 / std::sqrt(std::numbers::pi)) <= 1e-10);

    // Mirror symmetry: the right operator of f on [x, b] equals the left operator of f(x + b - t) on [x, b].
    testing::Uniform u(34);
    for (int i = 0; i < 20; ++i) {
        const double alpha = u(0.3, 2.0);
        const double beta = u(0.1, 1.2);
        const AnalyticKernel k = make_prabhakar_kernel(u(0.0, 2.0), u(0.0, 1.0), {alpha, beta});
        const double x = u(0.0, 1.0);
        const double b = x + u(0.2, 1.5);
        const RealFunction f = fn("exp(-theta)*(2 + cos(3*theta))");
        const RealFunction g = [&](double t) { return f(x + b - t); };
        const double right = frac_integral_right(k, {alpha, beta}, f, Interval::make(x - 1.0, x, b)).value;
        const double left = frac_integral_direct(k, {alpha, beta}, g, Interval::left(x, b)).value;
        CHECK(rel_err(right, left) <= 1e-9);
    }
    CHECK(kind_of([] {
              frac_integral_right(make_rl_kernel(1.0), {1.0, 0.0}, fn("1"), Interval::make(0.0, 1.0, 1.0));
          }) == ErrorKind::Constraint);
}

TEST_CASE("series and direct agree across kernels, functions and intervals") {
    std::vector<NamedKernel> kernels;
    for (double alpha : {0.5, 1.0, 1.7}) kernels.push_back({make_rl_kernel(alpha), {alpha, 0.0}});
    kernels.push_back({make_constant_kernel(0.4), {0.8, 0.0}});
    kernels.push_back({make_constant_kernel(2.0), {1.3, 0.0}});
    kernels.push_back({make_proportional_kernel(0.5, 0.9), {0.9, 1.0}});
    kernels.push_back({make_proportional_kernel(0.9, 1.4), {1.4, 1.0}});
    for (auto [rho, omega, alpha, beta] : {std::array{1.0, 1.0, 1.0, 1.0}, std::array{1.2, 0.3, 1.0, 0.8},
                                           std::array{0.5, 2.0, 0.6, 0.5}, std::array{2.0, 0.7, 1.5, 1.3},
                                           std::array{0.0, 1.0, 0.9, 0.4}, std::array{1.7, 1.2, 2.2, 0.3}}) {
        kernels.push_back({make_prabhakar_kernel(rho, omega, {alpha, beta}), {alpha, beta}});
    }
    kernels.push_back({make_series_kernel(FunctionExpr::parse("exp(-2*lgamma(n+1))", "n"), kInfiniteRadius),
                       {1.0, 1.0}});
    kernels.push_back({make_series_kernel(FunctionExpr::parse("(-1)^n*exp(-lgamma(n+2))", "n"), kInfiniteRadius),
                       {0.7, 0.6}});
    REQUIRE(kernels.size() == 15);

    const std::vector<std::string> functions = {"1", "theta", "theta^2 + 1", "exp(-theta)", "2 + sin(3*theta)"};
    const std::vector<Interval> intervals = {Interval::left(0.0, 1.0), Interval::left(1.0, 2.5)};

    int combos = 0;
    for (const NamedKernel& nk : kernels) {
        for (const std::string& ftext : functions) {
            for (const Interval& iv : intervals) {
                CAPTURE(nk.kernel.name());
                CAPTURE(ftext);
                CAPTURE(iv.a);
                const RealFunction f = fn(ftext);
                const OperatorValue d = frac_integral_direct(nk.kernel, nk.order, f, iv);
                const OperatorValue s = frac_integral_series(nk.kernel, nk.order, f, iv);
                const double diff = std::abs(d.value - s.value);
                CHECK(diff <= 10.0 * (d.error_estimate + s.error_estimate) + 1e-12 * std::abs(d.value));
                CHECK(diff <= 1e-6 * std::abs(d.value));
                ++combos;
            }
        }
    }
    CHECK(combos == 150);
}

TEST_CASE("linearity, positivity and monotonicity in x") {
    const AnalyticKernel k = make_prabhakar_kernel(0.8, 0.5, {1.2, 0.7});
    const FractionalOrder o{1.2, 0.7};
    const RealFunction f = fn("1 + theta^2");
    const RealFunction g = fn("exp(-theta)");
    testing::Uniform u(35);
    for (int i = 0; i < 50; ++i) {
        const double c1 = u(0.1, 10.0);
        const double c2 = u(0.1, 10.0);
        const Interval iv = Interval::left(0.5, 0.5 + u(0.2, 2.0));
        const RealFunction h = [&](double t) { return c1 * f(t) + c2 * g(t); };
        const double lhs = frac_integral_direct(k, o, h, iv).value;
        const double rhs = c1 * frac_integral_direct(k, o, f, iv).value + c2 * frac_integral_direct(k, o, g, iv).value;
        CHECK(rel_err(lhs, rhs) <= 1e-9);
    }
    double prev = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const OperatorValue v = frac_integral_direct(k, o, f, Interval::left(0.0, 0.1 * i));
        CHECK(v.value >= -v.error_estimate);
        CHECK(v.value >= prev - v.error_estimate);
        prev = v.value;
    }
}

TEST_CASE("error reporting") {
    const RealFunction f = fn("1");
    QuadratureSpec tight;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-15;
    tight.max_subdivisions = 2;
    CHECK(kind_of([&] {
              frac_integral_direct(make_constant_kernel(1.0), {1.0, 0.0}, fn("sin(40*theta)^2"),
                                   Interval::left(0.0, 3.0), tight);
          }) == ErrorKind::QuadFailure);

    CHECK(kind_of([&] {
              frac_integral_direct(make_rl_kernel(1.0), {1.0, 0.0}, fn("ln(theta)"), Interval::left(-1.0, 1.0));
          }) == ErrorKind::Domain);

    const AnalyticKernel small = make_series_kernel(FunctionExpr::parse("2^n", "n"), 0.5);
    CHECK(kind_of([&] { frac_integral_direct(small, {1.0, 1.0}, f, Interval::left(0.0, 1.0)); }) ==
          ErrorKind::Radius);
    CHECK(kind_of([&] { frac_integral_series(small, {1.0, 1.0}, f, Interval::left(0.0, 1.0)); }) ==
          ErrorKind::Radius);
    CHECK(kind_of([&] { rl_integral(0.0, f, 0.0, 1.0); }) == ErrorKind::Domain);
    CHECK(kind_of([&] { frac_integral_series(make_rl_kernel(1.0), {1.0, 0.0}, f, Interval::left(0.0, 1.0), {}, 0.0); }) ==
          ErrorKind::Constraint);
}

TEST_CASE("sampled sup norm") {
    CHECK(sampled_sup_norm(fn("sin(theta)"), 0.0, std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(sampled_sup_norm(fn("-3 + theta"), 0.0, 1.0) == 3.0);
}
