#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracmink/errors.hpp"
#include "fracmink/special_functions.hpp"
#include "support.hpp"

using namespace fracmink;
using testing::rel_err;

namespace {

struct BruteSum {
    double value;
    double abs_sum; // sum of |terms|, the scale of the rounding error under cancellation
};

// Plain forward summation of the three-parameter Mittag-Leffler series in
// long double with the libm gamma; shares no code with the library.
BruteSum ml_bruteforce(double rho, double beta, double alpha, double z, int terms) {
    long double sum = 0.0L;
    long double abs_sum = 0.0L;
    long double poch = 1.0L;
    long double fact = 1.0L;
    long double zn = 1.0L;
    for (int n = 0; n < terms; ++n) {
        const long double g = std::tgamma(static_cast<long double>(beta * n + alpha));
        if (!std::isfinite(static_cast<double>(g))) break;
        const long double t = poch * zn / (fact * g);
        sum += t;
        abs_sum += std::abs(t);
        poch *= rho + n;
        fact *= n + 1;
        zn *= z;
    }
    return {static_cast<double>(sum), static_cast<double>(abs_sum)};
}

} // namespace

TEST_CASE("gamma at integers and one half") {
    CHECK(fracmink::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fracmink::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(rel_err(fracmink::gamma(0.5), std::sqrt(std::numbers::pi)) <= 1e-13);
    CHECK(rel_err(fracmink::gamma(-0.5), -2.0 * std::sqrt(std::numbers::pi)) <= 1e-13);
}

TEST_CASE("gamma rejects poles and overflow") {
    for (double x : {0.0, -1.0, -2.0, -7.0}) {
        try {
            fracmink::gamma(x);
            FAIL("expected a pole error at " << x);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Pole);
        }
    }
    try {
        fracmink::gamma(200.0);
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Overflow);
    }
    CHECK(std::isfinite(fracmink::gamma(171.0)));
}

TEST_CASE("gamma agrees with the C library over [1e-3, 170]") {
    testing::Uniform u(11);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::exp(u(std::log(1e-3), std::log(170.0)));
        CHECK(rel_err(fracmink::gamma(x), std::tgamma(x)) <= 1e-13);
    }
}

TEST_CASE("gamma recurrence on 1000 random points in (0.1, 50)") {
    testing::Uniform u(12);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(0.1, 50.0);
        CHECK(rel_err(fracmink::gamma(x + 1.0), x * fracmink::gamma(x)) <= 1e-12);
    }
}

TEST_CASE("gamma reflection on 1000 random points in (0, 1)") {
    testing::Uniform u(13);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(1e-6, 1.0 - 1e-6);
        const double v = fracmink::gamma(x) * fracmink::gamma(1.0 - x) * std::sin(std::numbers::pi * x) / std::numbers::pi;
        CHECK(std::abs(v - 1.0) <= 1e-10);
    }
}

TEST_CASE("ln_gamma values and domain") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0));
    CHECK(std::abs(ln_gamma(2.0)) <= 1e-15);
    double ln_fact10 = 0.0;
    for (int k = 2; k <= 10; ++k) ln_fact10 += std::log(static_cast<double>(k));
    CHECK(rel_err(ln_gamma(11.0), ln_fact10) <= 1e-14);
    CHECK(rel_err(ln_gamma(11.0), 15.104412573075516) <= 1e-15);
    for (double x : {0.0, -1.0, -0.5}) {
        try {
            ln_gamma(x);
            FAIL("expected a domain error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Domain);
        }
    }
}

TEST_CASE("exp(ln_gamma) matches gamma where both are representable") {
    testing::Uniform u(14);
    for (int i = 0; i < 500; ++i) {
        const double x = u(0.01, 170.0);
        CHECK(rel_err(std::exp(ln_gamma(x)), fracmink::gamma(x)) <= 1e-12);
    }
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(1.0, 5) == 120.0);
    CHECK(pochhammer(0.5, 3) == doctest::Approx(0.5 * 1.5 * 2.5).epsilon(1e-15));
    CHECK(pochhammer(0.5, 3) == doctest::Approx(1.875));
    CHECK(pochhammer(0.0, 3) == 0.0);
    CHECK(std::isinf(ln_pochhammer(0.0, 2)));
    testing::Uniform u(15);
    for (int i = 0; i < 100; ++i) {
        const double rho = u(0.01, 5.0);
        const int n = u.integer(0, 30);
        CHECK(rel_err(std::exp(ln_pochhammer(rho, n)), pochhammer(rho, n)) <= 1e-12);
    }
}

TEST_CASE("Mittag-Leffler reference values") {
    CHECK(rel_err(mittag_leffler3({1.0, 1.0, 1.0, 1.0}), std::exp(1.0)) <= 1e-15);
    // Only the n = 0 term survives at z = 0.
    CHECK(rel_err(mittag_leffler3({2.0, 1.5, 0.7, 0.0}), 1.0 / std::tgamma(0.7)) <= 1e-14);
    CHECK(rel_err(mittag_leffler3({2.0, 1.5, 0.7, 0.0}), 0.7703831838665660) <= 1e-13);
    // sum 4^n / (2n)! = cosh(2)
    const double ch = mittag_leffler3({1.0, 2.0, 1.0, 4.0});
    CHECK(rel_err(ch, std::cosh(2.0)) <= 1e-14);
    CHECK(rel_err(ch, ml_bruteforce(1.0, 2.0, 1.0, 4.0, 200).value) <= 1e-14);
}

TEST_CASE("Mittag-Leffler with rho = beta = alpha = 1 is exp on [-5, 5]") {
    for (int i = 0; i <= 200; ++i) {
        const double z = -5.0 + 0.05 * i;
        CHECK(rel_err(mittag_leffler3({1.0, 1.0, 1.0, z}), std::exp(z)) <= 1e-10);
    }
}

TEST_CASE("Mittag-Leffler agrees with a brute-force sum on random parameters") {
    testing::Uniform u(16);
    for (int i = 0; i < 200; ++i) {
        const double rho = u(0.0, 3.0);
        const double beta = u(0.3, 2.0);
        const double alpha = u(0.2, 3.0);
        const double z = u(-3.0, 3.0);
        const BruteSum want = ml_bruteforce(rho, beta, alpha, z, 400);
        const double got = mittag_leffler3({rho, beta, alpha, z});
        // Alternating sums lose digits in double; the attainable accuracy scales with sum |terms|.
        CHECK(std::abs(got - want.value) <= 1e-13 * std::max(1.0, want.abs_sum));
    }
}

TEST_CASE("Mittag-Leffler is nondecreasing in a nonnegative argument") {
    testing::Uniform u(17);
    for (int i = 0; i < 50; ++i) {
        const double rho = u(0.0, 3.0);
        const double beta = u(0.5, 2.0);
        const double alpha = u(0.2, 3.0);
        double prev = mittag_leffler3({rho, beta, alpha, 0.0});
        for (int k = 1; k <= 50; ++k) {
            const double cur = mittag_leffler3({rho, beta, alpha, 0.1 * k});
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("Mittag-Leffler reports a tolerance error when the term cap is too small") {
    try {
        mittag_leffler3({1.0, 1.0, 1.0, 10.0}, {1e-15, 5});
        FAIL("expected a tolerance error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Tolerance);
    }
}

TEST_CASE("Mittag-Leffler is bitwise deterministic") {
    const MittagLefflerParams p{1.3, 0.7, 1.1, 2.2};
    CHECK(mittag_leffler3(p) == mittag_leffler3(p));
}
