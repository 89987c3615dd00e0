#include "fracmink/special_functions.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracmink/errors.hpp"
#include "fracmink/series.hpp"

namespace fracmink {

namespace {

// Largest x with Gamma(x) below DBL_MAX.
constexpr double kGammaOverflowArg = 171.6243769563027;

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

} // namespace

double gamma(double x) {
    if (std::isnan(x)) throw Error(ErrorKind::Domain, "gamma(NaN)");
    if (is_nonpositive_integer(x)) {
        throw Error(ErrorKind::Pole, "gamma has a pole at x = " + std::to_string(x));
    }
    if (x > kGammaOverflowArg) {
        throw Error(ErrorKind::Overflow, "gamma(" + std::to_string(x) + ") exceeds double range");
    }
    try {
        return boost::math::tgamma(x);
    } catch (const std::overflow_error&) {
        throw Error(ErrorKind::Overflow, "gamma(" + std::to_string(x) + ") exceeds double range");
    } catch (const std::domain_error& e) {
        throw Error(ErrorKind::Domain, e.what());
    }
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw Error(ErrorKind::Domain, "ln_gamma requires x > 0, got " + std::to_string(x));
    if (std::isinf(x)) return x;
    return boost::math::lgamma(x);
}

double pochhammer(double rho, std::size_t n) {
    double p = 1.0;
    for (std::size_t k = 0; k < n; ++k) p *= rho + static_cast<double>(k);
    return p;
}

double ln_pochhammer(double rho, std::size_t n) {
    if (rho < 0.0) throw Error(ErrorKind::Domain, "ln_pochhammer requires rho >= 0");
    if (n == 0) return 0.0;
    if (rho == 0.0) return -std::numeric_limits<double>::infinity();
    return ln_gamma(rho + static_cast<double>(n)) - ln_gamma(rho);
}

double mittag_leffler3(const MittagLefflerParams& pr, const MittagLefflerOptions& options) {
    if (!(pr.beta > 0.0) || !(pr.alpha > 0.0) || !(pr.rho >= 0.0)) {
        throw Error(ErrorKind::Domain, "mittag_leffler3 requires beta > 0, alpha > 0, rho >= 0");
    }
    if (!std::isfinite(pr.z)) throw Error(ErrorKind::Domain, "mittag_leffler3 argument is not finite");
    if (pr.z == 0.0 || pr.rho == 0.0) return 1.0 / gamma(pr.alpha);

    const double log_z = std::log(std::abs(pr.z));
    const bool negative = pr.z < 0.0;
    auto term = [&](std::size_t n) {
        const double dn = static_cast<double>(n);
        LogTerm t;
        t.log_abs = ln_pochhammer(pr.rho, n) + dn * log_z - ln_gamma(dn + 1.0) -
                    ln_gamma(pr.beta * dn + pr.alpha);
        t.sign = (negative && (n % 2 == 1)) ? -1 : 1;
        return t;
    };
    SeriesControl ctl;
    ctl.abs_tol = options.abs_tol;
    ctl.term_cap = options.term_cap;
    return sum_series(term, ctl, ErrorKind::Tolerance, "mittag_leffler3").value;
}

} // namespace fracmink
