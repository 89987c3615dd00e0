#pragma once

#include <cstddef>

namespace fracmink {

/// Gamma function for real x. Throws Error(Pole) at 0, -1, -2, ... and
/// Error(Overflow) when the result exceeds the double range.
double gamma(double x);

/// log Gamma(x) for x > 0; Error(Domain) otherwise.
double ln_gamma(double x);

/// Rising factorial (rho)_n = rho (rho+1) ... (rho+n-1), with (rho)_0 = 1.
double pochhammer(double rho, std::size_t n);

/// log (rho)_n for rho >= 0. Returns -inf when the product is zero.
double ln_pochhammer(double rho, std::size_t n);

struct MittagLefflerParams {
    double rho = 1.0;   ///< Pochhammer parameter, >= 0
    double beta = 1.0;  ///< > 0
    double alpha = 1.0; ///< > 0
    double z = 0.0;     ///< argument (omega * x)
};

struct MittagLefflerOptions {
    double abs_tol = 1e-15;
    std::size_t term_cap = 10000;
};

/// Three-parameter (Prabhakar) Mittag-Leffler function
///   E^rho_{beta,alpha}(z) = sum_n (rho)_n z^n / (n! Gamma(beta n + alpha)),
/// summed until the geometric tail bound drops below abs_tol.
/// Error(Tolerance) if the term cap is reached first.
double mittag_leffler3(const MittagLefflerParams& params, const MittagLefflerOptions& options = {});

} // namespace fracmink
