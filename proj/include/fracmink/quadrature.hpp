#pragma once

#include <cstddef>
#include <functional>

namespace fracmink {

struct QuadratureSpec {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    std::size_t max_subdivisions = 4096;

    /// Error(Constraint) unless both tolerances are positive and max_subdivisions >= 1.
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    double abs_integral = 0.0; ///< integral of |f|, for relative error bookkeeping
    std::size_t panels = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature over [lo, hi]: the panel
/// with the largest embedded error estimate is halved until the summed
/// estimate meets max(abs_tol, rel_tol |I|). Error(QuadFailure) when the
/// subdivision budget runs out, Error(Domain) if f returns a non-finite value.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureSpec& spec);

} // namespace fracmink
