#pragma once

// Fractional integrals with analytic kernels,
//
//   I f(x) = int_a^x f(t) (x - t)^(alpha-1) A((x - t)^beta) dt,
//
// with no separate 1/Gamma(alpha) factor: the Riemann-Liouville
// normalisation lives inside A (see make_rl_kernel).

#include <cstddef>
#include <functional>
#include <string_view>

#include "fracmink/kernels.hpp"
#include "fracmink/quadrature.hpp"

namespace fracmink {

using RealFunction = std::function<double(double)>;

enum class Method { Direct, Series };

std::string_view method_name(Method m) noexcept;

struct OperatorValue {
    double value = 0.0;
    double error_estimate = 0.0;
    Method method = Method::Direct;
    /// Quadrature panels (direct) or retained series terms (series).
    std::size_t terms_or_cells = 0;
    /// Sampled sup |f| used for the series tail bound; 0 for direct evaluation.
    double sup_norm = 0.0;
};

inline constexpr double kDefaultSeriesTol = 1e-10;
inline constexpr std::size_t kSeriesTermCap = 2000;
inline constexpr std::size_t kSupNormSamples = 257;

/// Riemann-Liouville integral (1/Gamma(sigma)) int_a^x f(t) (x-t)^(sigma-1) dt,
/// evaluated after the substitution s = (x-t)^sigma, which leaves the bounded
/// integrand f(x - s^(1/sigma)) on [0, (x-a)^sigma].
OperatorValue rl_integral(double sigma, const RealFunction& f, double a, double x,
                          const QuadratureSpec& q = {});

/// Direct quadrature of the left operator. The substituted integrand is
/// (1/alpha) f(x - s^(1/alpha)) A(s^(beta/alpha)) on [0, (x-a)^alpha].
OperatorValue frac_integral_direct(const AnalyticKernel& k, const FractionalOrder& order,
                                   const RealFunction& f, const Interval& iv,
                                   const QuadratureSpec& q = {});

/// Left operator as the series sum_n a_n Gamma(beta n + alpha) RL^(alpha + n beta) f(x),
/// truncated once sup|f| sum_{n>N} |a_n| (x-a)^(alpha+n beta) / (alpha + n beta)
/// drops below series_tol.
OperatorValue frac_integral_series(const AnalyticKernel& k, const FractionalOrder& order,
                                   const RealFunction& f, const Interval& iv,
                                   const QuadratureSpec& q = {},
                                   double series_tol = kDefaultSeriesTol);

/// Right operator int_x^b f(t) (t - x)^(alpha-1) A((t - x)^beta) dt.
OperatorValue frac_integral_right(const AnalyticKernel& k, const FractionalOrder& order,
                                  const RealFunction& f, const Interval& iv,
                                  const QuadratureSpec& q = {});

/// Closed form RL^sigma (t - a)^mu at x: Gamma(mu+1)/Gamma(mu+sigma+1) (x-a)^(mu+sigma).
double rl_monomial_closed_form(double sigma, double mu, double a, double x);

/// sup |f| over Chebyshev-Lobatto points of [a, x].
double sampled_sup_norm(const RealFunction& f, double a, double x,
                        std::size_t samples = kSupNormSamples);

} // namespace fracmink
