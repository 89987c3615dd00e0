#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracmink/series.hpp"

namespace fracmink {

class FunctionExpr;

/// Fractional order (alpha, beta) of the generalized operator: alpha > 0,
/// beta >= 0. beta = 0 is admitted for the constant and Riemann-Liouville
/// reductions where (x - theta)^beta == 1.
struct FractionalOrder {
    double alpha = 1.0;
    double beta = 0.0;

    static FractionalOrder make(double alpha, double beta);
};

/// Evaluation point x inside [a, b], with a < x <= b for the left operator.
/// The right operator integrates over [x, b] and needs x < b.
struct Interval {
    double a = 0.0;
    double x = 1.0;
    double b = 1.0;

    /// Left-operator interval; b defaults to x.
    static Interval left(double a, double x);
    static Interval make(double a, double x, double b);

    double length() const { return x - a; }
};

enum class SignStatus { AllNonnegative, Mixed, Unknown };

std::string_view sign_status_name(SignStatus s) noexcept;

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

/// Analytic kernel A(u) = sum_n a_n u^n given as a total function of n.
/// Immutable after construction; the first kCachedTerms coefficients are
/// evaluated eagerly so concurrent evaluation needs no locking.
class AnalyticKernel {
public:
    using CoefficientFn = std::function<LogTerm(std::size_t)>;

    static constexpr std::size_t kCachedTerms = 128;
    static constexpr std::size_t kDefaultProbe = 512;

    AnalyticKernel(std::string name, CoefficientFn coeff, double radius, SignStatus sign,
                   std::optional<std::size_t> last_nonzero = std::nullopt);

    const std::string& name() const { return name_; }
    double radius() const { return radius_; }
    SignStatus sign_status() const { return sign_; }
    /// Index of the last nonzero coefficient when A is a polynomial.
    std::optional<std::size_t> last_nonzero() const { return last_nonzero_; }

    double coeff(std::size_t n) const { return log_coeff(n).value(); }
    LogTerm log_coeff(std::size_t n) const;

    /// True when the coefficient signs certify the kernel for inequality assertions.
    bool admissible() const { return sign_ == SignStatus::AllNonnegative; }

private:
    std::string name_;
    CoefficientFn coeff_;
    double radius_;
    SignStatus sign_;
    std::optional<std::size_t> last_nonzero_;
    std::shared_ptr<const std::vector<LogTerm>> cache_;
};

/// A(u) = 1 / Gamma(alpha): the Riemann-Liouville kernel (use with beta = 0).
AnalyticKernel make_rl_kernel(double alpha);

/// A(u) = c with c > 0.
AnalyticKernel make_constant_kernel(double c);

/// A(u) = exp(((rho-1)/rho) u) / (rho^alpha Gamma(alpha)), 0 < rho <= 1.
AnalyticKernel make_proportional_kernel(double rho, double alpha);

/// A(u) = E^rho_{beta,alpha}(omega u); rho, omega >= 0.
AnalyticKernel make_prabhakar_kernel(double rho, double omega, const FractionalOrder& order);

/// User kernel with a_n given by an expression in n and an explicit radius.
/// Signs are probed over n in [0, probe); a clean probe yields Unknown, not
/// AllNonnegative, since a finite scan cannot certify the tail.
AnalyticKernel make_series_kernel(const FunctionExpr& coeff, double radius,
                                  std::string name = "series",
                                  std::size_t probe = AnalyticKernel::kDefaultProbe);

struct KernelTolerance {
    double abs_tol = 0.0;
    double rel_tol = 1e-15;
    std::size_t term_cap = 2000;
};

/// A(u) = sum_n a_n u^n. Error(Radius) if |u| >= radius, Error(Tolerance) on
/// term-cap exhaustion.
SeriesSum kernel_eval(const AnalyticKernel& k, double u, const KernelTolerance& tol = {});

/// A_Gamma(u) = sum_n a_n Gamma(beta n + alpha) u^n. Error(Divergence) when
/// the terms do not decay within the cap.
SeriesSum kernel_transform_eval(const AnalyticKernel& k, const FractionalOrder& order, double u,
                                const KernelTolerance& tol = {});

struct KernelValidation {
    bool radius_ok = false;
    double required_radius = 0.0; ///< (b - a)^beta
    std::size_t probed_terms = 0;
    std::optional<std::size_t> first_negative; ///< first n with a_n < 0
    SignStatus sign_status = SignStatus::Unknown;
    bool admissible = false;
    std::vector<std::string> messages;
};

KernelValidation validate_kernel(const AnalyticKernel& k, const FractionalOrder& order,
                                 const Interval& iv,
                                 std::size_t probe = AnalyticKernel::kDefaultProbe);

} // namespace fracmink
