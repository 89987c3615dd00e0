#include "fracmink/operators.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>
#include <string>

#include "fracmink/errors.hpp"
#include "fracmink/special_functions.hpp"

namespace fracmink {

namespace {

// Relative accuracy and term cap for kernel_eval at every quadrature node. The
// cap matches the Mittag-Leffler default: kernels with small beta decay slowly.
constexpr double kKernelRelTol = 1e-15;
constexpr std::size_t kKernelTermCap = 10000;

void require_radius(const AnalyticKernel& k, const FractionalOrder& order, double length) {
    const double needed = std::pow(length, order.beta);
    if (!(k.radius() > needed)) {
        throw Error(ErrorKind::Radius, "kernel " + k.name() + " has radius " + std::to_string(k.radius()) +
                                           " but the interval needs more than " + std::to_string(needed));
    }
}

void require_interval(double a, double x, const char* what) {
    if (!std::isfinite(a) || !std::isfinite(x) || !(x > a)) {
        throw Error(ErrorKind::Constraint, std::string(what) + " requires finite a < x");
    }
}

// Coefficients of A up to the index where the series at the largest argument
// u_max meets the tolerance. Successive coefficient ratios are stored so that
// evaluating A at one quadrature node costs a multiply per term.
class KernelTable {
public:
    KernelTable(const AnalyticKernel& k, double u_max, const KernelTolerance& tol) {
        const SeriesSum at_max = kernel_eval(k, u_max, tol);
        const std::size_t n = std::max<std::size_t>(at_max.terms, 1);
        logs_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            logs_.push_back(k.log_coeff(i));
            if (logs_.back().sign == 0) sparse_ = true;
        }
        if (sparse_) return;
        ratio_.assign(n, 0.0);
        for (std::size_t i = 1; i < n; ++i) {
            ratio_[i] = logs_[i].sign * logs_[i - 1].sign * std::exp(logs_[i].log_abs - logs_[i - 1].log_abs);
        }
        suffix_max_.assign(n + 1, 0.0);
        for (std::size_t i = n; i-- > 1;) suffix_max_[i] = std::max(suffix_max_[i + 1], std::abs(ratio_[i]));
    }

    double operator()(double u) const {
        const double first = logs_[0].value();
        if (u == 0.0) return first;
        if (sparse_) {
            const double log_u = std::log(std::abs(u));
            const double sign_u = u < 0.0 ? -1.0 : 1.0;
            double sum = 0.0;
            for (std::size_t i = 0; i < logs_.size(); ++i) {
                if (logs_[i].sign == 0) continue;
                const double sgn = logs_[i].sign * ((i % 2 == 1) ? sign_u : 1.0);
                sum += sgn * std::exp(logs_[i].log_abs + static_cast<double>(i) * log_u);
            }
            return sum;
        }
        double t = first;
        double sum = t;
        double comp = 0.0;
        const double au = std::abs(u);
        for (std::size_t i = 1; i < ratio_.size(); ++i) {
            t *= u * ratio_[i];
            const double next = sum + t;
            comp += std::abs(sum) >= std::abs(t) ? (sum - next) + t : (t - next) + sum;
            sum = next;
            // Remaining table terms are bounded by |t| sum_k (|u| R)^k.
            const double r = au * suffix_max_[i + 1];
            if (r < 1.0 && std::abs(t) * r / (1.0 - r) <= kKernelRelTol * std::abs(sum + comp)) break;
        }
        return sum + comp;
    }

private:
    std::vector<LogTerm> logs_;
    std::vector<double> ratio_;
    std::vector<double> suffix_max_;
    bool sparse_ = false;
};

// Integrates the kernel operator over a window of length L anchored at x,
// moving in direction `dir` (-1: left operator towards a, +1: right operator
// towards b). In u = s / L^alpha with s = |t - x|^alpha the integrand is
// f(x + dir L u^(1/alpha)) A(L^beta u^(beta/alpha)), scaled by L^alpha / alpha.
OperatorValue kernel_window(const AnalyticKernel& k, const FractionalOrder& order, const RealFunction& f,
                            double x, double length, double dir, const QuadratureSpec& q) {
    require_radius(k, order, length);
    const double alpha = order.alpha;
    const double beta = order.beta;
    const double inv_alpha = 1.0 / alpha;
    const double beta_over_alpha = beta / alpha;
    const double length_beta = std::pow(length, beta);
    const double scale = std::pow(length, alpha) / alpha;
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw Error(ErrorKind::Overflow, "operator scale (x-a)^alpha/alpha is not representable");
    }

    const bool constant_kernel = k.last_nonzero() && *k.last_nonzero() == 0;
    const double a0 = k.coeff(0);
    std::optional<KernelTable> table;
    if (!constant_kernel) table.emplace(k, length_beta, KernelTolerance{0.0, kKernelRelTol, kKernelTermCap});

    auto integrand = [&](double u) {
        const double t = x + dir * length * std::pow(u, inv_alpha);
        const double fv = f(t);
        const double kv = constant_kernel ? a0 : (*table)(length_beta * std::pow(u, beta_over_alpha));
        return fv * kv;
    };

    QuadratureSpec inner = q;
    inner.abs_tol = q.abs_tol / scale;
    const QuadResult r = integrate_adaptive(integrand, 0.0, 1.0, inner);

    OperatorValue out;
    out.value = scale * r.value;
    out.error_estimate = scale * (r.error + (constant_kernel ? 0.0 : kKernelRelTol * r.abs_integral));
    out.method = Method::Direct;
    out.terms_or_cells = r.panels;
    return out;
}

// RL^sigma f(x) = (x-a)^sigma / Gamma(sigma+1) * J with
// J = int_0^1 f(x - (x-a) u^(1/sigma)) du. Returns log of the prefactor.
double rl_log_prefactor(double sigma, double length) {
    return sigma * std::log(length) - ln_gamma(sigma + 1.0);
}

QuadResult rl_average(double sigma, const RealFunction& f, double a, double x, double abs_tol_on_average,
                      const QuadratureSpec& q) {
    const double length = x - a;
    const double inv_sigma = 1.0 / sigma;
    auto integrand = [&](double u) { return f(x - length * std::pow(u, inv_sigma)); };
    QuadratureSpec inner = q;
    inner.abs_tol = abs_tol_on_average;
    return integrate_adaptive(integrand, 0.0, 1.0, inner);
}

} // namespace

std::string_view method_name(Method m) noexcept {
    return m == Method::Direct ? "direct" : "series";
}

double sampled_sup_norm(const RealFunction& f, double a, double x, std::size_t samples) {
    if (samples < 2) samples = 2;
    const double mid = 0.5 * (a + x);
    const double half = 0.5 * (x - a);
    double sup = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t =
            mid + half * std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples - 1));
        const double v = f(t);
        if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "f is not finite at " + std::to_string(t));
        sup = std::max(sup, std::abs(v));
    }
    return sup;
}

OperatorValue rl_integral(double sigma, const RealFunction& f, double a, double x, const QuadratureSpec& q) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::Domain, "rl_integral requires sigma > 0");
    }
    require_interval(a, x, "rl_integral");
    q.validate();
    const double log_pref = rl_log_prefactor(sigma, x - a);
    const double pref = std::exp(log_pref);
    if (!(pref > 0.0) || !std::isfinite(pref)) {
        throw Error(ErrorKind::Overflow, "RL prefactor (x-a)^sigma/Gamma(sigma+1) is not representable");
    }
    const QuadResult r = rl_average(sigma, f, a, x, q.abs_tol / pref, q);
    return {pref * r.value, pref * r.error, Method::Direct, r.panels, 0.0};
}

OperatorValue frac_integral_direct(const AnalyticKernel& k, const FractionalOrder& order, const RealFunction& f,
                                   const Interval& iv, const QuadratureSpec& q) {
    require_interval(iv.a, iv.x, "frac_integral_direct");
    q.validate();
    return kernel_window(k, order, f, iv.x, iv.x - iv.a, -1.0, q);
}

OperatorValue frac_integral_right(const AnalyticKernel& k, const FractionalOrder& order, const RealFunction& f,
                                  const Interval& iv, const QuadratureSpec& q) {
    require_interval(iv.x, iv.b, "frac_integral_right");
    q.validate();
    return kernel_window(k, order, f, iv.x, iv.b - iv.x, 1.0, q);
}

OperatorValue frac_integral_series(const AnalyticKernel& k, const FractionalOrder& order, const RealFunction& f,
                                   const Interval& iv, const QuadratureSpec& q, double series_tol) {
    require_interval(iv.a, iv.x, "frac_integral_series");
    q.validate();
    if (!(series_tol > 0.0)) throw Error(ErrorKind::Constraint, "series_tol must be positive");
    const double length = iv.x - iv.a;
    require_radius(k, order, length);
    const double alpha = order.alpha;
    const double beta = order.beta;

    if (beta == 0.0) {
        // (x - t)^0 == 1: the series collapses to A(1) Gamma(alpha) RL^alpha f.
        SeriesSum a1;
        try {
            a1 = kernel_eval(k, 1.0, {series_tol, 0.0, kSeriesTermCap});
        } catch (const Error& e) {
            throw Error(ErrorKind::Divergence,
                        std::string("beta = 0 needs a summable coefficient sequence: ") + e.what());
        }
        const double g = gamma(alpha);
        const OperatorValue rl = rl_integral(alpha, f, iv.a, iv.x, q);
        OperatorValue out;
        out.value = a1.value * g * rl.value;
        out.error_estimate = std::abs(a1.value * g) * rl.error_estimate + a1.tail_bound * g * std::abs(rl.value);
        out.method = Method::Series;
        out.terms_or_cells = a1.terms;
        return out;
    }

    const double sup = std::max(sampled_sup_norm(f, iv.a, iv.x), std::numeric_limits<double>::min());
    const double log_sup = std::log(sup);
    const double log_len = std::log(length);

    // Bound on |term n|: sup |a_n| L^(alpha+n beta) / (alpha + n beta).
    auto bound_term = [&](std::size_t n) {
        LogTerm c = k.log_coeff(n);
        if (c.sign == 0) return c;
        const double sigma = alpha + beta * static_cast<double>(n);
        return LogTerm{log_sup + c.log_abs + sigma * log_len - std::log(sigma), 1};
    };
    SeriesControl ctl{series_tol, 0.0, kSeriesTermCap, k.last_nonzero()};
    const SeriesSum bound = sum_series(bound_term, ctl, ErrorKind::Divergence, "frac_integral_series tail");

    OperatorValue out;
    out.method = Method::Series;
    out.sup_norm = sup;
    out.error_estimate = bound.tail_bound;
    double comp = 0.0;
    for (std::size_t n = 0; n < bound.terms; ++n) {
        const LogTerm c = k.log_coeff(n);
        if (c.sign == 0) continue;
        const double sigma = alpha + beta * static_cast<double>(n);
        // a_n Gamma(sigma) (x-a)^sigma / Gamma(sigma + 1) = a_n (x-a)^sigma / sigma
        const double log_weight = c.log_abs + sigma * log_len - std::log(sigma);
        const double weight = std::exp(log_weight);
        if (weight == 0.0) continue;
        if (!std::isfinite(weight)) {
            throw Error(ErrorKind::Overflow, "series term " + std::to_string(n) + " weight overflows");
        }
        const QuadResult r = rl_average(sigma, f, iv.a, iv.x, q.abs_tol / weight, q);
        const double term = c.sign * weight * r.value;
        const double s = out.value + term;
        comp += std::abs(out.value) >= std::abs(term) ? (out.value - s) + term : (term - s) + out.value;
        out.value = s;
        out.error_estimate += weight * r.error;
        ++out.terms_or_cells;
    }
    out.value += comp;
    return out;
}

double rl_monomial_closed_form(double sigma, double mu, double a, double x) {
    if (!(mu > -1.0)) throw Error(ErrorKind::Domain, "rl_monomial_closed_form requires mu > -1");
    if (!(sigma > 0.0)) throw Error(ErrorKind::Domain, "rl_monomial_closed_form requires sigma > 0");
    require_interval(a, x, "rl_monomial_closed_form");
    return std::exp(ln_gamma(mu + 1.0) - ln_gamma(mu + sigma + 1.0) + (mu + sigma) * std::log(x - a));
}

} // namespace fracmink
