#include "fracmink/kernels.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "fracmink/errors.hpp"
#include "fracmink/funclang.hpp"
#include "fracmink/special_functions.hpp"

namespace fracmink {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

FractionalOrder FractionalOrder::make(double alpha, double beta) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorKind::Constraint, "alpha must be a finite value > 0, got " + fmt(alpha));
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorKind::Constraint, "beta must be a finite value >= 0, got " + fmt(beta));
    }
    return {alpha, beta};
}

Interval Interval::left(double a, double x) { return make(a, x, x); }

Interval Interval::make(double a, double x, double b) {
    if (!std::isfinite(a) || !std::isfinite(x) || !std::isfinite(b)) {
        throw Error(ErrorKind::Constraint, "interval endpoints must be finite");
    }
    if (!(a < x) || !(x <= b)) {
        throw Error(ErrorKind::Constraint,
                    "interval requires a < x <= b, got a=" + fmt(a) + " x=" + fmt(x) + " b=" + fmt(b));
    }
    return {a, x, b};
}

std::string_view sign_status_name(SignStatus s) noexcept {
    switch (s) {
        case SignStatus::AllNonnegative: return "all-nonnegative";
        case SignStatus::Mixed: return "mixed";
        case SignStatus::Unknown: return "unknown";
    }
    return "unknown";
}

AnalyticKernel::AnalyticKernel(std::string name, CoefficientFn coeff, double radius, SignStatus sign,
                               std::optional<std::size_t> last_nonzero)
    : name_(std::move(name)),
      coeff_(std::move(coeff)),
      radius_(radius),
      sign_(sign),
      last_nonzero_(last_nonzero) {
    if (!(radius_ > 0.0)) throw Error(ErrorKind::Constraint, "kernel radius must be positive");
    auto cache = std::make_shared<std::vector<LogTerm>>();
    const std::size_t n_cache = last_nonzero_ ? std::min(*last_nonzero_ + 1, kCachedTerms) : kCachedTerms;
    cache->reserve(n_cache);
    for (std::size_t n = 0; n < n_cache; ++n) cache->push_back(coeff_(n));
    cache_ = std::move(cache);
}

LogTerm AnalyticKernel::log_coeff(std::size_t n) const {
    if (last_nonzero_ && n > *last_nonzero_) return LogTerm::zero();
    if (n < cache_->size()) return (*cache_)[n];
    return coeff_(n);
}

AnalyticKernel make_rl_kernel(double alpha) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::Constraint, "RL kernel requires alpha > 0");
    const double log_a0 = -ln_gamma(alpha);
    return AnalyticKernel(
        "rl(alpha=" + fmt(alpha) + ")",
        [log_a0](std::size_t n) { return n == 0 ? LogTerm{log_a0, 1} : LogTerm::zero(); },
        kInfiniteRadius, SignStatus::AllNonnegative, 0);
}

AnalyticKernel make_constant_kernel(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw Error(ErrorKind::Constraint, "constant kernel requires c > 0, got " + fmt(c));
    }
    const LogTerm a0 = LogTerm::from_value(c);
    return AnalyticKernel(
        "constant(c=" + fmt(c) + ")",
        [a0](std::size_t n) { return n == 0 ? a0 : LogTerm::zero(); },
        kInfiniteRadius, SignStatus::AllNonnegative, 0);
}

AnalyticKernel make_proportional_kernel(double rho, double alpha) {
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw Error(ErrorKind::Constraint, "proportional kernel requires 0 < rho <= 1, got " + fmt(rho));
    }
    if (!(alpha > 0.0)) throw Error(ErrorKind::Constraint, "proportional kernel requires alpha > 0");
    const double log_norm = -alpha * std::log(rho) - ln_gamma(alpha);
    const double slope = (rho - 1.0) / rho; // <= 0
    const std::string name = "proportional(rho=" + fmt(rho) + ",alpha=" + fmt(alpha) + ")";
    if (slope == 0.0) {
        return AnalyticKernel(
            name, [log_norm](std::size_t n) { return n == 0 ? LogTerm{log_norm, 1} : LogTerm::zero(); },
            kInfiniteRadius, SignStatus::AllNonnegative, 0);
    }
    const double log_slope = std::log(-slope);
    return AnalyticKernel(
        name,
        [=](std::size_t n) {
            const double dn = static_cast<double>(n);
            return LogTerm{log_norm + dn * log_slope - ln_gamma(dn + 1.0), n % 2 == 0 ? 1 : -1};
        },
        kInfiniteRadius, SignStatus::Mixed);
}

AnalyticKernel make_prabhakar_kernel(double rho, double omega, const FractionalOrder& order) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw Error(ErrorKind::Constraint, "Prabhakar kernel requires rho >= 0, got " + fmt(rho));
    }
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw Error(ErrorKind::Constraint, "Prabhakar kernel requires omega >= 0, got " + fmt(omega));
    }
    const FractionalOrder ord = FractionalOrder::make(order.alpha, order.beta);
    const std::string name = "prabhakar(rho=" + fmt(rho) + ",omega=" + fmt(omega) +
                             ",beta=" + fmt(ord.beta) + ",alpha=" + fmt(ord.alpha) + ")";
    std::optional<std::size_t> last;
    if (rho == 0.0 || omega == 0.0) last = 0;
    const double log_omega = omega > 0.0 ? std::log(omega) : 0.0;
    return AnalyticKernel(
        name,
        [=](std::size_t n) {
            if (n == 0) return LogTerm{-ln_gamma(ord.alpha), 1};
            if (omega == 0.0 || rho == 0.0) return LogTerm::zero();
            const double dn = static_cast<double>(n);
            return LogTerm{ln_pochhammer(rho, n) + dn * log_omega - ln_gamma(dn + 1.0) -
                               ln_gamma(ord.beta * dn + ord.alpha),
                           1};
        },
        kInfiniteRadius, SignStatus::AllNonnegative, last);
}

AnalyticKernel make_series_kernel(const FunctionExpr& coeff, double radius, std::string name,
                                  std::size_t probe) {
    if (!(radius > 0.0)) throw Error(ErrorKind::Constraint, "series kernel radius must be positive");
    SignStatus sign = SignStatus::Unknown;
    for (std::size_t n = 0; n < probe; ++n) {
        const double v = coeff.eval(static_cast<double>(n));
        if (v < 0.0) {
            sign = SignStatus::Mixed;
            break;
        }
    }
    return AnalyticKernel(
        std::move(name),
        [coeff](std::size_t n) { return LogTerm::from_value(coeff.eval(static_cast<double>(n))); },
        radius, sign);
}

SeriesSum kernel_eval(const AnalyticKernel& k, double u, const KernelTolerance& tol) {
    if (!(std::abs(u) < k.radius())) {
        throw Error(ErrorKind::Radius, "kernel " + k.name() + " evaluated at |u| = " + fmt(std::abs(u)) +
                                           " >= radius " + fmt(k.radius()));
    }
    if (u == 0.0) return {k.coeff(0), 0.0, 1};
    const double log_u = std::log(std::abs(u));
    const bool negative = u < 0.0;
    auto term = [&](std::size_t n) {
        LogTerm t = k.log_coeff(n);
        if (t.sign == 0) return t;
        t.log_abs += static_cast<double>(n) * log_u;
        if (negative && n % 2 == 1) t.sign = -t.sign;
        return t;
    };
    SeriesControl ctl{tol.abs_tol, tol.rel_tol, tol.term_cap, k.last_nonzero()};
    return sum_series(term, ctl, ErrorKind::Tolerance, "kernel_eval(" + k.name() + ")");
}

SeriesSum kernel_transform_eval(const AnalyticKernel& k, const FractionalOrder& order, double u,
                                const KernelTolerance& tol) {
    const double log_u = u != 0.0 ? std::log(std::abs(u)) : 0.0;
    const bool negative = u < 0.0;
    auto term = [&](std::size_t n) {
        LogTerm t = k.log_coeff(n);
        if (t.sign == 0) return t;
        if (n > 0 && u == 0.0) return LogTerm::zero();
        const double dn = static_cast<double>(n);
        t.log_abs += ln_gamma(order.beta * dn + order.alpha) + dn * log_u;
        if (negative && n % 2 == 1) t.sign = -t.sign;
        return t;
    };
    std::optional<std::size_t> last = k.last_nonzero();
    if (u == 0.0) last = 0;
    SeriesControl ctl{tol.abs_tol, tol.rel_tol, tol.term_cap, last};
    return sum_series(term, ctl, ErrorKind::Divergence, "kernel_transform_eval(" + k.name() + ")");
}

KernelValidation validate_kernel(const AnalyticKernel& k, const FractionalOrder& order,
                                 const Interval& iv, std::size_t probe) {
    KernelValidation r;
    r.required_radius = std::pow(iv.b - iv.a, order.beta);
    r.radius_ok = k.radius() > r.required_radius;
    if (!r.radius_ok) {
        r.messages.push_back("radius " + fmt(k.radius()) + " does not exceed (b-a)^beta = " +
                             fmt(r.required_radius));
    }
    const std::size_t n_probe = k.last_nonzero() ? std::min(probe, *k.last_nonzero() + 1) : probe;
    for (std::size_t n = 0; n < n_probe; ++n) {
        if (k.log_coeff(n).sign < 0) {
            r.first_negative = n;
            break;
        }
    }
    r.probed_terms = n_probe;
    r.sign_status = k.sign_status();
    if (r.first_negative) {
        r.sign_status = SignStatus::Mixed;
        r.messages.push_back("coefficient a_" + std::to_string(*r.first_negative) + " is negative");
    } else if (r.sign_status == SignStatus::Unknown) {
        r.messages.push_back("no negative coefficient in the first " + std::to_string(n_probe) +
                             " terms, but the tail sign is unproven");
    }
    r.admissible = r.radius_ok && r.sign_status == SignStatus::AllNonnegative;
    return r;
}

} // namespace fracmink
