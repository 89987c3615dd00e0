#pragma once

// Power-series summation with a computable truncation bound. Terms are
// supplied in log-magnitude form so that factorial and gamma ratios never
// overflow on their own.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>

#include "fracmink/errors.hpp"

namespace fracmink {

/// A signed term stored as sign * exp(log_abs). sign == 0 encodes an exact zero.
struct LogTerm {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static LogTerm zero() { return {}; }
    static LogTerm from_value(double v) {
        if (v == 0.0) return {};
        return {std::log(std::abs(v)), v < 0.0 ? -1 : 1};
    }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

inline LogTerm operator*(LogTerm a, LogTerm b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.log_abs + b.log_abs, a.sign * b.sign};
}

struct SeriesControl {
    double abs_tol = 1e-15;
    double rel_tol = 0.0;
    std::size_t term_cap = 10000;
    /// Index of the last possibly-nonzero term, when the series is a polynomial.
    std::optional<std::size_t> last_index;
};

struct SeriesSum {
    double value = 0.0;
    /// Bound on |sum of the omitted terms|; zero for exact finite sums.
    double tail_bound = 0.0;
    std::size_t terms = 0;
};

/// Sums term(0) + term(1) + ... until the geometric tail bound
/// |t_n| r / (1 - r) falls below tolerance, where r is the largest of the
/// last three successive magnitude ratios and must be below one. Throws
/// Error(failure) on overflow or when the term cap is reached first.
template <class TermFn>
SeriesSum sum_series(TermFn&& term, const SeriesControl& ctl, ErrorKind failure,
                     const std::string& what) {
    constexpr std::size_t kZeroRunStop = 64;
    // Neumaier-compensated running sum.
    double sum = 0.0;
    double comp = 0.0;
    double prev_log = 0.0;
    bool seen_nonzero = false;
    std::size_t zero_run = 0;
    std::array<double, 3> ratios{};
    std::size_t n_ratios = 0;

    for (std::size_t n = 0; n < ctl.term_cap; ++n) {
        if (ctl.last_index && n > *ctl.last_index) {
            return {sum + comp, 0.0, n};
        }
        const LogTerm t = term(n);
        if (t.sign == 0) {
            if (seen_nonzero && ++zero_run >= kZeroRunStop) return {sum + comp, 0.0, n + 1};
            continue;
        }
        zero_run = 0;
        const double v = t.value();
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::Overflow, what + ": term " + std::to_string(n) + " overflows");
        }
        const double s = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
        sum = s;

        if (seen_nonzero) {
            ratios[n_ratios % ratios.size()] = std::exp(t.log_abs - prev_log);
            ++n_ratios;
        }
        seen_nonzero = true;
        prev_log = t.log_abs;

        if (n_ratios >= ratios.size()) {
            double r = 0.0;
            for (double x : ratios) r = std::max(r, x);
            if (r < 1.0) {
                const double bound = std::abs(v) * r / (1.0 - r);
                const double total = sum + comp;
                if (bound <= std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total))) {
                    return {total, bound, n + 1};
                }
            }
        }
    }
    if (!seen_nonzero) return {0.0, 0.0, ctl.term_cap};
    throw Error(failure, what + ": tail bound not met within " + std::to_string(ctl.term_cap) +
                             " terms");
}

} // namespace fracmink
