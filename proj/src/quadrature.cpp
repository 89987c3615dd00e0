#include "fracmink/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "fracmink/errors.hpp"

namespace fracmink {

namespace {

// Kronrod nodes (descending); odd indices 1,3,5 are the 7-point Gauss nodes, 7 is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    double abs_value;
};

struct ByError {
    bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

double eval_checked(const std::function<double(double)>& f, double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::Domain, "integrand is not finite at " + std::to_string(t));
    }
    return v;
}

Panel qk15(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = eval_checked(f, centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = eval_checked(f, centre - dx);
        const double f2 = eval_checked(f, centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double ahalf = std::abs(half);
    resk *= half;
    resabs *= ahalf;
    resasc *= ahalf;
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {lo, hi, resk, err, resabs};
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw Error(ErrorKind::Constraint, "quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) throw Error(ErrorKind::Constraint, "max_subdivisions must be >= 1");
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureSpec& spec) {
    spec.validate();
    if (lo == hi) return {};
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorKind::Domain, "integration limits must be finite");
    }

    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    heap.push(qk15(f, lo, hi));
    double total = heap.top().value;
    double total_err = heap.top().error;

    auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (total_err > target()) {
        if (heap.size() >= spec.max_subdivisions) {
            throw Error(ErrorKind::QuadFailure,
                        "error estimate " + std::to_string(total_err) + " above tolerance after " +
                            std::to_string(heap.size()) + " panels");
        }
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > std::min(worst.lo, worst.hi) && mid < std::max(worst.lo, worst.hi))) {
            throw Error(ErrorKind::QuadFailure, "panel width reached machine precision near " +
                                                    std::to_string(worst.lo));
        }
        heap.pop();
        const Panel left = qk15(f, worst.lo, mid);
        const Panel right = qk15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the panels so the result does not carry update drift.
    QuadResult out;
    out.panels = heap.size();
    double comp = 0.0;
    while (!heap.empty()) {
        const Panel& p = heap.top();
        const double s = out.value + p.value;
        comp += std::abs(out.value) >= std::abs(p.value) ? (out.value - s) + p.value : (p.value - s) + out.value;
        out.value = s;
        out.error += p.error;
        out.abs_integral += p.abs_value;
        heap.pop();
    }
    out.value += comp;
    return out;
}

} // namespace fracmink
