#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "fracmink/funclang.hpp"
#include "fracmink/harness.hpp"

namespace fracmink {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        s = s.substr(1, s.size() - 2);
    }
    return std::string(s);
}

std::optional<double> parse_number(std::string_view text) {
    const std::string s = trim(text);
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "inf" || lower == "+inf" || lower == "infinity") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

RealFunction wrap(const FunctionExpr& e) {
    return [e](double t) { return e.eval(t); };
}

// Gathers every problem in the file before failing, so one run reports them all.
class Reader {
public:
    explicit Reader(const pt::ptree& root) : root_(root) {}

    std::optional<std::string> text(const std::string& section, const std::string& key) {
        const auto node = root_.get_child_optional(section.empty() ? pt::ptree::path_type(key)
                                                                   : pt::ptree::path_type(section + "." + key));
        if (!node) return std::nullopt;
        return trim(node->data());
    }

    std::optional<double> number(const std::string& section, const std::string& key) {
        const auto t = text(section, key);
        if (!t) return std::nullopt;
        const auto v = parse_number(*t);
        if (!v) parse_error(section + "." + key + ": '" + *t + "' is not a number");
        return v;
    }

    std::optional<FunctionExpr> expression(const std::string& section, const std::string& key,
                                           std::string_view var) {
        const auto t = text(section, key);
        if (!t) return std::nullopt;
        try {
            return FunctionExpr::parse(*t, var);
        } catch (const Error& e) {
            parse_error(section + "." + key + ": " + e.what());
            return std::nullopt;
        }
    }

    void parse_error(std::string msg) { parse_.push_back(std::move(msg)); }
    void constraint(std::string msg) { constraint_.push_back(std::move(msg)); }

    void check_keys(const std::map<std::string, std::set<std::string>>& allowed) {
        for (const auto& [name, child] : root_) {
            if (child.empty()) {
                if (!allowed.at("").count(name)) parse_error("unknown top-level key '" + name + "'");
                continue;
            }
            const auto it = allowed.find(name);
            if (it == allowed.end() || name.empty()) {
                parse_error("unknown section [" + name + "]");
                continue;
            }
            for (const auto& [key, value] : child) {
                if (!it->second.count(key)) parse_error(name + "." + key + ": unknown key");
            }
        }
    }

    [[noreturn]] void fail(const std::string& id) const {
        const bool parse = !parse_.empty();
        std::string msg = "scenario '" + id + "':";
        for (const auto& m : parse_) msg += "\n  " + m;
        for (const auto& m : constraint_) msg += "\n  " + m;
        throw Error(parse ? ErrorKind::Parse : ErrorKind::Constraint, msg);
    }

    bool ok() const { return parse_.empty() && constraint_.empty(); }

private:
    const pt::ptree& root_;
    std::vector<std::string> parse_;
    std::vector<std::string> constraint_;
};

std::map<std::string, std::string> parse_spec_params(std::string_view params) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < params.size()) {
        // Commas inside parentheses belong to the expression (e.g. max(a, b)).
        int depth = 0;
        std::size_t end = pos;
        for (; end < params.size(); ++end) {
            const char c = params[end];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) break;
        }
        const std::string_view item = params.substr(pos, end - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::Parse, "kernel parameter '" + trim(item) + "' needs the form name=value");
        }
        out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
        pos = end + 1;
    }
    return out;
}

AnalyticKernel build_kernel(const std::string& type, const std::map<std::string, std::string>& params,
                            const FractionalOrder& order) {
    auto num = [&](const std::string& key, std::optional<double> fallback) -> double {
        const auto it = params.find(key);
        if (it == params.end()) {
            if (fallback) return *fallback;
            throw Error(ErrorKind::Constraint, "kernel type " + type + " needs parameter " + key);
        }
        const auto v = parse_number(it->second);
        if (!v) throw Error(ErrorKind::Parse, "kernel." + key + ": '" + it->second + "' is not a number");
        return *v;
    };
    auto allow = [&](std::initializer_list<std::string_view> keys) {
        for (const auto& [k, v] : params) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                throw Error(ErrorKind::Parse, "kernel." + k + ": not a parameter of kernel type " + type);
            }
        }
    };
    if (type == "rl") {
        allow({});
        return make_rl_kernel(order.alpha);
    }
    if (type == "constant") {
        allow({"c"});
        return make_constant_kernel(num("c", std::nullopt));
    }
    if (type == "proportional") {
        allow({"rho"});
        return make_proportional_kernel(num("rho", std::nullopt), order.alpha);
    }
    if (type == "prabhakar") {
        allow({"rho", "omega"});
        return make_prabhakar_kernel(num("rho", std::nullopt), num("omega", std::nullopt), order);
    }
    if (type == "series") {
        allow({"coeff", "radius"});
        const auto it = params.find("coeff");
        if (it == params.end()) throw Error(ErrorKind::Constraint, "kernel type series needs parameter coeff");
        return make_series_kernel(FunctionExpr::parse(it->second, "n"), num("radius", std::nullopt));
    }
    throw Error(ErrorKind::Parse, "unknown kernel type '" + type + "'");
}

} // namespace

AnalyticKernel kernel_from_spec(std::string_view spec, const FractionalOrder& order) {
    const std::size_t colon = spec.find(':');
    const std::string type = trim(spec.substr(0, colon));
    const auto params =
        colon == std::string_view::npos ? std::map<std::string, std::string>{} : parse_spec_params(spec.substr(colon + 1));
    return build_kernel(type, params, order);
}

Scenario load_scenario_text(std::string_view text, std::string_view default_id) {
    pt::ptree root;
    {
        std::istringstream in{std::string(text)};
        try {
            pt::read_ini(in, root);
        } catch (const pt::ini_parser_error& e) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(e.line()) + ": " + e.message());
        }
    }

    Reader rd(root);
    rd.check_keys({{"", {"id"}},
                   {"kernel", {"type", "c", "rho", "omega", "coeff", "radius"}},
                   {"order", {"alpha", "beta"}},
                   {"interval", {"a", "x", "b"}},
                   {"functions", {"f1", "f2", "upsilon"}},
                   {"hypothesis", {"p", "q", "tau1", "tau2", "phi", "box", "grid"}},
                   {"tolerances", {"abs_tol", "rel_tol", "series_tol", "max_subdivisions", "method"}}});

    Scenario s;
    s.id = rd.text("", "id").value_or(std::string(default_id));

    // order
    const auto alpha = rd.number("order", "alpha");
    const auto beta = rd.number("order", "beta");
    if (!alpha) rd.constraint("order.alpha: missing");
    s.order.alpha = alpha.value_or(1.0);
    s.order.beta = beta.value_or(0.0);
    bool order_ok = true;
    if (alpha && !(*alpha > 0.0 && std::isfinite(*alpha))) {
        rd.constraint("order.alpha: must be a finite value > 0");
        order_ok = false;
    }
    if (!(s.order.beta >= 0.0 && std::isfinite(s.order.beta))) {
        rd.constraint("order.beta: must be a finite value >= 0");
        order_ok = false;
    }

    // interval
    const auto a = rd.number("interval", "a");
    const auto x = rd.number("interval", "x");
    const auto b = rd.number("interval", "b");
    if (!a) rd.constraint("interval.a: missing");
    if (!x) rd.constraint("interval.x: missing");
    s.iv = {a.value_or(0.0), x.value_or(1.0), b ? *b : x.value_or(1.0)};
    const bool interval_ok = a && x && std::isfinite(s.iv.a) && std::isfinite(s.iv.b) && s.iv.a < s.iv.x &&
                             s.iv.x <= s.iv.b;

    // kernel
    const auto type = rd.text("kernel", "type");
    if (!type) {
        rd.constraint("kernel.type: missing");
    } else if (order_ok) {
        std::map<std::string, std::string> params;
        for (const char* key : {"c", "rho", "omega", "coeff", "radius"}) {
            if (auto v = rd.text("kernel", key)) params[key] = *v;
        }
        try {
            s.kernel = build_kernel(*type, params, s.order);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Syntax ||
                e.kind() == ErrorKind::UnknownIdentifier || e.kind() == ErrorKind::Arity) {
                rd.parse_error(std::string("kernel: ") + e.what());
            } else {
                rd.constraint(std::string("kernel: ") + e.what());
            }
        }
    }

    // functions
    const auto f1 = rd.expression("functions", "f1", "theta");
    const auto f2 = rd.expression("functions", "f2", "theta");
    const auto ups = rd.expression("functions", "upsilon", "theta");
    if (f1) {
        s.f1 = wrap(*f1);
        s.f1_text = f1->to_string();
    }
    if (f2) {
        s.f2 = wrap(*f2);
        s.f2_text = f2->to_string();
    }
    if (ups) {
        s.upsilon = wrap(*ups);
        s.upsilon_text = ups->to_string();
    }

    // hypothesis
    s.p = rd.number("hypothesis", "p").value_or(2.0);
    const auto q = rd.number("hypothesis", "q");
    if (s.p >= 1.0 && std::isfinite(s.p)) {
        s.q = q ? *q : conjugate_exponent(s.p);
    } else {
        s.q = q.value_or(2.0);
    }
    s.phi = rd.number("hypothesis", "phi");
    if (const auto box = rd.text("hypothesis", "box")) {
        std::vector<double> vals;
        std::stringstream ss(*box);
        std::string item;
        bool ok = true;
        while (std::getline(ss, item, ',')) {
            const auto v = parse_number(item);
            if (!v) ok = false;
            else vals.push_back(*v);
        }
        if (!ok || vals.size() != 4) {
            rd.parse_error("hypothesis.box: expected four numbers \"m, M, n, N\", got '" + *box + "'");
        } else {
            s.box = Box{vals[0], vals[1], vals[2], vals[3]};
        }
    }
    if (const auto grid = rd.number("hypothesis", "grid")) {
        if (!(*grid >= 2.0 && *grid <= 1e7 && std::floor(*grid) == *grid)) {
            rd.constraint("hypothesis.grid: must be an integer >= 2");
        } else {
            s.grid = static_cast<std::size_t>(*grid);
        }
    }

    // tolerances
    s.quad.abs_tol = rd.number("tolerances", "abs_tol").value_or(s.quad.abs_tol);
    s.quad.rel_tol = rd.number("tolerances", "rel_tol").value_or(s.quad.rel_tol);
    s.series_tol = rd.number("tolerances", "series_tol").value_or(s.series_tol);
    if (const auto ms = rd.number("tolerances", "max_subdivisions")) {
        if (!(*ms >= 1.0 && *ms <= 1e8 && std::floor(*ms) == *ms)) {
            rd.constraint("tolerances.max_subdivisions: must be an integer >= 1");
        } else {
            s.quad.max_subdivisions = static_cast<std::size_t>(*ms);
        }
    }
    if (const auto m = rd.text("tolerances", "method")) {
        if (*m == "direct") s.method = Method::Direct;
        else if (*m == "series") s.method = Method::Series;
        else rd.parse_error("tolerances.method: expected direct or series, got '" + *m + "'");
    }

    // ratio bounds, tightened from the grid when not supplied
    const auto tau1 = rd.number("hypothesis", "tau1");
    const auto tau2 = rd.number("hypothesis", "tau2");
    if ((!tau1 || !tau2) && f1 && f2 && interval_ok) {
        Scenario probe = s;
        probe.bounds = {std::numeric_limits<double>::min(), std::numeric_limits<double>::max()};
        try {
            const HypothesisReport h = check_hypothesis(probe, s.grid);
            s.bounds.tau1 = tau1.value_or(h.tau1_star);
            s.bounds.tau2 = tau2.value_or(h.tau2_star);
        } catch (const Error& e) {
            rd.constraint(std::string("tau1/tau2: cannot be derived: ") + e.what());
        }
    } else {
        s.bounds.tau1 = tau1.value_or(1.0);
        s.bounds.tau2 = tau2.value_or(1.0);
    }

    for (auto& msg : s.problems()) {
        // A missing function was already reported if its text failed to parse.
        if ((msg.rfind("f1:", 0) == 0 && rd.text("functions", "f1")) ||
            (msg.rfind("f2:", 0) == 0 && rd.text("functions", "f2"))) {
            continue;
        }
        rd.constraint(msg);
    }
    if (!rd.ok()) rd.fail(s.id);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read scenario file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario_text(ss.str(), std::filesystem::path(path).stem().string());
}

} // namespace fracmink
