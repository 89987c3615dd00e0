#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "fracmink/harness.hpp"

namespace fracmink {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (s.back() == sep) out.emplace_back();
    return out;
}

// One CSV record; quoted fields may contain separators and doubled quotes.
std::vector<std::string> parse_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

void emit_csv(const SuiteResult& r, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const SuiteEntry& e : r.entries) {
        std::string labels;
        std::string values;
        auto append = [&](const Side& s) {
            if (!labels.empty()) {
                labels += ';';
                values += ';';
            }
            labels += s.label;
            values += g17(s.value);
        };
        for (const Side& s : e.report.sides) append(s);
        for (const Side& s : e.report.constants) append(s);
        out << csv_field(e.scenario_id) << ',' << theorem_name(e.report.theorem) << ',' << csv_field(labels) << ','
            << csv_field(values) << ',' << g17(e.report.margin) << ',' << g17(e.report.relative_margin) << ','
            << g17(e.report.error_budget) << ',' << verdict_name(e.report.verdict) << ','
            << (e.report.kernel_admissible ? "true" : "false") << '\n';
    }
}

void emit_text(const SuiteResult& r, std::ostream& out) {
    for (const SuiteEntry& e : r.entries) {
        out << e.scenario_id << ' ' << theorem_name(e.report.theorem) << ' ' << verdict_name(e.report.verdict)
            << " margin=" << g17(e.report.margin) << " budget=" << g17(e.report.error_budget);
        for (const Side& s : e.report.sides) out << ' ' << s.label << '=' << g17(s.value);
        for (const Side& s : e.report.constants) out << ' ' << s.label << '=' << g17(s.value);
        if (!e.report.kernel_admissible) out << " (report only)";
        if (!e.report.note.empty()) out << " [" << e.report.note << ']';
        out << '\n';
    }
    out << summary_line(r.counts) << '\n';
}

void emit_svg(const SuiteResult& r, std::ostream& out) {
    constexpr double width = 800.0;
    constexpr double height = 400.0;
    constexpr double pad = 50.0;
    constexpr double unit = 1e-6; // margins are drawn as asinh(margin / unit)

    std::map<std::string, std::size_t, bool (*)(std::string_view, std::string_view)> index(
        [](std::string_view a, std::string_view b) { return natural_less(a, b); });
    for (const SuiteEntry& e : r.entries) index.emplace(e.scenario_id, 0);
    std::size_t k = 0;
    for (auto& [id, slot] : index) slot = k++;

    double ymax = 1.0;
    for (const SuiteEntry& e : r.entries) {
        const double y = std::asinh(e.report.margin / unit);
        if (std::isfinite(y)) ymax = std::max(ymax, std::abs(y));
    }
    const double n = static_cast<double>(std::max<std::size_t>(index.size(), 1));
    auto px = [&](std::size_t i) { return pad + (width - 2 * pad) * (static_cast<double>(i) + 0.5) / n; };
    auto py = [&](double y) { return height / 2 - (height / 2 - pad) * std::clamp(y / ymax, -1.0, 1.0); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">margin by scenario (asinh(margin/1e-6))</text>\n";
    out << "<line id=\"zero\" x1=\"" << pad << "\" y1=\"" << height / 2 << "\" x2=\"" << width - pad << "\" y2=\""
        << height / 2 << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (const SuiteEntry& e : r.entries) {
        const double y = std::asinh(e.report.margin / unit);
        if (std::isnan(y)) continue;
        const char* colour = e.report.verdict == Verdict::Holds      ? "#2a7"
                             : e.report.verdict == Verdict::Violated ? "#d22"
                                                                     : "#999";
        out << "<circle cx=\"" << g17(px(index.at(e.scenario_id))) << "\" cy=\"" << g17(py(y))
            << "\" r=\"3\" fill=\"" << colour << "\"><title>" << e.scenario_id << ' '
            << theorem_name(e.report.theorem) << " margin=" << g17(e.report.margin) << "</title></circle>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << summary_line(r.counts)
        << "</text>\n";
    out << "</svg>\n";
}

} // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "svg" || name == "svg-margins") return ReportFormat::SvgMargins;
    if (name == "text") return ReportFormat::Text;
    return std::nullopt;
}

std::string summary_line(const SuiteCounts& c) {
    return "holds=" + std::to_string(c.holds) + " violated=" + std::to_string(c.violated) +
           " inconclusive=" + std::to_string(c.inconclusive);
}

void emit_report(const SuiteResult& r, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::Csv: emit_csv(r, out); break;
        case ReportFormat::SvgMargins: emit_svg(r, out); break;
        case ReportFormat::Text: emit_text(r, out); break;
    }
    if (!out) throw Error(ErrorKind::Io, "failed to write report");
}

void emit_report(const SuiteResult& r, ReportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    emit_report(r, format, out);
    out.close();
    if (!out) throw Error(ErrorKind::Io, "failed to write " + path);
}

SuiteResult read_csv_report(std::istream& in) {
    SuiteResult r;
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty CSV report");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw Error(ErrorKind::Parse, "unexpected CSV header: " + line);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = parse_csv_line(line);
        const std::string where = "CSV line " + std::to_string(line_no);
        if (f.size() != 9) throw Error(ErrorKind::Parse, where + ": expected 9 fields, got " + std::to_string(f.size()));
        SuiteEntry e;
        e.scenario_id = f[0];
        const auto thm = parse_theorem(f[1]);
        if (!thm) throw Error(ErrorKind::Parse, where + ": unknown theorem " + f[1]);
        e.report.theorem = *thm;
        const auto labels = split(f[2], ';');
        const auto values = split(f[3], ';');
        if (labels.size() != values.size()) throw Error(ErrorKind::Parse, where + ": side labels and values differ");
        auto number = [&](const std::string& s) {
            char* end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (s.empty() || *end != '\0') throw Error(ErrorKind::Parse, where + ": '" + s + "' is not a number");
            return v;
        };
        for (std::size_t i = 0; i < labels.size(); ++i) e.report.sides.push_back({labels[i], number(values[i]), 0.0});
        e.report.margin = number(f[4]);
        e.report.relative_margin = number(f[5]);
        e.report.error_budget = number(f[6]);
        if (f[7] == "holds") e.report.verdict = Verdict::Holds;
        else if (f[7] == "violated") e.report.verdict = Verdict::Violated;
        else if (f[7] == "inconclusive") e.report.verdict = Verdict::Inconclusive;
        else throw Error(ErrorKind::Parse, where + ": unknown verdict " + f[7]);
        if (f[8] != "true" && f[8] != "false") throw Error(ErrorKind::Parse, where + ": kernel_admissible must be true or false");
        e.report.kernel_admissible = f[8] == "true";
        switch (e.report.verdict) {
            case Verdict::Holds: ++r.counts.holds; break;
            case Verdict::Violated: ++r.counts.violated; break;
            case Verdict::Inconclusive: ++r.counts.inconclusive; break;
        }
        r.entries.push_back(std::move(e));
    }
    return r;
}

SuiteResult read_csv_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    return read_csv_report(in);
}

} // namespace fracmink
