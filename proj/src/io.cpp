#include "curveflow/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "curveflow/error.hpp"

namespace curveflow::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view field, std::size_t line_no) {
    field = trim(field);
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty())
        throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": cannot parse number '" + std::string(field) + "'");
    return value;
}

/// Reads lines of exactly two comma-separated numbers.
std::vector<std::pair<double, double>> read_pairs(std::istream& in) {
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) continue;
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
            throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": expected two comma-separated values");
        rows.emplace_back(parse_number(view.substr(0, comma), line_no), parse_number(view.substr(comma + 1), line_no));
    }
    return rows;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return in;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

ClosedCurve read_curve_csv(std::istream& in) {
    std::vector<Vec2> pts;
    for (const auto& [x, y] : read_pairs(in)) pts.push_back({x, y});
    return ClosedCurve::from_points(std::move(pts));
}

ClosedCurve read_curve_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_curve_csv(in);
}

void write_curve_csv(std::ostream& out, const ClosedCurve& curve) {
    for (const Vec2& p : curve.points()) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void write_curve_csv(const std::filesystem::path& path, const ClosedCurve& curve) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write_curve_csv(out, curve);
}

SupportFunction read_support_csv(std::istream& in) {
    const auto rows = read_pairs(in);
    std::vector<double> values;
    values.reserve(rows.size());
    const double h = 2.0 * std::numbers::pi / static_cast<double>(std::max<std::size_t>(rows.size(), 1));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (std::abs(rows[j].first - h * static_cast<double>(j)) > 1e-9)
            throw Error(ErrorCode::Io, "theta column is not the uniform grid on [0, 2pi)");
        values.push_back(rows[j].second);
    }
    return SupportFunction::from_samples(std::move(values));
}

void write_support_csv(std::ostream& out, const SupportFunction& p) {
    for (std::size_t j = 0; j < p.size(); ++j) out << format_double(p.theta(j)) << ',' << format_double(p[j]) << '\n';
}

void write_svg(std::ostream& out, std::span<const ClosedCurve> curves, double min_x, double min_y, double width,
               double height) {
    // y is flipped so the picture has the usual mathematical orientation.
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(min_x) << ' '
        << format_double(-(min_y + height)) << ' ' << format_double(width) << ' ' << format_double(height) << "\">\n";
    const double stroke = 2e-3 * std::max(width, height);
    for (const ClosedCurve& c : curves) {
        out << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << format_double(stroke) << "\" d=\"";
        for (std::size_t i = 0; i < c.size(); ++i)
            out << (i == 0 ? 'M' : 'L') << format_double(c[i].x) << ' ' << format_double(-c[i].y) << ' ';
        out << "Z\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace curveflow::io
