#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "curveflow/curve.hpp"
#include "curveflow/support.hpp"

namespace curveflow::io {

/// One "x,y" pair per line, no header. Blank lines are skipped.
/// Throws Io on unreadable files or malformed lines; curve validation errors propagate.
ClosedCurve read_curve_csv(std::istream& in);
ClosedCurve read_curve_csv(const std::filesystem::path& path);

/// 17 significant digits so that values round-trip exactly.
void write_curve_csv(std::ostream& out, const ClosedCurve& curve);
void write_curve_csv(const std::filesystem::path& path, const ClosedCurve& curve);

/// "theta,p" per line, ascending uniform theta in [0, 2pi), no header.
SupportFunction read_support_csv(std::istream& in);
void write_support_csv(std::ostream& out, const SupportFunction& p);

/// Round-trip formatting of a double.
std::string format_double(double value);

/// Static SVG of one or more curves as closed paths in a shared view box.
void write_svg(std::ostream& out, std::span<const ClosedCurve> curves, double min_x, double min_y, double width,
               double height);

}  // namespace curveflow::io
