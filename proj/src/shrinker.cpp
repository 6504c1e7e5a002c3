#include "curveflow/shrinker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curveflow/error.hpp"

namespace curveflow {

FundamentalResidual fundamental_residual(const ClosedCurve& curve) {
    FundamentalResidual out;
    out.area = signed_area(curve);
    if (!(out.area > 0.0)) throw Error(ErrorCode::InvalidArgument, "shrinker residual needs a counter-clockwise curve");
    out.length = length(curve);
    const FrenetData frame = signed_curvature(curve);
    out.residual.resize(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out.residual[i] = frame.curvature[i] + dot(curve[i], frame.normal[i]);
        out.max_abs = std::max(out.max_abs, std::abs(out.residual[i]));
    }
    return out;
}

GaugeEstimate gauge_constant(const ClosedCurve& curve) {
    if (!is_convex(curve) || signed_area(curve) <= 0.0)
        throw Error(ErrorCode::NotConvex, "gauge constant needs a convex counter-clockwise curve");
    const FrenetData frame = signed_curvature(curve);
    const std::size_t n = curve.size();
    std::vector<double> gauge(n);
    double log_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = frame.curvature[i];
        if (!(k > 0.0)) throw Error(ErrorCode::NotConvex, "non-positive curvature sample");
        const double log_g = std::log(k) - 0.5 * norm2(curve[i]);
        gauge[i] = log_g;
        log_sum += log_g;
    }
    GaugeEstimate est;
    const double log_c = log_sum / static_cast<double>(n);
    est.constant = std::exp(log_c);
    for (double log_g : gauge) est.max_rel_dev = std::max(est.max_rel_dev, std::abs(std::expm1(log_g - log_c)));
    return est;
}

ShrinkerReport verify_shrinker(const ClosedCurve& curve, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    if (!is_simple(curve)) throw Error(ErrorCode::InvalidArgument, "shrinker verification needs a simple curve");

    ShrinkerReport report;
    report.tolerance = tol;
    const FundamentalResidual res = fundamental_residual(curve);
    report.max_residual = res.max_abs;
    report.area = res.area;
    report.length = res.length;
    if (is_convex(curve)) {
        const GaugeEstimate g = gauge_constant(curve);
        report.gauge_constant = g.constant;
        report.gauge_max_rel_dev = g.max_rel_dev;
    } else {
        report.gauge_constant = std::numeric_limits<double>::quiet_NaN();
        report.gauge_max_rel_dev = std::numeric_limits<double>::infinity();
    }
    constexpr double pi = std::numbers::pi;
    report.is_circle_verdict = report.max_residual <= tol && report.gauge_max_rel_dev <= tol &&
                               std::abs(report.area - pi) <= tol && std::abs(report.length - 2.0 * pi) <= tol;
    return report;
}

}  // namespace curveflow
