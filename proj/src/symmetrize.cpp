#include "curveflow/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curveflow/bonnesen.hpp"
#include "curveflow/error.hpp"

namespace curveflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Nodes closer than this (in normal angle) to a chord endpoint are dropped.
constexpr double kNodeGap = 1e-9;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}

double shoelace(const std::vector<Vec2>& pts) {
    const Vec2 o = pts.front();
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) s += cross(pts[i] - o, pts[i + 1] - o);
    return 0.5 * s;
}

double angle_between(const Vec2& a, const Vec2& b) { return std::atan2(std::abs(cross(a, b)), dot(a, b)); }

std::vector<Vec2> spectral_nodes(const SupportFunction& p) {
    for (double r : p.radius_of_curvature(Derivative::Spectral))
        if (!(r > 0.0)) throw Error(ErrorCode::NotAnOval, "p + p'' must be positive");
    const ClosedCurve c = curve_from_support(p, Derivative::Spectral);
    return {c.points().begin(), c.points().end()};
}

}  // namespace

ChordGeometry::ChordGeometry(const SupportFunction& p)
    : interp_(p.values()), nodes_(spectral_nodes(p)), step_(p.step()), area_(shoelace(nodes_)) {}

Vec2 ChordGeometry::endpoint(double theta) const {
    const double t = wrap_angle(theta);
    const double k = std::round(t / step_);
    if (std::abs(t - k * step_) < 1e-12) return nodes_[static_cast<std::size_t>(k) % nodes_.size()];
    return support_point(interp_, t);
}

ChordGeometry::Arc ChordGeometry::arc(double from, Vec2 start, Vec2 end) const {
    const std::size_t n = nodes_.size();
    const double t0 = wrap_angle(from);
    Arc a;
    a.points.reserve(n / 2 + 3);
    a.points.push_back(start);
    std::size_t j = static_cast<std::size_t>(std::floor(t0 / step_));
    for (std::size_t k = 0; k <= n; ++k, ++j) {
        double d = static_cast<double>(j) * step_ - t0;
        if (d <= kNodeGap) continue;
        if (d >= kPi - kNodeGap) break;
        a.points.push_back(nodes_[j % n]);
    }
    a.points.push_back(end);
    return a;
}

ChordCut ChordGeometry::cut(double theta) const {
    ChordCut c;
    c.theta = theta;
    c.start = endpoint(theta);
    c.end = endpoint(theta + kPi);
    c.midpoint = (c.start + c.end) * 0.5;
    c.sigma = shoelace(arc(theta, c.start, c.end).points);
    c.area = c.sigma + shoelace(arc(theta + kPi, c.end, c.start).points);
    return c;
}

ChordCut ChordGeometry::bisecting_chord(double tol) const {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    auto excess = [](const ChordCut& c) { return c.sigma - 0.5 * c.area; };
    // Refined to rounding level regardless of tol, which only decides acceptance.
    auto settled = [&](const ChordCut& c) { return std::abs(excess(c)) <= 1e-13 * c.area; };
    ChordCut best = cut(0.0);
    const double g0 = excess(best);
    if (!settled(best)) {
        // g(pi) = -g(0); orient the bracket so that g(lo) < 0 < g(hi).
        double lo = 0.0, hi = kPi;
        if (g0 > 0.0) std::swap(lo, hi);
        for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            const ChordCut c = cut(mid);
            const double g = excess(c);
            if (std::abs(g) / c.area < std::abs(excess(best)) / best.area) best = c;
            if (settled(c)) break;
            (g < 0.0 ? lo : hi) = mid;
        }
    }
    if (std::abs(excess(best)) > tol * best.area)
        throw Error(ErrorCode::ToleranceNotMet, "no bisecting chord within tolerance at this grid resolution");
    return best;
}

SymmetrizedPair ChordGeometry::symmetrize(const ChordCut& cut) const {
    const Vec2 w = cut.midpoint;
    double worst_gap = 0.0;
    double worst_sym = 0.0;

    auto glue = [&](double from, const Vec2& start, const Vec2& end) {
        std::vector<Vec2> pts = arc(from, start, end).points;
        const std::size_t interior = pts.size() - 2;
        for (std::size_t i = 1; i <= interior; ++i) pts.push_back(w * 2.0 - pts[i]);

        const std::size_t m = pts.size();
        const std::size_t half = m / 2;
        for (std::size_t i = 0; i < half; ++i) worst_sym = std::max(worst_sym, norm(pts[i] + pts[i + half] - w * 2.0));

        const Vec2 tangent = perp(unit_direction(from));
        for (auto [idx, t] : {std::pair{std::size_t{0}, tangent}, std::pair{half, tangent * -1.0}}) {
            const Vec2 in = pts[idx] - pts[(idx + m - 1) % m];
            const Vec2 out = pts[(idx + 1) % m] - pts[idx];
            worst_gap = std::max({worst_gap, angle_between(in, t), angle_between(out, t)});
        }

        ClosedCurve curve = ClosedCurve::from_points(std::move(pts));
        if (!is_convex(curve) || signed_area(curve) <= 0.0)
            throw Error(ErrorCode::NotConvexAfterGluing, "glued curve is not convex; refine the grid");
        return curve;
    };

    ClosedCurve c1 = glue(cut.theta, cut.start, cut.end);
    ClosedCurve c2 = glue(cut.theta + kPi, cut.end, cut.start);
    return SymmetrizedPair{std::move(c1), std::move(c2), worst_gap, worst_sym};
}

ChordCut chord_cut(const SupportFunction& p, double theta) { return ChordGeometry(p).cut(theta); }

ChordCut find_bisecting_chord(const SupportFunction& p, double tol) { return ChordGeometry(p).bisecting_chord(tol); }

SymmetrizedPair symmetrize(const SupportFunction& p, const ChordCut& cut) { return ChordGeometry(p).symmetrize(cut); }

std::pair<SupportFunction, SupportFunction> symmetrized_supports(const SupportFunction& p, const ChordCut& cut) {
    const std::size_t n = p.size();
    std::vector<double> q(n), first(n), second(n);
    for (std::size_t j = 0; j < n; ++j) q[j] = p[j] - dot(cut.midpoint, unit_direction(p.theta(j)));
    const double t0 = wrap_angle(cut.theta);
    for (std::size_t j = 0; j < n; ++j) {
        const double d = wrap_angle(p.theta(j) - t0);
        const double kept = q[j];
        const double mirrored = q[(j + n / 2) % n];
        // A node exactly at theta0 + pi belongs to both halves; both values agree there.
        (d <= kPi ? first : second)[j] = kept;
        (d <= kPi ? second : first)[j] = mirrored;
    }
    return {SupportFunction::from_samples(std::move(first)), SupportFunction::from_samples(std::move(second))};
}

SymmetricShrinkerReport symmetric_shrinker_check(const SupportFunction& p, double tol, Derivative mode) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    SymmetricShrinkerReport r;
    r.tolerance = tol;
    r.central_asymmetry = p.central_asymmetry();
    if (r.central_asymmetry > tol)
        throw Error(ErrorCode::NotSymmetric, "max |p(theta + pi) - p(theta)| = " + std::to_string(r.central_asymmetry));

    const auto rho = p.radius_of_curvature(mode);
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double res = rho[j] > 0.0 ? std::abs(1.0 / rho[j] - p[j]) : std::numeric_limits<double>::infinity();
        r.shrinker_residual = std::max(r.shrinker_residual, res);
    }
    if (!(r.shrinker_residual <= tol))
        throw Error(ErrorCode::NotAShrinker, "max |1/(p + p'') - p| = " + std::to_string(r.shrinker_residual));

    const auto [lo, hi] = std::ranges::minmax(p.values());
    r.min_p = lo;
    r.max_p = hi;
    r.length = cauchy_length(p);
    const BonnesenReport b = bonnesen_chain(curve_from_support(p, mode));
    r.inradius = b.inradius;
    r.circumradius = b.circumradius;
    r.t1 = b.t1;
    r.t2 = b.t2;
    r.scaffold_ok = r.inradius <= r.min_p + tol && r.max_p <= r.circumradius + tol;
    r.is_circle = r.scaffold_ok && r.max_p - r.min_p <= tol;
    return r;
}

}  // namespace curveflow
