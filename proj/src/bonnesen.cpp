#include "curveflow/bonnesen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;

/// Maximizes a concave function of one variable on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
    double a = hi - kInvPhi * (hi - lo);
    double b = lo + kInvPhi * (hi - lo);
    double fa = f(a), fb = f(b);
    while (hi - lo > tol) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + kInvPhi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - kInvPhi * (hi - lo);
            fa = f(a);
        }
    }
    return 0.5 * (lo + hi);
}

struct EdgeLine {
    Vec2 normal;  // unit, pointing into the region
    double offset;
};

Circle from_two(const Vec2& a, const Vec2& b) { return {(a + b) * 0.5, 0.5 * distance(a, b)}; }

Circle from_three(const Vec2& a, const Vec2& b, const Vec2& c) {
    const Vec2 ab = b - a;
    const Vec2 ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (std::abs(d) < 1e-300) {
        // Collinear: the widest pair decides.
        Circle best = from_two(a, b);
        for (const Circle& cand : {from_two(a, c), from_two(b, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    const double ab2 = norm2(ab);
    const double ac2 = norm2(ac);
    const Vec2 off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    return {a + off, norm(off)};
}

}  // namespace

Circle inradius(const ClosedCurve& curve) {
    if (!is_convex(curve)) throw Error(ErrorCode::NotConvex, "inradius needs a convex curve");
    const std::size_t n = curve.size();
    const double orient = signed_area(curve) > 0.0 ? 1.0 : -1.0;
    std::vector<EdgeLine> lines(n);
    double xmin = curve[0].x, xmax = curve[0].x, ymin = curve[0].y, ymax = curve[0].y;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = curve[i];
        const Vec2 e = curve[(i + 1) % n] - a;
        const Vec2 nrm = perp(e) * (orient / norm(e));
        lines[i] = {nrm, -dot(nrm, a)};
        xmin = std::min(xmin, a.x);
        xmax = std::max(xmax, a.x);
        ymin = std::min(ymin, a.y);
        ymax = std::max(ymax, a.y);
    }
    auto depth = [&](double x, double y) {
        double d = std::numeric_limits<double>::infinity();
        for (const EdgeLine& l : lines) d = std::min(d, l.normal.x * x + l.normal.y * y + l.offset);
        return d;
    };
    // The depth is concave, and so is its partial maximum over y.
    const double tol = 1e-13 * curve.diameter();
    auto best_y = [&](double x) { return golden_max([&](double y) { return depth(x, y); }, ymin, ymax, tol); };
    const double x = golden_max([&](double xx) { return depth(xx, best_y(xx)); }, xmin, xmax, tol);
    const double y = best_y(x);
    return {{x, y}, depth(x, y)};
}

Circle circumradius(const ClosedCurve& curve, std::uint64_t seed) {
    std::vector<Vec2> pts(curve.points().begin(), curve.points().end());
    std::mt19937_64 rng(seed);
    std::shuffle(pts.begin(), pts.end(), rng);
    const double slack = 1e-14 * curve.diameter();
    auto inside = [&](const Circle& c, const Vec2& p) { return distance(c.center, p) <= c.radius + slack; };

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (inside(c, pts[i])) continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (inside(c, pts[j])) continue;
            c = from_two(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!inside(c, pts[k])) c = from_three(pts[i], pts[j], pts[k]);
        }
    }
    return c;
}

BonnesenRoots bonnesen_roots(double area, double length) {
    if (!(area > 0.0) || !(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "area and length must be positive");
    double disc = length * length - 4.0 * kPi * area;
    if (disc < -1e-9 * length * length)
        throw Error(ErrorCode::IsoperimetricViolation, "L^2 - 4 pi A = " + std::to_string(disc) + " < 0");
    if (disc <= 0.0) {
        const double t = length / (2.0 * kPi);
        return {t, t};
    }
    // Larger root directly, smaller one through the product t1 t2 = A / pi (no cancellation).
    const double t2 = (length + std::sqrt(disc)) / (2.0 * kPi);
    const double t1 = area / (kPi * t2);
    return {t1, t2};
}

double inner_parallel_area(double area, double length, double t) { return area - length * t + kPi * t * t; }

BonnesenReport bonnesen_chain(const ClosedCurve& curve, double tol, std::uint64_t seed) {
    if (!is_convex(curve)) throw Error(ErrorCode::NotConvex, "Bonnesen chain needs a convex curve");
    BonnesenReport r;
    r.tolerance = tol > 0.0 ? tol : 1e-6 * curve.diameter();
    r.area = std::abs(signed_area(curve));
    r.length = length(curve);
    const Circle in = inradius(curve);
    const Circle out = circumradius(curve, seed);
    r.inradius = in.radius;
    r.incenter = in.center;
    r.circumradius = out.radius;
    r.circumcenter = out.center;
    const BonnesenRoots roots = bonnesen_roots(r.area, r.length);
    r.t1 = roots.t1;
    r.t2 = roots.t2;
    r.chain_ok = r.t1 <= r.inradius + r.tolerance && r.inradius <= r.circumradius + r.tolerance &&
                 r.circumradius <= r.t2 + r.tolerance;
    if (r.t1 < r.t2) r.midpoint_negative = inner_parallel_area(r.area, r.length, 0.5 * (r.t1 + r.t2)) < 0.0;
    r.equality_gap = std::max(r.inradius - r.t1, r.t2 - r.circumradius);
    return r;
}

}  // namespace curveflow
