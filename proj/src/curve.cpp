#include "curveflow/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

double bounding_diagonal(std::span<const Vec2> pts) {
    double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const Vec2& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

/// Signed angle from direction a to direction b, in (-pi, pi].
double turn_angle(const Vec2& a, const Vec2& b) { return std::atan2(cross(a, b), dot(a, b)); }

int orientation_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int o1 = orientation_sign(a, b, c);
    const int o2 = orientation_sign(a, b, d);
    const int o3 = orientation_sign(c, d, a);
    const int o4 = orientation_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

bool edges_adjacent(std::size_t i, std::size_t j, std::size_t n) {
    return i == j || (i + 1) % n == j || (j + 1) % n == i;
}

bool simple_brute_force(const ClosedCurve& c) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (edges_adjacent(i, j, n)) continue;
            if (segments_intersect(c[i], c[(i + 1) % n], c[j], c[(j + 1) % n])) return false;
        }
    }
    return true;
}

/// Sweep over x-extents: edges sorted by their left end, an active list pruned
/// as the sweep line passes their right end.
bool simple_sweep(const ClosedCurve& c) {
    const std::size_t n = c.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto xmin = [&](std::size_t e) { return std::min(c[e].x, c[(e + 1) % n].x); };
    auto xmax = [&](std::size_t e) { return std::max(c[e].x, c[(e + 1) % n].x); };
    auto ymin = [&](std::size_t e) { return std::min(c[e].y, c[(e + 1) % n].y); };
    auto ymax = [&](std::size_t e) { return std::max(c[e].y, c[(e + 1) % n].y); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xmin(a) < xmin(b); });

    std::vector<std::size_t> active;
    for (std::size_t e : order) {
        const double x0 = xmin(e);
        std::erase_if(active, [&](std::size_t a) { return xmax(a) < x0; });
        for (std::size_t a : active) {
            if (edges_adjacent(a, e, n)) continue;
            if (ymax(a) < ymin(e) || ymax(e) < ymin(a)) continue;
            if (segments_intersect(c[a], c[(a + 1) % n], c[e], c[(e + 1) % n])) return false;
        }
        active.push_back(e);
    }
    return true;
}

/// Piecewise-linear arclength parametrization of the closed polygon.
class PolygonWalker {
public:
    explicit PolygonWalker(const ClosedCurve& c) : curve_(c), cumulative_(c.size() + 1, 0.0) {
        for (std::size_t i = 0; i < c.size(); ++i)
            cumulative_[i + 1] = cumulative_[i] + distance(c[i], c[(i + 1) % c.size()]);
    }

    double total() const { return cumulative_.back(); }

    /// Walks m steps of chord length `chord` from sample 0 and returns the
    /// unwrapped arclength parameter reached. Visited points go to `out` if given.
    double walk(double chord, std::size_t m, std::vector<Vec2>* out) const {
        const std::size_t n = curve_.size();
        std::size_t edge = 0;
        double u = 0.0;  // fraction along current edge
        std::size_t laps = 0;
        Vec2 current = curve_[0];
        if (out) out->push_back(current);
        const std::size_t max_edges = (m + 2) * n + n;
        std::size_t visited = 0;
        for (std::size_t step = 0; step < m; ++step) {
            bool found = false;
            while (!found) {
                const Vec2 a = curve_[edge];
                const Vec2 d = curve_[(edge + 1) % n] - a;
                const Vec2 ap = a - current;
                // |ap + t d|^2 = chord^2, smallest root with t >= u.
                const double qa = norm2(d);
                const double qb = 2.0 * dot(ap, d);
                const double qc = norm2(ap) - chord * chord;
                const double disc = qb * qb - 4.0 * qa * qc;
                if (disc >= 0.0) {
                    const double sq = std::sqrt(disc);
                    const double r1 = (-qb - sq) / (2.0 * qa);
                    const double r2 = (-qb + sq) / (2.0 * qa);
                    for (double t : {r1, r2}) {
                        if (t >= u && t <= 1.0 && !found) {
                            u = t;
                            current = a + d * t;
                            found = true;
                        }
                    }
                }
                if (!found) {
                    u = 0.0;
                    edge = (edge + 1) % n;
                    if (edge == 0) ++laps;
                    if (++visited > max_edges) return std::numeric_limits<double>::infinity();
                }
            }
            if (out && step + 1 < m) out->push_back(current);
        }
        return static_cast<double>(laps) * total() + cumulative_[edge] +
               u * (cumulative_[edge + 1] - cumulative_[edge]);
    }

private:
    const ClosedCurve& curve_;
    std::vector<double> cumulative_;
};

}  // namespace

ClosedCurve ClosedCurve::from_points(std::vector<Vec2> points) {
    if (points.size() < 3) throw Error(ErrorCode::TooFewPoints, "a closed curve needs at least 3 points");
    for (const Vec2& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
    const double diam = bounding_diagonal(points);
    if (!(diam > 0.0)) throw Error(ErrorCode::DegenerateSegment, "all points coincide");
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (distance(points[i], points[(i + 1) % n]) <= 1e-12 * diam)
            throw Error(ErrorCode::DegenerateSegment,
                        "samples " + std::to_string(i) + " and " + std::to_string((i + 1) % n) + " coincide");
    }
    return ClosedCurve(std::move(points), diam);
}

const Vec2& ClosedCurve::at_wrapped(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(points_.size());
    return points_[static_cast<std::size_t>(((i % n) + n) % n)];
}

ClosedCurve ClosedCurve::reversed() const {
    std::vector<Vec2> pts(points_.rbegin(), points_.rend());
    return ClosedCurve(std::move(pts), diameter_);
}

ClosedCurve ClosedCurve::translated(const Vec2& offset) const {
    std::vector<Vec2> pts = points_;
    for (Vec2& p : pts) p += offset;
    return ClosedCurve(std::move(pts), diameter_);
}

ClosedCurve ClosedCurve::scaled(double factor) const {
    std::vector<Vec2> pts = points_;
    for (Vec2& p : pts) p *= factor;
    return from_points(std::move(pts));
}

ClosedCurve ClosedCurve::rotated(double angle) const {
    std::vector<Vec2> pts = points_;
    for (Vec2& p : pts) p = curveflow::rotated(p, angle);
    return from_points(std::move(pts));
}

double length(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += distance(curve[i], curve[(i + 1) % n]);
    return sum;
}

double signed_area(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    // Anchored at sample 0 to limit cancellation for curves far from the origin.
    const Vec2 o = curve[0];
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) twice += cross(curve[i] - o, curve[i + 1] - o);
    return 0.5 * twice;
}

Vec2 area_centroid(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    const Vec2 o = curve[0];
    double twice_area = 0.0;
    Vec2 moment{};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Vec2 a = curve[i] - o;
        const Vec2 b = curve[i + 1] - o;
        const double w = cross(a, b);
        twice_area += w;
        moment += (a + b) * w;
    }
    if (twice_area == 0.0) throw Error(ErrorCode::InvalidArgument, "centroid of a zero-area curve");
    return o + moment / (3.0 * twice_area);
}

FrenetData signed_curvature(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    FrenetData f;
    f.tangent.resize(n);
    f.normal.resize(n);
    f.curvature.resize(n);
    f.dual_length.resize(n);

    std::vector<Vec2> edge_dir(n);
    std::vector<double> edge_len(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e = curve[(i + 1) % n] - curve[i];
        edge_len[i] = norm(e);
        if (!(edge_len[i] > 0.0)) throw Error(ErrorCode::DegenerateSegment, "zero-length edge");
        edge_dir[i] = e / edge_len[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const Vec2 bisector = edge_dir[prev] + edge_dir[i];
        const double bn = norm(bisector);
        if (bn < 1e-12) throw Error(ErrorCode::DegenerateSegment, "edge folds back on itself at sample " + std::to_string(i));
        f.tangent[i] = bisector / bn;
        f.normal[i] = perp(f.tangent[i]);
        f.dual_length[i] = 0.5 * (edge_len[prev] + edge_len[i]);
        f.curvature[i] = turn_angle(edge_dir[prev], edge_dir[i]) / f.dual_length[i];
    }
    return f;
}

double total_turning(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = curve[i] - curve.at_wrapped(static_cast<std::ptrdiff_t>(i) - 1);
        const Vec2 b = curve[(i + 1) % n] - curve[i];
        sum += turn_angle(a, b);
    }
    return sum;
}

int turning_number(const ClosedCurve& curve) {
    return static_cast<int>(std::lround(total_turning(curve) / (2.0 * std::numbers::pi)));
}

bool is_convex(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    // Rounding in the edge vectors is ~eps * diameter, so cross(a, b) is only
    // resolved beyond that times |a| + |b|.
    const double scale = 8.0 * std::numeric_limits<double>::epsilon() * curve.diameter();
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = curve[i] - curve.at_wrapped(static_cast<std::ptrdiff_t>(i) - 1);
        const Vec2 b = curve[(i + 1) % n] - curve[i];
        const double c = cross(a, b);
        if (std::abs(c) <= scale * (norm(a) + norm(b))) {
            if (dot(a, b) < 0.0) return false;  // fold-back
            continue;
        }
        const int s = c > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    // Same-sign turning alone admits star polygons; require a single turn.
    return sign != 0 && std::abs(turning_number(curve)) == 1;
}

bool is_simple(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = curve[i] - curve.at_wrapped(static_cast<std::ptrdiff_t>(i) - 1);
        const Vec2 b = curve[(i + 1) % n] - curve[i];
        if (cross(a, b) == 0.0 && dot(a, b) < 0.0) return false;
    }
    if (n < 64) return simple_brute_force(curve);
    return simple_sweep(curve);
}

int winding_number(const ClosedCurve& curve, const Vec2& point) {
    const std::size_t n = curve.size();
    int wn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = curve[i];
        const Vec2& b = curve[(i + 1) % n];
        if (a.y <= point.y) {
            if (b.y > point.y && cross(b - a, point - a) > 0.0) ++wn;
        } else if (b.y <= point.y && cross(b - a, point - a) < 0.0) {
            --wn;
        }
    }
    return wn;
}

ClosedCurve resample_arclength(const ClosedCurve& curve, std::size_t m) {
    if (m < 3) throw Error(ErrorCode::TooFewPoints, "resampling needs at least 3 points");
    const PolygonWalker walker(curve);
    const double total = walker.total();
    auto excess = [&](double chord) { return walker.walk(chord, m, nullptr) - total; };

    // Chords never exceed the arc they span, so total/m overshoots (or hits) the loop.
    // Already-uniform input closes exactly at total/m; give rounding some room.
    double hi = total / static_cast<double>(m) * (1.0 + 1e-9);
    double lo = 0.5 * hi;
    for (int guard = 0; excess(lo) >= 0.0; ++guard) {
        lo *= 0.5;
        if (guard > 60) throw Error(ErrorCode::DegenerateSegment, "cannot bracket equal-chord resampling");
    }
    if (excess(hi) < 0.0) throw Error(ErrorCode::DegenerateSegment, "cannot bracket equal-chord resampling");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    std::vector<Vec2> out;
    out.reserve(m);
    walker.walk(0.5 * (lo + hi), m, &out);
    return ClosedCurve::from_points(std::move(out));
}

ClosedCurve resample_smooth(const ClosedCurve& curve, std::size_t m) {
    if (m < 3) throw Error(ErrorCode::TooFewPoints, "resampling needs at least 3 points");
    const std::size_t n = curve.size();
    std::vector<double> s(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) s[i + 1] = s[i] + distance(curve[i], curve[(i + 1) % n]);
    const double total = s[n];
    // Unwrapped parameter of node k for any integer k.
    auto param = [&](std::ptrdiff_t k) {
        const auto nn = static_cast<std::ptrdiff_t>(n);
        const std::ptrdiff_t lap = (k >= 0) ? k / nn : -((-k + nn - 1) / nn);
        return s[static_cast<std::size_t>(k - lap * nn)] + static_cast<double>(lap) * total;
    };

    std::vector<Vec2> out(m);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double target = total * static_cast<double>(k) / static_cast<double>(m);
        while (seg + 1 < n && s[seg + 1] <= target) ++seg;
        const auto i = static_cast<std::ptrdiff_t>(seg);
        // Cubic Lagrange through nodes i-1, i, i+1, i+2.
        double t[4];
        Vec2 q[4];
        for (int j = 0; j < 4; ++j) {
            t[j] = param(i - 1 + j);
            q[j] = curve.at_wrapped(i - 1 + j);
        }
        Vec2 value{};
        for (int j = 0; j < 4; ++j) {
            double w = 1.0;
            for (int l = 0; l < 4; ++l)
                if (l != j) w *= (target - t[l]) / (t[j] - t[l]);
            value += q[j] * w;
        }
        out[k] = value;
    }
    return ClosedCurve::from_points(std::move(out));
}

ClosedCurve recenter_to_centroid(const ClosedCurve& curve) { return curve.translated(-area_centroid(curve)); }

}  // namespace curveflow
