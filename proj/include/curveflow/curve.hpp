#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "curveflow/vec2.hpp"

namespace curveflow {

/// An ordered loop of plane samples. The last point connects back to the first;
/// the closing point is never stored twice. Orientation is implied by the order
/// and is never changed behind the caller's back.
class ClosedCurve {
public:
    /// Validates and takes ownership of the samples.
    /// Throws TooFewPoints (n < 3) or DegenerateSegment (consecutive samples closer
    /// than 1e-12 times the curve diameter).
    static ClosedCurve from_points(std::vector<Vec2> points);

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const Vec2> points() const noexcept { return points_; }
    const Vec2& operator[](std::size_t i) const { return points_[i]; }

    /// Sample i taken modulo the loop length; negative indices wrap.
    const Vec2& at_wrapped(std::ptrdiff_t i) const;

    /// Diagonal of the axis-aligned bounding box; the scale for every tolerance.
    double diameter() const noexcept { return diameter_; }

    ClosedCurve reversed() const;
    ClosedCurve translated(const Vec2& offset) const;
    ClosedCurve scaled(double factor) const;
    ClosedCurve rotated(double angle) const;

private:
    explicit ClosedCurve(std::vector<Vec2> points, double diameter)
        : points_(std::move(points)), diameter_(diameter) {}

    std::vector<Vec2> points_;
    double diameter_;
};

/// Per-sample moving frame. `normal` is `tangent` rotated by +pi/2, which is the
/// inward normal of a counter-clockwise curve; curvature is signed accordingly.
struct FrenetData {
    std::vector<Vec2> tangent;
    std::vector<Vec2> normal;
    std::vector<double> curvature;
    /// Half the sum of the two edges meeting at each sample; the arclength weight ds_i.
    std::vector<double> dual_length;
};

double length(const ClosedCurve& curve);

/// Shoelace area: positive for counter-clockwise curves.
double signed_area(const ClosedCurve& curve);

/// Centroid of the enclosed region (requires non-zero signed area).
Vec2 area_centroid(const ClosedCurve& curve);

/// Tangent angle differences over dual edge lengths:
/// kappa_i = turn(e_{i-1}, e_i) / ((|e_{i-1}| + |e_i|) / 2).
/// Second-order accurate on near-uniform arclength grids; callers holding
/// strongly non-uniform samples should resample first.
FrenetData signed_curvature(const ClosedCurve& curve);

/// Sum of exterior turning angles; 2*pi times the turning number.
double total_turning(const ClosedCurve& curve);
int turning_number(const ClosedCurve& curve);

bool is_convex(const ClosedCurve& curve);

/// True iff no two non-adjacent edges intersect.
bool is_simple(const ClosedCurve& curve);

/// Winding number of the curve around `point` (0 when outside).
int winding_number(const ClosedCurve& curve, const Vec2& point);

/// Resamples to m points whose consecutive chords are all equal, walking the
/// polygon itself (piecewise-linear interpolation). The first sample is kept.
/// Throws TooFewPoints for m < 3.
ClosedCurve resample_arclength(const ClosedCurve& curve, std::size_t m);

/// Resamples to m points equally spaced in cumulative chord length on a
/// piecewise-cubic interpolant through the samples. Much smaller shape error
/// than the linear walk, so it is the reparametrization used inside the flow.
ClosedCurve resample_smooth(const ClosedCurve& curve, std::size_t m);

/// Curve translated so that its area centroid sits at the origin.
ClosedCurve recenter_to_centroid(const ClosedCurve& curve);

}  // namespace curveflow
