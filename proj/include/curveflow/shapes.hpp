#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/support.hpp"

namespace curveflow::shapes {

/// Uniformly sampled circle; counter-clockwise unless `clockwise`.
ClosedCurve circle(std::size_t n, double radius = 1.0, Vec2 center = {}, bool clockwise = false);

/// Ellipse x = a cos t, y = b sin t sampled uniformly in t (not in arclength).
ClosedCurve ellipse(std::size_t n, double a, double b, Vec2 center = {});

/// Axis-aligned square with lower-left corner at `origin`, corners only.
ClosedCurve square(double side, Vec2 origin = {});

/// Axis-aligned square of the given side with circular corners, sampled
/// uniformly in arclength and centred at the origin.
ClosedCurve rounded_square(std::size_t n, double side, double corner_radius);

/// Non-convex L-shaped hexagon.
ClosedCurve l_shape();

/// Limacon r = a + b cos t; for b > a it has an inner loop and self-intersects.
ClosedCurve limacon(std::size_t n, double a, double b);

/// Circle traversed `loops` times (turning number `loops`, not simple).
ClosedCurve multi_loop_circle(std::size_t n_per_loop, std::size_t loops, double radius = 1.0);

/// Truncated Fourier support function p = c0 + sum_k (a_k cos k t + b_k sin k t).
struct FourierSupport {
    double constant = 1.0;
    std::vector<double> cos_terms;  // index k-1 holds a_k
    std::vector<double> sin_terms;  // index k-1 holds b_k

    double operator()(double theta) const;
    SupportFunction sample(std::size_t grid) const;
    /// Exact sum of |(1 - k^2)| (|a_k| + |b_k|): p + p'' >= constant - this bound.
    double curvature_bound() const;
};

/// Reproducible random oval support with harmonics 1..max_harmonic.
/// Guarantees p + p'' >= 0.2 and p >= 0.2 (origin well inside).
FourierSupport random_oval(std::uint64_t seed, std::size_t max_harmonic = 5, bool centrally_symmetric = false);

}  // namespace curveflow::shapes
