#pragma once

#include <cstdint>

#include "curveflow/curve.hpp"

namespace curveflow {

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

/// Largest disc inside a convex polygon (Chebyshev center): maximizes the
/// smallest distance to the edge lines. Throws NotConvex.
Circle inradius(const ClosedCurve& curve);

/// Smallest disc containing every sample (randomized incremental, expected
/// linear time). The shuffle is seeded for reproducibility.
Circle circumradius(const ClosedCurve& curve, std::uint64_t seed = 0);

/// Roots t1 <= t2 of pi t^2 - L t + A.
struct BonnesenRoots {
    double t1 = 0.0;
    double t2 = 0.0;
};

/// Throws InvalidArgument for non-positive inputs and IsoperimetricViolation when
/// L^2 - 4 pi A < -1e-9 L^2. Within that slack the double root L / (2 pi) is returned.
BonnesenRoots bonnesen_roots(double area, double length);

/// A_Omega(t) = A - L t + pi t^2, the area of the inner parallel body at distance t.
double inner_parallel_area(double area, double length, double t);

struct BonnesenReport {
    double area = 0.0;
    double length = 0.0;
    double inradius = 0.0;
    double circumradius = 0.0;
    Vec2 incenter;
    Vec2 circumcenter;
    double t1 = 0.0;
    double t2 = 0.0;
    double tolerance = 0.0;
    bool chain_ok = false;
    /// A_Omega at the midpoint of (t1, t2) is negative (vacuously true when t1 == t2).
    bool midpoint_negative = true;
    /// max(r - t1, t2 - R): zero exactly in the equality (circle) case.
    double equality_gap = 0.0;
};

/// t1 <= r <= R <= t2 up to `tol` (default 1e-6 times the curve diameter).
/// Throws NotConvex.
BonnesenReport bonnesen_chain(const ClosedCurve& curve, double tol = -1.0, std::uint64_t seed = 0);

}  // namespace curveflow
