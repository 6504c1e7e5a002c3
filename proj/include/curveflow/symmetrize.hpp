#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/support.hpp"

namespace curveflow {

/// Chord joining the two boundary points with opposite normals theta and theta + pi.
struct ChordCut {
    double theta = 0.0;
    Vec2 start;     // point with outward normal theta
    Vec2 end;       // point with outward normal theta + pi
    Vec2 midpoint;  // omega_0
    /// Area cut off on the side of the arc [theta, theta + pi].
    double sigma = 0.0;
    /// Area of the whole oval (polygon through the grid nodes and both endpoints).
    double area = 0.0;
};

struct SymmetrizedPair {
    ClosedCurve curve1;  // arc [theta0, theta0 + pi] plus its reflection through omega_0
    ClosedCurve curve2;  // arc [theta0 + pi, theta0 + 2 pi] plus its reflection
    /// Largest angle between a one-sided edge at a gluing point and the common tangent there.
    double junction_tangent_gap = 0.0;
    /// max |x_i + x_{i + n/2} - 2 omega_0| over both curves.
    double central_asymmetry = 0.0;
};

/// Oval reconstructed from p with spectral derivatives, ready for chord queries.
/// Grid nodes are computed once; chords at any angle add their two endpoints
/// evaluated on the same band-limited curve.
class ChordGeometry {
public:
    /// Throws NotAnOval where p + p'' <= 0.
    explicit ChordGeometry(const SupportFunction& p);

    std::size_t size() const noexcept { return nodes_.size(); }
    double step() const noexcept { return step_; }
    const std::vector<Vec2>& nodes() const noexcept { return nodes_; }
    /// Shoelace area of the node polygon.
    double area() const noexcept { return area_; }

    ChordCut cut(double theta) const;
    /// |sigma - A/2| <= tol * A by bisection over [0, pi]. Throws ToleranceNotMet.
    ChordCut bisecting_chord(double tol) const;
    /// Throws NotConvexAfterGluing.
    SymmetrizedPair symmetrize(const ChordCut& cut) const;

private:
    struct Arc {
        std::vector<Vec2> points;  // start, interior nodes, end
    };
    Arc arc(double from, Vec2 start, Vec2 end) const;
    Vec2 endpoint(double theta) const;

    TrigInterpolant interp_;
    std::vector<Vec2> nodes_;
    double step_ = 0.0;
    double area_ = 0.0;
};

ChordCut chord_cut(const SupportFunction& p, double theta);
ChordCut find_bisecting_chord(const SupportFunction& p, double tol);
SymmetrizedPair symmetrize(const SupportFunction& p, const ChordCut& cut);

/// Support functions of both symmetrized ovals measured from omega_0, on the
/// grid of p: q(theta) = p(theta) - omega_0 . u(theta) on the kept half and
/// q(theta - pi) on the reflected one.
std::pair<SupportFunction, SupportFunction> symmetrized_supports(const SupportFunction& p, const ChordCut& cut);

struct SymmetricShrinkerReport {
    double tolerance = 0.0;
    double central_asymmetry = 0.0;
    double shrinker_residual = 0.0;  // max |1/(p + p'') - p|
    double min_p = 0.0;
    double max_p = 0.0;
    double inradius = 0.0;
    double circumradius = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double length = 0.0;  // Cauchy length of p
    /// r <= min p <= max p <= R (within tol).
    bool scaffold_ok = false;
    /// p constant within tol.
    bool is_circle = false;
};

/// Checks a centrally symmetric shrinker candidate. Throws NotSymmetric when
/// max |p(theta + pi) - p(theta)| > tol and NotAShrinker when the shrinker
/// residual exceeds tol.
SymmetricShrinkerReport symmetric_shrinker_check(const SupportFunction& p, double tol,
                                                 Derivative mode = Derivative::CenteredDifference);

}  // namespace curveflow
