#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curveflow/error.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/shapes.hpp"
#include "curveflow/support.hpp"
#include "curveflow/symmetrize.hpp"

using namespace curveflow;
namespace sh = curveflow::shapes;
constexpr double kPi = std::numbers::pi;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::Io;
}

SupportFunction fourier(std::size_t grid, double c1, double c2 = 0.0, double c3 = 0.0) {
    return SupportFunction::sample(
        [=](double t) { return 1.0 + c1 * std::cos(t) + c2 * std::cos(2.0 * t) + c3 * std::cos(3.0 * t); }, grid);
}

SupportFunction ellipse_support(std::size_t grid, double a, double b) {
    return SupportFunction::sample(
        [=](double t) { return std::sqrt(a * a * std::cos(t) * std::cos(t) + b * b * std::sin(t) * std::sin(t)); },
        grid);
}

// Polygon area deficit of a regular N-gon inscribed in the unit circle is ~ pi (2pi/N)^2 / 6.
double polygon_circle_area(std::size_t n) {
    return 0.5 * static_cast<double>(n) * std::sin(2.0 * kPi / static_cast<double>(n));
}

}  // namespace

TEST(ChordCut, UnitCircleHalvesAnywhere) {
    const auto p = fourier(4096, 0.0);
    for (double theta : {0.0, 0.3, 1.0, 2.5}) {
        const ChordCut c = chord_cut(p, theta);
        EXPECT_NEAR(c.sigma, kPi / 2.0, 1e-5) << theta;
        // off-grid endpoints carry the rounding noise of the interpolant, ~N^2 eps
        EXPECT_NEAR(c.sigma, 0.5 * c.area, 1e-9) << theta;
        EXPECT_NEAR(norm(c.midpoint), 0.0, 1e-9) << theta;
        EXPECT_NEAR(c.area, polygon_circle_area(4096), 1e-9) << theta;
    }
}

TEST(ChordCut, TranslatedCircleVerticalNormal) {
    // p = 1 + 0.3 cos: unit circle centred at (0.3, 0); the chord at pi/2 is a diameter.
    {
        const auto p = fourier(4096, 0.3);
        const ChordGeometry g(p);
        const ChordCut c = g.cut(kPi / 2.0);
        EXPECT_NEAR(c.sigma, 0.5 * g.area(), 1e-6);
        EXPECT_NEAR(c.midpoint.x, 0.3, 1e-12);
        EXPECT_NEAR(c.midpoint.y, 0.0, 1e-12);
    }
    const ChordCut fine = chord_cut(fourier(16384, 0.3), kPi / 2.0);
    EXPECT_NEAR(fine.sigma, kPi / 2.0, 1e-6);
}

TEST(ChordCut, ComplementaryHalvesSumToArea) {
    const auto p = fourier(1024, 0.0, 0.0, 0.1);
    const ChordGeometry g(p);
    for (double theta : {0.0, 0.4, 1.3, 2.9}) {
        const ChordCut a = g.cut(theta);
        const ChordCut b = g.cut(theta + kPi);
        EXPECT_NEAR(a.sigma + b.sigma, a.area, 1e-12) << theta;
        EXPECT_NEAR(b.area, a.area, 1e-12) << theta;
        // the two endpoints add triangles of size O(h^3) to the node polygon
        EXPECT_NEAR(a.area, g.area(), 1e-6) << theta;
    }
}

TEST(ChordCut, OffGridEndpointsAgreeWithNodes) {
    const auto p = fourier(512, 0.2, 0.05);
    const ChordGeometry g(p);
    const double h = g.step();
    const ChordCut at_node = g.cut(10.0 * h);
    const ChordCut nearby = g.cut(10.0 * h + 1e-10);
    EXPECT_NEAR(at_node.sigma, nearby.sigma, 1e-8);
    EXPECT_NEAR(distance(at_node.start, nearby.start), 0.0, 1e-8);
}

TEST(BisectingChord, SymmetricOvalAtZero) {
    const auto p = fourier(1024, 0.0, 0.1);
    const ChordCut c = find_bisecting_chord(p, 1e-8);
    EXPECT_NEAR(c.sigma, 0.5 * c.area, 1e-8 * c.area);
}

TEST(BisectingChord, AsymmetricOval) {
    const auto p = fourier(1024, 0.3, 0.05);
    const ChordCut c = find_bisecting_chord(p, 1e-6);
    EXPECT_LE(std::abs(c.sigma - 0.5 * c.area), 1e-6 * c.area);
    EXPECT_GE(c.theta, 0.0);
    EXPECT_LE(c.theta, kPi);
}

TEST(BisectingChord, CircleReturnsZero) {
    const ChordCut c = find_bisecting_chord(fourier(256, 0.0), 1e-10);
    EXPECT_EQ(c.theta, 0.0);
}

TEST(BisectingChord, Errors) {
    EXPECT_EQ(code_of([] { find_bisecting_chord(fourier(256, 0.0), 0.0); }), ErrorCode::InvalidArgument);
    // p + p'' = 1 - 3 * 0.5 < 0 around theta = 0
    EXPECT_EQ(code_of([] { ChordGeometry g(fourier(256, 0.0, 0.5)); }), ErrorCode::NotAnOval);
}

TEST(Symmetrize, CircleGivesTwoCircles) {
    const auto p = fourier(4096, 0.0);
    const SymmetrizedPair s = symmetrize(p, chord_cut(p, 0.7));
    for (const ClosedCurve* c : {&s.curve1, &s.curve2}) {
        EXPECT_NEAR(signed_area(*c), kPi, 1e-5);
        EXPECT_NEAR(length(*c), 2.0 * kPi, 1e-5);
        EXPECT_TRUE(is_convex(*c));
    }
    EXPECT_LT(s.central_asymmetry, 1e-12);
}

TEST(Symmetrize, CentredEllipseIsItsOwnSymmetrization) {
    const std::size_t n = 512;
    const auto p = ellipse_support(n, 2.0, 1.0);
    const ChordGeometry g(p);
    for (const Vec2& q : g.nodes()) EXPECT_NEAR(q.x * q.x / 4.0 + q.y * q.y, 1.0, 1e-8);

    const SymmetrizedPair s = g.symmetrize(g.cut(0.0));
    for (const ClosedCurve* c : {&s.curve1, &s.curve2}) {
        ASSERT_EQ(c->size(), n);
        // curve2 starts at the node with normal pi
        const std::size_t shift = c == &s.curve1 ? 0 : n / 2;
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(distance((*c)[i], g.nodes()[(i + shift) % n]), 0.0, 1e-8);
    }
}

TEST(Symmetrize, TranslatedCirclePreservesArea) {
    const auto p = fourier(4096, 0.3);
    const ChordGeometry g(p);
    const ChordCut c = g.bisecting_chord(1e-8);
    const SymmetrizedPair s = g.symmetrize(c);
    EXPECT_NEAR(signed_area(s.curve1), g.area(), 1e-6);
    EXPECT_NEAR(signed_area(s.curve2), g.area(), 1e-6);
    EXPECT_TRUE(is_convex(s.curve1));
    EXPECT_TRUE(is_convex(s.curve2));
}

TEST(Symmetrize, InvariantsOnAsymmetricOval) {
    const std::size_t n = 1024;
    const auto p = fourier(n, 0.25, 0.04, 0.02);
    const ChordGeometry g(p);
    const ChordCut c = g.bisecting_chord(1e-10);
    const SymmetrizedPair s = g.symmetrize(c);
    const double l0 = cauchy_length(p);
    // each symmetrized oval carries twice one of the arcs, so the lengths average to L
    EXPECT_NEAR(0.5 * (length(s.curve1) + length(s.curve2)), l0, 1e-5);
    EXPECT_NEAR(signed_area(s.curve1), 2.0 * c.sigma, 1e-10);
    EXPECT_NEAR(signed_area(s.curve2), 2.0 * (c.area - c.sigma), 1e-10);
    EXPECT_LT(s.junction_tangent_gap, 2.0 * kPi / static_cast<double>(n));
    EXPECT_LT(s.central_asymmetry, 1e-12);
}

TEST(SymmetrizedSupports, MatchGluedCurves) {
    const std::size_t n = 512;
    const auto p = fourier(n, 0.25, 0.04);
    const ChordGeometry g(p);
    const ChordCut c = g.cut(g.step() * 37.0);
    const auto [q1, q2] = symmetrized_supports(p, c);
    EXPECT_LT(q1.central_asymmetry(), 1e-13);
    EXPECT_LT(q2.central_asymmetry(), 1e-13);
    // same translate of the kept half: q1 = p - omega . u on [theta0, theta0 + pi]
    for (std::size_t j = 37; j <= 37 + n / 2; ++j)
        EXPECT_NEAR(q1[j], p[j] - dot(c.midpoint, unit_direction(p.theta(j))), 1e-15);
    EXPECT_NEAR(0.5 * (cauchy_length(q1) + cauchy_length(q2)), cauchy_length(p), 1e-12);
}

TEST(SymmetricShrinkerCheck, UnitCircle) {
    const auto p = fourier(1024, 0.0);
    const SymmetricShrinkerReport r = symmetric_shrinker_check(p, 1e-6);
    EXPECT_TRUE(r.is_circle);
    EXPECT_TRUE(r.scaffold_ok);
    EXPECT_NEAR(r.inradius, 1.0, 1e-4);
    EXPECT_NEAR(r.circumradius, 1.0, 1e-12);
    EXPECT_NEAR(r.shrinker_residual, 0.0, 1e-6);
    EXPECT_NEAR(r.length, 2.0 * kPi, 1e-12);
}

TEST(SymmetricShrinkerCheck, Rejections) {
    // 1/(1 - 3*0.05) - 1.05 at theta = 0
    try {
        symmetric_shrinker_check(fourier(256, 0.0, 0.05), 1e-3);
        ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAShrinker);
    }
    const double expected = 1.0 / 0.85 - 1.05;
    const auto p = fourier(256, 0.0, 0.05);
    const auto rho = p.radius_of_curvature(Derivative::Spectral);
    EXPECT_NEAR(std::abs(1.0 / rho[0] - p[0]), expected, 1e-9);

    EXPECT_EQ(code_of([] { symmetric_shrinker_check(fourier(256, 0.1), 1e-3); }), ErrorCode::NotSymmetric);
    EXPECT_EQ(code_of([] { symmetric_shrinker_check(fourier(256, 0.0), 0.0); }), ErrorCode::InvalidArgument);
}

TEST(SymmetricShrinkerCheck, FlowProfileEndToEnd) {
    RescaledFlowOptions opt;
    const RescaledFlowResult res = rescaled_flow(sh::ellipse(256, 2.0, 1.0), opt);
    ASSERT_TRUE(res.converged);
    const ClosedCurve profile = recenter_to_centroid(res.profile.reference_curve);
    const auto p = support_from_curve(profile, 32);
    const ChordCut c = find_bisecting_chord(p, 1e-6);
    const auto [q1, q2] = symmetrized_supports(p, c);
    double total = 0.0;
    for (const SupportFunction* q : {&q1, &q2}) {
        const SymmetricShrinkerReport r = symmetric_shrinker_check(*q, 1e-2);
        EXPECT_TRUE(r.is_circle);
        EXPECT_NEAR(0.5 * r.length, kPi, 1e-2);
        total += 0.5 * r.length;
    }
    EXPECT_NEAR(total, 2.0 * kPi, 1e-2);
}
