#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curveflow/error.hpp"
#include "curveflow/shapes.hpp"
#include "curveflow/support.hpp"
#include "oracles.hpp"

using namespace curveflow;
namespace sh = curveflow::shapes;
constexpr double kPi = std::numbers::pi;

namespace {

SupportFunction trig(double c0, double amp, int k, std::size_t grid, double phase = 0.0) {
    return SupportFunction::sample([=](double t) { return c0 + amp * std::cos(k * t + phase); }, grid);
}

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

}  // namespace

TEST(SupportFunction, GridValidation) {
    EXPECT_EQ(code_of([] { trig(1, 0, 0, 15); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { trig(1, 0, 0, 14); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { trig(1, 0, 0, 33); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { trig(0.5, 1.0, 1, 32); }), ErrorCode::OriginOutside);
    EXPECT_NO_THROW(trig(1, 0, 0, 16));
}

TEST(SupportFromCurve, UnitCircle) {
    const auto p = support_from_curve(sh::circle(4096), 256);
    for (double v : p.values()) EXPECT_NEAR(v, 1.0, 1e-6);
}

TEST(SupportFromCurve, TranslatedCircle) {
    const auto p = support_from_curve(sh::circle(8192, 1.0, {0.3, 0.0}), 128);
    for (std::size_t j = 0; j < p.size(); ++j) EXPECT_NEAR(p[j], 1.0 + 0.3 * std::cos(p.theta(j)), 1e-6);
}

TEST(SupportFromCurve, EllipseVertexMax) {
    const auto c = sh::ellipse(4096, 2.0, 1.0);
    const auto p = support_from_curve(c, 64);
    EXPECT_NEAR(p[0], 2.0, 1e-12);
    // Brute-force vertex max and the closed form at every node.
    for (std::size_t j = 0; j < p.size(); ++j) {
        const Vec2 u = unit_direction(p.theta(j));
        double best = -1e300;
        for (const Vec2& q : c.points()) best = std::max(best, dot(q, u));
        EXPECT_DOUBLE_EQ(p[j], best);
        const double t = p.theta(j);
        EXPECT_NEAR(p[j], std::sqrt(4.0 * std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t)), 1e-6);
    }
}

TEST(SupportFromCurve, Errors) {
    EXPECT_EQ(code_of([] { support_from_curve(sh::l_shape(), 64); }), ErrorCode::NotConvex);
    EXPECT_EQ(code_of([] { support_from_curve(sh::circle(64, 1.0, {3.0, 0.0}), 64); }), ErrorCode::OriginOutside);
    EXPECT_EQ(code_of([] { support_from_curve(sh::circle(64), 10); }), ErrorCode::InvalidArgument);
}

TEST(SupportFromCurve, ClockwiseInputGivesSameSupport) {
    const auto c = sh::ellipse(500, 1.4, 0.9, {0.1, 0.05});
    const auto a = support_from_curve(c, 128);
    const auto b = support_from_curve(c.reversed(), 128);
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_DOUBLE_EQ(a[j], b[j]);
}

TEST(SupportFromCurve, TranslationAddsLinearTerm) {
    const auto c = sh::ellipse(700, 1.2, 0.8);
    const Vec2 shift{0.2, -0.15};
    const auto a = support_from_curve(c, 256);
    const auto b = support_from_curve(c.translated(shift), 256);
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(b[j] - a[j], dot(shift, unit_direction(a.theta(j))), 1e-12);
    EXPECT_NEAR(cauchy_length(a), cauchy_length(b), 1e-12);
}

TEST(CurveFromSupport, ConstantGivesUnitCircle) {
    const auto c = curve_from_support(trig(1, 0, 0, 128));
    for (std::size_t j = 0; j < c.size(); ++j) {
        EXPECT_NEAR(c[j].x, std::cos(2.0 * kPi * j / 128), 1e-10);
        EXPECT_NEAR(c[j].y, std::sin(2.0 * kPi * j / 128), 1e-10);
    }
}

TEST(CurveFromSupport, ThreeLobedRoundTrip) {
    const auto p = trig(1.0, 0.1, 3, 1024);
    const auto c = curve_from_support(p);
    EXPECT_TRUE(is_convex(c));
    EXPECT_GT(signed_area(c), 0.0);
    const auto q = support_from_curve(c, 1024);
    for (std::size_t j = 0; j < p.size(); ++j) EXPECT_NEAR(q[j], p[j], 1e-4);
}

TEST(CurveFromSupport, NotAnOval) {
    const auto p = trig(1.0, 0.2, 3, 256);
    // p + p'' = 1 - 1.6 cos 3 theta at theta = 0.
    EXPECT_NEAR(p.radius_of_curvature(Derivative::Spectral)[0], -0.6, 1e-10);
    EXPECT_EQ(code_of([&] { curve_from_support(p); }), ErrorCode::NotAnOval);
    EXPECT_FALSE(p.is_oval());
}

TEST(CauchyLength, Examples) {
    EXPECT_NEAR(cauchy_length(trig(1, 0, 0, 64)), 2.0 * kPi, 1e-12);
    EXPECT_NEAR(cauchy_length(trig(1, 0.1, 3, 64)), 2.0 * kPi, 1e-10);
    const auto ell = SupportFunction::sample([](double t) { return std::hypot(2.0 * std::cos(t), std::sin(t)); }, 256);
    EXPECT_NEAR(cauchy_length(ell), oracle::ellipse_perimeter(2, 1), 1e-6);
}

TEST(CauchyLength, MatchesReconstructedPolygon) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto p = sh::random_oval(seed).sample(2048);
        const double L = cauchy_length(p);
        EXPECT_NEAR(length(curve_from_support(p)), L, 1e-5 * L) << seed;
    }
}

TEST(AreaFromSupport, Examples) {
    EXPECT_NEAR(area_from_support(trig(1, 0, 0, 64)), kPi, 1e-12);
    // Parseval: pi (1 + d^2 (1 - k^2) / 2) with d = 0.1, k = 3.
    const double expected = kPi * (1.0 + 0.01 * (1.0 - 9.0) / 2.0);
    EXPECT_NEAR(expected, 3.015928947446201, 1e-14);
    EXPECT_NEAR(area_from_support(trig(1, 0.1, 3, 64), Derivative::Spectral), expected, 1e-8);
    EXPECT_NEAR(area_from_support(trig(1, 0.3, 1, 64), Derivative::Spectral), kPi, 1e-8);
    // Centered differences are second order: h^2/12 p'''' integrates to ~2.5e-7 here.
    EXPECT_NEAR(area_from_support(trig(1, 0.1, 3, 4096)), expected, 1e-6);
    EXPECT_NEAR(area_from_support(trig(1, 0.1, 3, 8192)), expected, 1e-7);
    EXPECT_NEAR(area_from_support(trig(1, 0.3, 1, 4096)), kPi, 1e-7);
}

TEST(AreaFromSupport, MatchesShoelace) {
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
        const auto p = sh::random_oval(seed).sample(4096);
        const double A = area_from_support(p);
        EXPECT_NEAR(signed_area(curve_from_support(p)), A, 1e-6 * A) << seed;
    }
}

TEST(CurvatureFromSupport, Examples) {
    EXPECT_NEAR(curvature_from_support(trig(2.5, 0, 0, 64), 1.234), 0.4, 1e-12);
    const auto p = trig(1.0, 0.1, 3, 256);
    EXPECT_NEAR(curvature_from_support(p, 0.0, Derivative::Spectral), 5.0, 1e-6);
    EXPECT_NEAR(curvature_from_support(p, kPi / 3, Derivative::Spectral), 1.0 / 1.8, 1e-6);
    // Centered differences converge at second order.
    const double e1 = std::abs(curvature_from_support(trig(1.0, 0.1, 3, 1024), 0.0) - 5.0);
    const double e2 = std::abs(curvature_from_support(trig(1.0, 0.1, 3, 2048), 0.0) - 5.0);
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.05);
    // Off-grid evaluation interpolates.
    EXPECT_NEAR(curvature_from_support(p, 0.1, Derivative::Spectral), 1.0 / (1.0 - 0.8 * std::cos(0.3)), 1e-9);
}

TEST(CurvatureFromSupport, MatchesPolygonCurvature) {
    const auto p = trig(1.0, 0.1, 3, 4096);
    const auto c = curve_from_support(p, Derivative::Spectral);
    const auto f = signed_curvature(c);
    EXPECT_NEAR(f.curvature[0], 5.0, 1e-3);
    EXPECT_NEAR(f.curvature[4096 / 6], 1.0 / 1.8, 1e-4);
}

TEST(CurvatureFromSupport, RejectsNonOval) {
    EXPECT_EQ(code_of([] { curvature_from_support(trig(1.0, 0.2, 3, 256), 0.0, Derivative::Spectral); }),
              ErrorCode::NotAnOval);
}

TEST(Width, Examples) {
    for (double v : width(trig(1, 0, 0, 64)).values) EXPECT_NEAR(v, 2.0, 1e-15);
    for (double v : width(trig(1, 0.3, 1, 64)).values) EXPECT_NEAR(v, 2.0, 1e-15);
    const auto w = width(trig(1, 0.1, 2, 64));
    ASSERT_EQ(w.values.size(), 32u);
    EXPECT_NEAR(w.values[0], 2.2, 1e-10);
    EXPECT_NEAR(w.values[16], 1.8, 1e-10);
    EXPECT_NEAR(w.theta(16), kPi / 2, 1e-15);
}

TEST(SupportIdentities, FirstDerivativeFromCurve) {
    // -x sin + y cos = p' at the reconstructed samples.
    const auto p = sh::random_oval(3).sample(512);
    for (Derivative mode : {Derivative::CenteredDifference, Derivative::Spectral}) {
        const auto c = curve_from_support(p, mode);
        const auto dp = p.first_derivative(mode);
        for (std::size_t j = 0; j < p.size(); ++j) {
            const double t = p.theta(j);
            EXPECT_NEAR(-c[j].x * std::sin(t) + c[j].y * std::cos(t), dp[j], 1e-6);
        }
    }
}

TEST(SupportIdentities, TangentFormulaAndParallelism) {
    const auto p = sh::random_oval(4).sample(256);
    const TrigInterpolant f(p.values());
    const double d = 1e-5;
    const auto rho = p.radius_of_curvature(Derivative::Spectral);
    for (std::size_t j = 0; j < p.size(); j += 7) {
        const double t = p.theta(j);
        const Vec2 deriv = (support_point(f, t + d) - support_point(f, t - d)) * (0.5 / d);
        EXPECT_NEAR(deriv.x, -rho[j] * std::sin(t), 1e-5);
        EXPECT_NEAR(deriv.y, rho[j] * std::cos(t), 1e-5);
        const Vec2 opposite = support_point(f, t + kPi + d) - support_point(f, t + kPi - d);
        EXPECT_LT(std::abs(cross(normalized(deriv), normalized(opposite))), 1e-8);
        EXPECT_LT(dot(deriv, opposite), 0.0);
    }
}

TEST(SupportIdentities, RoundTripIsSecondOrder) {
    const auto f = sh::random_oval(21);
    auto error = [&](std::size_t n) {
        const auto c = curve_from_support(f.sample(n));
        const auto q = support_from_curve(c, 6002);
        double e = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) e = std::max(e, std::abs(q[j] - f(q.theta(j))));
        return e;
    };
    const double order = std::log2(error(128) / error(256));
    EXPECT_GT(order, 1.9);
    EXPECT_LT(order, 2.2);
}

TEST(TrigInterpolant, ReproducesBandLimitedFunction) {
    auto fn = [](double t) { return 1.0 + 0.2 * std::cos(2 * t) - 0.1 * std::sin(5 * t) + 0.03 * std::cos(7 * t + 0.4); };
    const auto p = SupportFunction::sample(fn, 32);
    const TrigInterpolant f(p.values());
    for (double t : {0.05, 1.0, 2.5, 4.0, 6.0}) {
        EXPECT_NEAR(f.value(t), fn(t), 1e-13);
        const double d1 = -0.4 * std::sin(2 * t) - 0.5 * std::cos(5 * t) - 0.21 * std::sin(7 * t + 0.4);
        const double d2 = -0.8 * std::cos(2 * t) + 2.5 * std::sin(5 * t) - 1.47 * std::cos(7 * t + 0.4);
        EXPECT_NEAR(f.first(t), d1, 1e-12);
        EXPECT_NEAR(f.second(t), d2, 1e-11);
    }
}

TEST(SupportFunction, CentralAsymmetry) {
    EXPECT_NEAR(trig(1, 0.1, 2, 64).central_asymmetry(), 0.0, 1e-15);
    EXPECT_NEAR(trig(1, 0.3, 1, 64).central_asymmetry(), 0.6, 1e-12);
}
