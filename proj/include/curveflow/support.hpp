#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

/// How p' and p'' are obtained from the periodic samples.
enum class Derivative {
    CenteredDifference,  ///< second-order, the default
    Spectral,            ///< trigonometric interpolation; exact for band-limited p
};

/// Minkowski support function p(theta) sampled on the uniform grid
/// theta_j = 2*pi*j/N, N even and >= 16, p > 0 everywhere (origin strictly inside).
///
/// The oval condition p + p'' > 0 depends on the derivative mode and is checked
/// by the operations that need it (NotAnOval), not at construction.
class SupportFunction {
public:
    /// Throws InvalidArgument for a bad grid size, OriginOutside when some p <= 0.
    static SupportFunction from_samples(std::vector<double> values);
    static SupportFunction sample(const std::function<double(double)>& p, std::size_t grid);

    std::size_t size() const noexcept { return values_.size(); }
    double step() const noexcept;
    double theta(std::size_t j) const noexcept { return step() * static_cast<double>(j); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }

    std::vector<double> first_derivative(Derivative mode = Derivative::CenteredDifference) const;
    std::vector<double> second_derivative(Derivative mode = Derivative::CenteredDifference) const;

    /// p + p'': the radius of curvature of the oval at normal angle theta_j.
    std::vector<double> radius_of_curvature(Derivative mode = Derivative::CenteredDifference) const;

    bool is_oval(Derivative mode = Derivative::CenteredDifference) const;

    /// max_j |p(theta_j + pi) - p(theta_j)|
    double central_asymmetry() const;

private:
    explicit SupportFunction(std::vector<double> v) : values_(std::move(v)) {}
    std::vector<double> values_;
};

/// Band-limited interpolant of periodic samples on a uniform grid of [0, 2pi).
/// Evaluates the function and its first two derivatives anywhere.
class TrigInterpolant {
public:
    explicit TrigInterpolant(std::span<const double> samples);

    double value(double theta) const;
    double first(double theta) const;
    double second(double theta) const;

private:
    struct Terms {
        double f, d1, d2;
    };
    Terms evaluate(double theta) const;

    std::size_t n_;
    std::vector<double> cos_coeff_;  // a_0 .. a_{n/2}
    std::vector<double> sin_coeff_;  // b_0 .. b_{n/2}
};

/// w(theta) = p(theta) + p(theta + pi) on the half grid theta_j, j < N/2.
struct WidthFunction {
    double step = 0.0;
    std::vector<double> values;

    double theta(std::size_t j) const noexcept { return step * static_cast<double>(j); }
};

/// Support of a convex curve about the origin: p(theta) = max_i <x_i, u(theta)>.
/// Throws NotConvex, OriginOutside, InvalidArgument (grid).
SupportFunction support_from_curve(const ClosedCurve& curve, std::size_t grid);

/// Polar tangential reconstruction x = p cos - p' sin, y = p sin + p' cos.
/// The result is counter-clockwise. Throws NotAnOval where p + p'' <= 0.
ClosedCurve curve_from_support(const SupportFunction& p, Derivative mode = Derivative::CenteredDifference);

/// Point of the oval with outward normal (cos theta, sin theta), at any theta,
/// from the band-limited interpolant of p.
Vec2 support_point(const TrigInterpolant& p, double theta);

/// Cauchy: L = integral of p over [0, 2pi), trapezoid rule.
double cauchy_length(const SupportFunction& p);

/// A = 1/2 integral of p (p + p'').
double area_from_support(const SupportFunction& p, Derivative mode = Derivative::CenteredDifference);

/// 1 / (p + p'') at theta; linear interpolation between nodes in the centered
/// difference mode, trigonometric interpolation in the spectral mode.
double curvature_from_support(const SupportFunction& p, double theta,
                              Derivative mode = Derivative::CenteredDifference);

WidthFunction width(const SupportFunction& p);

}  // namespace curveflow
