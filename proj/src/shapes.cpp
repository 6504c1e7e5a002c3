#include "curveflow/shapes.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "curveflow/error.hpp"

namespace curveflow::shapes {

namespace {
constexpr double kPi = std::numbers::pi;
}

ClosedCurve circle(std::size_t n, double radius, Vec2 center, bool clockwise) {
    std::vector<Vec2> pts(n);
    const double sign = clockwise ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = sign * 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = center + radius * unit_direction(t);
    }
    return ClosedCurve::from_points(std::move(pts));
}

ClosedCurve ellipse(std::size_t n, double a, double b, Vec2 center) {
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = center + Vec2{a * std::cos(t), b * std::sin(t)};
    }
    return ClosedCurve::from_points(std::move(pts));
}

ClosedCurve square(double side, Vec2 origin) {
    return ClosedCurve::from_points({origin, origin + Vec2{side, 0.0}, origin + Vec2{side, side}, origin + Vec2{0.0, side}});
}

ClosedCurve rounded_square(std::size_t n, double side, double corner_radius) {
    const double half = 0.5 * side;
    const double straight = side - 2.0 * corner_radius;
    if (straight < 0.0 || corner_radius <= 0.0) throw Error(ErrorCode::InvalidArgument, "bad rounded square");
    const double quarter_arc = 0.5 * kPi * corner_radius;
    const double piece = straight + quarter_arc;  // one side plus the following corner
    const double total = 4.0 * piece;
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = total * static_cast<double>(i) / static_cast<double>(n);
        const auto side_index = static_cast<int>(std::floor(s / piece)) % 4;
        s -= piece * side_index;
        // Local frame of side 0: the right edge going up, then the top-right corner.
        Vec2 local;
        if (s < straight) {
            local = {half, -0.5 * straight + s};
        } else {
            const double angle = (s - straight) / corner_radius;
            local = Vec2{half - corner_radius, 0.5 * straight} + corner_radius * unit_direction(angle);
        }
        pts[i] = rotated(local, 0.5 * kPi * side_index);
    }
    return ClosedCurve::from_points(std::move(pts));
}

ClosedCurve l_shape() {
    return ClosedCurve::from_points({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

ClosedCurve limacon(std::size_t n, double a, double b) {
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = (a + b * std::cos(t)) * unit_direction(t);
    }
    return ClosedCurve::from_points(std::move(pts));
}

ClosedCurve multi_loop_circle(std::size_t n_per_loop, std::size_t loops, double radius) {
    const std::size_t n = n_per_loop * loops;
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_per_loop);
        // A tiny radial offset per loop keeps samples of different loops distinct.
        const double r = radius * (1.0 + 1e-9 * static_cast<double>(i / n_per_loop));
        pts[i] = r * unit_direction(t);
    }
    return ClosedCurve::from_points(std::move(pts));
}

double FourierSupport::operator()(double theta) const {
    double v = constant;
    for (std::size_t k = 0; k < cos_terms.size(); ++k) v += cos_terms[k] * std::cos(static_cast<double>(k + 1) * theta);
    for (std::size_t k = 0; k < sin_terms.size(); ++k) v += sin_terms[k] * std::sin(static_cast<double>(k + 1) * theta);
    return v;
}

SupportFunction FourierSupport::sample(std::size_t grid) const {
    return SupportFunction::sample([this](double t) { return (*this)(t); }, grid);
}

double FourierSupport::curvature_bound() const {
    double bound = 0.0;
    for (std::size_t k = 0; k < cos_terms.size(); ++k) bound += std::abs(1.0 - std::pow(k + 1.0, 2)) * std::abs(cos_terms[k]);
    for (std::size_t k = 0; k < sin_terms.size(); ++k) bound += std::abs(1.0 - std::pow(k + 1.0, 2)) * std::abs(sin_terms[k]);
    return bound;
}

FourierSupport random_oval(std::uint64_t seed, std::size_t max_harmonic, bool centrally_symmetric) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    FourierSupport f;
    f.cos_terms.assign(max_harmonic, 0.0);
    f.sin_terms.assign(max_harmonic, 0.0);
    // Translation part (k = 1) does not affect p + p''; keep it small so p stays positive.
    if (!centrally_symmetric) {
        f.cos_terms[0] = 0.15 * unit(rng);
        f.sin_terms[0] = 0.15 * unit(rng);
    }
    double weight = 0.0;
    for (std::size_t k = 2; k <= max_harmonic; ++k) {
        if (centrally_symmetric && k % 2 == 1) continue;
        f.cos_terms[k - 1] = unit(rng) / static_cast<double>(k * k);
        f.sin_terms[k - 1] = unit(rng) / static_cast<double>(k * k);
    }
    weight = f.curvature_bound();
    // Budget: p + p'' >= 1 - 0.8 and p >= 1 - 0.3 - (higher harmonics, <= 0.8/3).
    const double budget = 0.8 * (0.25 + 0.75 * (0.5 + 0.5 * unit(rng)));
    if (weight > 0.0) {
        const double scale = budget / weight;
        for (std::size_t k = 2; k <= max_harmonic; ++k) {
            f.cos_terms[k - 1] *= scale;
            f.sin_terms[k - 1] *= scale;
        }
    }
    return f;
}

}  // namespace curveflow::shapes
