#include "curveflow/support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_grid(std::size_t n) {
    if (n < 16 || n % 2 != 0)
        throw Error(ErrorCode::InvalidArgument, "support grid must be even and >= 16, got " + std::to_string(n));
}

std::size_t wrap(std::ptrdiff_t j, std::size_t n) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(((j % nn) + nn) % nn);
}

std::vector<double> spectral_derivative(std::span<const double> values, int order) {
    const TrigInterpolant trig(values);
    const std::size_t n = values.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        out[j] = order == 1 ? trig.first(theta) : trig.second(theta);
    }
    return out;
}

void require_oval(std::span<const double> rho) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
        if (!(rho[j] > 0.0))
            throw Error(ErrorCode::NotAnOval, "p + p'' = " + std::to_string(rho[j]) + " at grid node " + std::to_string(j));
    }
}

}  // namespace

SupportFunction SupportFunction::from_samples(std::vector<double> values) {
    check_grid(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j])) throw Error(ErrorCode::InvalidArgument, "non-finite support value");
        if (!(values[j] > 0.0))
            throw Error(ErrorCode::OriginOutside, "p <= 0 at grid node " + std::to_string(j));
    }
    return SupportFunction(std::move(values));
}

SupportFunction SupportFunction::sample(const std::function<double(double)>& p, std::size_t grid) {
    check_grid(grid);
    std::vector<double> v(grid);
    for (std::size_t j = 0; j < grid; ++j) v[j] = p(kTwoPi * static_cast<double>(j) / static_cast<double>(grid));
    return from_samples(std::move(v));
}

double SupportFunction::step() const noexcept { return kTwoPi / static_cast<double>(values_.size()); }

std::vector<double> SupportFunction::first_derivative(Derivative mode) const {
    if (mode == Derivative::Spectral) return spectral_derivative(values_, 1);
    const std::size_t n = size();
    const double h = step();
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = (values_[(j + 1) % n] - values_[(j + n - 1) % n]) / (2.0 * h);
    return d;
}

std::vector<double> SupportFunction::second_derivative(Derivative mode) const {
    if (mode == Derivative::Spectral) return spectral_derivative(values_, 2);
    const std::size_t n = size();
    const double h = step();
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j)
        d[j] = (values_[(j + 1) % n] - 2.0 * values_[j] + values_[(j + n - 1) % n]) / (h * h);
    return d;
}

std::vector<double> SupportFunction::radius_of_curvature(Derivative mode) const {
    std::vector<double> rho = second_derivative(mode);
    for (std::size_t j = 0; j < size(); ++j) rho[j] += values_[j];
    return rho;
}

bool SupportFunction::is_oval(Derivative mode) const {
    const auto rho = radius_of_curvature(mode);
    return std::all_of(rho.begin(), rho.end(), [](double r) { return r > 0.0; });
}

double SupportFunction::central_asymmetry() const {
    const std::size_t n = size();
    double worst = 0.0;
    for (std::size_t j = 0; j < n / 2; ++j) worst = std::max(worst, std::abs(values_[j] - values_[j + n / 2]));
    return worst;
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples)
    : n_(samples.size()), cos_coeff_(samples.size() / 2 + 1, 0.0), sin_coeff_(samples.size() / 2 + 1, 0.0) {
    check_grid(n_);
    std::vector<double> cos_table(n_), sin_table(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        const double a = kTwoPi * static_cast<double>(j) / static_cast<double>(n_);
        cos_table[j] = std::cos(a);
        sin_table[j] = std::sin(a);
    }
    const std::size_t half = n_ / 2;
    for (std::size_t k = 0; k <= half; ++k) {
        double a = 0.0, b = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t idx = (j * k) % n_;
            a += samples[j] * cos_table[idx];
            b += samples[j] * sin_table[idx];
        }
        const double scale = (k == 0 || k == half) ? 1.0 / static_cast<double>(n_) : 2.0 / static_cast<double>(n_);
        cos_coeff_[k] = a * scale;
        sin_coeff_[k] = (k == 0 || k == half) ? 0.0 : b * scale;
    }
}

TrigInterpolant::Terms TrigInterpolant::evaluate(double theta) const {
    const std::size_t half = n_ / 2;
    const double c1 = std::cos(theta);
    const double s1 = std::sin(theta);
    double ck = 1.0, sk = 0.0;
    Terms t{cos_coeff_[0], 0.0, 0.0};
    for (std::size_t k = 1; k <= half; ++k) {
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
        if (k % 64 == 0) {  // refresh the recurrence to bound drift
            ck = std::cos(static_cast<double>(k) * theta);
            sk = std::sin(static_cast<double>(k) * theta);
        }
        const double kd = static_cast<double>(k);
        const double a = cos_coeff_[k];
        const double b = sin_coeff_[k];
        t.f += a * ck + b * sk;
        t.d2 += -kd * kd * (a * ck + b * sk);
        // The Nyquist mode has no well-defined odd derivative; drop it.
        if (k != half) t.d1 += kd * (-a * sk + b * ck);
    }
    return t;
}

double TrigInterpolant::value(double theta) const { return evaluate(theta).f; }
double TrigInterpolant::first(double theta) const { return evaluate(theta).d1; }
double TrigInterpolant::second(double theta) const { return evaluate(theta).d2; }

SupportFunction support_from_curve(const ClosedCurve& curve, std::size_t grid) {
    check_grid(grid);
    if (!is_convex(curve)) throw Error(ErrorCode::NotConvex, "support function requires a convex curve");
    if (winding_number(curve, Vec2{0.0, 0.0}) == 0)
        throw Error(ErrorCode::OriginOutside, "origin is not enclosed by the curve");

    const std::size_t n = curve.size();
    const int dir = signed_area(curve) > 0.0 ? 1 : -1;
    auto value = [&](std::size_t i, const Vec2& u) { return dot(curve[i], u); };

    // The maximizing vertex advances monotonically with theta along a convex
    // loop, so a single full scan seeds a rotating pointer.
    std::vector<double> p(grid);
    Vec2 u = unit_direction(0.0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (value(i, u) > value(best, u)) best = i;
    for (std::size_t j = 0; j < grid; ++j) {
        u = unit_direction(kTwoPi * static_cast<double>(j) / static_cast<double>(grid));
        for (std::size_t guard = 0; guard < n; ++guard) {
            const std::size_t next = wrap(static_cast<std::ptrdiff_t>(best) + dir, n);
            if (value(next, u) >= value(best, u)) best = next;
            else break;
        }
        p[j] = value(best, u);
    }
    return SupportFunction::from_samples(std::move(p));
}

ClosedCurve curve_from_support(const SupportFunction& p, Derivative mode) {
    require_oval(p.radius_of_curvature(mode));
    const std::vector<double> dp = p.first_derivative(mode);
    const std::size_t n = p.size();
    std::vector<Vec2> pts(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double c = std::cos(p.theta(j));
        const double s = std::sin(p.theta(j));
        pts[j] = {p[j] * c - dp[j] * s, p[j] * s + dp[j] * c};
    }
    return ClosedCurve::from_points(std::move(pts));
}

Vec2 support_point(const TrigInterpolant& p, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double v = p.value(theta);
    const double d = p.first(theta);
    return {v * c - d * s, v * s + d * c};
}

double cauchy_length(const SupportFunction& p) {
    double sum = 0.0;
    for (double v : p.values()) sum += v;
    return sum * p.step();
}

double area_from_support(const SupportFunction& p, Derivative mode) {
    const auto rho = p.radius_of_curvature(mode);
    double sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) sum += p[j] * rho[j];
    return 0.5 * sum * p.step();
}

double curvature_from_support(const SupportFunction& p, double theta, Derivative mode) {
    const auto rho = p.radius_of_curvature(mode);
    require_oval(rho);
    double r = 0.0;
    if (mode == Derivative::Spectral) {
        const TrigInterpolant trig(rho);
        r = trig.value(theta);
    } else {
        const double x = std::fmod(std::fmod(theta, kTwoPi) + kTwoPi, kTwoPi) / p.step();
        const auto j = static_cast<std::size_t>(std::floor(x)) % p.size();
        const double f = x - std::floor(x);
        r = (1.0 - f) * rho[j] + f * rho[(j + 1) % p.size()];
    }
    if (!(r > 0.0)) throw Error(ErrorCode::NotAnOval, "p + p'' <= 0 at the requested angle");
    return 1.0 / r;
}

WidthFunction width(const SupportFunction& p) {
    const std::size_t n = p.size();
    WidthFunction w;
    w.step = p.step();
    w.values.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) w.values[j] = p[j] + p[j + n / 2];
    return w;
}

}  // namespace curveflow
