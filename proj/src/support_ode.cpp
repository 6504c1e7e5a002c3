#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "curveflow/error.hpp"
#include "curveflow/shrinker.hpp"

namespace curveflow {

namespace {

using State = std::array<double, 2>;  // (p, p')

State rhs(const State& y) { return {y[1], 1.0 / y[0] - y[0]}; }

// Dormand-Prince 5(4) tableau with its continuous extension.
constexpr double kA[6][5] = {
    {0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
};
constexpr double kB[6] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84};
constexpr double kE[7] = {-71.0 / 57600, 0, 71.0 / 16695, -71.0 / 1920, 17253.0 / 339200, -22.0 / 525, 1.0 / 40};
constexpr double kP[7][4] = {
    {1.0, -8048581381.0 / 2820520608, 8663915743.0 / 2820520608, -12715105075.0 / 11282082432},
    {0, 0, 0, 0},
    {0, 131558114200.0 / 32700410799, -68118460800.0 / 10900136933, 87487479700.0 / 32700410799},
    {0, -1754552775.0 / 470086768, 14199869525.0 / 1410260304, -10690763975.0 / 1880347072},
    {0, 127303824393.0 / 49829197408, -318862633887.0 / 49829197408, 701980252875.0 / 199316789632},
    {0, -282668133.0 / 205662961, 2019193451.0 / 616988883, -1453857185.0 / 822651844},
    {0, 40617522.0 / 29380423, -110615467.0 / 29380423, 69997945.0 / 29380423},
};

/// One accepted step together with what is needed for dense output.
struct Step {
    double theta0 = 0.0;
    double h = 0.0;
    State y0{};
    State y1{};
    std::array<State, 7> k{};

    State dense(double theta) const {
        const double x = (theta - theta0) / h;
        State y = y0;
        for (int i = 0; i < 7; ++i) {
            const double w = ((kP[i][3] * x + kP[i][2]) * x + kP[i][1]) * x * x + kP[i][0] * x;
            y[0] += h * w * k[i][0];
            y[1] += h * w * k[i][1];
        }
        return y;
    }
};

/// Return false from the observer to stop the integration early.
using StepObserver = std::function<bool(const Step&)>;

void check_state(const State& y, double theta) {
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || y[0] < kSupportFloor)
        throw Error(ErrorCode::BlowUp, "p fell below " + std::to_string(kSupportFloor) + " near theta = " + std::to_string(theta));
}

void integrate(double p0, double dp0, double span, double tol, const StepObserver& observe) {
    if (!(p0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "p0 must be positive");
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    State y{p0, dp0};
    check_state(y, 0.0);
    if (span == 0.0) return;

    const double dir = span > 0.0 ? 1.0 : -1.0;
    const double end = span;
    double theta = 0.0;
    // Error scale is relative to p: near the minimum of p the energy depends on ln p.
    auto scale = [&](const State& a, const State& b, int i) {
        return tol * std::max({std::abs(a[i]), std::abs(b[i]), std::min(a[0], b[0])});
    };

    State f0 = rhs(y);
    double h = dir * std::min(std::abs(span), 1e-2 * std::pow(tol, 0.2) / std::max(1.0, std::hypot(f0[0], f0[1]) / p0));
    double prev_err = 1e-4;
    constexpr std::size_t kMaxSteps = 50'000'000;
    for (std::size_t count = 0; dir * (end - theta) > 0.0; ++count) {
        if (count > kMaxSteps) throw Error(ErrorCode::ToleranceNotMet, "step budget exhausted");
        if (dir * (theta + h - end) > 0.0) h = end - theta;
        const double min_step = 1e-14 * std::max(1.0, std::abs(theta));
        if (std::abs(h) < min_step) throw Error(ErrorCode::ToleranceNotMet, "step size underflow at theta = " + std::to_string(theta));

        Step step;
        step.theta0 = theta;
        step.h = h;
        step.y0 = y;
        step.k[0] = f0;
        bool stage_ok = true;
        for (int s = 1; s < 6 && stage_ok; ++s) {
            State ys = y;
            for (int j = 0; j < s; ++j) {
                ys[0] += h * kA[s][j] * step.k[j][0];
                ys[1] += h * kA[s][j] * step.k[j][1];
            }
            if (!(ys[0] > 0.0) || !std::isfinite(ys[1])) stage_ok = false;
            else step.k[s] = rhs(ys);
        }
        double err = 0.0;
        if (stage_ok) {
            State y1 = y;
            for (int s = 0; s < 6; ++s) {
                y1[0] += h * kB[s] * step.k[s][0];
                y1[1] += h * kB[s] * step.k[s][1];
            }
            if (y1[0] > 0.0 && std::isfinite(y1[1])) {
                step.k[6] = rhs(y1);
                step.y1 = y1;
                for (int i = 0; i < 2; ++i) {
                    double e = 0.0;
                    for (int s = 0; s < 7; ++s) e += kE[s] * step.k[s][i];
                    e *= h;
                    const double r = e / scale(y, y1, i);
                    err += r * r;
                }
                err = std::sqrt(0.5 * err);
            } else {
                stage_ok = false;
            }
        }
        if (!stage_ok) {
            // A stage left the domain p > 0; shrink hard and retry.
            h *= 0.1;
            continue;
        }
        if (err <= 1.0) {
            theta = (dir * (end - (theta + h)) <= 0.0) ? end : theta + h;
            y = step.y1;
            f0 = step.k[6];
            check_state(y, theta);
            if (!observe(step)) return;
            // PI controller.
            const double safe_err = std::max(err, 1e-10);
            double factor = 0.9 * std::pow(safe_err, -0.7 / 5.0) * std::pow(prev_err, 0.4 / 5.0);
            factor = std::clamp(factor, 0.2, 5.0);
            h *= factor;
            prev_err = safe_err;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
}

constexpr double kOdeTolerance = 1e-12;

}  // namespace

double support_energy(double p, double dp) { return 0.5 * dp * dp + 0.5 * p * p - std::log(p); }

OdeTrajectory integrate_support_ode(double p0, double dp0, double theta_span, double tol) {
    OdeTrajectory traj;
    auto record = [&](double theta, const State& y) {
        traj.theta.push_back(theta);
        traj.p.push_back(y[0]);
        traj.dp.push_back(y[1]);
        traj.energy.push_back(support_energy(y[0], y[1]));
    };
    if (p0 > 0.0) record(0.0, {p0, dp0});
    integrate(p0, dp0, theta_span, tol, [&](const Step& s) {
        record(s.theta0 + s.h, s.y1);
        return true;
    });
    return traj;
}

PeriodMeasurement measure_period(double p0, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    if (!(p0 > 0.0) || std::abs(p0 - 1.0) < 1e-12)
        throw Error(ErrorCode::InvalidArgument, "p0 must be positive and different from 1 (equilibrium)");

    const double e0 = support_energy(p0, 0.0);
    PeriodMeasurement m;
    std::vector<double> maxima;
    // Small-amplitude periods approach sqrt(2) pi and large ones pi: four turns
    // cover two maxima from any starting phase.
    const double span = 8.0 * std::numbers::pi;
    const double event_tol = std::min(kOdeTolerance, tol);
    integrate(p0, 0.0, span, event_tol, [&](const Step& s) {
        m.energy_drift = std::max(m.energy_drift, std::abs(support_energy(s.y1[0], s.y1[1]) - e0));
        // A maximum: p' crosses from positive to non-positive.
        if (s.y0[1] > 0.0 && s.y1[1] <= 0.0) {
            double lo = s.theta0;
            double hi = s.theta0 + s.h;
            while (std::abs(hi - lo) > event_tol * std::max(1.0, std::abs(lo))) {
                const double mid = 0.5 * (lo + hi);
                if (s.dense(mid)[1] > 0.0) lo = mid;
                else hi = mid;
            }
            maxima.push_back(0.5 * (lo + hi));
        }
        return maxima.size() < 2;
    });
    if (maxima.size() < 2) throw Error(ErrorCode::ToleranceNotMet, "fewer than two maxima found");
    m.first_maximum = maxima[0];
    m.period = maxima[1] - maxima[0];
    return m;
}

double shoot_period(double p0, double tol) { return measure_period(p0, tol).period; }

namespace {

std::optional<RationalRatio> closing_ratio(double ratio, double tol) {
    for (int m = 1; m <= kMaxClosingDenominator; ++m) {
        const long q = std::lround(ratio * m);
        if (q <= 0) continue;
        if (std::abs(ratio - static_cast<double>(q) / m) < tol && std::gcd(q, static_cast<long>(m)) == 1)
            return RationalRatio{static_cast<int>(q), m};
    }
    return std::nullopt;
}

}  // namespace

ClassificationReport classify_closed_solutions(std::span<const double> amplitudes, double tol, unsigned jobs) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    for (double p0 : amplitudes)
        if (!(p0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "amplitudes must be positive");

    ClassificationReport report;
    report.tolerance = tol;
    report.entries.resize(amplitudes.size());
    std::vector<std::exception_ptr> failures(amplitudes.size());

    auto evaluate = [&](std::size_t i) {
        try {
            ClosedSolutionEntry& e = report.entries[i];
            e.p0 = amplitudes[i];
            const PeriodMeasurement m = measure_period(e.p0, tol);
            e.period = m.period;
            e.energy_drift = m.energy_drift;
            e.ratio_to_two_pi = m.period / (2.0 * std::numbers::pi);
            e.near_two_pi = std::abs(m.period - 2.0 * std::numbers::pi) < tol;
            e.closing_ratio = closing_ratio(e.ratio_to_two_pi, tol);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(amplitudes.size(), 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < amplitudes.size(); ++i) evaluate(i);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < amplitudes.size(); i += workers) evaluate(i);
            });
    }
    // Report the first failure in grid order so the outcome does not depend on scheduling.
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    for (const auto& e : report.entries)
        if (e.near_two_pi) report.only_circle_closes_once = false;
    return report;
}

}  // namespace curveflow
