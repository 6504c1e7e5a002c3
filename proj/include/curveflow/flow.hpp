#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/shrinker.hpp"

namespace curveflow {

struct FlowDiagnostics {
    double length = 0.0;
    double area = 0.0;
    double isoperimetric_ratio = 0.0;  // L^2 / (4 pi A)
};

FlowDiagnostics diagnose(const ClosedCurve& curve);

struct FlowState {
    ClosedCurve curve;
    double time = 0.0;
    std::size_t step_count = 0;
    FlowDiagnostics diagnostics;

    static FlowState initial(ClosedCurve curve);
};

/// Largest step accepted by csf_step: 0.4 h_min^2 / max(1, max|kappa|).
double stability_bound(const ClosedCurve& curve);

/// Default step policy: factor * h_mean^2 / max(1, max|kappa|), never above the stability bound.
double default_time_step(const ClosedCurve& curve, double factor = 0.2);

/// One explicit Euler step of the curve shortening flow: every sample moves by
/// kappa n dt, then the samples are redistributed uniformly in arclength, which
/// is the discrete counterpart of a tangential reparametrization.
/// Throws InvalidArgument (dt <= 0), StepTooLarge, CurveCollapsed.
FlowState csf_step(const FlowState& state, double dt);

enum class StopReason { Extinct, TimeLimit, StepBudget };

struct FlowOptions {
    double dt_factor = 0.2;
    double area_floor_fraction = 1e-3;  // extinction when A < fraction * A0
    double t_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 20'000'000;
    std::size_t record_stride = 1;
    /// Called after every accepted step.
    std::function<void(const FlowState&)> observer;
};

struct FlowTrajectory {
    std::vector<double> times{};
    std::vector<double> lengths{};
    std::vector<double> areas{};
    std::vector<double> ratios{};
    FlowState final_state;
    StopReason stop_reason = StopReason::Extinct;
    /// Accepted steps along which L did not strictly decrease.
    std::size_t length_increases = 0;
    /// Accepted steps along which L^2/(4 pi A) increased (relative slack 1e-12).
    std::size_t ratio_increases = 0;
    double min_ratio = std::numeric_limits<double>::infinity();
};

/// Steps until extinction, t_max, or the step budget; extinction is a normal stop.
FlowTrajectory run_flow(const ClosedCurve& curve, const FlowOptions& options = {});

/// Least-squares slope of A(t) over the recorded samples. Throws TooFewSamples below 10.
double area_decay_check(const FlowTrajectory& trajectory);

/// Homothety factor lambda relating the physical flow to its profile.
struct SimilarityProfile {
    double lambda = 1.0;
    ClosedCurve reference_curve;
};

struct RescaledFlowOptions {
    double dt_factor = 0.2;
    /// Stationary once the largest sample displacement per unit (profile) time drops below this.
    double stationary_tol = 1e-3;
    double max_profile_time = 50.0;
    std::size_t max_steps = 20'000'000;
    double verdict_tol = 1e-2;
    std::size_t record_stride = 1;
};

struct RescaledFlowResult {
    SimilarityProfile profile;
    ShrinkerReport report{};
    bool converged = false;
    std::size_t steps = 0;
    double profile_time = 0.0;    // time integrated on the area-pi profile
    double physical_time = 0.0;   // corresponding time of the unscaled flow
    double final_velocity = 0.0;  // last measured max displacement per unit time
    std::vector<double> physical_times{};
    std::vector<double> lambdas{};
    /// |A - pi| right after each renormalization (largest seen).
    double max_area_error = 0.0;
};

/// Flow renormalized after every step (centroid to the origin, area to pi) until
/// the profile is stationary; reports verify_shrinker of the limit profile.
/// Throws NotConvex for non-convex input, CurveCollapsed if a step degenerates.
RescaledFlowResult rescaled_flow(const ClosedCurve& curve, const RescaledFlowOptions& options = {});

}  // namespace curveflow
