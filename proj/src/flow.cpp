#include "curveflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

constexpr double kPi = std::numbers::pi;

struct Spacing {
    double min = 0.0;
    double mean = 0.0;
};

Spacing spacing(const ClosedCurve& c) {
    Spacing s{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double e = distance(c[i], c[(i + 1) % c.size()]);
        s.min = std::min(s.min, e);
        s.mean += e;
    }
    s.mean /= static_cast<double>(c.size());
    return s;
}

double max_abs_curvature(const FrenetData& f) {
    double k = 0.0;
    for (double v : f.curvature) k = std::max(k, std::abs(v));
    return k;
}

double bound_from(const ClosedCurve& c, const FrenetData& f) {
    const double h = spacing(c).min;
    return 0.4 * h * h / std::max(1.0, max_abs_curvature(f));
}

}  // namespace

FlowDiagnostics diagnose(const ClosedCurve& curve) {
    FlowDiagnostics d;
    d.length = length(curve);
    d.area = signed_area(curve);
    d.isoperimetric_ratio = d.length * d.length / (4.0 * kPi * d.area);
    return d;
}

FlowState FlowState::initial(ClosedCurve curve) {
    const FlowDiagnostics d = diagnose(curve);
    return FlowState{std::move(curve), 0.0, 0, d};
}

double stability_bound(const ClosedCurve& curve) { return bound_from(curve, signed_curvature(curve)); }

double default_time_step(const ClosedCurve& curve, double factor) {
    const FrenetData f = signed_curvature(curve);
    const double h = spacing(curve).mean;
    const double dt = factor * h * h / std::max(1.0, max_abs_curvature(f));
    return std::min(dt, bound_from(curve, f));
}

FlowState csf_step(const FlowState& state, double dt) {
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
    const ClosedCurve& c = state.curve;
    const FrenetData f = signed_curvature(c);
    const double bound = bound_from(c, f);
    if (dt > bound)
        throw Error(ErrorCode::StepTooLarge, "dt = " + std::to_string(dt) + " exceeds the stability bound " + std::to_string(bound));

    std::vector<Vec2> moved(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) moved[i] = c[i] + f.normal[i] * (f.curvature[i] * dt);

    try {
        ClosedCurve next = resample_smooth(ClosedCurve::from_points(std::move(moved)), c.size());
        const FlowDiagnostics d = diagnose(next);
        if (!(d.area > 0.0) || !std::isfinite(d.length))
            throw Error(ErrorCode::CurveCollapsed, "enclosed area vanished at t = " + std::to_string(state.time + dt));
        return FlowState{std::move(next), state.time + dt, state.step_count + 1, d};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateSegment || e.code() == ErrorCode::InvalidArgument)
            throw Error(ErrorCode::CurveCollapsed, e.what());
        throw;
    }
}

FlowTrajectory run_flow(const ClosedCurve& curve, const FlowOptions& options) {
    if (!(options.dt_factor > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt factor must be positive");
    FlowState state = FlowState::initial(curve);
    if (!(state.diagnostics.area > 0.0))
        throw Error(ErrorCode::InvalidArgument, "flow input must be counter-clockwise");
    const double floor = options.area_floor_fraction * state.diagnostics.area;
    const std::size_t stride = std::max<std::size_t>(options.record_stride, 1);

    FlowTrajectory traj{.final_state = state};
    auto record = [&](const FlowState& s) {
        traj.times.push_back(s.time);
        traj.lengths.push_back(s.diagnostics.length);
        traj.areas.push_back(s.diagnostics.area);
        traj.ratios.push_back(s.diagnostics.isoperimetric_ratio);
    };
    record(state);
    traj.min_ratio = state.diagnostics.isoperimetric_ratio;

    while (true) {
        if (state.diagnostics.area < floor) {
            traj.stop_reason = StopReason::Extinct;
            break;
        }
        if (state.time >= options.t_max) {
            traj.stop_reason = StopReason::TimeLimit;
            break;
        }
        if (state.step_count >= options.max_steps) {
            traj.stop_reason = StopReason::StepBudget;
            break;
        }
        double dt = default_time_step(state.curve, options.dt_factor);
        if (state.time + dt > options.t_max) dt = options.t_max - state.time;
        FlowState next = csf_step(state, dt);

        if (!(next.diagnostics.length < state.diagnostics.length)) ++traj.length_increases;
        const double r0 = state.diagnostics.isoperimetric_ratio;
        const double r1 = next.diagnostics.isoperimetric_ratio;
        if (r1 > r0 * (1.0 + 1e-12)) ++traj.ratio_increases;
        traj.min_ratio = std::min(traj.min_ratio, r1);

        state = std::move(next);
        if (options.observer) options.observer(state);
        if (state.step_count % stride == 0) record(state);
    }
    if (traj.times.back() != state.time) record(state);
    traj.final_state = std::move(state);
    return traj;
}

double area_decay_check(const FlowTrajectory& trajectory) {
    const std::size_t n = trajectory.times.size();
    if (n < 10) throw Error(ErrorCode::TooFewSamples, "area slope needs at least 10 samples, got " + std::to_string(n));
    double mt = 0.0, ma = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mt += trajectory.times[i];
        ma += trajectory.areas[i];
    }
    mt /= static_cast<double>(n);
    ma /= static_cast<double>(n);
    double sta = 0.0, stt = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = trajectory.times[i] - mt;
        sta += dt * (trajectory.areas[i] - ma);
        stt += dt * dt;
    }
    return sta / stt;
}

RescaledFlowResult rescaled_flow(const ClosedCurve& curve, const RescaledFlowOptions& options) {
    if (!is_convex(curve) || signed_area(curve) <= 0.0)
        throw Error(ErrorCode::NotConvex, "rescaled flow needs a convex counter-clockwise curve");

    const double area0 = signed_area(curve);
    double lambda = std::sqrt(area0 / kPi);
    FlowState state = FlowState::initial(recenter_to_centroid(curve).scaled(1.0 / lambda));

    RescaledFlowResult result{.profile = {lambda, state.curve}};
    result.physical_times.push_back(0.0);
    result.lambdas.push_back(lambda);
    const std::size_t stride = std::max<std::size_t>(options.record_stride, 1);

    while (result.steps < options.max_steps && result.profile_time < options.max_profile_time) {
        const double dt = default_time_step(state.curve, options.dt_factor);
        FlowState stepped = csf_step(state, dt);
        const double scale = std::sqrt(kPi / stepped.diagnostics.area);
        ClosedCurve profile = recenter_to_centroid(stepped.curve).scaled(scale);

        double displacement = 0.0;
        for (std::size_t i = 0; i < profile.size(); ++i)
            displacement = std::max(displacement, distance(profile[i], state.curve[i]));

        result.physical_time += dt * lambda * lambda;
        lambda /= scale;
        result.profile_time += dt;
        ++result.steps;
        result.final_velocity = displacement / dt;

        state = FlowState{std::move(profile), result.profile_time, result.steps, {}};
        state.diagnostics = diagnose(state.curve);
        result.max_area_error = std::max(result.max_area_error, std::abs(state.diagnostics.area - kPi));
        if (result.steps % stride == 0) {
            result.physical_times.push_back(result.physical_time);
            result.lambdas.push_back(lambda);
        }
        if (result.final_velocity < options.stationary_tol) {
            result.converged = true;
            break;
        }
    }
    result.profile = {lambda, state.curve};
    result.report = verify_shrinker(state.curve, options.verdict_tol);
    return result;
}

}  // namespace curveflow
