#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

/// Homothety sign of a self-similar solution. Everything downstream of the
/// residual assumes the contracting sign; the expanding one is only reported.
enum class SimilarityKind { Contracting = -1, Expanding = +1 };

/// Residual statistics of kappa + gamma . n against the unit-normalised
/// contracting shrinker, together with the gauge kappa = C exp(|gamma|^2 / 2).
struct ShrinkerReport {
    double max_residual = 0.0;
    double gauge_constant = 0.0;
    double gauge_max_rel_dev = 0.0;
    double area = 0.0;
    double length = 0.0;
    double tolerance = 0.0;
    SimilarityKind kind = SimilarityKind::Contracting;
    bool is_circle_verdict = false;
};

struct FundamentalResidual {
    std::vector<double> residual;  // kappa_i + gamma_i . n_i
    double max_abs = 0.0;
    double area = 0.0;
    double length = 0.0;
};

/// Requires a counter-clockwise curve (InvalidArgument otherwise).
FundamentalResidual fundamental_residual(const ClosedCurve& curve);

struct GaugeEstimate {
    double constant = 0.0;     // geometric mean of kappa_i exp(-|gamma_i|^2 / 2)
    double max_rel_dev = 0.0;  // max_i |kappa_i exp(-|gamma_i|^2/2) / C - 1|
};

/// Requires a convex counter-clockwise curve (NotConvex otherwise).
GaugeEstimate gauge_constant(const ClosedCurve& curve);

/// Aggregates the residual, the gauge, |A - pi| and |L - 2 pi|; the verdict is
/// true iff all four are within `tol`. Non-convex curves get a verdict of false
/// with an infinite gauge deviation.
ShrinkerReport verify_shrinker(const ClosedCurve& curve, double tol);

// ---------------------------------------------------------------------------
// The support equation of a shrinker, p'' = 1/p - p, and its periodic orbits.
// ---------------------------------------------------------------------------

/// First integral E = p'^2/2 + p^2/2 - ln p of p'' = 1/p - p.
double support_energy(double p, double dp);

struct OdeTrajectory {
    std::vector<double> theta;
    std::vector<double> p;
    std::vector<double> dp;
    std::vector<double> energy;
};

/// Trajectories falling below this value of p are reported as BlowUp.
inline constexpr double kSupportFloor = 1e-8;

/// Adaptive Dormand-Prince 5(4) with PI step control; every accepted step is
/// recorded. A negative span integrates backwards.
/// Throws InvalidArgument (p0 <= 0, tol <= 0), BlowUp (p below kSupportFloor),
/// ToleranceNotMet (step size underflow or step budget exhausted).
OdeTrajectory integrate_support_ode(double p0, double dp0, double theta_span, double tol);

struct PeriodMeasurement {
    double period = 0.0;
    double first_maximum = 0.0;   // theta of the first detected maximum of p
    double energy_drift = 0.0;    // max |E - E(0)| until the second maximum
};

/// Distance between successive maxima of p started from (p0, 0), events
/// refined by bisection on the dense output to `tol`.
PeriodMeasurement measure_period(double p0, double tol);
double shoot_period(double p0, double tol);

/// Best rational approximation q/m (m <= max_denominator) of period / 2pi.
struct RationalRatio {
    int turning_number = 0;  // q: full turns of the normal after m periods
    int lobes = 0;           // m
};

struct ClosedSolutionEntry {
    double p0 = 0.0;
    double period = 0.0;
    double ratio_to_two_pi = 0.0;
    double energy_drift = 0.0;
    bool near_two_pi = false;
    std::optional<RationalRatio> closing_ratio;
};

struct ClassificationReport {
    double tolerance = 0.0;
    std::vector<ClosedSolutionEntry> entries;
    /// True iff no measured period equals 2 pi within tolerance, i.e. no closed
    /// turning-number-one solution other than the constant p = 1 on this grid.
    bool only_circle_closes_once = true;
};

inline constexpr int kMaxClosingDenominator = 16;

/// Evaluates every amplitude (concurrently when jobs > 1); entries keep the
/// input order. Errors from any amplitude propagate.
ClassificationReport classify_closed_solutions(std::span<const double> amplitudes, double tol, unsigned jobs = 1);

}  // namespace curveflow
