// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [N ...]   (no arguments runs all eight)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "curveflow/bonnesen.hpp"
#include "curveflow/curve.hpp"
#include "curveflow/error.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/shapes.hpp"
#include "curveflow/shrinker.hpp"
#include "curveflow/support.hpp"
#include "curveflow/symmetrize.hpp"

using namespace curveflow;
namespace sh = curveflow::shapes;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit;  // seconds
    std::function<std::vector<Check>()> run;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Check below(std::string name, double value, double limit) {
    return {std::move(name), value < limit, fmt("%.3e < %.1e", value, limit)};
}

std::vector<Check> shrinker_identities() {
    const ShrinkerReport r = verify_shrinker(sh::circle(4096), 1e-3);
    return {
        below("|A - pi|", std::abs(r.area - kPi), 1e-5),
        below("|L - 2pi|", std::abs(r.length - 2.0 * kPi), 1e-5),
        below("max|kappa + gamma.n|", r.max_residual, 1e-3),
        below("gauge deviation", r.gauge_max_rel_dev, 1e-4),
    };
}

std::vector<Check> circle_family() {
    double worst = 0.0;
    FlowOptions opt;
    opt.record_stride = 100;
    opt.observer = [&](const FlowState& s) {
        if (s.time > 0.45) return;
        const double law = std::sqrt(1.0 - 2.0 * s.time);
        for (const Vec2& q : s.curve.points()) worst = std::max(worst, std::abs(norm(q) - law));
    };
    const FlowTrajectory t = run_flow(sh::circle(128), opt);
    return {
        below("radius vs sqrt(1 - 2t) on [0, 0.45]", worst, 1e-3),
        below("|t_ext - 0.5|", std::abs(t.final_state.time - 0.5), 0.02),
        {"stopped by extinction", t.stop_reason == StopReason::Extinct, ""},
    };
}

std::vector<Check> area_decay() {
    std::vector<Check> out;
    const std::pair<const char*, ClosedCurve> cases[] = {
        {"ellipse 2x1", sh::ellipse(256, 2.0, 1.0)},
        {"rounded square", sh::rounded_square(256, 2.0, 0.3)},
    };
    for (const auto& [name, curve] : cases) {
        const auto start = std::chrono::steady_clock::now();
        FlowOptions opt;
        opt.record_stride = 10;
        const FlowTrajectory t = run_flow(curve, opt);
        const double slope = area_decay_check(t);
        const double law = t.areas.front() / (2.0 * kPi);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back({std::string(name) + " slope", std::abs(slope / (-2.0 * kPi) - 1.0) < 0.01,
                       fmt("slope %.6f vs -2pi", slope)});
        out.push_back({std::string(name) + " extinction", std::abs(t.final_state.time / law - 1.0) < 0.05,
                       fmt("t_ext %.6f vs A0/2pi %.6f", t.final_state.time, law)});
        out.push_back(below(std::string(name) + " runtime [s]", secs, 30.0));
    }
    return out;
}

std::vector<Check> flow_route() {
    const RescaledFlowResult r = rescaled_flow(sh::ellipse(512, 2.0, 1.0));
    std::vector<Check> out{{"rescaled flow converged", r.converged, fmt("profile time %.3f", r.profile_time)}};
    out.push_back(below("fundamental residual", r.report.max_residual, 1e-2));
    const BonnesenReport b = bonnesen_chain(r.profile.reference_curve);
    out.push_back(below("Bonnesen equality gap", b.equality_gap, 1e-2));
    return out;
}

std::vector<Check> ode_route() {
    const std::vector<double> amplitudes{1.01, 1.1, 1.5, 2.0, 3.0, 5.0};
    const ClassificationReport rep = classify_closed_solutions(amplitudes, 1e-3);
    const double lo = std::sqrt(2.0) * kPi, hi = 2.0 * kPi;
    std::vector<Check> out;
    bool inside = true, far = true;
    double drift = 0.0;
    std::string periods;
    for (const auto& e : rep.entries) {
        inside = inside && e.period > lo && e.period < hi;
        far = far && std::abs(e.period - hi) > 1e-3;
        drift = std::max(drift, e.energy_drift);
        periods += fmt("%.6f ", e.period);
    }
    // Expected to fail: the periods lie in (pi, sqrt(2) pi), below this window.
    out.push_back({"every period in (sqrt2 pi, 2pi)", inside, "periods " + periods});
    out.push_back({"no period within 1e-3 of 2pi", far && rep.only_circle_closes_once, ""});
    const double small = rep.entries.front().period;
    out.push_back(below("small-amplitude |T - 2pi/sqrt2|", std::abs(small - hi / std::sqrt(2.0)), 1e-3));
    out.push_back(below("energy drift per period", drift, 1e-9));
    return out;
}

std::vector<Check> bonnesen_battery() {
    std::size_t chain_ok = 0;
    double vieta = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ClosedCurve c = curve_from_support(sh::random_oval(seed).sample(2048), Derivative::Spectral);
        const BonnesenReport b = bonnesen_chain(c);
        if (b.chain_ok) ++chain_ok;
        const double sum = std::abs(b.t1 + b.t2 - b.length / kPi) / (b.length / kPi);
        const double prod = std::abs(b.t1 * b.t2 - b.area / kPi) / (b.area / kPi);
        vieta = std::max({vieta, sum, prod});
    }
    const BonnesenReport circ = bonnesen_chain(sh::circle(65536));
    const auto [mn, mx] = std::minmax({circ.t1, circ.inradius, circ.circumradius, circ.t2});
    return {
        {"chain t1 <= r <= R <= t2 on 100 ovals", chain_ok == 100, fmt("%.0f / 100", static_cast<double>(chain_ok))},
        below("circle: spread of t1, r, R, t2", mx - mn, 1e-4),
        below("Vieta identities (relative)", vieta, 1e-12),
    };
}

std::vector<Check> cauchy_round_trip() {
    double worst_len = 0.0;
    double min_order = 1e9;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto f = sh::random_oval(seed);
        const auto p = f.sample(2048);
        const double L = cauchy_length(p);
        worst_len = std::max(worst_len, std::abs(length(curve_from_support(p)) - L) / L);

        auto error = [&](std::size_t n) {
            const auto q = support_from_curve(curve_from_support(f.sample(n)), 6002);
            double e = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j) e = std::max(e, std::abs(q[j] - f(q.theta(j))));
            return e;
        };
        min_order = std::min(min_order, std::log2(error(128) / error(256)));
    }
    return {
        below("|int p - polygon length| / L", worst_len, 1e-5),
        {"round-trip order by grid doubling >= 1.9", min_order >= 1.9, fmt("min order %.3f", min_order)},
    };
}

std::vector<Check> gage_construction() {
    double bisect = 0.0, complement = 0.0, symmetry = 0.0, area = 0.0;
    bool convex = true;
    for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
        const SupportFunction p = sh::random_oval(seed).sample(1024);
        const ChordGeometry g(p);
        const ChordCut c = g.bisecting_chord(1e-6);
        bisect = std::max(bisect, std::abs(c.sigma - 0.5 * c.area) / c.area);
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double t = g.step() * static_cast<double>(j);
            complement = std::max(complement, std::abs(g.cut(t).sigma + g.cut(t + kPi).sigma - g.area()) / g.area());
        }
        const SymmetrizedPair s = g.symmetrize(c);
        const auto w = width(p).values;
        const double diameter = *std::max_element(w.begin(), w.end());
        symmetry = std::max(symmetry, s.central_asymmetry / diameter);
        convex = convex && is_convex(s.curve1) && is_convex(s.curve2);
        area = std::max({area, std::abs(signed_area(s.curve1) - c.area), std::abs(signed_area(s.curve2) - c.area)});
    }
    return {
        below("|sigma - A/2| / A", bisect, 1e-6),
        below("complementarity / A on every node", complement, 1e-8),
        {"both symmetrized curves convex", convex, ""},
        below("central symmetry / diameter", symmetry, 1e-8),
        below("|area - A|", area, 1e-6),
    };
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "shrinker identities on the unit circle", 1.0, shrinker_identities},
        {2, "circle family radius law", 10.0, circle_family},
        {3, "area decay and extinction time", 60.0, area_decay},
        {4, "flow route to the circle", 60.0, flow_route},
        {5, "ODE route: periods of closed solutions", 5.0, ode_route},
        {6, "Bonnesen battery", 30.0, bonnesen_battery},
        {7, "Cauchy formula and support round trip", 10.0, cauchy_round_trip},
        {8, "Gage construction", 30.0, gage_construction},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > 8) {
            std::fprintf(stderr, "usage: acceptance [1-8 ...]\n");
            return 2;
        }
        wanted.push_back(id);
    }
    if (wanted.empty())
        for (int i = 1; i <= 8; ++i) wanted.push_back(i);

    int failures = 0;
    for (const Criterion& c : criteria()) {
        if (std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        std::vector<Check> checks;
        try {
            checks = c.run();
        } catch (const Error& e) {
            checks.push_back({"no library error", false, e.what()});
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        checks.push_back(below("runtime [s]", secs, c.time_limit));

        const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& k) { return k.ok; });
        if (!ok) ++failures;
        std::printf("criterion %d: %s  %s (%.2f s)\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), secs);
        for (const Check& k : checks)
            std::printf("    [%s] %s%s%s\n", k.ok ? "ok" : "FAIL", k.name.c_str(), k.detail.empty() ? "" : ": ",
                        k.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
