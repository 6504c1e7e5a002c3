#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "curveflow/bonnesen.hpp"
#include "curveflow/curve.hpp"
#include "curveflow/error.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/io.hpp"
#include "curveflow/shrinker.hpp"
#include "curveflow/support.hpp"
#include "curveflow/symmetrize.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace curveflow;

namespace {

enum Exit : int { kOk = 0, kInput = 1, kNumerical = 2, kVerdictFalse = 3, kPrecondition = 4 };

struct RunConfig {
    std::string subcommand;
    std::string input;
    std::string support_input;
    std::string output;
    std::size_t grid = 256;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::string format = "json";
    unsigned jobs = 1;
    std::size_t stride = 1;
    bool until_extinct = false;
    std::optional<double> t_max;
    std::size_t svg_every = 0;
    double dt_factor = 0.2;
    std::vector<double> amplitudes;
    bool dump_trajectory = false;
    bool recenter = false;
};

/// Input problems that are not library errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json to_json(const RunConfig& c, double tol) {
    json j;
    j["subcommand"] = c.subcommand;
    j["input"] = c.input;
    if (!c.support_input.empty()) j["support_input"] = c.support_input;
    j["output"] = c.output;
    j["grid"] = c.grid;
    j["tol"] = tol;
    j["seed"] = c.seed;
    j["format"] = c.format;
    j["jobs"] = c.jobs;
    if (c.subcommand == "flow") {
        j["stride"] = c.stride;
        j["until_extinct"] = c.until_extinct;
        if (c.t_max) j["t_max"] = *c.t_max;
        j["svg_every"] = c.svg_every;
        j["dt_factor"] = c.dt_factor;
    }
    if (c.subcommand == "ode-shoot") {
        j["amplitudes"] = c.amplitudes;
        j["dump_trajectory"] = c.dump_trajectory;
    }
    if (c.subcommand == "support" || c.subcommand == "symmetrize") j["recenter"] = c.recenter;
    return j;
}

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotConvex:
        case ErrorCode::NotConvexAfterGluing:
        case ErrorCode::NotAnOval:
            return kPrecondition;
        case ErrorCode::BlowUp:
        case ErrorCode::ToleranceNotMet:
        case ErrorCode::StepTooLarge:
        case ErrorCode::CurveCollapsed:
        case ErrorCode::IsoperimetricViolation:
            return kNumerical;
        case ErrorCode::NotSymmetric:
        case ErrorCode::NotAShrinker:
            return kVerdictFalse;
        default:
            return kInput;
    }
}

fs::path output_dir(const RunConfig& c) {
    fs::path dir = c.output.empty() ? fs::path(".") : fs::path(c.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << text;
    spdlog::info("wrote {}", path.string());
}

void emit_json(const RunConfig& c, const json& report, const std::string& file) {
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!c.output.empty()) write_text(output_dir(c) / file, text);
}

ClosedCurve load_curve(const RunConfig& c) {
    if (c.input.empty()) throw UsageError("--input is required");
    spdlog::debug("reading curve {}", c.input);
    return io::read_curve_csv(fs::path(c.input));
}

void write_svg_file(const fs::path& path, std::span<const ClosedCurve> curves, const ClosedCurve& frame) {
    double x0 = frame[0].x, x1 = x0, y0 = frame[0].y, y1 = y0;
    for (const Vec2& q : frame.points()) {
        x0 = std::min(x0, q.x);
        x1 = std::max(x1, q.x);
        y0 = std::min(y0, q.y);
        y1 = std::max(y1, q.y);
    }
    std::ostringstream svg;
    io::write_svg(svg, curves, x0, y0, x1 - x0, y1 - y0);
    write_text(path, svg.str());
}

std::string_view stop_name(StopReason r) {
    switch (r) {
        case StopReason::Extinct: return "extinct";
        case StopReason::TimeLimit: return "time_limit";
        case StopReason::StepBudget: return "step_budget";
    }
    return "unknown";
}

int cmd_flow(const RunConfig& c) {
    const ClosedCurve curve = load_curve(c);
    FlowOptions opt;
    opt.dt_factor = c.dt_factor;
    opt.record_stride = c.stride;
    if (c.t_max && !c.until_extinct) opt.t_max = *c.t_max;
    const std::size_t every = c.svg_every > 0 ? c.svg_every : (c.format == "svg" ? 1000 : 0);
    std::vector<ClosedCurve> snapshots;
    if (every > 0) {
        snapshots.push_back(curve);
        opt.observer = [&](const FlowState& s) {
            if (s.step_count % every == 0) snapshots.push_back(s.curve);
        };
    }
    spdlog::info("flowing {} samples", curve.size());
    const FlowTrajectory traj = run_flow(curve, opt);

    const fs::path dir = output_dir(c);
    std::ostringstream csv;
    csv << "t,L,A,ratio\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv << io::format_double(traj.times[i]) << ',' << io::format_double(traj.lengths[i]) << ','
            << io::format_double(traj.areas[i]) << ',' << io::format_double(traj.ratios[i]) << '\n';
    write_text(dir / "trajectory.csv", csv.str());
    io::write_curve_csv(dir / "final_curve.csv", traj.final_state.curve);
    if (every > 0) {
        snapshots.push_back(traj.final_state.curve);
        write_svg_file(dir / "flow.svg", snapshots, curve);
    }

    json report;
    report["stop_reason"] = stop_name(traj.stop_reason);
    report["final_time"] = traj.final_state.time;
    report["steps"] = traj.final_state.step_count;
    report["initial_area"] = traj.areas.front();
    report["final_area"] = traj.final_state.diagnostics.area;
    report["extinction_law"] = traj.areas.front() / (2.0 * std::numbers::pi);
    if (traj.times.size() >= 10) report["area_slope"] = area_decay_check(traj);
    report["length_increases"] = traj.length_increases;
    report["ratio_increases"] = traj.ratio_increases;
    report["min_ratio"] = traj.min_ratio;
    report["config"] = to_json(c, 0.0);
    report["config"].erase("tol");
    emit_json(c, report, "flow.json");
    return kOk;
}

int cmd_shrink_verify(const RunConfig& c) {
    const double tol = c.tol.value_or(1e-3);
    const ShrinkerReport r = verify_shrinker(load_curve(c), tol);
    json report;
    report["max_residual"] = r.max_residual;
    report["gauge_constant"] = r.gauge_constant;
    report["gauge_max_rel_dev"] = r.gauge_max_rel_dev;
    report["area"] = r.area;
    report["length"] = r.length;
    report["verdict"] = r.is_circle_verdict;
    report["kind"] = r.kind == SimilarityKind::Contracting ? "contracting" : "expanding";
    report["tolerance"] = r.tolerance;
    report["config"] = to_json(c, tol);
    emit_json(c, report, "shrink_verify.json");
    return r.is_circle_verdict ? kOk : kVerdictFalse;
}

int cmd_ode_shoot(const RunConfig& c) {
    const double tol = c.tol.value_or(1e-3);
    if (c.amplitudes.empty()) throw UsageError("--amplitudes needs at least one value");
    const ClassificationReport rep = classify_closed_solutions(c.amplitudes, tol, c.jobs);

    std::ostringstream csv;
    csv << "p0,period,ratio_to_2pi\n";
    for (const auto& e : rep.entries)
        csv << io::format_double(e.p0) << ',' << io::format_double(e.period) << ','
            << io::format_double(e.ratio_to_two_pi) << '\n';
    std::ostringstream summary;
    summary << "# no ratio within " << io::format_double(tol) << " of 1: "
            << (rep.only_circle_closes_once ? "true" : "false") << '\n';

    if (c.format == "json") {
        json report;
        report["tolerance"] = tol;
        report["only_circle_closes_once"] = rep.only_circle_closes_once;
        json entries = json::array();
        for (const auto& e : rep.entries) {
            json row;
            row["p0"] = e.p0;
            row["period"] = e.period;
            row["ratio_to_2pi"] = e.ratio_to_two_pi;
            row["energy_drift"] = e.energy_drift;
            row["near_two_pi"] = e.near_two_pi;
            if (e.closing_ratio) row["closing_ratio"] = {e.closing_ratio->turning_number, e.closing_ratio->lobes};
            entries.push_back(row);
        }
        report["entries"] = entries;
        report["config"] = to_json(c, tol);
        emit_json(c, report, "ode_shoot.json");
    } else {
        std::cout << csv.str() << summary.str();
    }
    if (!c.output.empty()) write_text(output_dir(c) / "ode_shoot.csv", csv.str() + summary.str());

    if (c.dump_trajectory) {
        const fs::path dir = output_dir(c);
        for (std::size_t k = 0; k < rep.entries.size(); ++k) {
            const auto& e = rep.entries[k];
            const OdeTrajectory t = integrate_support_ode(e.p0, 0.0, e.period, std::min(1e-12, tol));
            std::ostringstream out;
            out << "theta,p,dp,energy\n";
            for (std::size_t i = 0; i < t.theta.size(); ++i)
                out << io::format_double(t.theta[i]) << ',' << io::format_double(t.p[i]) << ','
                    << io::format_double(t.dp[i]) << ',' << io::format_double(t.energy[i]) << '\n';
            write_text(dir / ("trajectory_" + std::to_string(k) + ".csv"), out.str());
        }
    }
    return rep.only_circle_closes_once ? kOk : kVerdictFalse;
}

int cmd_bonnesen(const RunConfig& c) {
    const ClosedCurve curve = load_curve(c);
    const BonnesenReport b = bonnesen_chain(curve, c.tol.value_or(-1.0), c.seed);
    json report;
    report["area"] = b.area;
    report["length"] = b.length;
    report["inradius"] = b.inradius;
    report["circumradius"] = b.circumradius;
    report["t1"] = b.t1;
    report["t2"] = b.t2;
    report["chain_ok"] = b.chain_ok;
    report["equality_gap"] = b.equality_gap;
    report["incenter"] = {b.incenter.x, b.incenter.y};
    report["circumcenter"] = {b.circumcenter.x, b.circumcenter.y};
    report["midpoint_negative"] = b.midpoint_negative;
    report["tolerance"] = b.tolerance;
    report["config"] = to_json(c, b.tolerance);
    emit_json(c, report, "bonnesen.json");
    return b.chain_ok ? kOk : kVerdictFalse;
}

/// Support function from --support-input, or sampled from the --input curve.
/// A curve may be recentred to its area centroid first; the shift is returned.
SupportFunction load_support(const RunConfig& c, Vec2& shift) {
    shift = {};
    if (!c.support_input.empty()) {
        std::ifstream in(c.support_input);
        if (!in) throw Error(ErrorCode::Io, "cannot open " + c.support_input);
        return io::read_support_csv(in);
    }
    ClosedCurve curve = load_curve(c);
    if (!is_convex(curve)) throw Error(ErrorCode::NotConvex, "input curve is not convex");
    if (c.recenter) {
        shift = area_centroid(curve);
        curve = curve.translated(shift * -1.0);
    }
    return support_from_curve(curve, c.grid);
}

int cmd_symmetrize(const RunConfig& c) {
    const double tol = c.tol.value_or(1e-6);
    Vec2 shift;
    const SupportFunction p = load_support(c, shift);
    const ChordGeometry geo(p);
    const ChordCut cut = geo.bisecting_chord(tol);
    const SymmetrizedPair pair = geo.symmetrize(cut);
    const ClosedCurve c1 = pair.curve1.translated(shift);
    const ClosedCurve c2 = pair.curve2.translated(shift);
    const Vec2 omega = cut.midpoint + shift;

    const fs::path dir = output_dir(c);
    io::write_curve_csv(dir / "curve1.csv", c1);
    io::write_curve_csv(dir / "curve2.csv", c2);
    if (c.format == "svg") {
        const std::vector<ClosedCurve> both{c1, c2};
        write_svg_file(dir / "symmetrize.svg", both, c1);
    }

    json report;
    report["theta0"] = cut.theta;
    report["sigma"] = cut.sigma;
    report["omega0"] = {omega.x, omega.y};
    report["junction_tangent_gap"] = pair.junction_tangent_gap;
    report["areas"] = {signed_area(c1), signed_area(c2)};
    report["lengths"] = {length(c1), length(c2)};
    report["area"] = cut.area;
    report["bisection_error"] = std::abs(cut.sigma - 0.5 * cut.area) / cut.area;
    report["central_asymmetry"] = pair.central_asymmetry;
    report["config"] = to_json(c, tol);
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    write_text(dir / "symmetrize.json", text);
    return kOk;
}

int cmd_support(const RunConfig& c) {
    Vec2 shift;
    const SupportFunction p = load_support(c, shift);
    const WidthFunction w = width(p);
    const auto [wmin, wmax] = std::ranges::minmax(w.values);
    const auto [pmin, pmax] = std::ranges::minmax(p.values());

    json report;
    report["grid"] = p.size();
    report["cauchy_length"] = cauchy_length(p);
    if (!c.input.empty() && c.support_input.empty()) report["polygon_length"] = length(load_curve(c));
    report["area"] = area_from_support(p);
    report["min_p"] = pmin;
    report["max_p"] = pmax;
    report["min_width"] = wmin;
    report["max_width"] = wmax;
    report["central_asymmetry"] = p.central_asymmetry();
    report["is_oval"] = p.is_oval();
    report["shift"] = {shift.x, shift.y};
    report["config"] = to_json(c, 0.0);
    report["config"].erase("tol");
    if (!c.output.empty()) {
        std::ostringstream csv;
        io::write_support_csv(csv, p);
        write_text(output_dir(c) / "support.csv", csv.str());
    }
    emit_json(c, report, "support.json");
    return kOk;
}

void validate(const RunConfig& c) {
    if (c.tol && !(*c.tol > 0.0)) throw UsageError("--tol must be positive");
    if (c.grid < 16 || c.grid % 2 != 0) throw UsageError("--grid must be even and at least 16");
    if (c.format != "csv" && c.format != "json" && c.format != "svg") throw UsageError("--format must be csv, json or svg");
    if (c.jobs == 0) throw UsageError("--jobs must be at least 1");
    if (c.stride == 0) throw UsageError("--stride must be at least 1");
    if (!(c.dt_factor > 0.0)) throw UsageError("--dt-factor must be positive");
    if (c.t_max && !(*c.t_max > 0.0)) throw UsageError("--t-max must be positive");
}

/// Fills every option not given on the command line from the JSON config file.
void apply_config_file(const std::string& path, RunConfig& c, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad config file: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    auto given = [&](const std::string& flag) {
        const CLI::Option* o = sub.get_option_no_throw("--" + flag);
        return o != nullptr && o->count() > 0;
    };
    try {
        for (const auto& [key, value] : j.items()) {
            std::string flag = key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            if (given(flag)) continue;
            if (key == "input") c.input = value.get<std::string>();
            else if (key == "support_input") c.support_input = value.get<std::string>();
            else if (key == "output") c.output = value.get<std::string>();
            else if (key == "grid") c.grid = value.get<std::size_t>();
            else if (key == "tol") c.tol = value.get<double>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "format") c.format = value.get<std::string>();
            else if (key == "jobs") c.jobs = value.get<unsigned>();
            else if (key == "stride") c.stride = value.get<std::size_t>();
            else if (key == "until_extinct") c.until_extinct = value.get<bool>();
            else if (key == "t_max") c.t_max = value.get<double>();
            else if (key == "svg_every") c.svg_every = value.get<std::size_t>();
            else if (key == "dt_factor") c.dt_factor = value.get<double>();
            else if (key == "amplitudes") c.amplitudes = value.get<std::vector<double>>();
            else if (key == "dump_trajectory") c.dump_trajectory = value.get<bool>();
            else if (key == "recenter") c.recenter = value.get<bool>();
            else spdlog::warn("ignoring unknown config key '{}'", key);
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad config value: ") + e.what());
    }
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("curveflow");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("CURVEFLOW_LOG")) {
        const std::string level = env;
        if (level == "error") spdlog::set_level(spdlog::level::err);
        else if (level == "info") spdlog::set_level(spdlog::level::info);
        else if (level == "debug") spdlog::set_level(spdlog::level::debug);
    }
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Curve shortening flow and self-shrinker toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    double tol_flag = 0.0;
    double t_max_flag = 0.0;

    auto common = [&](CLI::App* s) {
        s->add_option("--input", cfg.input, "curve CSV (x,y per line)");
        s->add_option("--output", cfg.output, "output directory");
        s->add_option("--grid", cfg.grid, "support function grid size (even, >= 16)");
        s->add_option("--tol", tol_flag, "tolerance");
        s->add_option("--seed", cfg.seed, "random seed");
        s->add_option("--format", cfg.format, "csv | json | svg");
        s->add_option("--jobs", cfg.jobs, "worker threads for sweeps");
        s->add_option("--config", config_path, "JSON config file (flags take precedence)");
    };

    CLI::App* flow = app.add_subcommand("flow", "run the curve shortening flow");
    common(flow);
    flow->add_option("--stride", cfg.stride, "record every N-th step");
    flow->add_flag("--until-extinct", cfg.until_extinct, "ignore --t-max and run to extinction");
    flow->add_option("--t-max", t_max_flag, "stop time");
    flow->add_option("--svg-every", cfg.svg_every, "SVG snapshot every N steps");
    flow->add_option("--dt-factor", cfg.dt_factor, "time step factor");

    CLI::App* verify = app.add_subcommand("shrink-verify", "check the self-shrinker relation");
    common(verify);

    CLI::App* ode = app.add_subcommand("ode-shoot", "periods of the shrinker support ODE");
    common(ode);
    ode->add_option("--amplitudes", cfg.amplitudes, "comma separated p0 values")->delimiter(',');
    ode->add_flag("--dump-trajectory", cfg.dump_trajectory, "write theta,p,dp,energy over one period");

    CLI::App* bonnesen = app.add_subcommand("bonnesen", "Bonnesen chain t1 <= r <= R <= t2");
    common(bonnesen);

    CLI::App* sym = app.add_subcommand("symmetrize", "equal-area chord and central symmetrization");
    common(sym);
    sym->add_option("--support-input", cfg.support_input, "support function CSV (theta,p) instead of a curve");
    sym->add_flag("--recenter", cfg.recenter, "move the area centroid to the origin first");

    CLI::App* support = app.add_subcommand("support", "support function of a convex curve");
    common(support);
    support->add_option("--support-input", cfg.support_input, "support function CSV (theta,p) instead of a curve");
    support->add_flag("--recenter", cfg.recenter, "move the area centroid to the origin first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    if (sub->count("--tol") > 0) cfg.tol = tol_flag;
    if (sub->get_option_no_throw("--t-max") && sub->count("--t-max") > 0) cfg.t_max = t_max_flag;
    if (cfg.subcommand == "ode-shoot" && sub->get_option("--format")->count() == 0) cfg.format = "csv";

    try {
        if (!config_path.empty()) apply_config_file(config_path, cfg, *sub);
        validate(cfg);
        if (cfg.subcommand == "flow") return cmd_flow(cfg);
        if (cfg.subcommand == "shrink-verify") return cmd_shrink_verify(cfg);
        if (cfg.subcommand == "ode-shoot") return cmd_ode_shoot(cfg);
        if (cfg.subcommand == "bonnesen") return cmd_bonnesen(cfg);
        if (cfg.subcommand == "symmetrize") return cmd_symmetrize(cfg);
        return cmd_support(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
