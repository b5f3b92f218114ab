// lambda-esd: measure two-qubit entanglement, run dephasing / cavity-QED
// trajectories, detect sudden death, and sweep parameter grids.
//
// Exit codes: 0 success, 2 usage or input parsing, 3 domain validation.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lambda_esd/dephasing.hpp"
#include "lambda_esd/detail/numfmt.hpp"
#include "lambda_esd/entanglement.hpp"
#include "lambda_esd/errors.hpp"
#include "lambda_esd/jc.hpp"
#include "lambda_esd/state.hpp"
#include "lambda_esd/trajectory.hpp"

namespace {

using lambda_esd::Complex;
using lambda_esd::detail::format_significant;

constexpr double kPi = 3.14159265358979323846;

double parse_double_strict(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(value)) {
        throw lambda_esd::ParseError(what + ": cannot parse number from \"" + text + "\"");
    }
    return value;
}

/// Accepts "0.3", "-0.3", "0.1+0.2i", "0.1-0.2i", "0.2i", "-i", "i".
Complex parse_complex(std::string text, const std::string& what) {
    if (text.empty()) throw lambda_esd::ParseError(what + ": empty number");
    const char tail = text.back();
    if (tail != 'i' && tail != 'j') {
        return Complex(parse_double_strict(text, what), 0.0);
    }
    text.pop_back();
    // Split an explicit real part from the imaginary coefficient at the last
    // sign that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t k = text.size(); k-- > 1;) {
        if ((text[k] == '+' || text[k] == '-') &&
            text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const auto imag_of = [&](std::string s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_double_strict(s, what);
    };
    if (split == std::string::npos) {
        return Complex(0.0, imag_of(text));
    }
    return Complex(parse_double_strict(text.substr(0, split), what),
                   imag_of(text.substr(split)));
}

/// Parses "a=0.25,b=0.25,c=0.25,d=0.25,z=0,w=0" (missing keys default 0).
lambda_esd::XStateParams parse_x_state(const std::string& text) {
    lambda_esd::XStateParams p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw lambda_esd::ParseError("--x-state: expected key=value, got \"" + item +
                                         "\"");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "a") {
            p.a = parse_double_strict(value, "--x-state a");
        } else if (key == "b") {
            p.b = parse_double_strict(value, "--x-state b");
        } else if (key == "c") {
            p.c = parse_double_strict(value, "--x-state c");
        } else if (key == "d") {
            p.d = parse_double_strict(value, "--x-state d");
        } else if (key == "z") {
            p.z = parse_complex(value, "--x-state z");
        } else if (key == "w") {
            p.w = parse_complex(value, "--x-state w");
        } else {
            throw lambda_esd::ParseError("--x-state: unknown key \"" + key + "\"");
        }
    }
    return p;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw lambda_esd::Error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw lambda_esd::Error("write to " + path + " failed");
}

std::string x_params_json(const lambda_esd::XStateParams& p) {
    std::ostringstream os;
    os << "{\"a\": " << format_significant(p.a, 17) << ", \"b\": " << format_significant(p.b, 17)
       << ", \"c\": " << format_significant(p.c, 17) << ", \"d\": " << format_significant(p.d, 17)
       << ", \"z_re\": " << format_significant(p.z.real(), 17)
       << ", \"z_im\": " << format_significant(p.z.imag(), 17)
       << ", \"w_re\": " << format_significant(p.w.real(), 17)
       << ", \"w_im\": " << format_significant(p.w.imag(), 17) << "}";
    return os.str();
}

/// Runs `body(i)` for i in [0, count), possibly on several threads; results
/// must be written to pre-sized slots so output order stays deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (count < 16 || hw == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const unsigned n_threads = std::min<std::size_t>(hw, count);
    workers.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    }
    for (std::thread& w : workers) w.join();
}

// ---------------------------------------------------------------- measure

struct MeasureOptions {
    std::string input_path;
    std::string x_state_arg;
    std::string out_path;
};

int run_measure(const MeasureOptions& opt) {
    if (opt.input_path.empty() == opt.x_state_arg.empty()) {
        throw lambda_esd::ParseError(
            "measure: exactly one of --in or --x-state is required");
    }
    std::optional<lambda_esd::DensityMatrix> rho;
    if (!opt.input_path.empty()) {
        rho = lambda_esd::load_json(opt.input_path);
    } else {
        rho = lambda_esd::x_state(parse_x_state(opt.x_state_arg));
    }

    const lambda_esd::LambdaResult r = lambda_esd::lambda(*rho);
    std::ostringstream os;
    os << "{\n"
       << "  \"lambda\": " << format_significant(r.lambda, 17) << ",\n"
       << "  \"concurrence\": " << format_significant(r.concurrence, 17) << ",\n"
       << "  \"purity\": " << format_significant(rho->purity(), 17) << ",\n"
       << "  \"negativity\": " << format_significant(lambda_esd::negativity(*rho), 17)
       << ",\n  \"sqrt_eigs\": [";
    for (int i = 0; i < 4; ++i) {
        os << (i ? ", " : "") << format_significant(r.sqrt_eigs[i], 17);
    }
    os << "],\n  \"residual\": " << format_significant(r.residual, 17) << "\n}\n";
    write_text(opt.out_path, os.str());
    return 0;
}

// ---------------------------------------------------------------- dephase

struct TrajectoryOptions {
    std::string out_path;          // trajectory CSV (or crossing JSON if format=json)
    std::string report_path;       // optional extra crossing-JSON destination
    std::string format = "csv";
    double t_max = 0.0;
    std::size_t steps = 0;
};

TrajectoryOptions default_window(double t_max, std::size_t steps) {
    TrajectoryOptions traj;
    traj.t_max = t_max;
    traj.steps = steps;
    return traj;
}

void emit_trajectory(const lambda_esd::Trajectory& traj,
                     const lambda_esd::CrossingReport& report,
                     const std::string& params_json, const TrajectoryOptions& opt,
                     const std::string& extra_csv_comment = "") {
    if (opt.format == "csv") {
        std::string csv = lambda_esd::to_csv(traj, params_json);
        if (!extra_csv_comment.empty()) csv += extra_csv_comment;
        write_text(opt.out_path, csv);
    } else {
        write_text(opt.out_path, lambda_esd::to_json(report));
    }
    if (!opt.report_path.empty()) {
        write_text(opt.report_path, lambda_esd::to_json(report));
    }
}

struct DephaseOptions {
    std::string x_state_arg;
    double gamma_a = 1.0;
    double gamma_b = 1.0;
    TrajectoryOptions traj = default_window(5.0, 501);
};

int run_dephase(const DephaseOptions& opt) {
    const lambda_esd::XStateParams p0 = parse_x_state(opt.x_state_arg);
    const lambda_esd::DensityMatrix rho0 = lambda_esd::x_state(p0);
    const lambda_esd::DephasingParams rates{opt.gamma_a, opt.gamma_b};

    const lambda_esd::LambdaEvaluator model = [&](double t) {
        return lambda_esd::lambda(lambda_esd::dephase(rho0, rates, t)).lambda;
    };
    const lambda_esd::Trajectory traj =
        lambda_esd::sample(model, 0.0, opt.traj.t_max, opt.traj.steps, "dephasing");
    const lambda_esd::CrossingReport report = lambda_esd::find_crossings(traj, model);

    std::ostringstream params;
    params << "{\"x_state\": " << x_params_json(p0)
           << ", \"gamma_a\": " << format_significant(opt.gamma_a, 17)
           << ", \"gamma_b\": " << format_significant(opt.gamma_b, 17)
           << ", \"t_max\": " << format_significant(opt.traj.t_max, 17)
           << ", \"steps\": " << opt.traj.steps << "}";
    emit_trajectory(traj, report, params.str(), opt.traj);
    return 0;
}

// --------------------------------------------------------------------- jc

struct JCOptions {
    std::string family;
    double alpha = 0.0;
    double g = 1.0;
    bool simulate = false;
    bool closed_form = false;
    bool both = false;
    TrajectoryOptions traj = default_window(4.0 * kPi, 1257);
};

lambda_esd::JCFamily parse_family(const std::string& name) {
    if (name == "phi") return lambda_esd::JCFamily::Phi;
    if (name == "psi") return lambda_esd::JCFamily::Psi;
    throw lambda_esd::InvalidParams("jc: family must be phi or psi, got \"" + name +
                                    "\"");
}

int run_jc(const JCOptions& opt) {
    if (int(opt.simulate) + int(opt.closed_form) + int(opt.both) > 1) {
        throw lambda_esd::ParseError(
            "jc: --simulate, --closed-form and --both are mutually exclusive");
    }
    const lambda_esd::JCFamily family = parse_family(opt.family);
    if (!(opt.alpha >= 0.0) || !(opt.alpha < 2.0 * kPi)) {
        throw lambda_esd::InvalidParams("jc: alpha must lie in [0, 2 pi), got " +
                                        std::to_string(opt.alpha));
    }
    if (!(opt.g > 0.0)) {
        throw lambda_esd::InvalidParams("jc: coupling g must be positive");
    }

    const lambda_esd::LambdaEvaluator closed = [&](double t) {
        return family == lambda_esd::JCFamily::Phi
                   ? lambda_esd::lambda_jc_phi(opt.alpha, opt.g, t)
                   : lambda_esd::lambda_jc_psi(opt.alpha, opt.g, t);
    };

    std::optional<lambda_esd::JCEvolver> evolver;
    if (opt.simulate || opt.both) {
        evolver.emplace(lambda_esd::JCInitialFamily{family, opt.alpha},
                        lambda_esd::JCParams{opt.g, 0.0, 0.0, 1});
    }
    const lambda_esd::LambdaEvaluator simulated = [&](double t) {
        return lambda_esd::lambda(evolver->at(t)).lambda;
    };

    // The trajectory and crossing report follow the selected mode; with
    // --both the closed form drives them and the simulator rides along as a
    // second CSV column plus an agreement summary.
    const lambda_esd::LambdaEvaluator& model = opt.simulate ? simulated : closed;
    const std::string tag = std::string("jc-") + opt.family +
                            (opt.simulate ? "-simulated" : "") + (opt.both ? "-both" : "");
    lambda_esd::Trajectory traj =
        lambda_esd::sample(model, 0.0, opt.traj.t_max, opt.traj.steps, tag);
    const lambda_esd::CrossingReport report = lambda_esd::find_crossings(traj, model);

    std::ostringstream params;
    params << "{\"family\": \"" << opt.family << "\", \"alpha\": "
           << format_significant(opt.alpha, 17) << ", \"g\": " << format_significant(opt.g, 17)
           << ", \"t_max\": " << format_significant(opt.traj.t_max, 17)
           << ", \"steps\": " << opt.traj.steps << "}";

    if (!opt.both) {
        emit_trajectory(traj, report, params.str(), opt.traj);
        return 0;
    }

    // Two-column CSV: closed form and simulator, plus the max-|difference|
    // line that makes oracle disagreement impossible to miss.
    std::ostringstream os;
    os << "# model=" << tag << " params=" << params.str() << "\n";
    os << "t,lambda_closed,lambda_simulated,concurrence\n";
    double max_diff = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const double lc = traj.lambdas[i];
        const double ls = simulated(t);
        max_diff = std::max(max_diff, std::abs(lc - ls));
        os << format_significant(t, 12) << "," << format_significant(lc, 12) << ","
           << format_significant(ls, 12) << "," << format_significant(std::max(0.0, lc), 12)
           << "\n";
    }
    os << "# max_abs_difference=" << format_significant(max_diff, 12) << "\n";
    if (opt.traj.format == "csv") {
        write_text(opt.traj.out_path, os.str());
    } else {
        write_text(opt.traj.out_path, lambda_esd::to_json(report));
    }
    if (!opt.traj.report_path.empty()) {
        write_text(opt.traj.report_path, lambda_esd::to_json(report));
    }
    return 0;
}

// ------------------------------------------------------------------ sweep

struct SweepOptions {
    std::string model;
    std::string vary;
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 0;
    // fixed parameters
    std::string x_state_arg;
    double gamma = 1.0;
    std::string family = "phi";
    double alpha = 0.0;
    double g = 1.0;
    double t_max = 0.0; // 0 = model default
    std::size_t steps = 0;
    std::string out_path;
    std::string out_dir;
};

struct SweepRow {
    double value = 0.0;
    std::string classification;
    std::optional<double> first_crossing;
    bool window_limited = false;
    std::string report_json;
    bool invalid = false;
    std::string error;
};

int run_sweep(const SweepOptions& opt) {
    if (opt.model != "dephase" && opt.model != "jc") {
        throw lambda_esd::ParseError("sweep: --model must be dephase or jc, got \"" +
                                     opt.model + "\"");
    }
    if (opt.points == 0) {
        throw lambda_esd::BadRange("sweep: empty grid (--points 0)");
    }
    if (opt.points > 1000000) {
        throw lambda_esd::BadRange("sweep: grid larger than 10^6 points");
    }
    if (opt.points > 1 && !(opt.to > opt.from)) {
        throw lambda_esd::BadRange("sweep: need --to > --from for a multi-point grid");
    }

    const bool is_jc = opt.model == "jc";
    if (is_jc) {
        if (opt.vary != "alpha" && opt.vary != "g") {
            throw lambda_esd::ParseError("sweep: jc varies alpha or g, got \"" +
                                         opt.vary + "\"");
        }
        (void)parse_family(opt.family);
    } else {
        if (opt.vary != "z" && opt.vary != "gamma" && opt.vary != "ad") {
            throw lambda_esd::ParseError("sweep: dephase varies z, gamma or ad, got \"" +
                                         opt.vary + "\"");
        }
    }

    const double t_max = opt.t_max > 0.0 ? opt.t_max : (is_jc ? 4.0 * kPi : 5.0);
    const std::size_t steps = opt.steps > 0 ? opt.steps : (is_jc ? 1257 : 501);
    lambda_esd::XStateParams base;
    if (!opt.x_state_arg.empty()) base = parse_x_state(opt.x_state_arg);

    std::vector<SweepRow> rows(opt.points);
    parallel_for(opt.points, [&](std::size_t i) {
        SweepRow& row = rows[i];
        const double v = opt.points == 1
                             ? opt.from
                             : opt.from + (opt.to - opt.from) * double(i) /
                                              double(opt.points - 1);
        row.value = v;
        try {
            lambda_esd::LambdaEvaluator model;
            if (is_jc) {
                const double alpha = opt.vary == "alpha" ? v : opt.alpha;
                const double g = opt.vary == "g" ? v : opt.g;
                const lambda_esd::JCFamily family = parse_family(opt.family);
                model = [family, alpha, g](double t) {
                    return family == lambda_esd::JCFamily::Phi
                               ? lambda_esd::lambda_jc_phi(alpha, g, t)
                               : lambda_esd::lambda_jc_psi(alpha, g, t);
                };
            } else {
                lambda_esd::XStateParams p = base;
                double gamma = opt.gamma;
                if (opt.vary == "z") {
                    p.z = Complex(v, 0.0);
                } else if (opt.vary == "gamma") {
                    gamma = v;
                } else { // ad: symmetric populations with the coherence maxed
                    p.a = p.d = v;
                    p.b = p.c = (1.0 - 2.0 * v) / 2.0;
                    p.z = Complex(p.b, 0.0);
                    p.w = Complex(0.0, 0.0);
                }
                const lambda_esd::DensityMatrix rho0 = lambda_esd::x_state(p);
                const lambda_esd::DephasingParams rates{gamma, gamma};
                model = [rho0, rates](double t) {
                    return lambda_esd::lambda(lambda_esd::dephase(rho0, rates, t)).lambda;
                };
            }
            const lambda_esd::Trajectory traj =
                lambda_esd::sample(model, 0.0, t_max, steps, opt.model);
            const lambda_esd::CrossingReport report =
                lambda_esd::find_crossings(traj, model);
            row.classification = lambda_esd::to_string(report.classification);
            if (!report.crossings.empty()) {
                row.first_crossing = report.crossings.front().time;
            }
            row.window_limited = report.window_limited;
            row.report_json = lambda_esd::to_json(report);
        } catch (const lambda_esd::Error& e) {
            // A grid point outside the physical region is a data point, not
            // a reason to abort the sweep.
            row.invalid = true;
            row.error = e.what();
        }
    });

    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].invalid) continue;
            char name[32];
            std::snprintf(name, sizeof(name), "point_%05zu.json", i);
            write_text((std::filesystem::path(opt.out_dir) / name).string(),
                       rows[i].report_json);
        }
    }

    std::ostringstream os;
    os << "# sweep model=" << opt.model << " vary=" << opt.vary << " from="
       << lambda_esd::detail::format_shortest(opt.from) << " to="
       << lambda_esd::detail::format_shortest(opt.to) << " points=" << opt.points
       << "\n";
    os << opt.vary << ",classification,first_crossing,window_limited\n";
    for (const SweepRow& row : rows) {
        os << format_significant(row.value, 12) << ",";
        if (row.invalid) {
            os << "Invalid,,\n";
            continue;
        }
        os << row.classification << ",";
        if (row.first_crossing) os << format_significant(*row.first_crossing, 12);
        os << "," << (row.window_limited ? "true" : "false") << "\n";
    }
    write_text(opt.out_path, os.str());
    return 0;
}

void add_trajectory_flags(CLI::App* cmd, TrajectoryOptions& traj) {
    cmd->add_option("--t-max", traj.t_max, "Window end (start is 0)")
        ->capture_default_str();
    cmd->add_option("--steps", traj.steps, "Sample count across the window")
        ->capture_default_str();
    cmd->add_option("--format", traj.format, "Primary output: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", traj.out_path, "Primary output path (default stdout)");
    cmd->add_option("--report", traj.report_path,
                    "Also write the crossing-report JSON to this path");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two-qubit entanglement dynamics: signed separability distance, "
        "dephasing and cavity trajectories, sudden-death detection"};
    app.require_subcommand(1);

    MeasureOptions measure_opt;
    CLI::App* measure = app.add_subcommand(
        "measure", "Entanglement measures of a single state");
    measure->add_option("--in", measure_opt.input_path,
                        "Density-matrix JSON file (basis pp,pm,mp,mm)");
    measure->add_option("--x-state", measure_opt.x_state_arg,
                        "X-state parameters, e.g. a=0.25,b=0.25,c=0.25,d=0.25,z=0,w=0");
    measure->add_option("--out", measure_opt.out_path, "Output path (default stdout)");

    DephaseOptions dephase_opt;
    CLI::App* dephase = app.add_subcommand(
        "dephase", "Separability-distance trajectory under broadband dephasing");
    dephase->add_option("--x-state", dephase_opt.x_state_arg, "Initial X state")
        ->required();
    dephase->add_option("--gamma-a", dephase_opt.gamma_a, "Dephasing rate of qubit A")
        ->capture_default_str();
    dephase->add_option("--gamma-b", dephase_opt.gamma_b, "Dephasing rate of qubit B")
        ->capture_default_str();
    add_trajectory_flags(dephase, dephase_opt.traj);

    JCOptions jc_opt;
    CLI::App* jc = app.add_subcommand(
        "jc", "Separability-distance trajectory in the double atom-cavity model");
    jc->add_option("--family", jc_opt.family, "Initial family: phi or psi")->required();
    jc->add_option("--alpha", jc_opt.alpha, "Superposition angle in radians")
        ->required();
    jc->add_option("--g", jc_opt.g, "Vacuum Rabi frequency")->capture_default_str();
    jc->add_flag("--simulate", jc_opt.simulate,
                 "Evaluate with the truncated-Hilbert-space simulator");
    jc->add_flag("--closed-form", jc_opt.closed_form,
                 "Evaluate with the closed-form expressions (default)");
    jc->add_flag("--both", jc_opt.both,
                 "Emit both evaluations per row plus a max-difference summary");
    add_trajectory_flags(jc, jc_opt.traj);

    SweepOptions sweep_opt;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Classify trajectories across a 1-D parameter grid");
    sweep->add_option("--model", sweep_opt.model, "dephase or jc")->required();
    sweep->add_option("--vary", sweep_opt.vary,
                      "Grid parameter: alpha|g (jc), z|gamma|ad (dephase)")
        ->required();
    sweep->add_option("--from", sweep_opt.from, "Grid start")->required();
    sweep->add_option("--to", sweep_opt.to, "Grid end");
    sweep->add_option("--points", sweep_opt.points, "Grid size")->required();
    sweep->add_option("--x-state", sweep_opt.x_state_arg,
                      "Base X state for dephase sweeps");
    sweep->add_option("--gamma", sweep_opt.gamma, "Fixed dephasing rate")
        ->capture_default_str();
    sweep->add_option("--family", sweep_opt.family, "Fixed jc family")
        ->capture_default_str();
    sweep->add_option("--alpha", sweep_opt.alpha, "Fixed jc alpha")
        ->capture_default_str();
    sweep->add_option("--g", sweep_opt.g, "Fixed jc coupling")->capture_default_str();
    sweep->add_option("--t-max", sweep_opt.t_max, "Window end (model default if unset)");
    sweep->add_option("--steps", sweep_opt.steps,
                      "Samples per trajectory (model default if unset)");
    sweep->add_option("--out", sweep_opt.out_path, "Summary CSV path (default stdout)");
    sweep->add_option("--out-dir", sweep_opt.out_dir,
                      "Directory for per-point crossing-report JSON files");

    try {
        app.parse(argc, argv);
        if (*measure) return run_measure(measure_opt);
        if (*dephase) return run_dephase(dephase_opt);
        if (*jc) return run_jc(jc_opt);
        if (*sweep) return run_sweep(sweep_opt);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const lambda_esd::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lambda_esd::BadRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lambda_esd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
