#include "lambda_esd/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "lambda_esd/detail/numfmt.hpp"
#include "lambda_esd/errors.hpp"

namespace lambda_esd {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

/// Bisection to |model| < tol.crossing_refine or 60 iterations; the inputs
/// bracket a strict sign change.
double refine_crossing(const LambdaEvaluator& model, double lo, double hi,
                       double f_lo, const Tolerances& tol) {
    double mid = (lo + hi) / 2.0;
    for (int iter = 0; iter < 60; ++iter) {
        mid = (lo + hi) / 2.0;
        const double f_mid = model(mid);
        if (std::abs(f_mid) < tol.crossing_refine) return mid;
        if ((f_lo > 0.0) == (f_mid > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

/// Golden-section minimization of |model| on [lo, hi].
std::pair<double, double> refine_minimum(const LambdaEvaluator& model, double lo,
                                         double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = std::abs(model(x1));
    double f2 = std::abs(model(x2));
    for (int iter = 0; iter < 80 && (hi - lo) > 1e-13 * (1.0 + std::abs(hi)); ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = std::abs(model(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = std::abs(model(x2));
        }
    }
    const double x = (lo + hi) / 2.0;
    return {x, std::abs(model(x))};
}

} // namespace

std::string to_string(Classification c) {
    switch (c) {
        case Classification::AlwaysSeparable: return "AlwaysSeparable";
        case Classification::Asymptotic: return "Asymptotic";
        case Classification::MonotonicCrossing: return "MonotonicCrossing";
        case Classification::PeriodicTouch: return "PeriodicTouch";
        case Classification::PeriodicCrossing: return "PeriodicCrossing";
    }
    return "Unknown";
}

std::string to_string(CrossingDirection d) {
    return d == CrossingDirection::Down ? "down" : "up";
}

Trajectory sample(const LambdaEvaluator& model, double t0, double t1, std::size_t n,
                  const std::string& model_tag) {
    if (!(t0 >= 0.0) || !(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
        throw BadRange("sample: need 0 <= t0 < t1, got [" + std::to_string(t0) + ", " +
                       std::to_string(t1) + "]");
    }
    if (n < 2) {
        throw BadRange("sample: need at least 2 points, got " + std::to_string(n));
    }
    Trajectory traj;
    traj.model_tag = model_tag;
    traj.times.reserve(n);
    traj.lambdas.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Exact endpoints; uniform in between.
        const double t =
            i == 0 ? t0 : (i == n - 1 ? t1 : t0 + (t1 - t0) * double(i) / double(n - 1));
        traj.times.push_back(t);
        traj.lambdas.push_back(model(t));
    }
    return traj;
}

CrossingReport find_crossings(const Trajectory& traj, const LambdaEvaluator& model,
                              const Tolerances& tol) {
    const std::size_t n = traj.times.size();
    if (n < 2 || traj.lambdas.size() != n) {
        throw BadRange("find_crossings: trajectory needs >= 2 aligned samples");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(traj.times[i] > traj.times[i - 1])) {
            throw BadRange("find_crossings: times must be strictly increasing");
        }
    }

    CrossingReport report;
    const double t_begin = traj.times.front();
    const double t_end = traj.times.back();
    const double grid_step = (t_end - t_begin) / double(n - 1);

    double max_lambda = traj.lambdas[0];
    for (double v : traj.lambdas) max_lambda = std::max(max_lambda, v);

    // Everything at or below the boundary the whole time: nothing to refine.
    if (max_lambda <= tol.touch_threshold) {
        report.classification = Classification::AlwaysSeparable;
        bool negative = false;
        double start = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!negative && traj.lambdas[i] < -tol.touch_threshold) {
                negative = true;
                start = traj.times[i];
            }
        }
        if (negative) {
            report.negative_intervals.push_back({start, t_end, true});
            report.window_limited = true;
        }
        return report;
    }

    // Strict sign changes, bisection-refined. Samples inside the touch
    // deadband are numerically zero and carry no sign of their own, so a
    // crossing needs decisive opposite signs on its two flanks. (An exact
    // touch otherwise turns one roundoff-negative sample at its bottom
    // into a spurious crossing pair.)
    const double deadband = tol.touch_threshold;
    std::size_t prev = n; // last decisive sample, n = none yet
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(traj.lambdas[i]) <= deadband) continue;
        if (prev < n &&
            sign_of(traj.lambdas[prev]) * sign_of(traj.lambdas[i]) == -1) {
            const double t = refine_crossing(model, traj.times[prev], traj.times[i],
                                             traj.lambdas[prev], tol);
            report.crossings.push_back(
                {t, traj.lambdas[prev] > 0.0 ? CrossingDirection::Down
                                             : CrossingDirection::Up});
        }
        prev = i;
    }

    // Touch points: local minima of |Lambda| that reach zero without a sign
    // change. Endpoint minima count one-sided.
    const auto is_crossing_zone = [&](double t) {
        for (const Crossing& c : report.crossings) {
            if (std::abs(c.time - t) < grid_step) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double here = std::abs(traj.lambdas[i]);
        const bool left_ok = (i == 0) || std::abs(traj.lambdas[i - 1]) >= here;
        const bool right_ok = (i + 1 == n) || std::abs(traj.lambdas[i + 1]) >= here;
        if (!left_ok || !right_ok) continue;
        if (here > std::abs(max_lambda) * 0.5 && here > tol.touch_threshold * 1e3) {
            continue; // far from zero; skip the refinement cost
        }
        const double lo = traj.times[i == 0 ? 0 : i - 1];
        const double hi = traj.times[i + 1 == n ? i : i + 1];
        const auto [t_min, f_min] = refine_minimum(model, lo, hi);
        if (f_min > tol.touch_threshold) continue;
        if (is_crossing_zone(t_min)) continue; // the zero belongs to a crossing
        const bool duplicate =
            !report.touches.empty() && std::abs(report.touches.back() - t_min) < grid_step;
        if (!duplicate) report.touches.push_back(t_min);
    }

    // Negative intervals are delimited by strict crossings and the window
    // edges; touches never split them (a curve can touch zero from below
    // inside one).
    int initial_sign = 0;
    for (std::size_t i = 0; i < n && initial_sign == 0; ++i) {
        if (std::abs(traj.lambdas[i]) > deadband) {
            initial_sign = sign_of(traj.lambdas[i]);
        }
    }
    bool in_negative = initial_sign < 0;
    double start = t_begin;
    for (const Crossing& c : report.crossings) {
        if (c.direction == CrossingDirection::Down && !in_negative) {
            in_negative = true;
            start = c.time;
        } else if (c.direction == CrossingDirection::Up && in_negative) {
            report.negative_intervals.push_back({start, c.time, false});
            in_negative = false;
        }
    }
    if (in_negative) {
        report.negative_intervals.push_back({start, t_end, true});
    }

    const std::size_t strict = report.crossings.size();
    if (strict >= 2) {
        report.classification = Classification::PeriodicCrossing;
    } else if (strict == 1) {
        report.classification = Classification::MonotonicCrossing;
    } else if (report.touches.size() >= 2) {
        report.classification = Classification::PeriodicTouch;
    } else {
        report.classification = Classification::Asymptotic;
    }

    const bool open_interval =
        !report.negative_intervals.empty() && report.negative_intervals.back().open;
    const bool no_zero_seen = report.crossings.empty() && report.touches.empty();
    report.window_limited = open_interval || no_zero_seen;
    return report;
}

std::string to_json(const CrossingReport& report) {
    std::ostringstream os;
    os << "{\n  \"crossings\": [";
    for (std::size_t i = 0; i < report.crossings.size(); ++i) {
        os << (i == 0 ? "" : ", ") << "{\"t\": "
           << detail::format_significant(report.crossings[i].time, 17)
           << ", \"direction\": \"" << to_string(report.crossings[i].direction) << "\"}";
    }
    os << "],\n  \"touches\": [";
    for (std::size_t i = 0; i < report.touches.size(); ++i) {
        os << (i == 0 ? "" : ", ") << detail::format_significant(report.touches[i], 17);
    }
    os << "],\n  \"negative_intervals\": [";
    for (std::size_t i = 0; i < report.negative_intervals.size(); ++i) {
        const NegativeInterval& iv = report.negative_intervals[i];
        os << (i == 0 ? "" : ", ") << "{\"start\": " << detail::format_significant(iv.start, 17)
           << ", \"end\": " << detail::format_significant(iv.end, 17) << ", \"open\": "
           << (iv.open ? "true" : "false") << "}";
    }
    os << "],\n  \"classification\": \"" << to_string(report.classification)
       << "\",\n  \"window_limited\": " << (report.window_limited ? "true" : "false")
       << "\n}\n";
    return os.str();
}

std::string to_csv(const Trajectory& traj, const std::string& params_json) {
    std::ostringstream os;
    os << "# model=" << traj.model_tag << " params=" << params_json << "\n";
    os << "t,lambda,concurrence\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        os << detail::format_significant(traj.times[i], 12) << ","
           << detail::format_significant(traj.lambdas[i], 12) << ","
           << detail::format_significant(std::max(0.0, traj.lambdas[i]), 12) << "\n";
    }
    return os.str();
}

} // namespace lambda_esd
