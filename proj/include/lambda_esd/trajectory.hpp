#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lambda_esd/tolerances.hpp"

namespace lambda_esd {

/// A sampled separability-distance curve: strictly increasing times and
/// the distance at each, tagged with the model that produced it.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> lambdas;
    std::string model_tag;
};

/// Black-box evaluator t -> Lambda(t); must be reentrant.
using LambdaEvaluator = std::function<double(double)>;

/// Samples `model` on the closed uniform grid [t0, t1] with n points.
/// Throws BadRange unless t1 > t0 >= 0 and n >= 2.
Trajectory sample(const LambdaEvaluator& model, double t0, double t1,
                  std::size_t n, const std::string& model_tag = "");

enum class CrossingDirection { Down, Up };

struct Crossing {
    double time = 0.0;
    CrossingDirection direction = CrossingDirection::Down;
};

/// [t_start, t_end] where the curve is negative; `open` marks an interval
/// cut off by the window end rather than a detected return to zero.
struct NegativeInterval {
    double start = 0.0;
    double end = 0.0;
    bool open = false;
};

/// Qualitative shape of a trajectory relative to the separability boundary.
enum class Classification {
    AlwaysSeparable,   ///< never above +1e-9
    Asymptotic,        ///< positive throughout, approaching zero from above
    MonotonicCrossing, ///< one strict sign change, never recovers
    PeriodicTouch,     ///< >= 2 zeros, no strict sign change
    PeriodicCrossing,  ///< >= 2 strict sign changes
};

std::string to_string(Classification c);
std::string to_string(CrossingDirection d);

struct CrossingReport {
    std::vector<Crossing> crossings;            ///< sorted by time
    std::vector<double> touches;                ///< zeros without sign change
    std::vector<NegativeInterval> negative_intervals;
    Classification classification = Classification::Asymptotic;
    /// True when the window plausibly truncates the story: an interval is
    /// open at the window end, or no zero was observed at all.
    bool window_limited = false;
};

/// Finds every strict sign change between adjacent samples and refines it
/// by bisection on `model` to |Lambda| < 1e-10 (or 60 iterations); detects
/// touch points (local minima of |Lambda| reaching zero within 1e-9 without
/// a sign change) by golden-section refinement; classifies the result.
CrossingReport find_crossings(const Trajectory& traj, const LambdaEvaluator& model,
                              const Tolerances& tol = default_tolerances());

/// Crossing report rendered as JSON: {"crossings": [{"t", "direction"}],
/// "negative_intervals": [{"start", "end", "open"}], "classification",
/// "window_limited"}.
std::string to_json(const CrossingReport& report);

/// Trajectory rendered as CSV: header line `# model=<tag> params=<json>`,
/// then `t,lambda,concurrence` rows at 12 significant digits.
std::string to_csv(const Trajectory& traj, const std::string& params_json);

} // namespace lambda_esd
