// Acceptance gate: eight numbered criteria, one PASS/FAIL line each.
//
//   acceptance         runs all criteria
//   acceptance <n>     runs criterion n only
//
// Exit status is 0 only when every executed criterion passes. All
// tolerances are pinned here as constants next to the checks they guard.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "lambda_esd/dephasing.hpp"
#include "lambda_esd/eigen.hpp"
#include "lambda_esd/entanglement.hpp"
#include "lambda_esd/jc.hpp"
#include "lambda_esd/random_states.hpp"
#include "lambda_esd/state.hpp"
#include "lambda_esd/trajectory.hpp"

using lambda_esd::Complex;
using lambda_esd::ComplexMatrix;
using lambda_esd::DensityMatrix;
using lambda_esd::XStateParams;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Golden values, frozen from the defining formulas evaluated independently
// (extended-precision arithmetic cross-checked against double evaluation).
const double kLn5 = 1.6094379124341003;              // ln 5
const double kPhiFirstCrossing = 1.7261206622946734; // 2 asin(3^{-1/4})
const double kLambdaPhiAtTwo = -0.057242343096885834;
const double kTwoFifteenths = 2.0 / 15.0;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// Criterion 1: broadband dephasing reproduces the two reference curves.
// Curve A (a=0, b=c=d=z=1/3) stays entangled for all sampled Gamma t in
// [0, 5] and classifies as Asymptotic; curve B (a=d=1/12, b=c=z=5/12)
// crosses zero at Gamma t = ln 5 (refined, +-1e-6) and reaches -2/15 at
// 2 ln 5 (+-1e-9).
Outcome criterion1() {
    Outcome out;
    const lambda_esd::DephasingParams rates{1.0, 1.0};

    const DensityMatrix rho_a = lambda_esd::x_state(
        {0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, Complex(0.0), Complex(1.0 / 3.0, 0.0)});
    const lambda_esd::LambdaEvaluator model_a = [&](double t) {
        return lambda_esd::lambda(lambda_esd::dephase(rho_a, rates, t)).lambda;
    };
    const lambda_esd::Trajectory traj_a = lambda_esd::sample(model_a, 0.0, 5.0, 501);
    double min_lambda = traj_a.lambdas.front();
    for (double v : traj_a.lambdas) min_lambda = std::min(min_lambda, v);
    if (!(min_lambda > 0.0)) {
        out.fail("curve A dips to " + fmt(min_lambda) + " (expected > 0 throughout)");
    }
    const lambda_esd::CrossingReport report_a = lambda_esd::find_crossings(traj_a, model_a);
    if (report_a.classification != lambda_esd::Classification::Asymptotic) {
        out.fail("curve A classified " + lambda_esd::to_string(report_a.classification) +
                 " (expected Asymptotic)");
    }

    const DensityMatrix rho_b = lambda_esd::x_state({1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0,
                                                     1.0 / 12.0, Complex(0.0),
                                                     Complex(5.0 / 12.0, 0.0)});
    const lambda_esd::LambdaEvaluator model_b = [&](double t) {
        return lambda_esd::lambda(lambda_esd::dephase(rho_b, rates, t)).lambda;
    };
    const lambda_esd::Trajectory traj_b = lambda_esd::sample(model_b, 0.0, 5.0, 501);
    const lambda_esd::CrossingReport report_b = lambda_esd::find_crossings(traj_b, model_b);
    if (report_b.crossings.empty()) {
        out.fail("curve B has no refined crossing");
    } else {
        const double t_star = report_b.crossings.front().time;
        if (std::abs(t_star - kLn5) > 1e-6) {
            out.fail("curve B crossing at " + fmt(t_star) + " (expected ln 5 = " +
                     fmt(kLn5) + " +-1e-6)");
        } else {
            out.note("crossing at " + fmt(t_star));
        }
    }
    const double at_2ln5 = model_b(2.0 * kLn5);
    if (std::abs(at_2ln5 - (-kTwoFifteenths)) > 1e-9) {
        out.fail("curve B at 2 ln 5 is " + fmt(at_2ln5) + " (expected -2/15 +-1e-9)");
    }
    return out;
}

// Criterion 2: double atom-cavity dynamics reproduces both initial-family
// trajectories at alpha = pi/6: the Psi curve never drops below -1e-12 and
// touches zero at Gt = pi and 3 pi (PeriodicTouch); the Phi curve first
// crosses at 2 asin(3^{-1/4}) (+-1e-6), has Lambda(Gt=2) = -0.0572423...
// (+-1e-9 against the formula value, inside the published -0.05725 +-1e-5
// window), and classifies as PeriodicCrossing.
Outcome criterion2() {
    Outcome out;
    const double alpha = kPi / 6.0;
    const lambda_esd::JCParams params; // g = 1, resonant, n_max = 1

    lambda_esd::JCEvolver psi({lambda_esd::JCFamily::Psi, alpha}, params);
    const lambda_esd::LambdaEvaluator psi_model = [&](double t) {
        return lambda_esd::lambda(psi.at(t)).lambda;
    };
    const lambda_esd::Trajectory psi_traj =
        lambda_esd::sample(psi_model, 0.0, 4.0 * kPi, 1257);
    double psi_min = psi_traj.lambdas.front();
    for (double v : psi_traj.lambdas) psi_min = std::min(psi_min, v);
    if (psi_min < -1e-12) {
        out.fail("Psi curve reaches " + fmt(psi_min) + " (expected >= -1e-12)");
    }
    const lambda_esd::CrossingReport psi_report =
        lambda_esd::find_crossings(psi_traj, psi_model);
    if (psi_report.classification != lambda_esd::Classification::PeriodicTouch) {
        out.fail("Psi classified " + lambda_esd::to_string(psi_report.classification) +
                 " (expected PeriodicTouch)");
    }
    // The touch refiner promises |Lambda| < 1e-10 at the reported time; on a
    // quadratic touch with curvature sin(2 alpha)/2 that pins the time to
    // 2 sqrt(1e-10 / sin 2a) ~ 2.2e-5, so 3e-5 is the honest location bound.
    bool saw_pi = false, saw_3pi = false;
    for (double touch : psi_report.touches) {
        saw_pi = saw_pi || std::abs(touch - kPi) < 3e-5;
        saw_3pi = saw_3pi || std::abs(touch - 3.0 * kPi) < 3e-5;
    }
    if (!saw_pi || !saw_3pi) {
        out.fail("Psi touch times do not bracket pi and 3 pi");
    }
    // And the zeros really sit at pi and 3 pi: the curve vanishes there.
    const double psi_at_pi = std::abs(psi_model(kPi));
    const double psi_at_3pi = std::abs(psi_model(3.0 * kPi));
    if (psi_at_pi > 1e-12 || psi_at_3pi > 1e-12) {
        out.fail("Psi at pi is " + fmt(psi_at_pi) + ", at 3 pi is " + fmt(psi_at_3pi) +
                 " (expected <= 1e-12)");
    }

    lambda_esd::JCEvolver phi({lambda_esd::JCFamily::Phi, alpha}, params);
    const lambda_esd::LambdaEvaluator phi_model = [&](double t) {
        return lambda_esd::lambda(phi.at(t)).lambda;
    };
    const lambda_esd::Trajectory phi_traj =
        lambda_esd::sample(phi_model, 0.0, 4.0 * kPi, 1257);
    const lambda_esd::CrossingReport phi_report =
        lambda_esd::find_crossings(phi_traj, phi_model);
    if (phi_report.crossings.empty()) {
        out.fail("Phi curve has no crossing");
    } else {
        const double t_star = phi_report.crossings.front().time;
        if (std::abs(t_star - kPhiFirstCrossing) > 1e-6) {
            out.fail("Phi first crossing at " + fmt(t_star) + " (expected " +
                     fmt(kPhiFirstCrossing) + " +-1e-6)");
        } else {
            out.note("Phi crossing at " + fmt(t_star));
        }
    }
    const double phi_at_2 = phi_model(2.0);
    if (std::abs(phi_at_2 - kLambdaPhiAtTwo) > 1e-9) {
        out.fail("Phi at Gt=2 is " + fmt(phi_at_2) + " (expected " +
                 fmt(kLambdaPhiAtTwo) + " +-1e-9)");
    }
    if (std::abs(phi_at_2 - (-0.05725)) > 1e-5) {
        out.fail("Phi at Gt=2 outside the published -0.05725 +-1e-5 window");
    }
    if (phi_report.classification != lambda_esd::Classification::PeriodicCrossing) {
        out.fail("Phi classified " + lambda_esd::to_string(phi_report.classification) +
                 " (expected PeriodicCrossing)");
    }
    return out;
}

// Criterion 3: closed forms against the full eigenvalue pipeline. 10^4
// random valid w=0 X states (max |closed - pipeline| < 1e-9), then the
// atom-cavity closed forms against the truncated-Hilbert simulator on a
// 50 x 50 (alpha, Gt) grid per family (max difference < 1e-9).
Outcome criterion3() {
    Outcome out;
    lambda_esd::StateSampler sampler(20040517);
    double worst_x = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const XStateParams p = sampler.x_params(/*force_w_zero=*/true);
        const double closed = lambda_esd::lambda_x_closed(p);
        const double pipeline = lambda_esd::lambda(lambda_esd::x_state(p)).lambda;
        worst_x = std::max(worst_x, std::abs(closed - pipeline));
    }
    if (worst_x >= 1e-9) {
        out.fail("X-state closed vs pipeline disagree by " + fmt(worst_x));
    } else {
        out.note("X-state max diff " + fmt(worst_x));
    }

    double worst_jc = 0.0;
    for (const lambda_esd::JCFamily family :
         {lambda_esd::JCFamily::Phi, lambda_esd::JCFamily::Psi}) {
        for (int ia = 0; ia < 50; ++ia) {
            const double alpha = 2.0 * kPi * double(ia) / 50.0;
            lambda_esd::JCEvolver evolver({family, alpha}, lambda_esd::JCParams{});
            for (int it = 0; it < 50; ++it) {
                const double t = 4.0 * kPi * double(it) / 49.0;
                const double closed =
                    family == lambda_esd::JCFamily::Phi
                        ? lambda_esd::lambda_jc_phi(alpha, 1.0, t)
                        : lambda_esd::lambda_jc_psi(alpha, 1.0, t);
                const double sim = lambda_esd::lambda(evolver.at(t)).lambda;
                worst_jc = std::max(worst_jc, std::abs(closed - sim));
            }
        }
    }
    if (worst_jc >= 1e-9) {
        out.fail("JC closed vs simulator disagree by " + fmt(worst_jc));
    } else {
        out.note("JC max diff " + fmt(worst_jc));
    }
    return out;
}

// Criterion 4: over 10^4 seeded full-rank random states, every state with
// Lambda < -1e-6 is separable (negativity < 1e-9) and mixed
// (purity < 1 - 1e-6); zero counterexamples.
Outcome criterion4() {
    Outcome out;
    lambda_esd::StateSampler sampler(8523401);
    int negative_count = 0;
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const DensityMatrix rho = sampler.ginibre();
        const double lam = lambda_esd::lambda(rho).lambda;
        if (lam >= -1e-6) continue;
        ++negative_count;
        const double neg = lambda_esd::negativity(rho);
        const double pur = rho.purity();
        if (!(neg < 1e-9) || !(pur < 1.0 - 1e-6)) {
            ++violations;
            if (violations == 1) {
                out.fail("state " + std::to_string(i) + ": lambda " + fmt(lam) +
                         ", negativity " + fmt(neg) + ", purity " + fmt(pur));
            }
        }
    }
    if (violations > 0) {
        out.fail(std::to_string(violations) + " counterexample(s)");
    } else {
        out.note(std::to_string(negative_count) +
                 " states with lambda < -1e-6, all separable and mixed");
    }
    return out;
}

// Criterion 5: over 10^3 random X states with full support (ad > 0, bc > 0,
// z != 0, w != 0), equal-rate dephasing drives every trajectory negative
// within Gamma t <= 50; zero counterexamples.
Outcome criterion5() {
    Outcome out;
    lambda_esd::StateSampler sampler(60451);
    const lambda_esd::DephasingParams rates{1.0, 1.0};
    int survivors = 0;
    double latest_death = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const XStateParams p =
            sampler.x_params(/*force_w_zero=*/false, /*full_support=*/true);
        const DensityMatrix rho0 = lambda_esd::x_state(p);
        bool went_negative = false;
        for (int k = 0; k <= 100; ++k) {
            const double t = 50.0 * double(k) / 100.0;
            if (lambda_esd::lambda(lambda_esd::dephase(rho0, rates, t)).lambda < 0.0) {
                went_negative = true;
                latest_death = std::max(latest_death, t);
                break;
            }
        }
        if (!went_negative) ++survivors;
    }
    if (survivors > 0) {
        out.fail(std::to_string(survivors) +
                 " trajectories stayed nonnegative through Gamma t = 50");
    } else {
        out.note("all died by Gamma t <= " + fmt(latest_death));
    }
    return out;
}

// Criterion 6: over 10^4 random pure states with amplitudes (a, b, c, d),
// |Lambda - 2|ad - bc|| < 1e-9; over 10^3 random pure product states,
// |Lambda| < 1e-9 and |C| < 1e-9.
Outcome criterion6() {
    Outcome out;
    lambda_esd::StateSampler sampler(777001);
    double worst_pure = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const std::vector<Complex> amps = sampler.pure_amplitudes();
        const double expected = 2.0 * std::abs(amps[0] * amps[3] - amps[1] * amps[2]);
        const lambda_esd::LambdaResult r = lambda_esd::lambda(lambda_esd::from_pure(amps));
        worst_pure = std::max(worst_pure, std::abs(r.lambda - expected));
    }
    if (worst_pure >= 1e-9) {
        out.fail("pure-state oracle off by " + fmt(worst_pure));
    } else {
        out.note("pure max err " + fmt(worst_pure));
    }

    double worst_product = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const lambda_esd::LambdaResult r =
            lambda_esd::lambda(lambda_esd::from_pure(sampler.product_amplitudes()));
        worst_product = std::max(worst_product, std::abs(r.lambda));
        worst_product = std::max(worst_product, std::abs(r.concurrence));
    }
    if (worst_product >= 1e-9) {
        out.fail("product states reach |lambda| = " + fmt(worst_product));
    } else {
        out.note("product max |lambda| " + fmt(worst_product));
    }
    return out;
}

// Criterion 7: Lambda is invariant under local unitaries: 10^3 random
// (state, U_A, U_B) triples with |Delta Lambda| < 1e-8.
Outcome criterion7() {
    Outcome out;
    lambda_esd::StateSampler sampler(424243);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = sampler.ginibre();
        const ComplexMatrix u = kron(sampler.su2(), sampler.su2());
        const DensityMatrix rotated{u * rho.matrix() * u.adjoint()};
        const double before = lambda_esd::lambda(rho).lambda;
        const double after = lambda_esd::lambda(rotated).lambda;
        worst = std::max(worst, std::abs(before - after));
    }
    if (worst >= 1e-8) {
        out.fail("local-unitary shift " + fmt(worst));
    } else {
        out.note("max shift " + fmt(worst));
    }
    return out;
}

// Criterion 8: the general 4x4 eigensolver agrees with the independent
// quartic root oracle within 1e-8 on 10^4 random matrices (condition cap
// 1e6), and satisfies the trace and determinant identities within 1e-8
// (determinant scaled by max(1, |det|)).
Outcome criterion8() {
    Outcome out;
    lambda_esd::StateSampler sampler(99000241);
    double worst_match = 0.0, worst_trace = 0.0, worst_det = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const ComplexMatrix a = sampler.general4(1e6);
        const lambda_esd::Eig4Result r = lambda_esd::eig4_general(a);
        const std::array<Complex, 4> oracle =
            lambda_esd::solve_quartic(lambda_esd::characteristic_polynomial_4(a));

        // Greedy nearest matching between the two root sets.
        std::array<bool, 4> used{};
        for (const Complex& v : r.values) {
            double best = 1e300;
            int best_j = -1;
            for (int j = 0; j < 4; ++j) {
                if (used[j]) continue;
                const double d = std::abs(v - oracle[j]);
                if (d < best) {
                    best = d;
                    best_j = j;
                }
            }
            used[best_j] = true;
            worst_match = std::max(worst_match, best);
        }

        Complex sum(0.0, 0.0), prod(1.0, 0.0);
        for (const Complex& v : r.values) {
            sum += v;
            prod *= v;
        }
        worst_trace = std::max(worst_trace, std::abs(sum - a.trace()));
        const Complex det = lambda_esd::determinant(a);
        worst_det = std::max(worst_det,
                             std::abs(prod - det) / std::max(1.0, std::abs(det)));
    }
    if (worst_match >= 1e-8) out.fail("oracle mismatch " + fmt(worst_match));
    if (worst_trace >= 1e-8) out.fail("trace identity off by " + fmt(worst_trace));
    if (worst_det >= 1e-8) out.fail("determinant identity off by " + fmt(worst_det));
    if (out.pass) {
        out.note("match " + fmt(worst_match) + ", trace " + fmt(worst_trace) +
                 ", det " + fmt(worst_det));
    }
    return out;
}

using CriterionFn = Outcome (*)();

constexpr std::array<CriterionFn, 8> kCriteria = {
    criterion1, criterion2, criterion3, criterion4,
    criterion5, criterion6, criterion7, criterion8,
};

bool run_one(int index) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = kCriteria[static_cast<std::size_t>(index - 1)]();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s (%s) [%.2fs]\n", index, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), seconds);
    std::fflush(stdout);
    return out.pass;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 2) {
        std::fprintf(stderr, "usage: %s [criterion 1-8]\n", argv[0]);
        return 2;
    }
    if (argc == 2) {
        const int index = std::atoi(argv[1]);
        if (index < 1 || index > 8) {
            std::fprintf(stderr, "usage: %s [criterion 1-8]\n", argv[0]);
            return 2;
        }
        return run_one(index) ? 0 : 1;
    }
    bool all_pass = true;
    for (int index = 1; index <= 8; ++index) {
        all_pass = run_one(index) && all_pass;
    }
    return all_pass ? 0 : 1;
}
