#pragma once

#include <optional>

#include "lambda_esd/state.hpp"
#include "lambda_esd/tolerances.hpp"

namespace lambda_esd {

/// Pure-dephasing (T2) rates for the two qubits, Gamma_i = 1/T2_i.
struct DephasingParams {
    double gamma_a = 0.0;
    double gamma_b = 0.0;
};

/// Exact broadband-dephasing evolution: populations are untouched and each
/// coherence is damped by the factor for the qubit(s) it involves, with
/// g_A = exp(-gamma_a t / 2) and g_B = exp(-gamma_b t / 2):
///
///   [  .    g_B   g_A   g_A g_B ]
///   [ g_B    .   g_A g_B  g_A   ]
///   [ g_A  g_A g_B  .     g_B   ]
///   [ g_A g_B g_A  g_B     .    ]
///
/// Equivalent to composing independent phase-damping channels on A and B.
/// Throws NegativeTime or InvalidParams (negative rate).
DensityMatrix dephase(const DensityMatrix& rho0, const DephasingParams& p,
                      double t, const Tolerances& tol = default_tolerances());

/// Closed-form separability distance under equal-rate dephasing of a w=0
/// X state: 2 |z| e^{-gamma t} - 2 sqrt(a d). Throws UnsupportedParams when
/// w != 0 (no closed form is claimed there; use the full pipeline),
/// NegativeTime, or InvalidParams for a negative rate.
double lambda_dephasing_closed(const XStateParams& p0, double gamma, double t,
                               const Tolerances& tol = default_tolerances());

/// When (and whether) the closed-form trajectory reaches zero.
struct EsdTime {
    /// Death time t*; absent when the state stays entangled for all finite
    /// times (a d = 0: asymptotic approach) or when gamma = 0 freezes it.
    std::optional<double> time;
    /// True when the state is already separable at t = 0 (|z| <= sqrt(ad));
    /// then time = 0 as the boundary case.
    bool initially_separable = false;
};

/// Analytic death time for equal-rate dephasing of a w=0 X state:
/// t* = ln(|z| / sqrt(a d)) / gamma when a d > 0 and |z| > sqrt(a d).
/// Throws UnsupportedParams (w != 0) or InvalidParams (gamma < 0).
EsdTime esd_time_dephasing(const XStateParams& p0, double gamma,
                           const Tolerances& tol = default_tolerances());

} // namespace lambda_esd
