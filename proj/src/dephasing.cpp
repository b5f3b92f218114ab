#include "lambda_esd/dephasing.hpp"

#include <cmath>
#include <string>

#include "lambda_esd/errors.hpp"

namespace lambda_esd {

namespace {

void require_rates(const DephasingParams& p) {
    if (!(p.gamma_a >= 0.0) || !(p.gamma_b >= 0.0) || !std::isfinite(p.gamma_a) ||
        !std::isfinite(p.gamma_b)) {
        throw InvalidParams("dephasing rates must be finite and nonnegative");
    }
}

void require_time(double t) {
    if (!std::isfinite(t)) throw InvalidParams("time must be finite");
    if (t < 0.0) throw NegativeTime("time is " + std::to_string(t) + ", expected >= 0");
}

} // namespace

DensityMatrix dephase(const DensityMatrix& rho0, const DephasingParams& p, double t,
                      const Tolerances& tol) {
    require_rates(p);
    require_time(t);
    if (rho0.dim() != 4) {
        throw DimensionMismatch("dephase: state must be two-qubit (4x4)");
    }

    const double ga = std::exp(-p.gamma_a * t / 2.0);
    const double gb = std::exp(-p.gamma_b * t / 2.0);
    // Damping factor for element (i, j): g_A when the A bits of row and
    // column differ, times g_B when the B bits differ. Populations (i == j)
    // are untouched.
    const double factor[4][4] = {
        {1.0, gb, ga, ga * gb},
        {gb, 1.0, ga * gb, ga},
        {ga, ga * gb, 1.0, gb},
        {ga * gb, ga, gb, 1.0},
    };

    ComplexMatrix m = rho0.matrix();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) *= factor[i][j];
    return DensityMatrix(std::move(m), tol);
}

double lambda_dephasing_closed(const XStateParams& p0, double gamma, double t,
                               const Tolerances& tol) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw InvalidParams("dephasing rate must be finite and nonnegative");
    }
    require_time(t);
    const XStateParams q = normalize_x_params(p0, nullptr, tol);
    if (std::abs(q.w) > tol.state_validation) {
        throw UnsupportedParams(
            "closed form covers w = 0 X states only; use the full pipeline");
    }
    return 2.0 * std::abs(q.z) * std::exp(-gamma * t) - 2.0 * std::sqrt(q.a * q.d);
}

EsdTime esd_time_dephasing(const XStateParams& p0, double gamma, const Tolerances& tol) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw InvalidParams("dephasing rate must be finite and nonnegative");
    }
    const XStateParams q = normalize_x_params(p0, nullptr, tol);
    if (std::abs(q.w) > tol.state_validation) {
        throw UnsupportedParams(
            "closed form covers w = 0 X states only; use the full pipeline");
    }

    const double z = std::abs(q.z);
    const double floor = std::sqrt(q.a * q.d);
    EsdTime out;
    if (z <= floor) {
        // On or inside the boundary from the start.
        out.time = 0.0;
        out.initially_separable = true;
        return out;
    }
    if (floor == 0.0 || gamma == 0.0) {
        // Coherence decays toward zero but the boundary sits exactly at
        // zero (or nothing decays at all): no death at finite time.
        return out;
    }
    out.time = std::log(z / floor) / gamma;
    return out;
}

} // namespace lambda_esd
