#pragma once

#include <cstdint>
#include <random>

#include "lambda_esd/complex_matrix.hpp"
#include "lambda_esd/state.hpp"

namespace lambda_esd {

/// Seeded samplers used by property tests. All draw from one std::mt19937_64
/// so every ensemble is reproducible from its seed.
class StateSampler {
public:
    explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

    /// Full-rank random state rho = G G^dag / tr(G G^dag) with G a 4x4
    /// matrix of standard complex Gaussians (Ginibre ensemble).
    DensityMatrix ginibre();

    /// Haar-ish random pure two-qubit state (Gaussian amplitudes,
    /// normalized). Also exposes the raw amplitudes for analytic oracles.
    std::vector<Complex> pure_amplitudes();

    /// Random product pure state |psi_A> (x) |psi_B>.
    std::vector<Complex> product_amplitudes();

    /// Random valid X-state parameters. With `force_w_zero`, w = 0 (the
    /// family the dephasing closed form covers). With `full_support`, all
    /// of a d > 0, b c > 0, |z| > 0, |w| > 0 are guaranteed.
    XStateParams x_params(bool force_w_zero, bool full_support = false);

    /// Haar-random SU(2) element.
    ComplexMatrix su2();

    /// Random 4x4 complex matrix with entries standard complex Gaussian,
    /// rejected (resampled) until its condition-number estimate is below
    /// `condition_cap`.
    ComplexMatrix general4(double condition_cap);

    std::mt19937_64& rng() { return rng_; }

private:
    Complex gaussian();
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace lambda_esd
