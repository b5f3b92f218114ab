#pragma once

#include <cstddef>

namespace lambda_esd {

/// Central numerical tolerances. Every comparison threshold used by the
/// library lives here so tests and callers agree on one set of numbers.
struct Tolerances {
    /// Density-matrix validation: max |rho - rho^dagger| entry, |tr(rho) - 1|.
    /// Overridable at runtime through the LAMBDA_ESD_TOLERANCE environment
    /// variable (see from_environment()).
    double state_validation = 1e-10;

    /// Most-negative eigenvalue a matrix may have and still count as
    /// positive semidefinite. Kept a fixed multiple of state_validation
    /// because eigenvalue error scales with the entry-wise error.
    double psd_floor_factor = 10.0;

    /// Eigensolver convergence: off-diagonal mass (Jacobi) or subdiagonal
    /// entry (QR deflation) below this counts as zero.
    double eigen_convergence = 1e-14;

    /// Hard iteration cap for the 4x4 general eigensolver before it falls
    /// back to characteristic-polynomial root finding.
    std::size_t eig4_max_iterations = 400;

    /// Spin-flip spectrum: eigenvalues of the non-Hermitian product matrix
    /// with imaginary part or negative real part smaller than this are
    /// clamped to the real axis / to zero.
    double zeta_clamp = 1e-9;

    /// ... and above this the matrix is rejected as numerically invalid.
    double zeta_reject = 1e-8;

    /// Root refinement on trajectories: bisection runs until the bracket
    /// or |value| is below this.
    double crossing_refine = 1e-10;

    /// A local minimum of |value| below this counts as touching zero.
    double touch_threshold = 1e-9;

    double psd_floor() const { return psd_floor_factor * state_validation; }

    /// Default tolerances with state_validation taken from the
    /// LAMBDA_ESD_TOLERANCE environment variable when it is set to a
    /// positive real number (silently ignored otherwise).
    static Tolerances from_environment();
};

/// Process-wide tolerance set used by functions that do not take an
/// explicit Tolerances argument. Initialized once via from_environment().
const Tolerances& default_tolerances();

} // namespace lambda_esd
