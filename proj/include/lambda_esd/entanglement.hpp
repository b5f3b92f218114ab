#pragma once

#include <array>

#include "lambda_esd/complex_matrix.hpp"
#include "lambda_esd/state.hpp"
#include "lambda_esd/tolerances.hpp"

namespace lambda_esd {

/// Spin-flipped state rho~ = (sy (x) sy) rho* (sy (x) sy).
ComplexMatrix spin_flip(const DensityMatrix& rho);

/// The (non-Hermitian) product zeta = rho rho~ whose eigenvalue square
/// roots define the separability distance.
ComplexMatrix spin_flip_product(const DensityMatrix& rho);

struct LambdaResult {
    /// Signed separability distance sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)
    /// with l_i the eigenvalues of rho rho~ in decreasing order. Positive
    /// for entangled states, negative strictly inside the separable set.
    double lambda = 0.0;
    /// max(0, lambda).
    double concurrence = 0.0;
    /// The four square roots, descending, each >= 0.
    std::array<double, 4> sqrt_eigs{};
    /// Numerical self-check. For the Hermitian route: |sum sqrt_eigs_i^2 -
    /// Re tr(rho rho~)| + |Im tr(rho rho~)|. For the direct route: the
    /// largest |imaginary part| clamped away from the eigenvalues.
    double residual = 0.0;
};

/// Separability distance, Hermitian route. With K = sqrt(rho) (sy (x) sy)
/// sqrt(rho)^*, the singular values of K are exactly the sqrt(l_i), because
/// K K^dag = sqrt(rho) rho~ sqrt(rho) is similar to rho rho~. They are
/// computed as the nonnegative eigenvalues of the Hermitian embedding
/// [[0, K], [K^dag, 0]]. Accurate to machine precision even for product
/// states, where rho rho~ itself is defective (nilpotent) and any general
/// eigensolver loses half the available digits.
LambdaResult lambda(const DensityMatrix& rho,
                    const Tolerances& tol = default_tolerances());

/// Separability distance via general 4x4 eigenvalues of rho rho~ directly.
/// Eigenvalues with small negative real part (>= -tol.zeta_clamp) or small
/// |Im| (<= tol.zeta_clamp) are clamped onto the nonnegative real axis;
/// beyond tol.zeta_reject the state is rejected with InvalidState. Kept as
/// an independent cross-check of `lambda`; expect ~1e-8 noise near product
/// states, where the product matrix is defective.
LambdaResult lambda_via_zeta(const DensityMatrix& rho,
                             const Tolerances& tol = default_tolerances());

/// Closed form for X states: 2 max(|z| - sqrt(a d), |w| - sqrt(b c)).
/// Validates the parameters (positivity, trace) like x_state does.
double lambda_x_closed(const XStateParams& p,
                       const Tolerances& tol = default_tolerances());

/// Concurrence C = max(0, lambda(rho).lambda).
double concurrence(const DensityMatrix& rho,
                   const Tolerances& tol = default_tolerances());

/// Negativity N = max(0, -2 * smallest eigenvalue of the partial
/// transpose); zero exactly when a two-qubit state is separable, so this
/// is the independent separability oracle (1 for Bell states).
double negativity(const DensityMatrix& rho,
                  const Tolerances& tol = default_tolerances());

} // namespace lambda_esd
