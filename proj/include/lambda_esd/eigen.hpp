#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "lambda_esd/complex_matrix.hpp"
#include "lambda_esd/tolerances.hpp"

namespace lambda_esd {

/// Result of the Hermitian eigensolver: real eigenvalues in descending
/// order and the matching orthonormal eigenvectors as columns of `vectors`.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws NotHermitian when the input is not Hermitian within
/// 1e-12 (max entry of |a - a^dagger|), ConvergenceFailure if sweeps stall.
HermitianEigen eig_hermitian(const ComplexMatrix& a,
                             const Tolerances& tol = default_tolerances());

/// Eigenvalues of a general (non-Hermitian) 4x4 complex matrix.
struct Eig4Result {
    std::array<std::complex<double>, 4> values;
    /// Per-eigenvalue residual estimate |p(values[i])| / max(1, |values[i]|)^3
    /// with p the characteristic polynomial; a cheap self-check callers may
    /// inspect.
    std::array<double, 4> residuals;
    /// True when the shifted-QR iteration hit its cap and the result came
    /// from the characteristic-polynomial fallback instead.
    bool fallback_used = false;
};

/// General 4x4 eigenvalues: balancing, Householder reduction to Hessenberg
/// form, then implicitly shifted QR with Givens rotations (Wilkinson
/// shifts). If deflation has not finished after tol.eig4_max_iterations
/// total iterations, falls back to quartic characteristic-polynomial roots.
/// No ordering is guaranteed beyond being deterministic (sorted by
/// descending real part, ties by descending imaginary part).
Eig4Result eig4_general(const ComplexMatrix& a,
                        const Tolerances& tol = default_tolerances());

/// Coefficients c of det(xI - A) = x^4 + c[0] x^3 + c[1] x^2 + c[2] x + c[3]
/// for a 4x4 matrix, via the Faddeev-LeVerrier recurrence.
std::array<std::complex<double>, 4> characteristic_polynomial_4(const ComplexMatrix& a);

/// All four roots of x^4 + c[0] x^3 + c[1] x^2 + c[2] x + c[3] = 0 by
/// Durand-Kerner iteration polished with Newton steps. Deterministic and
/// independent of the QR path, so it doubles as an oracle for it.
std::array<std::complex<double>, 4> solve_quartic(
    const std::array<std::complex<double>, 4>& c);

/// Determinant of a square matrix by partially pivoted LU elimination.
std::complex<double> determinant(const ComplexMatrix& a);

/// Determinant of a 4x4 matrix by explicit cofactor expansion; an
/// independent check on `determinant` and on eig4_general's root product.
std::complex<double> det4_cofactor(const ComplexMatrix& a);

/// Hermitian PSD square root via eigendecomposition; eigenvalues below
/// `clamp` are treated as exact zeros so roundoff never produces NaN.
ComplexMatrix sqrt_psd(const ComplexMatrix& a, double clamp = 1e-12,
                       const Tolerances& tol = default_tolerances());

} // namespace lambda_esd
