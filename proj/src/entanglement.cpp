#include "lambda_esd/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lambda_esd/eigen.hpp"
#include "lambda_esd/errors.hpp"

namespace lambda_esd {

namespace {

void require_two_qubit(const DensityMatrix& rho, const char* op) {
    if (rho.dim() != 4) {
        throw DimensionMismatch(std::string(op) + ": state must be two-qubit (4x4)");
    }
}

const ComplexMatrix& flip_operator() {
    // sy (x) sy: antidiagonal (-1, 1, 1, -1), real.
    static const ComplexMatrix f = kron(pauli_y(), pauli_y());
    return f;
}

LambdaResult assemble(std::array<double, 4> sqrt_eigs, double residual) {
    std::sort(sqrt_eigs.begin(), sqrt_eigs.end(), std::greater<double>());
    LambdaResult out;
    out.sqrt_eigs = sqrt_eigs;
    out.lambda = sqrt_eigs[0] - sqrt_eigs[1] - sqrt_eigs[2] - sqrt_eigs[3];
    out.concurrence = std::max(0.0, out.lambda);
    out.residual = residual;
    return out;
}

} // namespace

ComplexMatrix spin_flip(const DensityMatrix& rho) {
    require_two_qubit(rho, "spin_flip");
    const ComplexMatrix& f = flip_operator();
    return f * rho.matrix().conjugate() * f;
}

ComplexMatrix spin_flip_product(const DensityMatrix& rho) {
    require_two_qubit(rho, "spin_flip_product");
    return rho.matrix() * spin_flip(rho);
}

LambdaResult lambda(const DensityMatrix& rho, const Tolerances& tol) {
    require_two_qubit(rho, "lambda");
    const ComplexMatrix root = sqrt_psd(rho.matrix(), 1e-12, tol);
    const ComplexMatrix k = root * flip_operator() * root.conjugate();

    // Hermitian embedding [[0, K], [K^dag, 0]]: eigenvalues come in +/-
    // singular-value pairs, so the top four are sigma_1 >= ... >= sigma_4.
    ComplexMatrix em(8, 8);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            em(i, 4 + j) = k(i, j);
            em(4 + i, j) = std::conj(k(j, i));
        }
    }
    const HermitianEigen eig = eig_hermitian(em, tol);

    std::array<double, 4> s{};
    double sum_sq = 0.0;
    for (int i = 0; i < 4; ++i) {
        s[i] = std::max(0.0, eig.values[i]);
        sum_sq += s[i] * s[i];
    }
    // tr(K K^dag) equals tr(rho rho~) exactly, so the squares must add up
    // to it; the gap is an honest error estimate for the whole route.
    const double fro = k.frobenius_norm();
    return assemble(s, std::abs(sum_sq - fro * fro));
}

LambdaResult lambda_via_zeta(const DensityMatrix& rho, const Tolerances& tol) {
    require_two_qubit(rho, "lambda_via_zeta");
    const ComplexMatrix zeta = spin_flip_product(rho);
    const Eig4Result eig = eig4_general(zeta, tol);

    std::array<double, 4> s{};
    double worst_im = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Complex v = eig.values[i];
        const double im = std::abs(v.imag());
        worst_im = std::max(worst_im, im);
        if (im > tol.zeta_reject) {
            throw InvalidState("spin-flip product eigenvalue " + std::to_string(v.real()) +
                               (v.imag() >= 0 ? "+" : "") + std::to_string(v.imag()) +
                               "i has imaginary part beyond " +
                               std::to_string(tol.zeta_reject));
        }
        double re = v.real();
        if (re < 0.0) {
            if (re < -tol.zeta_clamp) {
                throw InvalidState("spin-flip product eigenvalue " + std::to_string(re) +
                                   " below the clamp floor -" +
                                   std::to_string(tol.zeta_clamp));
            }
            re = 0.0;
        }
        s[i] = std::sqrt(re);
    }
    return assemble(s, worst_im);
}

double lambda_x_closed(const XStateParams& p, const Tolerances& tol) {
    const XStateParams q = normalize_x_params(p, nullptr, tol);
    return 2.0 * std::max(std::abs(q.z) - std::sqrt(q.a * q.d),
                          std::abs(q.w) - std::sqrt(q.b * q.c));
}

double concurrence(const DensityMatrix& rho, const Tolerances& tol) {
    return lambda(rho, tol).concurrence;
}

double negativity(const DensityMatrix& rho, const Tolerances& tol) {
    const HermitianEigen eig = eig_hermitian(partial_transpose(rho, Subsystem::B), tol);
    return std::max(0.0, -2.0 * eig.values.back());
}

} // namespace lambda_esd
