#include "lambda_esd/random_states.hpp"

#include <cmath>

#include "lambda_esd/eigen.hpp"

namespace lambda_esd {

Complex StateSampler::gaussian() {
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    return Complex(re, im);
}

DensityMatrix StateSampler::ginibre() {
    ComplexMatrix g(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) g(i, j) = gaussian();
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho = rho * (1.0 / tr);
    return DensityMatrix(std::move(rho));
}

std::vector<Complex> StateSampler::pure_amplitudes() {
    std::vector<Complex> amps(4);
    double norm2 = 0.0;
    for (Complex& a : amps) {
        a = gaussian();
        norm2 += std::norm(a);
    }
    const double norm = std::sqrt(norm2);
    for (Complex& a : amps) a /= norm;
    return amps;
}

std::vector<Complex> StateSampler::product_amplitudes() {
    Complex qa[2], qb[2];
    for (Complex* q : {qa, qb}) {
        q[0] = gaussian();
        q[1] = gaussian();
        const double norm = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
        q[0] /= norm;
        q[1] /= norm;
    }
    return {qa[0] * qb[0], qa[0] * qb[1], qa[1] * qb[0], qa[1] * qb[1]};
}

XStateParams StateSampler::x_params(bool force_w_zero, bool full_support) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    XStateParams p;

    if (full_support) {
        // Populations bounded away from zero so the coherence-to-floor
        // ratios (and with them any death times) stay moderate.
        std::uniform_real_distribution<double> pop(0.05, 1.0);
        double raw[4];
        double sum = 0.0;
        for (double& r : raw) {
            r = pop(rng_);
            sum += r;
        }
        p.a = raw[0] / sum;
        p.b = raw[1] / sum;
        p.c = raw[2] / sum;
        p.d = raw[3] / sum;
    } else {
        // Exponential weights normalized: a flat-ish simplex draw that can
        // reach the boundary (near-zero populations).
        std::exponential_distribution<double> expo(1.0);
        double raw[4];
        double sum = 0.0;
        for (double& r : raw) {
            r = expo(rng_);
            sum += r;
        }
        p.a = raw[0] / sum;
        p.b = raw[1] / sum;
        p.c = raw[2] / sum;
        p.d = raw[3] / sum;
    }

    const double u_lo = full_support ? 0.1 : 0.0;
    std::uniform_real_distribution<double> coh(u_lo, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    p.z = std::polar(coh(rng_) * std::sqrt(p.b * p.c), angle(rng_));
    if (force_w_zero) {
        p.w = Complex(0.0, 0.0);
    } else {
        p.w = std::polar(coh(rng_) * std::sqrt(p.a * p.d), angle(rng_));
    }
    return p;
}

ComplexMatrix StateSampler::su2() {
    // A normalized complex Gaussian pair is uniform on S^3 = SU(2).
    Complex alpha = gaussian(), beta = gaussian();
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= norm;
    beta /= norm;
    ComplexMatrix u(2, 2);
    u(0, 0) = alpha;
    u(0, 1) = -std::conj(beta);
    u(1, 0) = beta;
    u(1, 1) = std::conj(alpha);
    return u;
}

ComplexMatrix StateSampler::general4(double condition_cap) {
    while (true) {
        ComplexMatrix g(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) g(i, j) = gaussian();
        // kappa(G)^2 = largest/smallest eigenvalue of G^dag G.
        const HermitianEigen eig = eig_hermitian(g.adjoint() * g);
        const double low = eig.values.back();
        if (low <= 0.0) continue;
        if (std::sqrt(eig.values.front() / low) <= condition_cap) return g;
    }
}

} // namespace lambda_esd
