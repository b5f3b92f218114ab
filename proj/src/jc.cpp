#include "lambda_esd/jc.hpp"

#include <cmath>
#include <string>

#include "lambda_esd/eigen.hpp"
#include "lambda_esd/errors.hpp"

namespace lambda_esd {

namespace {

void require_params(const JCParams& p) {
    if (!(p.g > 0.0) || !std::isfinite(p.g)) {
        throw InvalidParams("coupling g must be finite and positive");
    }
    if (!std::isfinite(p.omega0) || !std::isfinite(p.omega)) {
        throw InvalidParams("frequencies must be finite");
    }
    if (p.n_max < 1) {
        throw InvalidParams("photon truncation n_max must be at least 1");
    }
}

/// Single-pair Hamiltonian on atom (x) mode, dimension 2 (m+1) with index
/// i_atom * (n_max+1) + n: (omega0/2) sz + (g/2)(a^dag s- + s+ a) +
/// omega a^dag a.
ComplexMatrix pair_hamiltonian(const JCParams& p) {
    const std::size_t m = p.n_max + 1;
    ComplexMatrix h(2 * m, 2 * m);
    const auto idx = [m](std::size_t atom, std::size_t n) { return atom * m + n; };
    for (std::size_t n = 0; n < m; ++n) {
        h(idx(0, n), idx(0, n)) += p.omega0 / 2.0;
        h(idx(1, n), idx(1, n)) -= p.omega0 / 2.0;
        h(idx(0, n), idx(0, n)) += p.omega * double(n);
        h(idx(1, n), idx(1, n)) += p.omega * double(n);
    }
    // a^dag s-: |-, n+1><+, n| * sqrt(n+1); s+ a is its adjoint.
    for (std::size_t n = 0; n + 1 < m; ++n) {
        const double amp = p.g / 2.0 * std::sqrt(double(n + 1));
        h(idx(1, n + 1), idx(0, n)) += amp;
        h(idx(0, n), idx(1, n + 1)) += amp;
    }
    return h;
}

} // namespace

ComplexMatrix build_hamiltonian(const JCParams& p) {
    require_params(p);
    const std::size_t m = p.n_max + 1;
    const std::size_t dim = 2 * 2 * m * m;
    const ComplexMatrix hp = pair_hamiltonian(p);

    // Basis index ((iA * 2 + iB) * m + na) * m + nb: pair A-a acts on slots
    // (iA, na), pair B-b on (iB, nb), identity elsewhere.
    const auto idx = [m](std::size_t ia, std::size_t ib, std::size_t na, std::size_t nb) {
        return ((ia * 2 + ib) * m + na) * m + nb;
    };
    ComplexMatrix h(dim, dim);
    for (std::size_t ia = 0; ia < 2; ++ia)
        for (std::size_t ib = 0; ib < 2; ++ib)
            for (std::size_t na = 0; na < m; ++na)
                for (std::size_t nb = 0; nb < m; ++nb) {
                    const std::size_t row = idx(ia, ib, na, nb);
                    for (std::size_t ja = 0; ja < 2; ++ja)
                        for (std::size_t ma = 0; ma < m; ++ma) {
                            const Complex v = hp(ia * m + na, ja * m + ma);
                            if (v != Complex(0.0, 0.0)) {
                                h(row, idx(ja, ib, ma, nb)) += v;
                            }
                        }
                    for (std::size_t jb = 0; jb < 2; ++jb)
                        for (std::size_t mb = 0; mb < m; ++mb) {
                            const Complex v = hp(ib * m + nb, jb * m + mb);
                            if (v != Complex(0.0, 0.0)) {
                                h(row, idx(ia, jb, na, mb)) += v;
                            }
                        }
                }
    return h;
}

JCEvolver::JCEvolver(const JCInitialFamily& init, const JCParams& p, const Tolerances& tol)
    : params_(p), tol_(tol) {
    require_params(p);
    if (!std::isfinite(init.alpha)) throw InvalidParams("alpha must be finite");
    if (init.family != JCFamily::Phi && init.family != JCFamily::Psi) {
        throw InvalidParams("unknown initial family");
    }

    const std::size_t m = p.n_max + 1;
    const std::size_t dim = 2 * 2 * m * m;
    const auto idx = [m](std::size_t ia, std::size_t ib, std::size_t na, std::size_t nb) {
        return ((ia * 2 + ib) * m + na) * m + nb;
    };

    // Both modes start in vacuum; the atoms in the chosen Bell-like
    // superposition.
    std::vector<Complex> psi0(dim, Complex(0.0, 0.0));
    const double ca = std::cos(init.alpha), sa = std::sin(init.alpha);
    if (init.family == JCFamily::Phi) {
        psi0[idx(0, 0, 0, 0)] = ca;
        psi0[idx(1, 1, 0, 0)] = sa;
    } else {
        psi0[idx(0, 1, 0, 0)] = ca;
        psi0[idx(1, 0, 0, 0)] = sa;
    }

    const HermitianEigen eig = eig_hermitian(build_hamiltonian(p), tol);
    energies_ = eig.values;
    modes_ = eig.vectors;
    psi0_modal_.assign(dim, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < dim; ++k) {
        Complex dot(0.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i) dot += std::conj(modes_(i, k)) * psi0[i];
        psi0_modal_[k] = dot;
    }
}

std::vector<Complex> JCEvolver::evolved_vector(double t) const {
    if (!std::isfinite(t)) throw InvalidParams("time must be finite");
    if (t < 0.0) throw NegativeTime("time is " + std::to_string(t) + ", expected >= 0");
    const std::size_t dim = psi0_modal_.size();
    std::vector<Complex> psi(dim, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < dim; ++k) {
        const Complex phase = std::polar(1.0, -energies_[k] * t) * psi0_modal_[k];
        if (phase == Complex(0.0, 0.0)) continue;
        for (std::size_t i = 0; i < dim; ++i) psi[i] += modes_(i, k) * phase;
    }
    return psi;
}

double JCEvolver::evolved_norm(double t) const {
    double norm2 = 0.0;
    for (const Complex& a : evolved_vector(t)) norm2 += std::norm(a);
    return std::sqrt(norm2);
}

DensityMatrix JCEvolver::at(double t) const {
    const std::vector<Complex> psi = evolved_vector(t);
    const std::size_t m = params_.n_max + 1;
    const std::size_t dim = psi.size();

    if (params_.n_max > 1) {
        // Guard runs with extra photon headroom: excitation conservation
        // from vacuum promises the top sector stays empty.
        double leak = 0.0;
        for (std::size_t ia = 0; ia < 2; ++ia)
            for (std::size_t ib = 0; ib < 2; ++ib)
                for (std::size_t na = 0; na < m; ++na)
                    for (std::size_t nb = 0; nb < m; ++nb) {
                        if (na != params_.n_max && nb != params_.n_max) continue;
                        const std::size_t i = ((ia * 2 + ib) * m + na) * m + nb;
                        leak += std::norm(psi[i]);
                    }
        if (leak > 1e-12) {
            throw TruncationLeak("population " + std::to_string(leak) +
                                 " on the n_max photon sector");
        }
    }

    ComplexMatrix full(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) full(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(partial_trace_raw(full, {2, 2, m, m}, {0, 1}), tol_);
}

DensityMatrix simulate(const JCInitialFamily& init, const JCParams& p, double t,
                       const Tolerances& tol) {
    return JCEvolver(init, p, tol).at(t);
}

double lambda_jc_phi(double alpha, double g, double t) {
    const double c = std::cos(g * t / 2.0);
    const double s = std::sin(g * t / 2.0);
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    return c * c * (2.0 * std::abs(ca * sa) - 2.0 * s * s * ca * ca);
}

double lambda_jc_psi(double alpha, double g, double t) {
    const double c = std::cos(g * t / 2.0);
    return std::abs(std::sin(2.0 * alpha)) * c * c;
}

std::optional<double> esd_onset_jc_phi(double alpha, double g) {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw InvalidParams("coupling g must be finite and positive");
    }
    if (!std::isfinite(alpha)) throw InvalidParams("alpha must be finite");
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    if (std::abs(ca) <= std::abs(sa)) return std::nullopt; // includes cos = 0
    // First zero of 2|cos sin| - 2 sin^2(gt/2) cos^2: sin^2(gt/2) = |tan|.
    return 2.0 / g * std::asin(std::sqrt(std::abs(sa / ca)));
}

} // namespace lambda_esd
