#pragma once

#include <cstddef>
#include <optional>

#include "lambda_esd/complex_matrix.hpp"
#include "lambda_esd/state.hpp"
#include "lambda_esd/tolerances.hpp"

namespace lambda_esd {

/// Parameters of two identical, independent atom-cavity pairs: each a
/// resonant two-level atom exchanging a single excitation with one
/// quantized mode at vacuum Rabi frequency g.
struct JCParams {
    double g = 1.0;       ///< atom-mode coupling (vacuum Rabi frequency)
    double omega0 = 0.0;  ///< atomic transition frequency
    double omega = 0.0;   ///< mode frequency
    std::size_t n_max = 1;///< photon-number truncation per mode

    bool resonant() const { return omega0 == omega; }
};

/// Which one-parameter family of initial two-atom states to evolve, with
/// both cavity modes starting in vacuum:
///   Phi: cos(alpha)|++> + sin(alpha)|-->
///   Psi: cos(alpha)|+-> + sin(alpha)|-+>
enum class JCFamily { Phi, Psi };

struct JCInitialFamily {
    JCFamily family = JCFamily::Phi;
    double alpha = 0.0; ///< superposition angle, radians, [0, 2 pi)
};

/// Full Hamiltonian on the A (x) B (x) mode-a (x) mode-b space with each
/// pair contributing (omega0/2) sz + (g/2)(a^dag s- + s+ a) + omega a^dag a.
/// Dimension 2 * 2 * (n_max+1) * (n_max+1). Throws InvalidParams.
ComplexMatrix build_hamiltonian(const JCParams& p);

/// Evolves the chosen initial family to time t by exact diagonalization of
/// the Hamiltonian and returns the two-atom reduced state (modes traced
/// out). From vacuum, each pair holds at most one excitation, so n_max = 1
/// is exact; running with n_max > 1 additionally asserts that the
/// top-photon-sector population stays below 1e-12 (TruncationLeak
/// otherwise). Throws NegativeTime, InvalidParams.
DensityMatrix simulate(const JCInitialFamily& init, const JCParams& p, double t,
                       const Tolerances& tol = default_tolerances());

/// Same computation with the Hamiltonian diagonalized once up front, for
/// callers that evaluate many times along one trajectory.
class JCEvolver {
public:
    JCEvolver(const JCInitialFamily& init, const JCParams& p,
              const Tolerances& tol = default_tolerances());

    /// Two-atom reduced state at time t (modes traced out).
    DensityMatrix at(double t) const;

    /// Norm of the evolved full state vector; 1 up to roundoff, exposed so
    /// tests can pin the conservation property directly.
    double evolved_norm(double t) const;

private:
    std::vector<Complex> evolved_vector(double t) const;

    JCParams params_;
    Tolerances tol_;
    std::vector<double> energies_;
    ComplexMatrix modes_;             // eigenvectors of H, columns
    std::vector<Complex> psi0_modal_; // initial state in the eigenbasis
};

/// Closed-form separability distance for the evolved Phi family:
/// cos^2(g t / 2) (2 |cos a sin a| - 2 sin^2(g t / 2) cos^2 a).
double lambda_jc_phi(double alpha, double g, double t);

/// Closed-form separability distance for the evolved Psi family:
/// |sin 2a| cos^2(g t / 2); nonnegative for all times.
double lambda_jc_psi(double alpha, double g, double t);

/// First strict sign change of the Phi-family distance:
/// t* = (2/g) arcsin(sqrt(|tan alpha|)) when |tan alpha| < 1 (and the state
/// is entangled at t = 0); absent otherwise -- the |cos a| > |sin a|
/// criterion for sudden death. Throws InvalidParams for g <= 0.
std::optional<double> esd_onset_jc_phi(double alpha, double g);

} // namespace lambda_esd
