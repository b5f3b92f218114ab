#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "lambda_esd/complex_matrix.hpp"
#include "lambda_esd/tolerances.hpp"

namespace lambda_esd {

/// Validated density matrix: Hermitian, unit trace, positive semidefinite.
/// The two-qubit basis ordering is fixed everywhere as |++>, |+->, |-+>,
/// |--> with qubit A the left slot; larger matrices appear only as
/// intermediate atom-cavity states.
class DensityMatrix {
public:
    /// Validates and takes ownership. Throws NonFiniteEntry, NotHermitian,
    /// TraceNotOne or NotPositiveSemidefinite, naming the violated
    /// invariant and the offending magnitude.
    explicit DensityMatrix(ComplexMatrix m,
                           const Tolerances& tol = default_tolerances());

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state.
    double purity() const;

private:
    ComplexMatrix m_;
};

/// Free-function spelling of DensityMatrix::purity.
double purity(const DensityMatrix& rho);

/// Rank-one density matrix |psi><psi| from a state vector of dimension 2^n.
/// Throws NotNormalized if the norm is off by more than 1e-12.
DensityMatrix from_pure(const std::vector<Complex>& amplitudes,
                        const Tolerances& tol = default_tolerances());

/// Parameters of an X-form two-qubit state: populations a, b, c, d on the
/// diagonal (|++>, |+->, |-+>, |-->) and the two coherences the X pattern
/// admits: w between |++> and |-->, z between |+-> and |-+>.
///
///         [ a  .  .  w ]
///   rho = [ .  b  z  . ]
///         [ .  z* c  . ]
///         [ w* .  .  d ]
struct XStateParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    Complex w{0.0, 0.0};
    Complex z{0.0, 0.0};
};

/// Validates X-form parameters: populations nonnegative, positivity
/// constraints |z|^2 <= b c and |w|^2 <= a d (to tolerance), trace 1.
/// A trace within 1e-9 of 1 is renormalized (reported through
/// `renormalized` when non-null); violations throw InvalidXParams.
/// Returns the (possibly renormalized) parameters.
XStateParams normalize_x_params(const XStateParams& p, bool* renormalized = nullptr,
                                const Tolerances& tol = default_tolerances());

/// Builds the density matrix for X-form parameters, validated through
/// normalize_x_params plus the full DensityMatrix checks.
DensityMatrix x_state(const XStateParams& p, bool* renormalized = nullptr,
                      const Tolerances& tol = default_tolerances());

/// Reads X-form parameters back out of a density matrix; throws
/// InvalidXParams if entries outside the X pattern exceed tolerance.
XStateParams x_params_of(const DensityMatrix& rho,
                         const Tolerances& tol = default_tolerances());

/// Partial trace over the complement of `keep`. `dims` lists the subsystem
/// dimensions in tensor order (their product must equal rho's dimension);
/// `keep` is the sorted set of subsystem indices to retain. Keeping nothing
/// yields the 1x1 matrix [tr rho] = [1]. Throws DimensionMismatch.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep,
                            const Tolerances& tol = default_tolerances());

/// Same operation on a raw matrix, for callers mid-pipeline that do not
/// want re-validation of intermediate results.
ComplexMatrix partial_trace_raw(const ComplexMatrix& m,
                                const std::vector<std::size_t>& dims,
                                const std::vector<std::size_t>& keep);

enum class Subsystem { A, B };

/// Partial transpose on one qubit of a two-qubit state. The result is
/// Hermitian but in general not PSD, hence a plain matrix.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which);

/// Serializes a density matrix to the interchange JSON format: object with
/// "dim", "basis" (the string "pp,pm,mp,mm" for two qubits), and "re"/"im"
/// as dim x dim row-major arrays of numbers at 17 significant digits.
std::string to_json(const DensityMatrix& rho);

/// Parses the interchange JSON format and validates the result. Throws
/// ParseError on malformed input, the validation errors otherwise.
DensityMatrix density_matrix_from_json(const std::string& text,
                                       const Tolerances& tol = default_tolerances());

/// File wrappers around the JSON (de)serializers.
void save_json(const DensityMatrix& rho, const std::string& path);
DensityMatrix load_json(const std::string& path,
                        const Tolerances& tol = default_tolerances());

} // namespace lambda_esd
