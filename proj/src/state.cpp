#include "lambda_esd/state.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lambda_esd/detail/numfmt.hpp"
#include "lambda_esd/eigen.hpp"
#include "lambda_esd/errors.hpp"

namespace lambda_esd {

namespace {

constexpr const char* kTwoQubitBasis = "pp,pm,mp,mm";

} // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) {
        throw DimensionMismatch("density matrix must be square and non-empty");
    }
    if (!m_.all_finite()) {
        throw NonFiniteEntry("density matrix contains a NaN or Inf entry");
    }
    const double defect = m_.hermiticity_defect();
    if (defect > tol.state_validation) {
        throw NotHermitian("density matrix is not Hermitian: max |m - m^dagger| = " +
                           std::to_string(defect));
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.state_validation) {
        throw TraceNotOne("density matrix trace is " + std::to_string(tr.real()) +
                          (tr.imag() >= 0 ? "+" : "") + std::to_string(tr.imag()) +
                          "i, expected 1");
    }
    // Canonicalize to the exact Hermitian part (a no-op for exactly
    // Hermitian input) so downstream algebra sees a real diagonal.
    const std::size_t n = m_.rows();
    for (std::size_t i = 0; i < n; ++i) {
        m_(i, i) = m_(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex mean = (m_(i, j) + std::conj(m_(j, i))) / 2.0;
            m_(i, j) = mean;
            m_(j, i) = std::conj(mean);
        }
    }
    const HermitianEigen eig = eig_hermitian(m_, tol);
    const double min_eig = eig.values.back();
    if (min_eig < -tol.psd_floor()) {
        throw NotPositiveSemidefinite("density matrix has eigenvalue " +
                                      std::to_string(min_eig) +
                                      ", below the positivity floor");
    }
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    const double f = m_.frobenius_norm();
    return f * f;
}

double purity(const DensityMatrix& rho) { return rho.purity(); }

DensityMatrix from_pure(const std::vector<Complex>& amplitudes, const Tolerances& tol) {
    double norm2 = 0.0;
    for (const Complex& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw NonFiniteEntry("pure-state amplitude is not finite");
        }
        norm2 += std::norm(a);
    }
    const double norm = std::sqrt(norm2);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw NotNormalized("pure-state norm is " + std::to_string(norm) +
                            ", expected 1");
    }
    const std::size_t n = amplitudes.size();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
    return DensityMatrix(std::move(m), tol);
}

XStateParams normalize_x_params(const XStateParams& p, bool* renormalized,
                                const Tolerances& tol) {
    if (renormalized) *renormalized = false;
    for (double pop : {p.a, p.b, p.c, p.d}) {
        if (!std::isfinite(pop) || pop < 0.0) {
            throw InvalidXParams("population out of range: " + std::to_string(pop));
        }
    }
    if (!std::isfinite(p.w.real()) || !std::isfinite(p.w.imag()) ||
        !std::isfinite(p.z.real()) || !std::isfinite(p.z.imag())) {
        throw InvalidXParams("coherence is not finite");
    }

    XStateParams q = p;
    const double trace = p.a + p.b + p.c + p.d;
    if (std::abs(trace - 1.0) > 1e-12) {
        if (std::abs(trace - 1.0) > 1e-9 || trace <= 0.0) {
            throw InvalidXParams("populations sum to " + std::to_string(trace) +
                                 ", expected 1");
        }
        q.a /= trace;
        q.b /= trace;
        q.c /= trace;
        q.d /= trace;
        q.w /= trace;
        q.z /= trace;
        if (renormalized) *renormalized = true;
    }

    if (std::norm(q.z) > q.b * q.c + tol.state_validation) {
        throw InvalidXParams("positivity violated: |z|^2 = " + std::to_string(std::norm(q.z)) +
                             " exceeds b*c = " + std::to_string(q.b * q.c));
    }
    if (std::norm(q.w) > q.a * q.d + tol.state_validation) {
        throw InvalidXParams("positivity violated: |w|^2 = " + std::to_string(std::norm(q.w)) +
                             " exceeds a*d = " + std::to_string(q.a * q.d));
    }
    return q;
}

DensityMatrix x_state(const XStateParams& p, bool* renormalized, const Tolerances& tol) {
    const XStateParams q = normalize_x_params(p, renormalized, tol);

    ComplexMatrix m(4, 4);
    m(0, 0) = q.a;
    m(1, 1) = q.b;
    m(2, 2) = q.c;
    m(3, 3) = q.d;
    m(0, 3) = q.w;
    m(3, 0) = std::conj(q.w);
    m(1, 2) = q.z;
    m(2, 1) = std::conj(q.z);
    return DensityMatrix(std::move(m), tol);
}

XStateParams x_params_of(const DensityMatrix& rho, const Tolerances& tol) {
    if (rho.dim() != 4) {
        throw DimensionMismatch("x_params_of: state must be two-qubit (4x4)");
    }
    const ComplexMatrix& m = rho.matrix();
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const bool on_pattern = (i == j) || (i + j == 3);
            if (!on_pattern) worst = std::max(worst, std::abs(m(i, j)));
        }
    }
    if (worst > tol.state_validation) {
        throw InvalidXParams("state is not X-form: off-pattern entry of magnitude " +
                             std::to_string(worst));
    }
    XStateParams p;
    p.a = m(0, 0).real();
    p.b = m(1, 1).real();
    p.c = m(2, 2).real();
    p.d = m(3, 3).real();
    p.w = m(0, 3);
    p.z = m(1, 2);
    return p;
}

ComplexMatrix partial_trace_raw(const ComplexMatrix& m,
                                const std::vector<std::size_t>& dims,
                                const std::vector<std::size_t>& keep) {
    if (!m.is_square()) throw DimensionMismatch("partial_trace: matrix not square");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw DimensionMismatch("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (total != m.rows()) {
        throw DimensionMismatch("partial_trace: subsystem dimensions multiply to " +
                                std::to_string(total) + ", matrix is " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.rows()));
    }
    if (!std::is_sorted(keep.begin(), keep.end()) ||
        std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        throw DimensionMismatch("partial_trace: keep set must be sorted and unique");
    }
    for (std::size_t k : keep) {
        if (k >= dims.size()) {
            throw DimensionMismatch("partial_trace: keep index " + std::to_string(k) +
                                    " out of range");
        }
    }

    const std::size_t nsub = dims.size();
    std::vector<std::size_t> stride(nsub, 1);
    for (std::size_t k = nsub; k-- > 1;) stride[k - 1] = stride[k] * dims[k];

    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < nsub; ++k) {
        if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);
    }
    std::size_t keep_dim = 1, traced_dim = 1;
    for (std::size_t k : keep) keep_dim *= dims[k];
    for (std::size_t k : traced) traced_dim *= dims[k];

    // Base row index for a flat tuple index over the listed subsystems.
    const auto expand = [&](std::size_t flat, const std::vector<std::size_t>& subs) {
        std::size_t base = 0;
        for (std::size_t k = subs.size(); k-- > 0;) {
            const std::size_t sub = subs[k];
            base += (flat % dims[sub]) * stride[sub];
            flat /= dims[sub];
        }
        return base;
    };

    ComplexMatrix out(keep_dim, keep_dim);
    for (std::size_t i = 0; i < keep_dim; ++i) {
        const std::size_t row_keep = expand(i, keep);
        for (std::size_t j = 0; j < keep_dim; ++j) {
            const std::size_t col_keep = expand(j, keep);
            Complex sum(0.0, 0.0);
            for (std::size_t t = 0; t < traced_dim; ++t) {
                const std::size_t off = expand(t, traced);
                sum += m(row_keep + off, col_keep + off);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep,
                            const Tolerances& tol) {
    return DensityMatrix(partial_trace_raw(rho.matrix(), dims, keep), tol);
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
    if (rho.dim() != 4) {
        throw DimensionMismatch("partial_transpose: state must be two-qubit (4x4)");
    }
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix out(4, 4);
    for (std::size_t ia = 0; ia < 2; ++ia)
        for (std::size_t ib = 0; ib < 2; ++ib)
            for (std::size_t ja = 0; ja < 2; ++ja)
                for (std::size_t jb = 0; jb < 2; ++jb) {
                    const std::size_t row = 2 * ia + ib, col = 2 * ja + jb;
                    const std::size_t src_row =
                        which == Subsystem::B ? 2 * ia + jb : 2 * ja + ib;
                    const std::size_t src_col =
                        which == Subsystem::B ? 2 * ja + ib : 2 * ia + jb;
                    out(row, col) = m(src_row, src_col);
                }
    return out;
}

std::string to_json(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw DimensionMismatch("to_json: interchange format is two-qubit only");
    }
    // Hand-rolled writer: %.17g guarantees bit round-trip of every entry,
    // and key order stays stable for byte-deterministic CLI output.
    std::ostringstream os;
    os << "{\n  \"dim\": 4,\n  \"basis\": \"" << kTwoQubitBasis << "\",\n";
    const auto emit_part = [&](const char* key, bool imag) {
        os << "  \"" << key << "\": [";
        for (std::size_t i = 0; i < 4; ++i) {
            os << (i == 0 ? "[" : "            [");
            for (std::size_t j = 0; j < 4; ++j) {
                const Complex v = rho(i, j);
                os << detail::format_significant(imag ? v.imag() : v.real(), 17);
                if (j != 3) os << ", ";
            }
            os << (i == 3 ? "]]" : "],\n");
        }
    };
    emit_part("re", false);
    os << ",\n";
    emit_part("im", true);
    os << "\n}\n";
    return os.str();
}

DensityMatrix density_matrix_from_json(const std::string& text, const Tolerances& tol) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("density-matrix JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("basis") ||
        !j.contains("re") || !j.contains("im")) {
        throw ParseError("density-matrix JSON: need keys dim, basis, re, im");
    }
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() != 4) {
        throw ParseError("density-matrix JSON: dim must be 4");
    }
    if (!j["basis"].is_string() || j["basis"].get<std::string>() != kTwoQubitBasis) {
        throw ParseError(std::string("density-matrix JSON: basis must be \"") +
                         kTwoQubitBasis + "\"");
    }
    ComplexMatrix m(4, 4);
    for (const char* key : {"re", "im"}) {
        const auto& part = j[key];
        if (!part.is_array() || part.size() != 4) {
            throw ParseError(std::string("density-matrix JSON: ") + key +
                             " must be a 4x4 array");
        }
        for (std::size_t i = 0; i < 4; ++i) {
            if (!part[i].is_array() || part[i].size() != 4) {
                throw ParseError(std::string("density-matrix JSON: ") + key +
                                 " must be a 4x4 array");
            }
            for (std::size_t j2 = 0; j2 < 4; ++j2) {
                if (!part[i][j2].is_number()) {
                    throw ParseError(std::string("density-matrix JSON: ") + key +
                                     " entries must be numbers");
                }
                const double v = part[i][j2].get<double>();
                if (key[0] == 'r') {
                    m(i, j2) += Complex(v, 0.0);
                } else {
                    m(i, j2) += Complex(0.0, v);
                }
            }
        }
    }
    return DensityMatrix(std::move(m), tol);
}

void save_json(const DensityMatrix& rho, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << to_json(rho);
    if (!out) throw Error("write to " + path + " failed");
}

DensityMatrix load_json(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path + " for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return density_matrix_from_json(buffer.str(), tol);
}

} // namespace lambda_esd
