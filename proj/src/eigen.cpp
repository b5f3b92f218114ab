#include "lambda_esd/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lambda_esd/errors.hpp"

namespace lambda_esd {

namespace {

using std::size_t;

/// Applies the two-sided Jacobi rotation J^dag A J on the (p, q) plane,
/// where the 2x2 block of J is [[c, s], [-s e^{-i phi}, c e^{-i phi}]],
/// and accumulates V <- V J.
void apply_jacobi_rotation(ComplexMatrix& a, ComplexMatrix& v, size_t p, size_t q,
                           double c, double s, double phi) {
    const size_t n = a.rows();
    const Complex eip = std::polar(1.0, phi);
    const Complex eim = std::conj(eip);

    // Right multiplication by J: mixes columns p and q.
    for (size_t i = 0; i < n; ++i) {
        const Complex aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip - s * eim * aiq;
        a(i, q) = s * aip + c * eim * aiq;
        const Complex vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip - s * eim * viq;
        v(i, q) = s * vip + c * eim * viq;
    }
    // Left multiplication by J^dag: mixes rows p and q.
    for (size_t j = 0; j < n; ++j) {
        const Complex apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj - s * eip * aqj;
        a(q, j) = s * apj + c * eip * aqj;
    }
    // The rotation annihilates the (p, q) element by construction; pin the
    // rounded residue to exact zero and the diagonal to the real axis.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

Complex charpoly_eval(const std::array<Complex, 4>& c, Complex x) {
    return (((x + c[0]) * x + c[1]) * x + c[2]) * x + c[3];
}

Complex charpoly_deriv(const std::array<Complex, 4>& c, Complex x) {
    return ((4.0 * x + 3.0 * c[0]) * x + 2.0 * c[1]) * x + c[2];
}

void sort_descending(std::array<Complex, 4>& values) {
    std::sort(values.begin(), values.end(), [](Complex lhs, Complex rhs) {
        if (lhs.real() != rhs.real()) return lhs.real() > rhs.real();
        return lhs.imag() > rhs.imag();
    });
}

/// EISPACK-style balancing: diagonal similarity with powers of two that
/// equalizes row and column norms. Exact (no rounding) and often shaves an
/// order of magnitude off the eigenvalue error of lopsided matrices.
void balance(ComplexMatrix& a) {
    const size_t n = a.rows();
    bool again = true;
    while (again) {
        again = false;
        for (size_t i = 0; i < n; ++i) {
            double col = 0.0, row = 0.0;
            for (size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                col += std::abs(a(j, i));
                row += std::abs(a(i, j));
            }
            if (col == 0.0 || row == 0.0) continue;
            double f = 1.0;
            const double s = col + row;
            while (col < row / 2.0) {
                col *= 2.0;
                row /= 2.0;
                f *= 2.0;
            }
            while (col > row * 2.0) {
                col /= 2.0;
                row *= 2.0;
                f /= 2.0;
            }
            if (f != 1.0 && (col + row) < 0.95 * s) {
                again = true;
                for (size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (in place).
void hessenberg(ComplexMatrix& a) {
    const size_t n = a.rows();
    for (size_t k = 0; k + 2 < n; ++k) {
        // Build the reflector that zeroes column k below the subdiagonal.
        double scale = 0.0;
        for (size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;

        std::vector<Complex> v(n, Complex(0.0, 0.0));
        double norm2 = 0.0;
        for (size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            norm2 += std::norm(v[i]);
        }
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const Complex pivot = v[k + 1];
        const Complex phase =
            (std::abs(pivot) == 0.0) ? Complex(1.0, 0.0) : pivot / std::abs(pivot);
        const Complex alpha = -phase * norm;
        v[k + 1] -= alpha;
        double vnorm2 = 0.0;
        for (size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;

        // A <- (I - 2 v v^dag / |v|^2) A (I - 2 v v^dag / |v|^2)
        for (size_t j = 0; j < n; ++j) { // left
            Complex dot(0.0, 0.0);
            for (size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
            dot *= 2.0 / vnorm2;
            for (size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
        }
        for (size_t i = 0; i < n; ++i) { // right
            Complex dot(0.0, 0.0);
            for (size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            dot *= 2.0 / vnorm2;
            for (size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
        }
        a(k + 1, k) = alpha * scale;
        for (size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to its
/// bottom-right entry.
Complex wilkinson_shift(const ComplexMatrix& h, size_t hi) {
    const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    const Complex c = h(hi, hi - 1), d = h(hi, hi);
    const Complex tr = a + d;
    const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    const Complex l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

struct Givens {
    double c;
    Complex s;
};

/// Rotation G = [[c, s], [-conj(s), c]] (c real) with G [x, y]^T = [r, 0]^T.
Givens make_givens(Complex x, Complex y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ay == 0.0) return {1.0, Complex(0.0, 0.0)};
    if (ax == 0.0) return {0.0, Complex(1.0, 0.0) * (std::conj(y) / ay)};
    const double r = std::hypot(ax, ay);
    const Complex phase = x / ax;
    return {ax / r, std::conj(y) * phase / r};
}

} // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& a, const Tolerances& tol) {
    if (!a.is_square()) throw DimensionMismatch("eig_hermitian: matrix not square");
    if (!a.all_finite()) throw NonFiniteEntry("eig_hermitian: non-finite entry");
    const double defect = a.hermiticity_defect();
    if (defect > 1e-12 && defect > tol.state_validation) {
        throw NotHermitian("eig_hermitian: max |a - a^dagger| entry = " +
                           std::to_string(defect));
    }

    const size_t n = a.rows();
    ComplexMatrix w = a;
    // Work on the exact Hermitian part so the tolerated input defect cannot
    // leak complex parts onto the diagonal.
    for (size_t i = 0; i < n; ++i) {
        w(i, i) = w(i, i).real();
        for (size_t j = i + 1; j < n; ++j) {
            const Complex mean = (w(i, j) + std::conj(w(j, i))) / 2.0;
            w(i, j) = mean;
            w(j, i) = std::conj(mean);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(w.frobenius_norm(), 1e-300);
    const double target = tol.eigen_convergence * scale;
    constexpr int max_sweeps = 100;
    int sweep = 0;
    while (offdiag_norm(w) > target) {
        if (++sweep > max_sweeps) {
            throw ConvergenceFailure("eig_hermitian: off-diagonal norm " +
                                     std::to_string(offdiag_norm(w)) + " after " +
                                     std::to_string(max_sweeps) + " sweeps");
        }
        for (size_t p = 0; p + 1 < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(w(p, q));
                if (r <= tol.eigen_convergence * scale / (double(n) * double(n))) continue;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double phi = std::arg(w(p, q));
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                apply_jacobi_rotation(w, v, p, q, c, t * c, phi);
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
        return w(lhs, lhs).real() > w(rhs, rhs).real();
    });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (size_t k = 0; k < n; ++k) {
        out.values[k] = w(order[k], order[k]).real();
        for (size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::array<Complex, 4> characteristic_polynomial_4(const ComplexMatrix& a) {
    if (a.rows() != 4 || a.cols() != 4) {
        throw DimensionMismatch("characteristic_polynomial_4: matrix must be 4x4");
    }
    // Faddeev-LeVerrier: M_{k+1} = A (M_k + c_k I), c_{k+1} = -tr(M_{k+1})/(k+1).
    const ComplexMatrix eye = ComplexMatrix::identity(4);
    std::array<Complex, 4> c;
    ComplexMatrix m = a;
    c[0] = -m.trace();
    for (int k = 1; k < 4; ++k) {
        m = a * (m + c[k - 1] * eye);
        c[k] = -m.trace() / double(k + 1);
    }
    return c;
}

std::array<Complex, 4> solve_quartic(const std::array<Complex, 4>& c) {
    // Durand-Kerner from staggered points on a circle of the Cauchy bound.
    double bound = 0.0;
    for (const Complex& ck : c) bound = std::max(bound, std::abs(ck));
    const double radius = 1.0 + bound;

    std::array<Complex, 4> x;
    const Complex seed(0.4, 0.9); // standard non-real, non-unit-modulus seed
    Complex acc(1.0, 0.0);
    for (int i = 0; i < 4; ++i) {
        acc *= seed;
        x[i] = radius * acc;
    }

    for (int iter = 0; iter < 200; ++iter) {
        double step = 0.0;
        for (int i = 0; i < 4; ++i) {
            Complex denom(1.0, 0.0);
            for (int j = 0; j < 4; ++j) {
                if (j != i) denom *= x[i] - x[j];
            }
            if (std::abs(denom) == 0.0) {
                // Coincident iterates: nudge apart deterministically.
                x[i] += Complex(1e-8 * radius, 1e-8 * radius);
                continue;
            }
            const Complex dx = charpoly_eval(c, x[i]) / denom;
            x[i] -= dx;
            step = std::max(step, std::abs(dx));
        }
        if (step < 1e-15 * radius) break;
    }

    // Newton polish sharpens simple roots to full precision and is harmless
    // near multiple roots (the step is rejected if it grows the residual).
    for (int i = 0; i < 4; ++i) {
        for (int it = 0; it < 8; ++it) {
            const Complex p = charpoly_eval(c, x[i]);
            const Complex dp = charpoly_deriv(c, x[i]);
            if (std::abs(dp) == 0.0) break;
            const Complex next = x[i] - p / dp;
            if (std::abs(charpoly_eval(c, next)) >= std::abs(p)) break;
            x[i] = next;
        }
    }
    sort_descending(x);
    return x;
}

Eig4Result eig4_general(const ComplexMatrix& a, const Tolerances& tol) {
    if (a.rows() != 4 || a.cols() != 4) {
        throw DimensionMismatch("eig4_general: matrix must be 4x4");
    }
    if (!a.all_finite()) throw NonFiniteEntry("eig4_general: non-finite entry");

    const std::array<Complex, 4> poly = characteristic_polynomial_4(a);

    ComplexMatrix h = a;
    balance(h);
    hessenberg(h);

    const double norm = std::max(h.frobenius_norm(), 1e-300);
    const double deflate_eps = 1e-15;

    std::array<Complex, 4> values{};
    size_t found = 0;
    size_t hi = 3;
    size_t iterations = 0;
    size_t since_deflation = 0;
    bool converged = true;

    while (true) {
        // Deflate converged trailing eigenvalues.
        while (true) {
            if (hi == 0) {
                values[found++] = h(0, 0);
                break;
            }
            const double sub = std::abs(h(hi, hi - 1));
            double diag = std::abs(h(hi - 1, hi - 1)) + std::abs(h(hi, hi));
            if (diag == 0.0) diag = norm;
            if (sub <= deflate_eps * diag) {
                h(hi, hi - 1) = 0.0;
                values[found++] = h(hi, hi);
                --hi;
                since_deflation = 0;
                continue;
            }
            break;
        }
        if (found == 4) break;

        if (iterations++ >= tol.eig4_max_iterations) {
            converged = false;
            break;
        }

        // Wilkinson shift, with an occasional exceptional shift to break
        // the rare stagnation cycles.
        Complex shift = wilkinson_shift(h, hi);
        if (++since_deflation % 15 == 0) {
            shift = h(hi, hi) + Complex(std::abs(h(hi, hi - 1)), 0.0) * 1.5;
        }

        // Find the start of the active unreduced block.
        size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (diag == 0.0) diag = norm;
            if (sub <= deflate_eps * diag) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        // Explicit single-shift QR sweep on the active block: factor
        // H - shift I = Q R by Givens rotations on the subdiagonal, then
        // form R Q + shift I.
        for (size_t i = lo; i <= hi; ++i) h(i, i) -= shift;
        std::vector<Givens> rots;
        rots.reserve(hi - lo);
        for (size_t k = lo; k < hi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rots.push_back(g);
            for (size_t j = k; j < 4; ++j) {
                const Complex top = h(k, j), bot = h(k + 1, j);
                h(k, j) = g.c * top + g.s * bot;
                h(k + 1, j) = -std::conj(g.s) * top + g.c * bot;
            }
            h(k + 1, k) = 0.0;
        }
        for (size_t k = lo; k < hi; ++k) {
            const Givens g = rots[k - lo];
            for (size_t i = 0; i <= std::min<size_t>(k + 1, 3); ++i) {
                const Complex left = h(i, k), right = h(i, k + 1);
                h(i, k) = left * g.c + right * std::conj(g.s);
                h(i, k + 1) = -left * g.s + right * g.c;
            }
        }
        for (size_t i = lo; i <= hi; ++i) h(i, i) += shift;
    }

    Eig4Result out;
    if (converged) {
        out.values = values;
        sort_descending(out.values);
        out.fallback_used = false;
    } else {
        out.values = solve_quartic(poly);
        out.fallback_used = true;
    }
    for (int i = 0; i < 4; ++i) {
        const double mag = std::max(1.0, std::abs(out.values[i]));
        out.residuals[i] = std::abs(charpoly_eval(poly, out.values[i])) / (mag * mag * mag);
    }
    return out;
}

std::complex<double> determinant(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatch("determinant: matrix not square");
    const size_t n = a.rows();
    ComplexMatrix lu = a;
    Complex det(1.0, 0.0);
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        double best = std::abs(lu(k, k));
        for (size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > best) {
                best = std::abs(lu(i, k));
                pivot = i;
            }
        }
        if (best == 0.0) return Complex(0.0, 0.0);
        if (pivot != k) {
            for (size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
            det = -det;
        }
        det *= lu(k, k);
        for (size_t i = k + 1; i < n; ++i) {
            const Complex f = lu(i, k) / lu(k, k);
            for (size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

std::complex<double> det4_cofactor(const ComplexMatrix& a) {
    if (a.rows() != 4 || a.cols() != 4) {
        throw DimensionMismatch("det4_cofactor: matrix must be 4x4");
    }
    const auto minor3 = [&](size_t r, size_t c) {
        size_t rows[3], cols[3], ri = 0, ci = 0;
        for (size_t i = 0; i < 4; ++i)
            if (i != r) rows[ri++] = i;
        for (size_t j = 0; j < 4; ++j)
            if (j != c) cols[ci++] = j;
        return a(rows[0], cols[0]) * (a(rows[1], cols[1]) * a(rows[2], cols[2]) -
                                      a(rows[1], cols[2]) * a(rows[2], cols[1])) -
               a(rows[0], cols[1]) * (a(rows[1], cols[0]) * a(rows[2], cols[2]) -
                                      a(rows[1], cols[2]) * a(rows[2], cols[0])) +
               a(rows[0], cols[2]) * (a(rows[1], cols[0]) * a(rows[2], cols[1]) -
                                      a(rows[1], cols[1]) * a(rows[2], cols[0]));
    };
    Complex det(0.0, 0.0);
    double sign = 1.0;
    for (size_t j = 0; j < 4; ++j) {
        det += sign * a(0, j) * minor3(0, j);
        sign = -sign;
    }
    return det;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& a, double clamp, const Tolerances& tol) {
    const HermitianEigen eig = eig_hermitian(a, tol);
    const size_t n = a.rows();
    ComplexMatrix out(n, n);
    for (size_t k = 0; k < n; ++k) {
        if (eig.values[k] < -tol.psd_floor()) {
            throw NotPositiveSemidefinite("sqrt_psd: eigenvalue " +
                                          std::to_string(eig.values[k]));
        }
        const double root = eig.values[k] <= clamp ? 0.0 : std::sqrt(eig.values[k]);
        if (root == 0.0) continue;
        for (size_t i = 0; i < n; ++i) {
            const Complex vi = eig.vectors(i, k) * root;
            for (size_t j = 0; j < n; ++j) {
                out(i, j) += vi * std::conj(eig.vectors(j, k));
            }
        }
    }
    return out;
}

} // namespace lambda_esd
