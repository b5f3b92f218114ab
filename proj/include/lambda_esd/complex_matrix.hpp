#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lambda_esd {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sizes in this library are tiny
/// (4x4 for two-qubit states, up to 36x36 for the cavity simulator),
/// so the implementation favors clarity over blocking tricks.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Bounds-checked access; throws DimensionMismatch on out-of-range.
    Complex& at(std::size_t i, std::size_t j);
    const Complex& at(std::size_t i, std::size_t j) const;

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;
    ComplexMatrix operator*(Complex scalar) const;
    ComplexMatrix operator*(double scalar) const;
    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    Complex trace() const;
    double frobenius_norm() const;
    /// Largest |entry|.
    double max_abs() const;
    /// Largest |A(i,j) - conj(A(j,i))| over all pairs; zero for Hermitian A.
    double hermiticity_defect() const;
    /// True when every entry is finite (no NaN/Inf in either part).
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m);
ComplexMatrix operator*(double scalar, const ComplexMatrix& m);

/// Kronecker product, row-major convention: (A (x) B)(i*p+k, j*q+l) = A(i,j) B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pauli matrices in the basis used throughout: index 0 = |+>, index 1 = |->.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

} // namespace lambda_esd
