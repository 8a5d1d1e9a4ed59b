#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace telefid::linalg {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage. The universal numeric carrier for
/// states, projectors and correction unitaries; sized for operators up to the
/// three-particle Hilbert space (27x27), never beyond ~81x81.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    double max_abs() const;
    double frobenius_norm() const;

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;
    bool is_projector(double tol) const;
    bool is_psd(double tol) const;  // defined with the eigensolver

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

/// Tensor product in the standard row-major block convention:
/// (A kron B)[(i,k),(j,l)] = A[i,j] * B[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace telefid::linalg
