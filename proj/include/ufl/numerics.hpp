// Dense complex linear algebra for small bipartite operators: Kronecker
// products, partial trace/transpose over one tensor factor, Hermitian
// eigenvalues via cyclic Jacobi, and the trace norm. Everything here is a
// pure function over immutable values; matrices are at most a few dozen
// rows, so no attempt is made at blocking or sparsity.

#ifndef UFL_NUMERICS_HPP
#define UFL_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ufl/errors.hpp"

namespace ufl {

using Complex = std::complex<double>;

// Row-major dense complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<Complex>& d);
    // Row-by-row literal, e.g. from_rows({{1, 0}, {0, 1}}).
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;
    ComplexMatrix operator*(Complex scalar) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    Complex trace() const;
    double frobenius_norm() const;
    // Largest |m - m^dagger| entry; 0 for an exactly Hermitian matrix.
    double hermiticity_deviation() const;
    // Largest entrywise |this - other|.
    double max_abs_diff(const ComplexMatrix& other) const;
    bool all_finite() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

// Ordered list of tensor-factor dimensions attached to a square matrix.
class DimList {
public:
    DimList() = default;
    DimList(std::initializer_list<std::size_t> dims);
    explicit DimList(std::vector<std::size_t> dims);

    std::size_t size() const { return dims_.size(); }
    std::size_t operator[](std::size_t i) const { return dims_[i]; }
    std::size_t product() const;

    bool operator==(const DimList& other) const { return dims_ == other.dims_; }

private:
    std::vector<std::size_t> dims_;
};

// Kronecker product; entry ((i*rb+k),(j*cb+l)) = a(i,j)*b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out one factor of a bipartite square matrix. dims must have exactly
// two factors whose product equals the side of m; traced_factor is 0 or 1.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimList& dims, std::size_t traced_factor);

// Transpose one factor of a bipartite square matrix. Involutive.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimList& dims,
                                std::size_t transposed_factor);

struct EigenDecomposition {
    std::vector<double> eigenvalues;   // ascending
    ComplexMatrix eigenvectors;        // column k pairs with eigenvalues[k]
};

// Hermiticity tolerance accepted by the eigensolver (absolute, per entry).
inline constexpr double kHermiticityTol = 1e-10;

// Full eigensystem of a Hermitian matrix by cyclic Jacobi with complex
// rotations. Throws NotHermitianError when the input deviates from Hermitian
// by more than kHermiticityTol, ConvergenceError if 100 sweeps do not reach
// an off-diagonal Frobenius norm of 1e-13*(1+||m||_F) or an eigenpair fails
// its residual bound 1e-10*(1+||m||_F).
EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& m);

// Eigenvalues only, sorted ascending with multiplicity.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

} // namespace ufl

#endif // UFL_NUMERICS_HPP
