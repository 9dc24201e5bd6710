#include "ufl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ufl {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("from_rows: ragged row lengths");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix addition: shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + other.entries_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix subtraction: shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - other.entries_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_) throw DimensionError("matrix product: inner dimension mismatch");
    ComplexMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scalar) const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scalar;
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace: matrix is not square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : entries_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_deviation() const {
    if (!is_square()) throw DimensionError("hermiticity_deviation: matrix is not square");
    double dev = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return dev;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("max_abs_diff: shape mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        d = std::max(d, std::abs(entries_[i] - other.entries_[i]));
    return d;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& v : entries_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

DimList::DimList(std::initializer_list<std::size_t> dims) : dims_(dims) {
    for (std::size_t d : dims_)
        if (d < 1) throw DimensionError("DimList: factor dimension must be >= 1");
}

DimList::DimList(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (std::size_t d : dims_)
        if (d < 1) throw DimensionError("DimList: factor dimension must be >= 1");
}

std::size_t DimList::product() const {
    std::size_t p = 1;
    for (std::size_t d : dims_) p *= d;
    return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

namespace {

void check_bipartite(const ComplexMatrix& m, const DimList& dims, std::size_t factor,
                     const char* op) {
    if (!m.is_square()) throw DimensionError(std::string(op) + ": matrix is not square");
    if (dims.size() != 2) throw DimensionError(std::string(op) + ": dims must have exactly 2 factors");
    if (dims.product() != m.rows())
        throw DimensionError(std::string(op) + ": product of dims " + std::to_string(dims.product()) +
                             " does not match matrix side " + std::to_string(m.rows()));
    if (factor > 1) throw DimensionError(std::string(op) + ": factor index must be 0 or 1");
}

} // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimList& dims, std::size_t traced_factor) {
    check_bipartite(m, dims, traced_factor, "partial_trace");
    const std::size_t da = dims[0];
    const std::size_t db = dims[1];
    if (traced_factor == 1) {
        ComplexMatrix out(da, da);
        for (std::size_t a = 0; a < da; ++a)
            for (std::size_t ap = 0; ap < da; ++ap) {
                Complex s = 0.0;
                for (std::size_t b = 0; b < db; ++b) s += m(a * db + b, ap * db + b);
                out(a, ap) = s;
            }
        return out;
    }
    ComplexMatrix out(db, db);
    for (std::size_t b = 0; b < db; ++b)
        for (std::size_t bp = 0; bp < db; ++bp) {
            Complex s = 0.0;
            for (std::size_t a = 0; a < da; ++a) s += m(a * db + b, a * db + bp);
            out(b, bp) = s;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimList& dims,
                                std::size_t transposed_factor) {
    check_bipartite(m, dims, transposed_factor, "partial_transpose");
    const std::size_t da = dims[0];
    const std::size_t db = dims[1];
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t b = 0; b < db; ++b)
            for (std::size_t ap = 0; ap < da; ++ap)
                for (std::size_t bp = 0; bp < db; ++bp) {
                    if (transposed_factor == 0)
                        out(a * db + b, ap * db + bp) = m(ap * db + b, a * db + bp);
                    else
                        out(a * db + b, ap * db + bp) = m(a * db + bp, ap * db + b);
                }
    return out;
}

namespace {

// One complex Jacobi rotation zeroing A(p,q). A is Hermitian; the rotation
// G is the identity outside rows/columns p,q with the 2x2 block
//   [ c*u  s*u ]
//   [ -s    c  ]
// where u = A(p,q)/|A(p,q)| and (c,s) is the classic symmetric Jacobi pair
// for the phase-stripped block [[a_pp, |a_pq|], [|a_pq|, a_qq]].
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) return;

    const Complex u = apq / abs_apq;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * abs_apq);
    double t;
    if (std::abs(tau) > 1e8) {
        t = 1.0 / (2.0 * tau); // small-angle limit, avoids tau*tau overflow
    } else {
        t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.rows();
    // A <- G^dagger A G, columns first then rows.
    for (std::size_t i = 0; i < n; ++i) {
        const Complex aip = a(i, p);
        const Complex aiq = a(i, q);
        a(i, p) = aip * (c * u) - aiq * s;
        a(i, q) = aip * (s * u) + aiq * c;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Complex apj = a(p, j);
        const Complex aqj = a(q, j);
        a(p, j) = std::conj(c * u) * apj - s * aqj;
        a(q, j) = std::conj(s * u) * apj + c * aqj;
    }
    // Clean the target element and enforce real diagonal.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = Complex(a(p, p).real(), 0.0);
    a(q, q) = Complex(a(q, q).real(), 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const Complex vip = v(i, p);
        const Complex viq = v(i, q);
        v(i, p) = vip * (c * u) - viq * s;
        v(i, q) = vip * (s * u) + viq * c;
    }
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& m) {
    if (!m.is_square()) throw NotHermitianError("eigendecomposition: matrix is not square");
    const double dev = m.hermiticity_deviation();
    if (dev > kHermiticityTol)
        throw NotHermitianError("eigendecomposition: Hermiticity deviation " + std::to_string(dev) +
                                " exceeds tolerance");

    const std::size_t n = m.rows();
    // Work on the symmetrized copy so rotations see an exactly Hermitian matrix.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double fro = m.frobenius_norm();
    const double off_target = 1e-13 * (1.0 + fro);

    bool converged = n <= 1 || off_diagonal_norm(a) <= off_target;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
        converged = off_diagonal_norm(a) <= off_target;
    }
    if (!converged)
        throw ConvergenceError("eigendecomposition: Jacobi did not converge within 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }

    // Residual bound on every reconstructed eigenpair.
    const double residual_tol = 1e-10 * (1.0 + fro);
    for (std::size_t k = 0; k < n; ++k) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex mv = 0.0;
            for (std::size_t j = 0; j < n; ++j) mv += m(i, j) * out.eigenvectors(j, k);
            mv -= out.eigenvalues[k] * out.eigenvectors(i, k);
            r2 += std::norm(mv);
        }
        if (std::sqrt(r2) > residual_tol)
            throw ConvergenceError("eigendecomposition: eigenpair residual " +
                                   std::to_string(std::sqrt(r2)) + " exceeds bound");
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigendecomposition(m).eigenvalues;
}

double trace_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(m)) s += std::abs(lambda);
    return s;
}

} // namespace ufl
