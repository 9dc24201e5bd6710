// Test-only helpers: an independent eigenvalue/negativity oracle and seeded
// random generators. The oracle deliberately uses a different algorithm from
// the library (classical largest-pivot Jacobi on the 2n x 2n real symmetric
// embedding of a Hermitian matrix) so the two paths cross-check each other.

#ifndef UFL_TESTS_SUPPORT_HPP
#define UFL_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "ufl/numerics.hpp"

namespace ufl::testing {

// Eigenvalues of a Hermitian matrix via the real embedding [[X,-Y],[Y,X]],
// whose spectrum is that of X+iY with every eigenvalue doubled.
inline std::vector<double> oracle_hermitian_eigenvalues(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    const std::size_t n2 = 2 * n;
    std::vector<std::vector<double>> e(n2, std::vector<double>(n2, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double x = m(i, j).real();
            const double y = m(i, j).imag();
            e[i][j] = x;
            e[i][n + j] = -y;
            e[n + i][j] = y;
            e[n + i][n + j] = x;
        }

    // Classical Jacobi: always rotate the largest off-diagonal element.
    for (int iter = 0; iter < 100000; ++iter) {
        std::size_t p = 0, q = 1;
        double big = 0.0;
        for (std::size_t i = 0; i < n2; ++i)
            for (std::size_t j = i + 1; j < n2; ++j)
                if (std::abs(e[i][j]) > big) {
                    big = std::abs(e[i][j]);
                    p = i;
                    q = j;
                }
        if (big < 1e-14) break;

        const double theta = 0.5 * std::atan2(2.0 * e[p][q], e[q][q] - e[p][p]);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        for (std::size_t i = 0; i < n2; ++i) {
            const double eip = e[i][p];
            const double eiq = e[i][q];
            e[i][p] = c * eip - s * eiq;
            e[i][q] = s * eip + c * eiq;
        }
        for (std::size_t j = 0; j < n2; ++j) {
            const double epj = e[p][j];
            const double eqj = e[q][j];
            e[p][j] = c * epj - s * eqj;
            e[q][j] = s * epj + c * eqj;
        }
    }

    std::vector<double> doubled(n2);
    for (std::size_t i = 0; i < n2; ++i) doubled[i] = e[i][i];
    std::sort(doubled.begin(), doubled.end());
    // Collapse the exact doubling: adjacent sorted pairs are the two copies.
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
    return out;
}

// Partial transpose written with flat-index arithmetic rather than nested
// basis loops.
inline ComplexMatrix oracle_partial_transpose(const ComplexMatrix& m, std::size_t da,
                                              std::size_t db, std::size_t factor) {
    const std::size_t n = da * db;
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t a = r / db, b = r % db;
            const std::size_t ap = c / db, bp = c % db;
            const std::size_t rr = factor == 0 ? ap * db + b : a * db + bp;
            const std::size_t cc = factor == 0 ? a * db + bp : ap * db + b;
            out(rr, cc) = m(r, c);
        }
    return out;
}

inline double oracle_trace_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (double lambda : oracle_hermitian_eigenvalues(m)) s += std::abs(lambda);
    return s;
}

// Negativity computed entirely through the oracle path; transposes the
// larger factor, matching the library convention.
inline double oracle_negativity(const ComplexMatrix& m, std::size_t da, std::size_t db) {
    const std::size_t factor = db >= da ? 1 : 0;
    const double tn = oracle_trace_norm(oracle_partial_transpose(m, da, db, factor));
    const double d1 = static_cast<double>(std::min(da, db));
    return (tn - 1.0) / (d1 - 1.0);
}

// -- seeded random generators ------------------------------------------------

inline ComplexMatrix random_complex(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937& rng, std::size_t n) {
    const ComplexMatrix g = random_complex(rng, n, n);
    return (g + g.adjoint()) * Complex(0.5, 0.0);
}

// Random density matrix: G G^dagger normalized to unit trace.
inline ComplexMatrix random_density(std::mt19937& rng, std::size_t n) {
    const ComplexMatrix g = random_complex(rng, n, n);
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    return rho * Complex(1.0 / tr, 0.0);
}

// Random unitary assembled from complex Givens rotations on random planes.
inline ComplexMatrix random_rotation_unitary(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    ComplexMatrix u = ComplexMatrix::identity(n);
    for (std::size_t k = 0; k < 3 * n; ++k) {
        std::size_t p = pick(rng), q = pick(rng);
        if (p == q) continue;
        const double t = angle(rng);
        const double phi = angle(rng);
        ComplexMatrix g = ComplexMatrix::identity(n);
        g(p, p) = std::cos(t);
        g(p, q) = -std::sin(t) * std::exp(Complex(0.0, phi));
        g(q, p) = std::sin(t) * std::exp(Complex(0.0, -phi));
        g(q, q) = std::cos(t);
        u = u * g;
    }
    return u;
}

} // namespace ufl::testing

#endif // UFL_TESTS_SUPPORT_HPP
