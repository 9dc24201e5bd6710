#include "ufl/states.hpp"

#include <cmath>
#include <string>

namespace ufl {

DensityMatrix::DensityMatrix(ComplexMatrix m, DimList d) : matrix(std::move(m)), dims(std::move(d)) {
    if (!matrix.is_square()) throw DimensionError("DensityMatrix: matrix is not square");
    if (dims.product() != matrix.rows())
        throw DimensionError("DensityMatrix: dims product " + std::to_string(dims.product()) +
                             " does not match side " + std::to_string(matrix.rows()));
    if (!matrix.all_finite()) throw RangeError("DensityMatrix: non-finite entries");
}

FamilyParameter::FamilyParameter(double mu) : mu_(mu) {
    if (!(mu >= 0.0 && mu <= 0.5))
        throw RangeError("family parameter mu=" + std::to_string(mu) + " outside [0, 0.5]");
}

DensityMatrix one_param_state(const FamilyParameter& mu) {
    const double w = mu.value() / 2.0;        // weight of the 00/01/11/12 block
    const double v = (1.0 - 2.0 * mu.value()) / 2.0; // weight of the 02/10 block

    ComplexMatrix m(6, 6);
    m(0, 0) = w; // |00><00|
    m(1, 1) = w; // |01><01|
    m(4, 4) = w; // |11><11|
    m(5, 5) = w; // |12><12|
    m(0, 5) = w; // |00><12|
    m(5, 0) = w;
    m(2, 2) = v; // |02><02|
    m(3, 3) = v; // |10><10|
    m(2, 3) = v; // |02><10|
    m(3, 2) = v;
    return DensityMatrix(std::move(m), DimList{2, 3});
}

ValidationReport validate_density(const DensityMatrix& rho) {
    ValidationReport report;
    report.hermiticity_deviation = rho.matrix.hermiticity_deviation();
    report.trace_deviation = std::abs(rho.matrix.trace() - Complex(1.0, 0.0));

    // Positivity is judged on the Hermitian part so the check is defined even
    // when the Hermiticity column already failed.
    const std::size_t n = rho.matrix.rows();
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (rho.matrix(i, j) + std::conj(rho.matrix(j, i)));
    report.min_eigenvalue = hermitian_eigenvalues(h).front();
    return report;
}

} // namespace ufl
