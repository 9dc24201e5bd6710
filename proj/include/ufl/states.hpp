// The one-parameter qubit-qutrit family and generic density-matrix checks.

#ifndef UFL_STATES_HPP
#define UFL_STATES_HPP

#include "ufl/numerics.hpp"

namespace ufl {

// Density matrix with its tensor-factor dimensions. Construction only checks
// shape consistency; physical validity is queried through validate_density so
// that deliberately broken matrices can still be inspected.
struct DensityMatrix {
    ComplexMatrix matrix;
    DimList dims;

    DensityMatrix() = default;
    DensityMatrix(ComplexMatrix m, DimList d);
};

// Mixing weight of the family; the admissible range is [0, 1/2].
class FamilyParameter {
public:
    explicit FamilyParameter(double mu);
    double value() const { return mu_; }

private:
    double mu_;
};

struct ValidationReport {
    double hermiticity_deviation = 0.0; // max |rho - rho^dagger| entry
    double trace_deviation = 0.0;       // |tr(rho) - 1|
    double min_eigenvalue = 0.0;        // of the Hermitian part

    bool hermitian_ok() const { return hermiticity_deviation <= 1e-10; }
    bool trace_ok() const { return trace_deviation <= 1e-10; }
    bool positive_ok() const { return min_eigenvalue >= -1e-10; }
    bool pass() const { return hermitian_ok() && trace_ok() && positive_ok(); }
};

// The qubit-qutrit family
//   rho(mu) = (mu/2)(|00><00| + |01><01| + |11><11| + |12><12| + |00><12| + |12><00|)
//           + ((1-2mu)/2)(|02><02| + |10><10| + |02><10| + |10><02|)
// on dims [2,3] with |ab> -> row a*3+b. At mu=0 this is the pure projector
// onto (|02>+|10>)/sqrt(2).
DensityMatrix one_param_state(const FamilyParameter& mu);

// Hermiticity, trace and positivity diagnostics. Never throws; failures are
// carried in the report. For a non-Hermitian input the eigenvalue column
// refers to the Hermitian part (m + m^dagger)/2.
ValidationReport validate_density(const DensityMatrix& rho);

} // namespace ufl

#endif // UFL_STATES_HPP
