// Uniform acceleration of one subsystem. The accelerated state is produced
// canonically by a mode-dictionary isometry into (region I) x (region II)
// followed by a partial trace over region II; that construction is trace-
// preserving by theorem. Closed-form coefficient tables for the same states
// are kept alongside: the qubit table agrees with the channel construction
// exactly, while the qutrit table is known to disagree in several entries
// and is retained only as a cross-check target for discrepancy_report.

#ifndef UFL_RINDLER_HPP
#define UFL_RINDLER_HPP

#include <vector>

#include "ufl/states.hpp"

namespace ufl {

enum class Subsystem { Qubit, Qutrit };

// Acceleration mixing angle, tan(r) = exp(-pi*omega*c/a); range [0, pi/4].
class RindlerParameter {
public:
    explicit RindlerParameter(double r);
    double value() const { return r_; }

private:
    double r_;
};

// r = atan(exp(-pi*omega*c/a)). All three physical inputs must be positive.
RindlerParameter rindler_parameter_from_acceleration(double a, double omega, double c);

// Tall matrix mapping one Minkowski factor into (region I) x (region II).
// The constructor enforces V^dagger V = identity to 1e-12 entrywise.
struct Isometry {
    ComplexMatrix matrix;
    std::size_t in_dim;
    DimList out_dims; // {region I dim, region II dim}

    Isometry(ComplexMatrix m, std::size_t in, DimList out);
};

// Qubit dictionary (region-II levels 0,1):
//   |0> -> cos r |0,0> + sin r |1,1>,   |1> -> |1,0>.
Isometry qubit_isometry(const RindlerParameter& r);

// Qutrit dictionary with region-I/II level order (0, U, D, P) = (0,1,2,3):
//   |0>  -> cos^2 r |0,0> + sin r cos r (|U,D> + |D,U>) + sin^2 r |P,P>
//   |U>  -> cos r |U,0> + sin r |P,U>
//   |D>  -> cos r |D,0> - sin r |P,D>.
Isometry qutrit_isometry(const RindlerParameter& r);

// Accelerate one factor of a dims-[2,3] state. which=Qubit keeps dims [2,3];
// which=Qutrit yields dims [2,4] with qutrit levels (0, U, D, P).
DensityMatrix accelerate(const DensityMatrix& rho, Subsystem which, const RindlerParameter& r);

// Closed-form coefficients of the qubit-accelerated state.
struct QubitAccelCoefficients {
    double a1, a2, a3, a4, a5, a6, a7, a8, a9, a10;
    // Sum of the six diagonal entries (a1+a2+a7+a8+a9+a10); 1 for all inputs.
    double diagonal_sum() const { return a1 + a2 + a7 + a8 + a9 + a10; }
};

QubitAccelCoefficients qubit_accel_coefficients(const FamilyParameter& mu, const RindlerParameter& r);

// The dims-[2,3] matrix assembled from the qubit table.
DensityMatrix assemble_qubit_accel_state(const QubitAccelCoefficients& c);

// Closed-form coefficients of the qutrit-accelerated state. No trace
// guarantee: diagonal_sum() genuinely differs from 1 for most inputs.
struct QutritAccelCoefficients {
    double b1, b2, b3, b4, b5, b6, b7, b8;   // diagonal 00,01,02,0P,10,11,12,1P
    double b9, b10, b11, b12;                // lower off-diagonals
    double b13, b14, b15, b16;               // upper mirrors (b13=b9, ...)
    double diagonal_sum() const { return b1 + b2 + b3 + b4 + b5 + b6 + b7 + b8; }
};

QutritAccelCoefficients qutrit_accel_coefficients(const FamilyParameter& mu, const RindlerParameter& r);

// The dims-[2,4] matrix assembled from the qutrit table.
DensityMatrix assemble_qutrit_accel_state(const QutritAccelCoefficients& c);

// Entrywise comparison of the channel-derived accelerated state against the
// closed-form table, one row per element that is nonzero on either side.
struct DiscrepancyRow {
    std::size_t row;
    std::size_t col;
    Complex derived;
    Complex table;
    double abs_diff;
};

struct DiscrepancyReport {
    Subsystem which;
    double mu;
    double r;
    std::vector<DiscrepancyRow> rows;
    double max_abs_diff = 0.0;
    double trace_derived = 0.0;
    double trace_table = 0.0;
    double trace_gap = 0.0; // trace_derived - trace_table

    bool consistent(double tol = 1e-12) const { return max_abs_diff <= tol; }
};

DiscrepancyReport discrepancy_report(const FamilyParameter& mu, const RindlerParameter& r,
                                     Subsystem which);

} // namespace ufl

#endif // UFL_RINDLER_HPP
