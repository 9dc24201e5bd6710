#include "ufl/rindler.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "ufl/errors.hpp"

namespace ufl {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kIsometryTol = 1e-12;

// Lift an isometry acting on one factor of a bipartite state to the full
// space, appending the region-II factor last. Output index order is
// (region I, other, II) when the first factor is transformed and
// (other, region I, II) otherwise, so the kept factors stay in place.
ComplexMatrix lift_to_bipartite(const Isometry& v, std::size_t other_dim, bool first_factor) {
    const std::size_t d1 = v.out_dims[0];
    const std::size_t d2 = v.out_dims[1];
    const std::size_t in_cols = v.in_dim * other_dim;
    ComplexMatrix w(d1 * other_dim * d2, in_cols);
    for (std::size_t x = 0; x < v.in_dim; ++x) {
        for (std::size_t i = 0; i < d1; ++i) {
            for (std::size_t k = 0; k < d2; ++k) {
                const Complex amp = v.matrix(i * d2 + k, x);
                if (amp == Complex{}) continue;
                for (std::size_t b = 0; b < other_dim; ++b) {
                    const std::size_t row =
                        first_factor ? (i * other_dim + b) * d2 + k : (b * d1 + i) * d2 + k;
                    const std::size_t col = first_factor ? x * other_dim + b : b * v.in_dim + x;
                    w(row, col) = amp;
                }
            }
        }
    }
    return w;
}

} // namespace

RindlerParameter::RindlerParameter(double r) : r_(r) {
    if (!std::isfinite(r) || r < 0.0 || r > kQuarterPi) {
        throw RangeError("acceleration parameter r must lie in [0, pi/4]");
    }
}

RindlerParameter rindler_parameter_from_acceleration(double a, double omega, double c) {
    if (!std::isfinite(a) || a <= 0.0) throw RangeError("acceleration must be positive");
    if (!std::isfinite(omega) || omega <= 0.0) throw RangeError("mode frequency must be positive");
    if (!std::isfinite(c) || c <= 0.0) throw RangeError("speed of light must be positive");
    return RindlerParameter(std::atan(std::exp(-std::numbers::pi * omega * c / a)));
}

Isometry::Isometry(ComplexMatrix m, std::size_t in, DimList out)
    : matrix(std::move(m)), in_dim(in), out_dims(std::move(out)) {
    if (out_dims.size() != 2 || matrix.rows() != out_dims.product() || matrix.cols() != in_dim) {
        throw DimensionError("isometry shape does not match its declared dimensions");
    }
    const ComplexMatrix gram = matrix.adjoint() * matrix;
    const ComplexMatrix id = ComplexMatrix::identity(in_dim);
    if (gram.max_abs_diff(id) > kIsometryTol) {
        throw Error("isometry constraint V^dagger V = I violated");
    }
}

Isometry qubit_isometry(const RindlerParameter& r) {
    const double c = std::cos(r.value());
    const double s = std::sin(r.value());
    ComplexMatrix m(4, 2);
    m(0, 0) = c; // |0,0>
    m(3, 0) = s; // |1,1>
    m(2, 1) = 1; // |1,0>
    return Isometry(std::move(m), 2, DimList{2, 2});
}

Isometry qutrit_isometry(const RindlerParameter& r) {
    const double c = std::cos(r.value());
    const double s = std::sin(r.value());
    ComplexMatrix m(16, 3);
    m(0, 0) = c * c;  // |0,0>
    m(6, 0) = s * c;  // |U,D>
    m(9, 0) = s * c;  // |D,U>
    m(15, 0) = s * s; // |P,P>
    m(4, 1) = c;      // |U,0>
    m(13, 1) = s;     // |P,U>
    m(8, 2) = c;      // |D,0>
    m(14, 2) = -s;    // |P,D>
    return Isometry(std::move(m), 3, DimList{4, 4});
}

DensityMatrix accelerate(const DensityMatrix& rho, Subsystem which, const RindlerParameter& r) {
    if (rho.dims.size() != 2 || rho.dims[0] != 2 || rho.dims[1] != 3) {
        throw DimensionError("accelerate expects a qubit-qutrit state with dims [2,3]");
    }
    const bool first = which == Subsystem::Qubit;
    const Isometry v = first ? qubit_isometry(r) : qutrit_isometry(r);
    const std::size_t other = first ? rho.dims[1] : rho.dims[0];
    const ComplexMatrix w = lift_to_bipartite(v, other, first);
    const ComplexMatrix big = w * rho.matrix * w.adjoint();
    const std::size_t kept = first ? v.out_dims[0] * other : other * v.out_dims[0];
    const ComplexMatrix out = partial_trace(big, DimList{kept, v.out_dims[1]}, 1);
    DimList out_dims = first ? DimList{v.out_dims[0], rho.dims[1]}
                             : DimList{rho.dims[0], v.out_dims[0]};
    return DensityMatrix(out, std::move(out_dims));
}

QubitAccelCoefficients qubit_accel_coefficients(const FamilyParameter& mu,
                                                const RindlerParameter& r) {
    const double w = mu.value() / 2.0;
    const double v = (1.0 - 2.0 * mu.value()) / 2.0;
    const double c = std::cos(r.value());
    const double s = std::sin(r.value());
    QubitAccelCoefficients out{};
    out.a1 = w * c * c;
    out.a2 = w * c * c;
    out.a3 = w * c;
    out.a4 = w * c;
    out.a5 = v * c;
    out.a6 = v * c;
    out.a7 = v * c * c;
    out.a8 = v + w * s * s;
    out.a9 = w + v * s * s;
    out.a10 = w * (1.0 + s * s);
    return out;
}

DensityMatrix assemble_qubit_accel_state(const QubitAccelCoefficients& c) {
    // Basis order 00,01,02,10,11,12.
    ComplexMatrix m(6, 6);
    m(0, 0) = c.a1;
    m(1, 1) = c.a2;
    m(0, 5) = c.a3;
    m(5, 0) = c.a4;
    m(3, 2) = c.a5;
    m(2, 3) = c.a6;
    m(2, 2) = c.a7;
    m(3, 3) = c.a8;
    m(5, 5) = c.a9;
    m(4, 4) = c.a10;
    return DensityMatrix(m, DimList{2, 3});
}

QutritAccelCoefficients qutrit_accel_coefficients(const FamilyParameter& mu,
                                                  const RindlerParameter& r) {
    const double m = mu.value();
    const double w = m / 2.0;
    const double v = (1.0 - 2.0 * m) / 2.0;
    const double c = std::cos(r.value());
    const double s = std::sin(r.value());
    const double sin2r = std::sin(2.0 * r.value());
    QutritAccelCoefficients out{};
    out.b1 = w * c * c * c * c;
    out.b2 = w * c * c * (1.0 + s * s);
    out.b3 = (m / 8.0) * sin2r * sin2r;
    out.b4 = s * s * (w * s * s + v);
    out.b5 = v * c * c * c * c;
    out.b6 = c * c * (w + v * s * s);
    out.b7 = ((1.0 - 2.0 * m) / 8.0) * sin2r * sin2r;
    out.b8 = s * s * (w + v * s * s);
    out.b9 = w * c * c * c;
    out.b10 = (m / 4.0) * sin2r * s;
    out.b11 = v * c * c;
    out.b12 = ((1.0 - 2.0 * m) / 4.0) * sin2r * s;
    out.b13 = out.b9;
    out.b14 = out.b10;
    out.b15 = out.b11;
    out.b16 = out.b12;
    return out;
}

DensityMatrix assemble_qutrit_accel_state(const QutritAccelCoefficients& c) {
    // Basis order 00,01,02,0P,10,11,12,1P with qutrit levels (0,U,D,P).
    ComplexMatrix m(8, 8);
    m(0, 0) = c.b1;
    m(1, 1) = c.b2;
    m(2, 2) = c.b3;
    m(3, 3) = c.b4;
    m(4, 4) = c.b5;
    m(5, 5) = c.b6;
    m(6, 6) = c.b7;
    m(7, 7) = c.b8;
    m(6, 0) = c.b9;  // |12><00|
    m(7, 1) = c.b10; // |1P><01|
    m(2, 4) = c.b11; // |02><10|
    m(3, 5) = c.b12; // |0P><11|
    m(0, 6) = c.b13; // |00><12|
    m(1, 7) = c.b14; // |01><1P|
    m(4, 2) = c.b15; // |10><02|
    m(5, 3) = c.b16; // |11><0P|
    return DensityMatrix(m, DimList{2, 4});
}

DiscrepancyReport discrepancy_report(const FamilyParameter& mu, const RindlerParameter& r,
                                     Subsystem which) {
    const DensityMatrix base = one_param_state(mu);
    const DensityMatrix derived = accelerate(base, which, r);
    const DensityMatrix table =
        which == Subsystem::Qubit
            ? assemble_qubit_accel_state(qubit_accel_coefficients(mu, r))
            : assemble_qutrit_accel_state(qutrit_accel_coefficients(mu, r));

    DiscrepancyReport report;
    report.which = which;
    report.mu = mu.value();
    report.r = r.value();
    report.trace_derived = derived.matrix.trace().real();
    report.trace_table = table.matrix.trace().real();
    report.trace_gap = report.trace_derived - report.trace_table;
    const std::size_t n = derived.matrix.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex d = derived.matrix(i, j);
            const Complex t = table.matrix(i, j);
            if (d == Complex{} && t == Complex{}) continue;
            const double diff = std::abs(d - t);
            report.rows.push_back({i, j, d, t, diff});
            if (diff > report.max_abs_diff) report.max_abs_diff = diff;
        }
    }
    return report;
}

} // namespace ufl
