#include "ufl/filters.hpp"

#include <cmath>

#include "ufl/errors.hpp"

namespace ufl {

namespace {

constexpr double kZeroTraceTol = 1e-12;

void check_strength(double s, const char* name) {
    if (!std::isfinite(s) || s <= 0.0 || s >= 1.0) {
        throw RangeError(std::string(name) + " must lie strictly inside (0, 1)");
    }
}

// Index of the filtered factor and its dimension, validated against rho.
std::pair<std::size_t, std::size_t> target_factor(const DensityMatrix& rho,
                                                  const FilterSpec& spec) {
    if (rho.dims.size() != 2) throw DimensionError("filtering expects a bipartite state");
    const std::size_t factor = spec.target == Subsystem::Qubit ? 0 : 1;
    const std::size_t dim = rho.dims[factor];
    if (spec.target == Subsystem::Qubit && dim != 2) {
        throw DimensionError("qubit filter requires a 2-level first factor");
    }
    if (spec.target == Subsystem::Qutrit && dim != 3 && dim != 4) {
        throw DimensionError("qutrit filter requires a 3- or 4-level second factor");
    }
    return {factor, dim};
}

KrausSet build_filter(const FilterSpec& spec, std::size_t factor_dim) {
    if (spec.target == Subsystem::Qubit) return qubit_filter(spec.strength);
    return qutrit_filter(spec.strength, spec.mode, spec.pair_policy, factor_dim);
}

// sum_j G_j rho G_j^dagger with G_j acting on one factor.
ComplexMatrix apply_kraus_on_factor(const DensityMatrix& rho, const KrausSet& ops,
                                    std::size_t factor) {
    const ComplexMatrix id_other = ComplexMatrix::identity(rho.dims[factor == 0 ? 1 : 0]);
    ComplexMatrix acc(rho.matrix.rows(), rho.matrix.cols());
    for (const ComplexMatrix& f : ops.operators) {
        const ComplexMatrix g = factor == 0 ? kron(f, id_other) : kron(id_other, f);
        acc = acc + g * rho.matrix * g.adjoint();
    }
    return acc;
}

} // namespace

double KrausSet::completeness_deviation() const {
    if (operators.empty()) return 1.0;
    const std::size_t d = operators.front().cols();
    ComplexMatrix sum(d, d);
    for (const ComplexMatrix& f : operators) sum = sum + f.adjoint() * f;
    return sum.max_abs_diff(ComplexMatrix::identity(d));
}

KrausSet qubit_filter(double kappa) {
    check_strength(kappa, "kappa");
    return detail::qubit_filter_unchecked(kappa);
}

KrausSet qutrit_filter(double q, FilterMode mode, PairPolicy pair_policy,
                       std::size_t factor_dim) {
    check_strength(q, "Q");
    if (factor_dim != 3 && factor_dim != 4) {
        throw DimensionError("qutrit filter factor dimension must be 3 or 4");
    }
    return detail::qutrit_filter_unchecked(q, mode, pair_policy, factor_dim);
}

DensityMatrix apply_filter(const DensityMatrix& rho, const FilterSpec& spec) {
    const auto [factor, dim] = target_factor(rho, spec);
    const KrausSet ops = build_filter(spec, dim);
    const ComplexMatrix acc = apply_kraus_on_factor(rho, ops, factor);
    const double n = acc.trace().real();
    if (n <= kZeroTraceTol) {
        throw FilteredToZeroError("filter annihilated the state (success probability ~ 0)");
    }
    return DensityMatrix(acc * Complex(1.0 / n, 0.0), rho.dims);
}

double filter_success_probability(const DensityMatrix& rho, const FilterSpec& spec) {
    const auto [factor, dim] = target_factor(rho, spec);
    const KrausSet ops = build_filter(spec, dim);
    return apply_kraus_on_factor(rho, ops, factor).trace().real();
}

namespace detail {

KrausSet qubit_filter_unchecked(double kappa) {
    return KrausSet{{ComplexMatrix::diagonal({std::sqrt(kappa), std::sqrt(1.0 - kappa)})}};
}

KrausSet qutrit_filter_unchecked(double q, FilterMode mode, PairPolicy pair_policy,
                                 std::size_t factor_dim) {
    const double rq = std::sqrt(q);
    const double rc = std::sqrt(1.0 - q);
    std::vector<Complex> f1{1.0, rc, rq};
    std::vector<Complex> f2{0.0, rq, rc};
    if (factor_dim == 4) {
        f1.push_back(pair_policy == PairPolicy::Keep ? 1.0 : 0.0);
        f2.push_back(0.0);
    }
    KrausSet out;
    out.operators.push_back(ComplexMatrix::diagonal(f1));
    if (mode == FilterMode::Channel) out.operators.push_back(ComplexMatrix::diagonal(f2));
    return out;
}

} // namespace detail

} // namespace ufl
