// Local diagonal filters on one factor of a bipartite state. The qubit
// filter diag(sqrt(kappa), sqrt(1-kappa)) is postselective: a single Kraus
// operator followed by renormalization. The qutrit filter comes in two
// modes. `channel` applies both operators
//   F1 = diag(1, sqrt(1-Q), sqrt(Q)),  F2 = diag(0, sqrt(Q), sqrt(1-Q)),
// which together are trace-preserving on a 3-level factor; `postselect`
// keeps F1 alone and renormalizes. On a 4-level accelerated factor the
// pair level is either annihilated (discard) or passed through (keep).

#ifndef UFL_FILTERS_HPP
#define UFL_FILTERS_HPP

#include <vector>

#include "ufl/rindler.hpp"
#include "ufl/states.hpp"

namespace ufl {

enum class FilterMode { Postselect, Channel };
enum class PairPolicy { Discard, Keep };

struct FilterSpec {
    Subsystem target = Subsystem::Qubit;
    double strength = 0.5; // kappa for a qubit target, Q for a qutrit target
    FilterMode mode = FilterMode::Postselect;
    PairPolicy pair_policy = PairPolicy::Discard; // relevant only for a 4-level target
};

// Kraus operators acting on a single factor. A postselect set holds one
// operator with spectral norm <= 1; a channel set satisfies
// sum F^dagger F = I to 1e-12 (discard-mode sets on 4 levels excepted,
// where the pair level is deliberately annihilated).
struct KrausSet {
    std::vector<ComplexMatrix> operators;

    std::size_t dim() const { return operators.empty() ? 0 : operators.front().rows(); }
    // Entrywise deviation of sum F^dagger F from the identity.
    double completeness_deviation() const;
};

// diag(sqrt(kappa), sqrt(1-kappa)); requires 0 < kappa < 1.
KrausSet qubit_filter(double kappa);

// factor_dim 3 for an unaccelerated qutrit, 4 for an accelerated one
// (levels 0,U,D,P); requires 0 < q < 1.
KrausSet qutrit_filter(double q, FilterMode mode, PairPolicy pair_policy, std::size_t factor_dim);

// rho' = sum_j G_j rho G_j^dagger / N with G_j = F_j on the target factor
// and identity on the other; N is the pre-normalization trace. Throws
// FilteredToZeroError when N <= 1e-12.
DensityMatrix apply_filter(const DensityMatrix& rho, const FilterSpec& spec);

// The pre-normalization trace N for the same construction.
double filter_success_probability(const DensityMatrix& rho, const FilterSpec& spec);

namespace detail {

// Range-unchecked builders, for probing the closed (kappa, q) boundaries.
KrausSet qubit_filter_unchecked(double kappa);
KrausSet qutrit_filter_unchecked(double q, FilterMode mode, PairPolicy pair_policy,
                                 std::size_t factor_dim);

} // namespace detail

} // namespace ufl

#endif // UFL_FILTERS_HPP
