#ifndef UFL_MEASURES_HPP
#define UFL_MEASURES_HPP

#include "ufl/states.hpp"

namespace ufl {

// Negativity of a bipartite state: (||rho^T2||_1 - 1)/(d_min - 1), where the
// partial transpose is taken over the larger factor (the second on a tie).
// Values a hair below zero from eigenvalue roundoff are clamped to 0; range
// [0, 1] for the families considered here.
double negativity(const DensityMatrix& rho);

} // namespace ufl

#endif // UFL_MEASURES_HPP
