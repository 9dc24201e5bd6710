#include "ufl/measures.hpp"

#include <algorithm>

#include "ufl/errors.hpp"

namespace ufl {

double negativity(const DensityMatrix& rho) {
    if (rho.dims.size() != 2) throw DimensionError("negativity expects a bipartite state");
    const std::size_t d0 = rho.dims[0];
    const std::size_t d1 = rho.dims[1];
    if (d0 < 2 || d1 < 2) throw DimensionError("negativity requires both factors >= 2 levels");
    const std::size_t transposed = d1 >= d0 ? 1 : 0;
    const std::size_t d_min = std::min(d0, d1);
    const double tn = trace_norm(partial_transpose(rho.matrix, rho.dims, transposed));
    const double value = (tn - 1.0) / static_cast<double>(d_min - 1);
    if (value < 0.0 && value > -1e-12) return 0.0;
    return value;
}

} // namespace ufl
