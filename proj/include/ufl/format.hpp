#ifndef UFL_FORMAT_HPP
#define UFL_FORMAT_HPP

#include <string>

namespace ufl {

// Shortest decimal string that round-trips to the same double.
std::string format_shortest(double v);

// printf-style %.17g.
std::string format_g17(double v);

// printf-style %.15g (15 significant digits).
std::string format_sig15(double v);

} // namespace ufl

#endif // UFL_FORMAT_HPP
