#ifndef UFL_VERSION_HPP
#define UFL_VERSION_HPP

namespace ufl {

inline constexpr const char* kLibraryName = "unruh-filter-lab";
inline constexpr const char* kVersion = "0.1.0";

} // namespace ufl

#endif // UFL_VERSION_HPP
