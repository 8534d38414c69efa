#ifndef QHCALC_MAPUTIL_HPP
#define QHCALC_MAPUTIL_HPP

#include "qhcalc/gmodule.hpp"

namespace qhcalc {

// Fixed-order vectorization of a module map's blocks (by source slot order);
// two maps with the same (src, dst, shift) signature vectorize compatibly.
Matrix vectorize_map(const ModuleMap& f);

// coordinates of f in a basis of maps with the same signature
std::optional<Matrix> map_coords(const std::vector<ModuleMap>& basis, const ModuleMap& f);

ModuleMap combo(const std::vector<ModuleMap>& basis, const Matrix& coords,
                const ModulePtr& src, const ModulePtr& dst, int shift);

// u with q ∘ u = h (u: A -> B, q: B -> C, h: A -> C); empty when unsolvable
std::optional<ModuleMap> solve_postcompose(const ModuleMap& q, const ModuleMap& h);
// u with u ∘ j = h (u: B -> C, j: A -> B, h: A -> C); empty when unsolvable
std::optional<ModuleMap> solve_precompose(const ModuleMap& j, const ModuleMap& h);

// reinterpret f: M<s> -> X (degree 0) as a ModuleMap M -> X (of shift -s)
ModuleMap absorb_shift(const ModulePtr& M, const ModuleMap& f, int s);

} // namespace qhcalc

#endif
