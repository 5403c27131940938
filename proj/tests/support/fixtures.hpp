#pragma once

#include <string>
#include <vector>

#include "polyadica/lattice.hpp"
#include "polyadica/order.hpp"

namespace fixtures {

using namespace polyadica;

inline LatticePtr lattice(std::size_t n, std::vector<std::pair<Elem, Elem>> gens, std::vector<std::string> names) {
  return make_lattice(FinDistLattice::from_poset(make_poset(FinPoset::from_generators(n, gens, names))));
}

inline LatticePtr one() { return lattice(1, {}, {"t"}); }
inline LatticePtr two() { return lattice(2, {{0, 1}}, {"0", "1"}); }
// 0 < m < 1
inline LatticePtr chain3() { return lattice(3, {{0, 1}, {1, 2}}, {"0", "m", "1"}); }
// 0 < a, b < 1
inline LatticePtr diamond() { return lattice(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {"0", "a", "b", "1"}); }

// chain3 → 2 with m ↦ 0 (not Frobenius) and m ↦ 1 (Frobenius).
inline LatticeHom collapse_low() { return LatticeHom(chain3(), two(), {0, 0, 1}); }
inline LatticeHom collapse_high() { return LatticeHom(chain3(), two(), {0, 1, 1}); }

// 2 ↪ chain3, 0 ↦ 0, 1 ↦ 1
inline LatticeHom embed_two() { return LatticeHom(two(), chain3(), {0, 2}); }

}  // namespace fixtures
