#pragma once

#include <utility>
#include <vector>

#include "polyadica/lattice.hpp"
#include "polyadica/order.hpp"

namespace polyadica {

/// A lattice together with its dual poset of prime filters.
///
/// Points are ordered by inclusion of their filters, so x ≤ y iff every
/// element in filter(x) is in filter(y).
struct DualityWitness {
  LatticePtr lattice;
  PosetPtr space;
  std::vector<Subset> unit;     // unit[a] = {x | a ∈ filter(x)}, an up-set of space
  std::vector<Subset> filters;  // filters[x] ⊆ lattice elements
};

/// Prime filters as the principal filters ↑j of join-irreducibles j, listed
/// in increasing element order of j.
DualityWitness spec(const LatticePtr& l);

/// Prime filters as kernels of homomorphisms into 2, found by enumeration.
/// Slower; used to cross-check `spec`.
DualityWitness spec_by_homs(const LatticePtr& l);

/// The lattice of up-sets; element i is `up_sets()[i]` of the poset.
struct UpSetLattice {
  LatticePtr lattice;
  std::vector<Subset> sets;
};

UpSetLattice clup_with_sets(const PosetPtr& p);
LatticePtr clup(const PosetPtr& p);

/// h_*: B_* → A_*, x ↦ x ∘ h, i.e. the filter of x pulled back along h.
MonotoneMap dual_hom(const LatticeHom& h);
MonotoneMap dual_hom(const LatticeHom& h, const DualityWitness& dom, const DualityWitness& cod);

/// is_frobenius(h), after checking it equals is_bounded(dual_hom(h)).
/// Throws ConsistencyViolation on disagreement.
bool check_frobenius_bounded(const LatticeHom& h);

/// Checks that the left adjoint of h equals U ↦ ↑h_*[U] on the dual side,
/// then returns whether h_* is lower semi-open (images of up-sets are
/// up-sets), which must agree with is_frobenius(h). Either failure throws
/// ConsistencyViolation.
bool openness_of_dual(const LatticeHom& h);

/// Pushout of a span in distributive lattices, computed as the up-sets of
/// the pullback {(y, z) | f_*(y) = g_*(z)} ⊆ B_* × C_*.
struct DlPushout {
  LatticePtr d;
  LatticeHom u;  // B → D
  LatticeHom v;  // C → D
  PosetPtr pullback;
  std::vector<std::pair<Elem, Elem>> pairs;  // pullback point → (point of B_*, point of C_*)
};

DlPushout dl_pushout(const LatticeHom& f, const LatticeHom& g);

}  // namespace polyadica
