#pragma once

#include <cstddef>
#include <vector>

#include "polyadica/order.hpp"

namespace polyadica {

/// A relation on a carrier 0..n-1, as a plain tuple list.
struct TupleRelation {
  std::size_t arity = 0;
  std::vector<std::vector<Elem>> tuples;
};

/// Canonical labeling of a finite relational structure by colour refinement
/// followed by individualization search over the remaining ties.
///
/// Returns `label` with label[old] = new. Relabeling two isomorphic
/// structures with their labelings yields identical tuple sets. `colors`, if
/// given, is an isomorphism-invariant initial partition (smaller colour first).
std::vector<Elem> canonical_labeling(std::size_t n, const std::vector<TupleRelation>& relations,
                                     const std::vector<int>& colors = {});

/// Applies `label` to every tuple and sorts each relation.
std::vector<TupleRelation> relabel(const std::vector<TupleRelation>& relations,
                                   const std::vector<Elem>& label);

}  // namespace polyadica
