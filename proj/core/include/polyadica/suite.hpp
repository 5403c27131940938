#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "polyadica/lattice.hpp"
#include "polyadica/squares.hpp"

namespace polyadica {

/// One lattice per isomorphism class whose dual poset has at most `n`
/// points, built as up-set lattices of `all_posets`, smallest first.
std::vector<LatticePtr> small_lattices(std::size_t max_dual_size);

/// homs[i][j] lists every hom lattices[i] → lattices[j].
struct HomTable {
  std::vector<LatticePtr> lattices;
  std::vector<std::vector<std::vector<LatticeHom>>> homs;
};

HomTable make_hom_table(std::vector<LatticePtr> lattices);

/// Every standard-orientation lax square whose corners come from the table.
void for_each_lax_square(const HomTable& t, const std::function<void(const LatticeSquare&)>& visit);

/// A random lax square with corners from the table, either orientation.
/// Rejection sampling; returns after at most `max_tries` draws per call or
/// throws ResourceLimit.
LatticeSquare sample_lax_square(const HomTable& t, std::mt19937_64& rng, std::size_t max_tries = 1u << 20);

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool ok() const { return failures == 0; }
};

/// clup(spec(L)) ≅ L for every lattice with dual size ≤ n, and
/// spec(clup(P)) ≅ P for every poset of size ≤ n.
SuiteResult run_duality_roundtrip(std::size_t max_dual_size);

/// has_interpolation against the raw Beck–Chevalley comparison, and against
/// interpolation of the dual square: exhaustive over corners of dual size
/// ≤ `exhaustive_size`, plus `samples` random squares with corners of dual
/// size ≤ `sample_size`.
SuiteResult run_beck_chevalley(std::size_t exhaustive_size, std::size_t sample_size, std::size_t samples,
                               std::uint64_t seed);
SuiteResult run_selfduality(std::size_t exhaustive_size, std::size_t sample_size, std::size_t samples,
                            std::uint64_t seed);

/// is_frobenius(h) == is_bounded(h_*) == frobenius_reciprocity_holds(h) for
/// every hom between lattices of dual size ≤ n.
SuiteResult run_frobenius(std::size_t max_dual_size);

/// Every pushout of a span of Heyting homs has interpolation, and
/// heyting_pushout_interpolate finds every interpolant.
SuiteResult run_heyting_pushouts(std::size_t max_dual_size);

}  // namespace polyadica
