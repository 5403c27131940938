#pragma once

#include <vector>

#include "polyadica/lattice.hpp"
#include "polyadica/order.hpp"
#include "polyadica/square.hpp"

namespace polyadica {

using LatticeSquare = LaxSquare<LatticeHom>;
using PosetSquare = LaxSquare<MonotoneMap>;

/// The same square seen on the underlying orders.
PosetSquare underlying(const LatticeSquare& s);

/// The square of the Frobenius condition for h at a:
///
///     A --p_a--> ↓a
///     |          |
///     h          h|
///     v          v
///     B --p_h(a)--> ↓h(a)
///
/// in the layout of `LaxSquare`: f = h, g = p_a, u = p_h(a), v = h restricted.
/// It commutes on the nose.
LatticeSquare frobenius_square(const LatticeHom& h, Elem a);

/// g ∘ ♭f = ♭v ∘ u on B, for the standard form of the square. This is the
/// raw comparison, with no cross-check.
bool beck_chevalley_commutes(const LatticeSquare& s);

/// Like `beck_chevalley_commutes`, but throws ConsistencyViolation if the
/// answer differs from `has_interpolation`.
bool beck_chevalley_holds(const LatticeSquare& s);

/// For all a, b, c with u(b ∧ f(a)) ≤ v(c) there is z with b ≤ f(z) and
/// g(z ∧ a) ≤ c. Decided directly from the quantified statement.
bool strong_interpolation(const LatticeSquare& s);

/// The square whose interpolation at every a is equivalent to the strong
/// property:
///
///     A --g(- ∧ a)--> ↓g(a)
///     |               |
///     f               v(-) ∧ uf(a)
///     v               v
///     B --p_uf(a)∘u--> ↓uf(a)
LatticeSquare restricted_square(const LatticeSquare& s, Elem a);

/// Dualizes every corner and map. With A_*, B_*, ... the dual posets, the
/// result is
///
///     D_* --v_*--> C_*
///     |            |
///     u_*          g_*
///     v            v
///     B_* --f_*--> A_*
///
/// with the same orientation as `s`.
PosetSquare dual_square(const LatticeSquare& s);

/// has_interpolation(s), after checking that the dual square agrees.
/// Throws ConsistencyViolation on disagreement.
bool check_selfduality(const LatticeSquare& s);

/// r1 = co_relation(f) · relation(g) and r2 = relation(u) · co_relation(v)
/// of the standard form.
WeakeningRelations weakening_relations(const PosetSquare& s);

}  // namespace polyadica
