#pragma once

#include <optional>

#include "polyadica/duality.hpp"
#include "polyadica/squares.hpp"

namespace polyadica {

/// Least a (in element order) with b ≤ f(a) and g(a) ≤ c in the standard
/// form of the square, or nullopt. Throws InvalidInput unless u(b) ≤ v(c).
std::optional<Elem> find_interpolant(const LatticeSquare& s, Elem b, Elem c);

/// The pushout square of a span of Heyting homs and an interpolant for
/// (b, c), found by exhaustive search. Throws InvalidInput if f or g does not
/// preserve implication or if u(b) ≰ v(c), and ConsistencyViolation if no
/// interpolant exists.
Elem heyting_pushout_interpolate(const LatticeHom& f, const LatticeHom& g, Elem b, Elem c);

/// Same, reusing a pushout computed by `dl_pushout(f, g)`.
Elem heyting_pushout_interpolate(const LatticeHom& f, const LatticeHom& g, const DlPushout& po,
                                 Elem b, Elem c);

}  // namespace polyadica
