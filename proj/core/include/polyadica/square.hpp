#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyadica/error.hpp"
#include "polyadica/order.hpp"

namespace polyadica {

/// Which composite of a lax square is the smaller one.
enum class Orientation {
  kUfLeqVg,  ///< u∘f ≤ v∘g
  kVgLeqUf,  ///< v∘g ≤ u∘f
};

/// A lax square
///
///     A --g--> C
///     |        |
///     f        v
///     v        v
///     B --u--> D
///
/// over an ordered-structure map type (`MonotoneMap` or `LatticeHom`). A map
/// type needs `dom()`/`cod()` returning pointers to objects with
/// `size()`/`leq()`, and `operator()(Elem)`.
template <class Map>
struct LaxSquare {
  Map f;  // A → B
  Map g;  // A → C
  Map u;  // B → D
  Map v;  // C → D
  Orientation orientation = Orientation::kUfLeqVg;

  /// Checks that corners match and that lax commutativity holds.
  static LaxSquare make(Map f, Map g, Map u, Map v,
                        Orientation orientation = Orientation::kUfLeqVg);

  /// Reflects the square across its diagonal: swaps B/C, f/g, u/v and
  /// flips the orientation. The corners keep their roles otherwise.
  LaxSquare transposed() const {
    LaxSquare t{g, f, v, u,
                orientation == Orientation::kUfLeqVg ? Orientation::kVgLeqUf
                                                     : Orientation::kUfLeqVg};
    return t;
  }

  /// The same square with orientation u∘f ≤ v∘g.
  LaxSquare standard() const {
    return orientation == Orientation::kUfLeqVg ? *this : transposed();
  }

  std::size_t size_a() const { return f.dom()->size(); }
  std::size_t size_b() const { return f.cod()->size(); }
  std::size_t size_c() const { return g.cod()->size(); }
  std::size_t size_d() const { return u.cod()->size(); }
};

/// Outcome of an interpolation decision. For a standard-oriented square the
/// witness table is indexed by b * |C| + c and holds the least interpolant in
/// canonical order for every pair with u(b) ≤ v(c).
struct InterpolationResult {
  bool holds = true;
  std::vector<std::optional<Elem>> witness;
  std::optional<std::pair<Elem, Elem>> first_failure;  // (b, c)
  std::size_t size_c = 0;

  std::optional<Elem> at(Elem b, Elem c) const { return witness[b * size_c + c]; }
};

namespace detail {

template <class Obj>
bool same_object(const Obj& a, const Obj& b) {
  return a == b;
}

template <class Map>
bool lax_holds(const Map& f, const Map& g, const Map& u, const Map& v, Orientation o) {
  const auto& d = *u.cod();
  for (Elem a = 0; a < f.dom()->size(); ++a) {
    Elem left = u(f(a));
    Elem right = v(g(a));
    bool ok = o == Orientation::kUfLeqVg ? d.leq(left, right) : d.leq(right, left);
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

template <class Map>
LaxSquare<Map> LaxSquare<Map>::make(Map f, Map g, Map u, Map v, Orientation orientation) {
  if (!detail::same_object(*f.dom(), *g.dom())) throw InvalidInput("square: f and g domains differ");
  if (!detail::same_object(*f.cod(), *u.dom())) throw InvalidInput("square: f codomain is not u domain");
  if (!detail::same_object(*g.cod(), *v.dom())) throw InvalidInput("square: g codomain is not v domain");
  if (!detail::same_object(*u.cod(), *v.cod())) throw InvalidInput("square: u and v codomains differ");
  if (!detail::lax_holds(f, g, u, v, orientation)) {
    throw InvalidInput("square: lax commutativity fails");
  }
  return LaxSquare{std::move(f), std::move(g), std::move(u), std::move(v), orientation};
}

/// For all b, c with u(b) ≤ v(c), is there a with b ≤ f(a) and g(a) ≤ c?
/// A square with the other orientation is decided in its standard form.
template <class Map>
InterpolationResult has_interpolation(const LaxSquare<Map>& square) {
  const LaxSquare<Map> s = square.standard();
  const auto& A = *s.f.dom();
  const auto& B = *s.f.cod();
  const auto& C = *s.g.cod();
  const auto& D = *s.u.cod();
  InterpolationResult r;
  r.size_c = C.size();
  r.witness.assign(B.size() * C.size(), std::nullopt);
  for (Elem b = 0; b < B.size(); ++b) {
    for (Elem c = 0; c < C.size(); ++c) {
      if (!D.leq(s.u(b), s.v(c))) continue;
      std::optional<Elem> found;
      for (Elem a = 0; a < A.size(); ++a) {
        if (B.leq(b, s.f(a)) && C.leq(s.g(a), c)) {
          found = a;
          break;
        }
      }
      r.witness[b * C.size() + c] = found;
      if (!found) {
        if (r.holds) r.first_failure = std::make_pair(b, c);
        r.holds = false;
      }
    }
  }
  return r;
}

/// Interpolation for the underlying discrete orders: for all b, c with
/// u(b) = v(c) there is a with f(a) = b and g(a) = c. Decided from the image
/// of A in B × C, independently of `has_interpolation`.
template <class Map>
bool has_amalgamation(const LaxSquare<Map>& square,
                      std::vector<std::pair<Elem, Elem>>* failures = nullptr) {
  const LaxSquare<Map> s = square.standard();
  const std::size_t nb = s.size_b(), nc = s.size_c();
  std::vector<char> realized(nb * nc, 0);
  for (Elem a = 0; a < s.size_a(); ++a) realized[s.f(a) * nc + s.g(a)] = 1;
  bool ok = true;
  for (Elem b = 0; b < nb; ++b) {
    for (Elem c = 0; c < nc; ++c) {
      if (s.u(b) != s.v(c) || realized[b * nc + c]) continue;
      ok = false;
      if (failures) failures->emplace_back(b, c);
    }
  }
  return ok;
}

/// The two weakening relations from B to C of a standard-oriented square:
/// r1 = {(b,c) | ∃a: b ≤ f(a), g(a) ≤ c}, r2 = {(b,c) | u(b) ≤ v(c)}.
struct WeakeningRelations {
  OrderRelation r1;
  OrderRelation r2;
};

}  // namespace polyadica
