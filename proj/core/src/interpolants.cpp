#include "polyadica/interpolants.hpp"

#include "polyadica/error.hpp"

namespace polyadica {

std::optional<Elem> find_interpolant(const LatticeSquare& square, Elem b, Elem c) {
  const LatticeSquare s = square.standard();
  if (b >= s.size_b() || c >= s.size_c()) throw InvalidInput("find_interpolant: element out of range");
  if (!s.u.cod()->leq(s.u(b), s.v(c))) {
    throw InvalidInput("find_interpolant: u(b) <= v(c) does not hold");
  }
  for (Elem a = 0; a < s.size_a(); ++a) {
    if (s.f.cod()->leq(b, s.f(a)) && s.g.cod()->leq(s.g(a), c)) return a;
  }
  return std::nullopt;
}

Elem heyting_pushout_interpolate(const LatticeHom& f, const LatticeHom& g, const DlPushout& po,
                                 Elem b, Elem c) {
  if (!preserves_implication(f) || !preserves_implication(g)) {
    throw InvalidInput("heyting_pushout_interpolate: the span is not made of Heyting homs");
  }
  auto s = LatticeSquare::make(f, g, po.u, po.v);
  auto a = find_interpolant(s, b, c);
  if (!a) {
    throw ConsistencyViolation("heyting_pushout_interpolate: no interpolant for ('" +
                               f.cod()->name(b) + "', '" + g.cod()->name(c) + "')");
  }
  return *a;
}

Elem heyting_pushout_interpolate(const LatticeHom& f, const LatticeHom& g, Elem b, Elem c) {
  return heyting_pushout_interpolate(f, g, dl_pushout(f, g), b, c);
}

}  // namespace polyadica
