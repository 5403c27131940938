#include "polyadica/squares.hpp"

#include "polyadica/duality.hpp"
#include "polyadica/error.hpp"

namespace polyadica {

PosetSquare underlying(const LatticeSquare& s) {
  return PosetSquare{s.f.as_monotone(), s.g.as_monotone(), s.u.as_monotone(), s.v.as_monotone(),
                     s.orientation};
}

LatticeSquare frobenius_square(const LatticeHom& h, Elem a) {
  const Projection pa = projection(h.dom(), a);
  const Projection pb = projection(h.cod(), h(a));
  std::vector<Elem> restricted(pa.embedding.size());
  for (Elem x = 0; x < restricted.size(); ++x) restricted[x] = pb.hom(h(pa.embedding[x]));
  LatticeHom v(pa.lattice, pb.lattice, std::move(restricted));
  return LatticeSquare::make(h, pa.hom, pb.hom, std::move(v));
}

bool beck_chevalley_commutes(const LatticeSquare& square) {
  const LatticeSquare s = square.standard();
  const MonotoneMap lf = left_adjoint(s.f);
  const MonotoneMap lv = left_adjoint(s.v);
  for (Elem b = 0; b < s.size_b(); ++b) {
    if (s.g(lf(b)) != lv(s.u(b))) return false;
  }
  return true;
}

bool beck_chevalley_holds(const LatticeSquare& s) {
  const bool bc = beck_chevalley_commutes(s);
  if (bc != has_interpolation(s).holds) {
    throw ConsistencyViolation("Beck-Chevalley condition disagrees with interpolation");
  }
  return bc;
}

bool strong_interpolation(const LatticeSquare& square) {
  const LatticeSquare s = square.standard();
  const FinDistLattice& A = *s.f.dom();
  const FinDistLattice& B = *s.f.cod();
  const FinDistLattice& C = *s.g.cod();
  const FinDistLattice& D = *s.u.cod();
  for (Elem a = 0; a < A.size(); ++a) {
    for (Elem b = 0; b < B.size(); ++b) {
      const Elem left = s.u(B.meet(b, s.f(a)));
      for (Elem c = 0; c < C.size(); ++c) {
        if (!D.leq(left, s.v(c))) continue;
        bool found = false;
        for (Elem z = 0; z < A.size() && !found; ++z) {
          found = B.leq(b, s.f(z)) && C.leq(s.g(A.meet(z, a)), c);
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

LatticeSquare restricted_square(const LatticeSquare& square, Elem a) {
  const LatticeSquare s = square.standard();
  const Projection pc = projection(s.g.cod(), s.g(a));
  const Projection pd = projection(s.u.cod(), s.u(s.f(a)));
  std::vector<Elem> vt(pc.embedding.size());
  for (Elem c = 0; c < vt.size(); ++c) vt[c] = pd.hom(s.v(pc.embedding[c]));
  LatticeHom v(pc.lattice, pd.lattice, std::move(vt));
  return LatticeSquare::make(s.f, compose(s.g, pc.hom), compose(s.u, pd.hom), std::move(v));
}

PosetSquare dual_square(const LatticeSquare& s) {
  const DualityWitness wa = spec(s.f.dom());
  const DualityWitness wb = spec(s.f.cod());
  const DualityWitness wc = spec(s.g.cod());
  const DualityWitness wd = spec(s.u.cod());
  return PosetSquare::make(dual_hom(s.u, wb, wd), dual_hom(s.v, wc, wd), dual_hom(s.f, wa, wb),
                           dual_hom(s.g, wa, wc), s.orientation);
}

bool check_selfduality(const LatticeSquare& s) {
  const bool here = has_interpolation(s).holds;
  const bool there = has_interpolation(dual_square(s)).holds;
  if (here != there) {
    throw ConsistencyViolation("interpolation of a square disagrees with its dual square");
  }
  return here;
}

WeakeningRelations weakening_relations(const PosetSquare& square) {
  const PosetSquare s = square.standard();
  return WeakeningRelations{
      compose_relations(co_relation_of_map(s.f), relation_of_map(s.g)),
      compose_relations(relation_of_map(s.u), co_relation_of_map(s.v)),
  };
}

}  // namespace polyadica
