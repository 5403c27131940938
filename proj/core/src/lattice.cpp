#include "polyadica/lattice.hpp"

#include "polyadica/error.hpp"
#include "polyadica/squares.hpp"

namespace polyadica {
namespace {

bool is_hom_table(const FinDistLattice& dom, const FinDistLattice& cod, const std::vector<Elem>& t) {
  if (t.size() != dom.size()) return false;
  for (Elem x : t) {
    if (x >= cod.size()) return false;
  }
  if (t[dom.bot()] != cod.bot() || t[dom.top()] != cod.top()) return false;
  for (Elem a = 0; a < dom.size(); ++a) {
    for (Elem b = a + 1; b < dom.size(); ++b) {
      if (t[dom.meet(a, b)] != cod.meet(t[a], t[b])) return false;
      if (t[dom.join(a, b)] != cod.join(t[a], t[b])) return false;
    }
  }
  return true;
}

}  // namespace

FinDistLattice FinDistLattice::from_poset(PosetPtr order) {
  if (!order) throw InvalidInput("lattice: null order");
  const FinPoset& p = *order;
  const std::size_t n = p.size();
  if (n == 0) throw InvalidInput("lattice: a bounded lattice has at least one element");
  auto least_of = [&](const Subset& s) -> std::optional<Elem> {
    for (std::size_t x = s.find_first(); x != Subset::npos; x = s.find_next(x)) {
      if (s.is_subset_of(p.up(static_cast<Elem>(x)))) return static_cast<Elem>(x);
    }
    return std::nullopt;
  };
  auto greatest_of = [&](const Subset& s) -> std::optional<Elem> {
    for (std::size_t x = s.find_first(); x != Subset::npos; x = s.find_next(x)) {
      if (s.is_subset_of(p.down(static_cast<Elem>(x)))) return static_cast<Elem>(x);
    }
    return std::nullopt;
  };
  auto bot = least_of(p.full_subset());
  auto top = greatest_of(p.full_subset());
  if (!bot || !top) throw InvalidInput("lattice: order has no least or no greatest element");
  std::vector<Elem> meet(n * n), join(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      auto m = greatest_of(p.down(a) & p.down(b));
      auto j = least_of(p.up(a) & p.up(b));
      if (!m || !j) {
        throw InvalidInput("lattice: '" + p.name(a) + "' and '" + p.name(b) +
                           "' have no meet or no join");
      }
      meet[a * n + b] = *m;
      join[a * n + b] = *j;
    }
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (meet[a * n + join[b * n + c]] != join[meet[a * n + b] * n + meet[a * n + c]]) {
          throw InvalidInput("lattice: distributivity fails at '" + p.name(a) + "', '" +
                             p.name(b) + "', '" + p.name(c) + "'");
        }
      }
    }
  }
  return from_tables(std::move(order), std::move(meet), std::move(join), *bot, *top);
}

FinDistLattice FinDistLattice::from_tables(PosetPtr order, std::vector<Elem> meet,
                                           std::vector<Elem> join, Elem bot, Elem top) {
  const std::size_t n = order->size();
  if (meet.size() != n * n || join.size() != n * n || bot >= n || top >= n) {
    throw InvalidInput("lattice: table shape mismatch");
  }
  FinDistLattice l;
  l.order_ = std::move(order);
  l.meet_ = std::move(meet);
  l.join_ = std::move(join);
  l.bot_ = bot;
  l.top_ = top;
  return l;
}

FinDistLattice FinDistLattice::chain(std::size_t n) {
  return from_poset(make_poset(FinPoset::chain(n)));
}

LatticePtr make_lattice(FinDistLattice l) {
  return std::make_shared<const FinDistLattice>(std::move(l));
}

// ---------------------------------------------------------------------------

LatticeHom::LatticeHom(LatticePtr dom, LatticePtr cod, std::vector<Elem> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (!dom_ || !cod_) throw InvalidInput("lattice hom: null lattice");
  if (!is_hom_table(*dom_, *cod_, table_)) {
    throw InvalidInput("lattice hom: table does not preserve meet, join, bottom and top");
  }
}

LatticeHom LatticeHom::identity(const LatticePtr& l) {
  std::vector<Elem> t(l->size());
  for (Elem i = 0; i < t.size(); ++i) t[i] = i;
  return LatticeHom(l, l, std::move(t));
}

MonotoneMap LatticeHom::as_monotone() const {
  return MonotoneMap(dom_->order(), cod_->order(), table_);
}

LatticeHom compose(const LatticeHom& first, const LatticeHom& second) {
  if (!(*first.cod() == *second.dom())) throw InvalidInput("compose: homs are not composable");
  std::vector<Elem> t(first.table().size());
  for (Elem a = 0; a < t.size(); ++a) t[a] = second(first(a));
  return LatticeHom(first.dom(), second.cod(), std::move(t));
}

// ---------------------------------------------------------------------------

Elem heyting_implies(const FinDistLattice& l, Elem a, Elem b) {
  Elem acc = l.bot();
  for (Elem c = 0; c < l.size(); ++c) {
    if (l.leq(l.meet(c, a), b)) acc = l.join(acc, c);
  }
  return acc;
}

Elem heyting_negation(const FinDistLattice& l, Elem a) { return heyting_implies(l, a, l.bot()); }

bool is_boolean(const FinDistLattice& l) {
  for (Elem a = 0; a < l.size(); ++a) {
    if (l.join(a, heyting_negation(l, a)) != l.top()) return false;
  }
  return true;
}

bool is_join_irreducible(const FinDistLattice& l, Elem a) {
  if (a == l.bot()) return false;
  // a is join-irreducible iff it has exactly one lower cover, i.e. the join of
  // everything strictly below it is strictly below it.
  Elem below = l.bot();
  for (Elem c = 0; c < l.size(); ++c) {
    if (c != a && l.leq(c, a)) below = l.join(below, c);
  }
  return below != a;
}

Projection projection(const LatticePtr& l, Elem a) {
  const FinPoset& p = *l->order();
  const Subset& down = p.down(a);
  std::vector<Elem> embedding;
  std::vector<Elem> index(l->size(), 0);
  for (std::size_t x = down.find_first(); x != Subset::npos; x = down.find_next(x)) {
    index[x] = static_cast<Elem>(embedding.size());
    embedding.push_back(static_cast<Elem>(x));
  }
  const std::size_t m = embedding.size();
  std::vector<Elem> meet(m * m), join(m * m);
  for (Elem i = 0; i < m; ++i) {
    for (Elem j = 0; j < m; ++j) {
      meet[i * m + j] = index[l->meet(embedding[i], embedding[j])];
      join[i * m + j] = index[l->join(embedding[i], embedding[j])];
    }
  }
  auto sub = make_lattice(FinDistLattice::from_tables(make_poset(p.restrict_to(down)),
                                                      std::move(meet), std::move(join),
                                                      index[l->bot()], index[a]));
  std::vector<Elem> table(l->size());
  for (Elem b = 0; b < l->size(); ++b) table[b] = index[l->meet(a, b)];
  return Projection{sub, LatticeHom(l, sub, std::move(table)), std::move(embedding)};
}

MonotoneMap left_adjoint(const LatticeHom& h) {
  const FinDistLattice& A = *h.dom();
  const FinDistLattice& B = *h.cod();
  std::vector<Elem> t(B.size());
  for (Elem b = 0; b < B.size(); ++b) {
    Elem acc = A.top();
    for (Elem a = 0; a < A.size(); ++a) {
      if (B.leq(b, h(a))) acc = A.meet(acc, a);
    }
    t[b] = acc;
  }
  for (Elem b = 0; b < B.size(); ++b) {
    for (Elem a = 0; a < A.size(); ++a) {
      if (A.leq(t[b], a) != B.leq(b, h(a))) {
        throw ConsistencyViolation("left_adjoint: adjunction law fails for a finite lattice hom");
      }
    }
  }
  return MonotoneMap(B.order(), A.order(), std::move(t));
}

MonotoneMap right_adjoint(const LatticeHom& h) {
  const FinDistLattice& A = *h.dom();
  const FinDistLattice& B = *h.cod();
  std::vector<Elem> t(B.size());
  for (Elem b = 0; b < B.size(); ++b) {
    Elem acc = A.bot();
    for (Elem a = 0; a < A.size(); ++a) {
      if (B.leq(h(a), b)) acc = A.join(acc, a);
    }
    t[b] = acc;
  }
  for (Elem b = 0; b < B.size(); ++b) {
    for (Elem a = 0; a < A.size(); ++a) {
      if (A.leq(a, t[b]) != B.leq(h(a), b)) {
        throw ConsistencyViolation("right_adjoint: adjunction law fails for a finite lattice hom");
      }
    }
  }
  return MonotoneMap(B.order(), A.order(), std::move(t));
}

bool is_frobenius(const LatticeHom& h) {
  for (Elem a = 0; a < h.dom()->size(); ++a) {
    if (!has_interpolation(frobenius_square(h, a)).holds) return false;
  }
  return true;
}

bool frobenius_reciprocity_holds(const LatticeHom& h) {
  const FinDistLattice& A = *h.dom();
  const FinDistLattice& B = *h.cod();
  const MonotoneMap l = left_adjoint(h);
  for (Elem a = 0; a < A.size(); ++a) {
    for (Elem b = 0; b < B.size(); ++b) {
      if (l(B.meet(b, h(a))) != A.meet(l(b), a)) return false;
    }
  }
  return true;
}

bool preserves_implication(const LatticeHom& h) {
  const FinDistLattice& A = *h.dom();
  const FinDistLattice& B = *h.cod();
  for (Elem a = 0; a < A.size(); ++a) {
    for (Elem b = 0; b < A.size(); ++b) {
      if (h(heyting_implies(A, a, b)) != heyting_implies(B, h(a), h(b))) return false;
    }
  }
  return true;
}

std::vector<LatticeHom> all_lattice_homs(const LatticePtr& dom, const LatticePtr& cod) {
  const FinDistLattice& A = *dom;
  const FinDistLattice& B = *cod;
  std::vector<Elem> irreducibles;
  for (Elem a = 0; a < A.size(); ++a) {
    if (is_join_irreducible(A, a)) irreducibles.push_back(a);
  }
  std::vector<LatticeHom> out;
  std::vector<Elem> images(irreducibles.size(), 0);
  auto extend = [&]() {
    std::vector<Elem> t(A.size());
    for (Elem a = 0; a < A.size(); ++a) {
      Elem acc = B.bot();
      for (std::size_t k = 0; k < irreducibles.size(); ++k) {
        if (A.leq(irreducibles[k], a)) acc = B.join(acc, images[k]);
      }
      t[a] = acc;
    }
    if (is_hom_table(A, B, t)) out.emplace_back(dom, cod, std::move(t));
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == irreducibles.size()) {
      extend();
      return;
    }
    for (Elem y = 0; y < B.size(); ++y) {
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        if (A.leq(irreducibles[k], irreducibles[i]) && !B.leq(images[k], y)) ok = false;
        if (A.leq(irreducibles[i], irreducibles[k]) && !B.leq(y, images[k])) ok = false;
      }
      if (!ok) continue;
      images[i] = y;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace polyadica
