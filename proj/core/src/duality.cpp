#include "polyadica/duality.hpp"

#include <algorithm>
#include <map>

#include "polyadica/error.hpp"

namespace polyadica {
namespace {

PosetPtr inclusion_order(const std::vector<Subset>& filters, std::vector<std::string> names) {
  std::vector<Subset> up(filters.size(), Subset(filters.size()));
  for (std::size_t x = 0; x < filters.size(); ++x) {
    for (std::size_t y = 0; y < filters.size(); ++y) {
      if (filters[x].is_subset_of(filters[y])) up[x].set(y);
    }
  }
  return make_poset(FinPoset::from_up_sets(std::move(up), std::move(names)));
}

std::vector<Subset> units_of(const FinDistLattice& l, const std::vector<Subset>& filters) {
  std::vector<Subset> unit(l.size(), Subset(filters.size()));
  for (std::size_t x = 0; x < filters.size(); ++x) {
    for (std::size_t a = filters[x].find_first(); a != Subset::npos; a = filters[x].find_next(a)) {
      unit[a].set(x);
    }
  }
  return unit;
}

Elem point_of_filter(const DualityWitness& w, const Subset& filter) {
  for (Elem x = 0; x < w.filters.size(); ++x) {
    if (w.filters[x] == filter) return x;
  }
  throw ConsistencyViolation("dual_hom: pulled-back filter is not a prime filter");
}

std::string set_name(const FinPoset& p, const Subset& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t x = s.find_first(); x != Subset::npos; x = s.find_next(x)) {
    if (!first) out += ",";
    out += p.name(static_cast<Elem>(x));
    first = false;
  }
  return out + "}";
}

}  // namespace

DualityWitness spec(const LatticePtr& l) {
  const FinDistLattice& L = *l;
  std::vector<Subset> filters;
  std::vector<std::string> names;
  for (Elem j = 0; j < L.size(); ++j) {
    if (!is_join_irreducible(L, j)) continue;
    filters.push_back(L.order()->up(j));
    names.push_back(L.name(j));
  }
  auto space = inclusion_order(filters, std::move(names));
  auto unit = units_of(L, filters);
  return DualityWitness{l, std::move(space), std::move(unit), std::move(filters)};
}

DualityWitness spec_by_homs(const LatticePtr& l) {
  const FinDistLattice& L = *l;
  auto two = make_lattice(FinDistLattice::chain(2));
  std::vector<Subset> filters;
  for (const LatticeHom& x : all_lattice_homs(l, two)) {
    Subset f(L.size());
    for (Elem a = 0; a < L.size(); ++a) {
      if (x(a) == two->top()) f.set(a);
    }
    filters.push_back(std::move(f));
  }
  std::sort(filters.begin(), filters.end(), [&](const Subset& a, const Subset& b) {
    // A prime filter of a finite lattice is ↑ of its least element.
    auto least = [&](const Subset& s) {
      for (std::size_t x = s.find_first(); x != Subset::npos; x = s.find_next(x)) {
        if (s.is_subset_of(L.order()->up(static_cast<Elem>(x)))) return x;
      }
      return Subset::npos;
    };
    return least(a) < least(b);
  });
  std::vector<std::string> names;
  for (const Subset& f : filters) {
    for (std::size_t x = f.find_first(); x != Subset::npos; x = f.find_next(x)) {
      if (f.is_subset_of(L.order()->up(static_cast<Elem>(x)))) {
        names.push_back(L.name(static_cast<Elem>(x)));
        break;
      }
    }
  }
  auto space = inclusion_order(filters, std::move(names));
  auto unit = units_of(L, filters);
  return DualityWitness{l, std::move(space), std::move(unit), std::move(filters)};
}

UpSetLattice clup_with_sets(const PosetPtr& p) {
  std::vector<Subset> sets = p->up_sets();
  const std::size_t n = sets.size();
  std::map<Subset, Elem> index;
  for (Elem i = 0; i < n; ++i) index.emplace(sets[i], i);
  std::vector<Subset> up(n, Subset(n));
  std::vector<std::string> names;
  names.reserve(n);
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = 0; j < n; ++j) {
      if (sets[i].is_subset_of(sets[j])) up[i].set(j);
    }
    names.push_back(set_name(*p, sets[i]));
  }
  std::vector<Elem> meet(n * n), join(n * n);
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = 0; j < n; ++j) {
      meet[i * n + j] = index.at(sets[i] & sets[j]);
      join[i * n + j] = index.at(sets[i] | sets[j]);
    }
  }
  auto order = make_poset(FinPoset::from_up_sets(std::move(up), std::move(names)));
  // up_sets() lists the empty set first and the full set last.
  auto l = make_lattice(FinDistLattice::from_tables(std::move(order), std::move(meet),
                                                    std::move(join), 0, static_cast<Elem>(n - 1)));
  return UpSetLattice{std::move(l), std::move(sets)};
}

LatticePtr clup(const PosetPtr& p) { return clup_with_sets(p).lattice; }

MonotoneMap dual_hom(const LatticeHom& h, const DualityWitness& dom, const DualityWitness& cod) {
  const FinDistLattice& A = *h.dom();
  std::vector<Elem> t(cod.filters.size());
  for (Elem x = 0; x < t.size(); ++x) {
    Subset pulled(A.size());
    for (Elem a = 0; a < A.size(); ++a) {
      if (cod.filters[x].test(h(a))) pulled.set(a);
    }
    t[x] = point_of_filter(dom, pulled);
  }
  return MonotoneMap(cod.space, dom.space, std::move(t));
}

MonotoneMap dual_hom(const LatticeHom& h) {
  return dual_hom(h, spec(h.dom()), spec(h.cod()));
}

bool check_frobenius_bounded(const LatticeHom& h) {
  const bool algebraic = is_frobenius(h);
  const bool dual = is_bounded(dual_hom(h));
  if (algebraic != dual) {
    throw ConsistencyViolation(std::string("Frobenius check disagrees with boundedness of the dual: ") +
                               (algebraic ? "frobenius, not bounded" : "bounded, not frobenius"));
  }
  return algebraic;
}

bool openness_of_dual(const LatticeHom& h) {
  const DualityWitness wa = spec(h.dom());
  const DualityWitness wb = spec(h.cod());
  const MonotoneMap f = dual_hom(h, wa, wb);
  const MonotoneMap l = left_adjoint(h);
  for (Elem b = 0; b < h.cod()->size(); ++b) {
    Subset up = up_closure(*wa.space, f.image(wb.unit[b]));
    if (up != wa.unit[l(b)]) {
      throw ConsistencyViolation("openness_of_dual: left adjoint at '" + h.cod()->name(b) +
                                 "' differs from the up-closure of the direct image");
    }
  }
  const bool lower_semi_open = is_bounded(f);
  if (lower_semi_open != is_frobenius(h)) {
    throw ConsistencyViolation("openness_of_dual: lower semi-openness disagrees with Frobenius");
  }
  return lower_semi_open;
}

DlPushout dl_pushout(const LatticeHom& f, const LatticeHom& g) {
  if (!(*f.dom() == *g.dom())) throw InvalidInput("dl_pushout: the span has two different domains");
  const DualityWitness wa = spec(f.dom());
  const DualityWitness wb = spec(f.cod());
  const DualityWitness wc = spec(g.cod());
  const MonotoneMap fs = dual_hom(f, wa, wb);
  const MonotoneMap gs = dual_hom(g, wa, wc);
  std::vector<std::pair<Elem, Elem>> pairs;
  std::vector<std::string> names;
  for (Elem y = 0; y < wb.space->size(); ++y) {
    for (Elem z = 0; z < wc.space->size(); ++z) {
      if (fs(y) != gs(z)) continue;
      pairs.emplace_back(y, z);
      names.push_back("(" + wb.space->name(y) + "," + wc.space->name(z) + ")");
    }
  }
  const std::size_t n = pairs.size();
  std::vector<Subset> up(n, Subset(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (wb.space->leq(pairs[i].first, pairs[j].first) &&
          wc.space->leq(pairs[i].second, pairs[j].second)) {
        up[i].set(j);
      }
    }
  }
  auto pullback = make_poset(FinPoset::from_up_sets(std::move(up), std::move(names)));
  UpSetLattice d = clup_with_sets(pullback);
  std::map<Subset, Elem> index;
  for (Elem i = 0; i < d.sets.size(); ++i) index.emplace(d.sets[i], i);

  auto leg = [&](const DualityWitness& w, bool first) {
    std::vector<Elem> t(w.lattice->size());
    for (Elem b = 0; b < t.size(); ++b) {
      Subset s(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (w.unit[b].test(first ? pairs[i].first : pairs[i].second)) s.set(i);
      }
      t[b] = index.at(s);
    }
    return LatticeHom(w.lattice, d.lattice, std::move(t));
  };
  LatticeHom u = leg(wb, true);
  LatticeHom v = leg(wc, false);
  return DlPushout{d.lattice, std::move(u), std::move(v), std::move(pullback), std::move(pairs)};
}

}  // namespace polyadica
