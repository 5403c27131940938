#include "polyadica/order.hpp"

#include <algorithm>
#include <set>

#include "polyadica/canonical.hpp"
#include "polyadica/error.hpp"

namespace polyadica {
namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return names;
}

void check_names(std::vector<std::string>& names, std::size_t n) {
  if (names.empty()) {
    names = default_names(n);
    return;
  }
  if (names.size() != n) throw InvalidInput("poset: name list does not match element count");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw InvalidInput("poset: duplicate element name");
}

bool lex_less(const Subset& a, const Subset& b) {
  // Lower indices are more significant, so {0} sorts before {1}.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.test(i) != b.test(i)) return a.test(i);
  }
  return false;
}

}  // namespace

FinPoset FinPoset::from_generators(std::size_t n,
                                   const std::vector<std::pair<Elem, Elem>>& generators,
                                   std::vector<std::string> names) {
  std::vector<Subset> up(n, Subset(n));
  for (std::size_t i = 0; i < n; ++i) up[i].set(i);
  for (auto [a, b] : generators) {
    if (a >= n || b >= n) throw InvalidInput("poset: unknown element id in generator");
    up[a].set(b);
  }
  // Warshall closure over rows.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (up[i].test(k)) up[i] |= up[k];
    }
  }
  return from_up_sets(std::move(up), std::move(names));
}

FinPoset FinPoset::from_up_sets(std::vector<Subset> up, std::vector<std::string> names) {
  const std::size_t n = up.size();
  check_names(names, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (up[a].size() != n) throw InvalidInput("poset: relation row has wrong width");
    if (!up[a].test(a)) throw InvalidInput("poset: relation is not reflexive");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = up[a].find_first(); b != Subset::npos; b = up[a].find_next(b)) {
      if (!up[b].is_subset_of(up[a])) throw InvalidInput("poset: relation is not transitive");
      if (b != a && up[b].test(a)) {
        throw InvalidInput("poset: antisymmetry violated between '" + names[a] + "' and '" +
                           names[b] + "'");
      }
    }
  }
  FinPoset p;
  p.up_ = std::move(up);
  p.names_ = std::move(names);
  p.finish();
  return p;
}

void FinPoset::finish() {
  const std::size_t n = up_.size();
  down_.assign(n, Subset(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = up_[a].find_first(); b != Subset::npos; b = up_[a].find_next(b)) {
      down_[b].set(a);
    }
  }
}

FinPoset FinPoset::chain(std::size_t n) {
  std::vector<std::pair<Elem, Elem>> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) gens.emplace_back(i, i + 1);
  return from_generators(n, gens);
}

FinPoset FinPoset::antichain(std::size_t n) { return from_generators(n, {}); }

FinPoset FinPoset::discrete(std::vector<std::string> names) {
  const std::size_t n = names.size();
  return from_generators(n, {}, std::move(names));
}

std::optional<Elem> FinPoset::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Elem>(i);
  }
  return std::nullopt;
}

Subset FinPoset::full_subset() const {
  Subset s(size());
  s.set();
  return s;
}

Subset FinPoset::singleton(Elem a) const {
  Subset s(size());
  s.set(a);
  return s;
}

bool FinPoset::is_up_set(const Subset& s) const {
  for (std::size_t a = s.find_first(); a != Subset::npos; a = s.find_next(a)) {
    if (!up_[a].is_subset_of(s)) return false;
  }
  return true;
}

bool FinPoset::is_down_set(const Subset& s) const {
  for (std::size_t a = s.find_first(); a != Subset::npos; a = s.find_next(a)) {
    if (!down_[a].is_subset_of(s)) return false;
  }
  return true;
}

bool FinPoset::is_antichain() const {
  for (const auto& row : up_) {
    if (row.count() != 1) return false;
  }
  return true;
}

std::vector<Subset> FinPoset::up_sets() const {
  const std::size_t n = size();
  std::vector<Subset> out;
  // Decide membership element by element; an excluded element excludes its
  // down-set, an included one includes its up-set.
  Subset in(n), out_mask(n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(in);
      return;
    }
    if (in.test(i) || out_mask.test(i)) {
      self(self, i + 1);
      return;
    }
    Subset saved_in = in, saved_out = out_mask;
    out_mask |= down_[i];
    self(self, i + 1);
    in = saved_in;
    out_mask = saved_out;
    in |= up_[i];
    self(self, i + 1);
    in = saved_in;
    out_mask = saved_out;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return lex_less(a, b);
  });
  return out;
}

FinPoset FinPoset::restrict_to(const Subset& s) const {
  std::vector<Elem> keep;
  for (std::size_t a = s.find_first(); a != Subset::npos; a = s.find_next(a)) keep.push_back(a);
  const std::size_t m = keep.size();
  std::vector<Subset> up(m, Subset(m));
  std::vector<std::string> names(m);
  for (std::size_t i = 0; i < m; ++i) {
    names[i] = names_[keep[i]];
    for (std::size_t j = 0; j < m; ++j) {
      if (leq(keep[i], keep[j])) up[i].set(j);
    }
  }
  FinPoset p;
  p.up_ = std::move(up);
  p.names_ = std::move(names);
  p.finish();
  return p;
}

FinPoset FinPoset::product(const FinPoset& a, const FinPoset& b) {
  const std::size_t n = a.size() * b.size();
  std::vector<Subset> up(n, Subset(n));
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t x = i * b.size() + j;
      names[x] = "(" + a.name(i) + "," + b.name(j) + ")";
      for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t l = 0; l < b.size(); ++l) {
          if (a.leq(i, k) && b.leq(j, l)) up[x].set(k * b.size() + l);
        }
      }
    }
  }
  FinPoset p;
  p.up_ = std::move(up);
  p.names_ = std::move(names);
  p.finish();
  return p;
}

FinPoset FinPoset::opposite() const {
  FinPoset p;
  p.up_ = down_;
  p.down_ = up_;
  p.names_ = names_;
  return p;
}

PosetPtr make_poset(FinPoset p) { return std::make_shared<const FinPoset>(std::move(p)); }

// ---------------------------------------------------------------------------

MonotoneMap::MonotoneMap(PosetPtr dom, PosetPtr cod, std::vector<Elem> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (!dom_ || !cod_) throw InvalidInput("monotone map: null poset");
  if (table_.size() != dom_->size()) throw InvalidInput("monotone map: table size mismatch");
  for (Elem t : table_) {
    if (t >= cod_->size()) throw InvalidInput("monotone map: image out of range");
  }
  for (Elem a = 0; a < dom_->size(); ++a) {
    const Subset& up = dom_->up(a);
    for (std::size_t b = up.find_first(); b != Subset::npos; b = up.find_next(b)) {
      if (!cod_->leq(table_[a], table_[b])) {
        throw InvalidInput("monotone map: order not preserved at '" + dom_->name(a) + "' <= '" +
                           dom_->name(static_cast<Elem>(b)) + "'");
      }
    }
  }
}

MonotoneMap MonotoneMap::identity(const PosetPtr& p) {
  std::vector<Elem> t(p->size());
  for (Elem i = 0; i < t.size(); ++i) t[i] = i;
  return MonotoneMap(p, p, std::move(t));
}

Subset MonotoneMap::image(const Subset& s) const {
  Subset out(cod_->size());
  for (std::size_t a = s.find_first(); a != Subset::npos; a = s.find_next(a)) out.set(table_[a]);
  return out;
}

Subset MonotoneMap::preimage(const Subset& s) const {
  Subset out(dom_->size());
  for (std::size_t a = 0; a < table_.size(); ++a) {
    if (s.test(table_[a])) out.set(a);
  }
  return out;
}

MonotoneMap compose(const MonotoneMap& first, const MonotoneMap& second) {
  if (!(*first.cod() == *second.dom())) throw InvalidInput("compose: maps are not composable");
  std::vector<Elem> t(first.table().size());
  for (std::size_t a = 0; a < t.size(); ++a) t[a] = second(first(static_cast<Elem>(a)));
  return MonotoneMap(first.dom(), second.cod(), std::move(t));
}

bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g) {
  if (!(*f.dom() == *g.dom()) || !(*f.cod() == *g.cod())) {
    throw InvalidInput("pointwise_leq: maps have different types");
  }
  for (Elem a = 0; a < f.table().size(); ++a) {
    if (!f.cod()->leq(f(a), g(a))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

OrderRelation::OrderRelation(PosetPtr dom, PosetPtr cod, std::vector<Subset> rows)
    : dom_(std::move(dom)), cod_(std::move(cod)), rows_(std::move(rows)) {
  if (rows_.size() != dom_->size()) throw InvalidInput("order relation: row count mismatch");
  for (Elem a = 0; a < rows_.size(); ++a) {
    if (rows_[a].size() != cod_->size()) throw InvalidInput("order relation: row width mismatch");
    if (!cod_->is_up_set(rows_[a])) throw InvalidInput("order relation: row is not an up-set");
    const Subset& below = dom_->down(a);
    for (std::size_t a2 = below.find_first(); a2 != Subset::npos; a2 = below.find_next(a2)) {
      if (!rows_[a].is_subset_of(rows_[a2])) {
        throw InvalidInput("order relation: not downward closed in the domain");
      }
    }
  }
}

OrderRelation OrderRelation::identity(const PosetPtr& p) {
  std::vector<Subset> rows(p->size());
  for (Elem a = 0; a < p->size(); ++a) rows[a] = p->up(a);
  return OrderRelation(p, p, std::move(rows));
}

std::size_t OrderRelation::pair_count() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.count();
  return n;
}

bool OrderRelation::is_subset_of(const OrderRelation& other) const {
  if (rows_.size() != other.rows_.size()) return false;
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    if (!rows_[a].is_subset_of(other.rows_[a])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Subset up_closure(const FinPoset& p, const Subset& s) {
  if (s.size() != p.size()) throw InvalidInput("up_closure: subset is not over this poset");
  Subset out(p.size());
  for (std::size_t a = s.find_first(); a != Subset::npos; a = s.find_next(a)) out |= p.up(a);
  return out;
}

Subset down_closure(const FinPoset& p, const Subset& s) {
  if (s.size() != p.size()) throw InvalidInput("down_closure: subset is not over this poset");
  Subset out(p.size());
  for (std::size_t a = s.find_first(); a != Subset::npos; a = s.find_next(a)) out |= p.down(a);
  return out;
}

bool is_bounded(const MonotoneMap& m) {
  // f[U] is an up-set for all up-sets U iff f[↑x] is an up-set for every x.
  const FinPoset& dom = *m.dom();
  const FinPoset& cod = *m.cod();
  for (Elem x = 0; x < dom.size(); ++x) {
    if (!cod.is_up_set(m.image(dom.up(x)))) return false;
  }
  return true;
}

OrderRelation relation_of_map(const MonotoneMap& m) {
  std::vector<Subset> rows(m.dom()->size());
  for (Elem a = 0; a < rows.size(); ++a) rows[a] = m.cod()->up(m(a));
  return OrderRelation(m.dom(), m.cod(), std::move(rows));
}

OrderRelation co_relation_of_map(const MonotoneMap& m) {
  std::vector<Subset> rows(m.cod()->size(), Subset(m.dom()->size()));
  for (Elem a = 0; a < m.dom()->size(); ++a) {
    // b ≤ m(a) for all b in ↓m(a).
    const Subset& below = m.cod()->down(m(a));
    for (std::size_t b = below.find_first(); b != Subset::npos; b = below.find_next(b)) {
      rows[b].set(a);
    }
  }
  return OrderRelation(m.cod(), m.dom(), std::move(rows));
}

OrderRelation compose_relations(const OrderRelation& r, const OrderRelation& s) {
  if (!(*r.cod() == *s.dom())) throw InvalidInput("compose_relations: middle posets differ");
  std::vector<Subset> rows(r.dom()->size(), Subset(s.cod()->size()));
  for (Elem a = 0; a < rows.size(); ++a) {
    const Subset& mid = r.rows()[a];
    for (std::size_t b = mid.find_first(); b != Subset::npos; b = mid.find_next(b)) {
      rows[a] |= s.rows()[b];
    }
  }
  return OrderRelation(r.dom(), s.cod(), std::move(rows));
}

std::vector<MonotoneMap> all_monotone_maps(const PosetPtr& dom, const PosetPtr& cod) {
  const std::size_t n = dom->size();
  std::vector<MonotoneMap> out;
  std::vector<Elem> table(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.emplace_back(dom, cod, table);
      return;
    }
    for (Elem t = 0; t < cod->size(); ++t) {
      bool ok = true;
      for (Elem j = 0; j < i && ok; ++j) {
        if (dom->leq(j, i) && !cod->leq(table[j], t)) ok = false;
        if (dom->leq(i, j) && !cod->leq(t, table[j])) ok = false;
      }
      if (!ok) continue;
      table[i] = t;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

std::vector<TupleRelation> strict_order_relation(const FinPoset& p) {
  TupleRelation lt{2, {}};
  for (Elem a = 0; a < p.size(); ++a) {
    for (Elem b = 0; b < p.size(); ++b) {
      if (a != b && p.leq(a, b)) lt.tuples.push_back({a, b});
    }
  }
  return {lt};
}

}  // namespace

FinPoset canonical_poset(const FinPoset& p) {
  const std::size_t n = p.size();
  std::vector<Elem> label = canonical_labeling(n, strict_order_relation(p));
  std::vector<Subset> up(n, Subset(n));
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (p.leq(a, b)) up[label[a]].set(label[b]);
    }
  }
  return FinPoset::from_up_sets(std::move(up));
}

bool are_isomorphic(const FinPoset& a, const FinPoset& b) {
  if (a.size() != b.size()) return false;
  return canonical_poset(a) == canonical_poset(b);
}

std::vector<PosetPtr> all_posets(std::size_t n) {
  // Every finite poset has a linear extension, so it suffices to close
  // subsets of the pairs i < j.
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  if (pairs.size() > 20) throw ResourceLimit("all_posets: too many elements to enumerate");
  std::set<std::vector<std::string>> seen;
  std::vector<FinPoset> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<std::pair<Elem, Elem>> gens;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (mask & (std::uint64_t{1} << k)) gens.push_back(pairs[k]);
    }
    FinPoset canon = canonical_poset(FinPoset::from_generators(n, gens));
    std::vector<std::string> key;
    for (Elem a = 0; a < n; ++a) {
      std::string row;
      boost::to_string(canon.up(a), row);
      key.push_back(row);
    }
    if (seen.insert(key).second) found.push_back(std::move(canon));
  }
  // Fewer comparabilities first, then by row pattern.
  std::sort(found.begin(), found.end(), [](const FinPoset& a, const FinPoset& b) {
    std::size_t ca = 0, cb = 0;
    for (Elem i = 0; i < a.size(); ++i) ca += a.up(i).count();
    for (Elem i = 0; i < b.size(); ++i) cb += b.up(i).count();
    if (ca != cb) return ca < cb;
    for (Elem i = 0; i < a.size(); ++i) {
      if (a.up(i) != b.up(i)) return lex_less(a.up(i), b.up(i));
    }
    return false;
  });
  std::vector<PosetPtr> out;
  for (auto& p : found) out.push_back(make_poset(std::move(p)));
  return out;
}

std::vector<std::pair<Elem, Elem>> covers(const FinPoset& p) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem a = 0; a < p.size(); ++a) {
    for (Elem b = 0; b < p.size(); ++b) {
      if (a == b || !p.leq(a, b)) continue;
      bool cover = true;
      for (Elem c = 0; c < p.size() && cover; ++c) {
        if (c != a && c != b && p.leq(a, c) && p.leq(c, b)) cover = false;
      }
      if (cover) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace polyadica
