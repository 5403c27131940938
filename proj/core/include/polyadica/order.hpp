#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace polyadica {

/// Opaque element id: an index into the canonical element order of its carrier.
using Elem = std::uint32_t;

/// A subset of a finite carrier, as a bitmask over the canonical element order.
using Subset = boost::dynamic_bitset<>;

/// Finite partially ordered set. Immutable after construction.
///
/// Every subset of a finite Priestley space is clopen, so a finite poset is the
/// whole of the topological side; "clopen up-set" is just "up-set" here.
class FinPoset {
 public:
  FinPoset() = default;

  /// Builds the reflexive-transitive closure of `generators` over `n`
  /// elements. Throws InvalidInput if the closure is not antisymmetric.
  static FinPoset from_generators(std::size_t n,
                                  const std::vector<std::pair<Elem, Elem>>& generators,
                                  std::vector<std::string> names = {});

  /// `up[a]` must be the full principal up-set of `a`. Checked.
  static FinPoset from_up_sets(std::vector<Subset> up, std::vector<std::string> names = {});

  static FinPoset chain(std::size_t n);
  static FinPoset antichain(std::size_t n);
  static FinPoset discrete(std::vector<std::string> names);

  std::size_t size() const { return up_.size(); }
  bool empty() const { return up_.empty(); }
  bool leq(Elem a, Elem b) const { return up_[a].test(b); }

  /// Principal up-set / down-set of one element.
  const Subset& up(Elem a) const { return up_[a]; }
  const Subset& down(Elem a) const { return down_[a]; }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Elem a) const { return names_[a]; }
  std::optional<Elem> find(std::string_view name) const;

  Subset empty_subset() const { return Subset(size()); }
  Subset full_subset() const;
  Subset singleton(Elem a) const;
  bool is_up_set(const Subset& s) const;
  bool is_down_set(const Subset& s) const;
  bool is_antichain() const;

  /// All up-sets, ordered by cardinality and then by bit pattern.
  std::vector<Subset> up_sets() const;

  /// Same sub-poset structure on the elements of `s`, in their relative order.
  FinPoset restrict_to(const Subset& s) const;

  /// Product order on pairs, enumerated row-major.
  static FinPoset product(const FinPoset& a, const FinPoset& b);

  /// The order-dual poset.
  FinPoset opposite() const;

  /// Structural equality: same size and same order. Names are ignored.
  friend bool operator==(const FinPoset& a, const FinPoset& b) { return a.up_ == b.up_; }

 private:
  void finish();

  std::vector<Subset> up_;
  std::vector<Subset> down_;
  std::vector<std::string> names_;
};

using PosetPtr = std::shared_ptr<const FinPoset>;

PosetPtr make_poset(FinPoset p);

/// Monotone function between finite posets.
class MonotoneMap {
 public:
  MonotoneMap() = default;

  /// Throws InvalidInput if the table is out of range or not monotone.
  MonotoneMap(PosetPtr dom, PosetPtr cod, std::vector<Elem> table);

  static MonotoneMap identity(const PosetPtr& p);

  const PosetPtr& dom() const { return dom_; }
  const PosetPtr& cod() const { return cod_; }
  const std::vector<Elem>& table() const { return table_; }
  Elem operator()(Elem a) const { return table_[a]; }

  /// Direct image f[U].
  Subset image(const Subset& s) const;
  /// Inverse image f^{-1}[V].
  Subset preimage(const Subset& s) const;

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return a.table_ == b.table_ && *a.dom_ == *b.dom_ && *a.cod_ == *b.cod_;
  }

 private:
  PosetPtr dom_;
  PosetPtr cod_;
  std::vector<Elem> table_;
};

/// `second ∘ first`.
MonotoneMap compose(const MonotoneMap& first, const MonotoneMap& second);

/// Pointwise order f ≤ g for maps with the same domain and codomain.
bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g);

/// An up-set of dom^op × cod: rows[a] is the set of b with (a, b) in the relation.
class OrderRelation {
 public:
  OrderRelation() = default;

  /// Throws InvalidInput unless the pairs form an up-set of dom^op × cod.
  OrderRelation(PosetPtr dom, PosetPtr cod, std::vector<Subset> rows);

  static OrderRelation identity(const PosetPtr& p);

  const PosetPtr& dom() const { return dom_; }
  const PosetPtr& cod() const { return cod_; }
  const std::vector<Subset>& rows() const { return rows_; }
  bool contains(Elem a, Elem b) const { return rows_[a].test(b); }
  std::size_t pair_count() const;
  bool is_subset_of(const OrderRelation& other) const;

  friend bool operator==(const OrderRelation& a, const OrderRelation& b) {
    return a.rows_ == b.rows_;
  }

 private:
  PosetPtr dom_;
  PosetPtr cod_;
  std::vector<Subset> rows_;
};

/// Smallest up-set containing `s`. Throws InvalidInput on a size mismatch.
Subset up_closure(const FinPoset& p, const Subset& s);
Subset down_closure(const FinPoset& p, const Subset& s);

/// True iff the direct image of every up-set is an up-set.
bool is_bounded(const MonotoneMap& m);

/// {(a, b) | m(a) ≤ b}: the upward closure of the graph of m.
OrderRelation relation_of_map(const MonotoneMap& m);

/// {(b, a) | b ≤ m(a)}, a relation from cod(m) to dom(m).
OrderRelation co_relation_of_map(const MonotoneMap& m);

/// Relational composite r · s = {(a, c) | ∃b: r(a, b) ∧ s(b, c)}.
OrderRelation compose_relations(const OrderRelation& r, const OrderRelation& s);

/// All monotone maps dom → cod, in lexicographic order of their tables.
std::vector<MonotoneMap> all_monotone_maps(const PosetPtr& dom, const PosetPtr& cod);

/// One representative per isomorphism class of posets with exactly `n` elements,
/// each in canonical form, in a deterministic order.
std::vector<PosetPtr> all_posets(std::size_t n);

/// Canonical relabeling: canonical_poset(p) == canonical_poset(q) iff p ≅ q.
FinPoset canonical_poset(const FinPoset& p);
bool are_isomorphic(const FinPoset& a, const FinPoset& b);

/// Cover relation of the order, for Hasse diagrams and serialization.
std::vector<std::pair<Elem, Elem>> covers(const FinPoset& p);

}  // namespace polyadica
