#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polyadica/order.hpp"

namespace polyadica {

/// Finite distributive lattice with explicit meet/join tables.
///
/// The one-element lattice (⊥ = ⊤) is legal. Immutable after construction.
class FinDistLattice {
 public:
  /// Derives meet and join from the order. Throws InvalidInput if the order is
  /// not a bounded lattice or the lattice is not distributive.
  static FinDistLattice from_poset(PosetPtr order);

  /// Trusted construction from precomputed tables (used by constructions that
  /// are distributive by design, such as lattices of up-sets). Only the table
  /// shapes are checked.
  static FinDistLattice from_tables(PosetPtr order, std::vector<Elem> meet, std::vector<Elem> join,
                                    Elem bot, Elem top);

  static FinDistLattice chain(std::size_t n);

  std::size_t size() const { return order_->size(); }
  bool leq(Elem a, Elem b) const { return order_->leq(a, b); }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem bot() const { return bot_; }
  Elem top() const { return top_; }

  const PosetPtr& order() const { return order_; }
  const std::string& name(Elem a) const { return order_->name(a); }
  std::optional<Elem> find(std::string_view name) const { return order_->find(name); }

  /// Structural equality of the underlying orders (the tables follow).
  friend bool operator==(const FinDistLattice& a, const FinDistLattice& b) {
    return *a.order_ == *b.order_;
  }

 private:
  FinDistLattice() = default;

  PosetPtr order_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  Elem bot_ = 0;
  Elem top_ = 0;
};

using LatticePtr = std::shared_ptr<const FinDistLattice>;

LatticePtr make_lattice(FinDistLattice l);

/// Bounded-lattice homomorphism. Preservation of ∧, ∨, ⊥, ⊤ is checked.
class LatticeHom {
 public:
  LatticeHom() = default;
  LatticeHom(LatticePtr dom, LatticePtr cod, std::vector<Elem> table);

  static LatticeHom identity(const LatticePtr& l);

  const LatticePtr& dom() const { return dom_; }
  const LatticePtr& cod() const { return cod_; }
  const std::vector<Elem>& table() const { return table_; }
  Elem operator()(Elem a) const { return table_[a]; }

  MonotoneMap as_monotone() const;

  friend bool operator==(const LatticeHom& a, const LatticeHom& b) {
    return a.table_ == b.table_ && *a.dom_ == *b.dom_ && *a.cod_ == *b.cod_;
  }

 private:
  LatticePtr dom_;
  LatticePtr cod_;
  std::vector<Elem> table_;
};

/// `second ∘ first`.
LatticeHom compose(const LatticeHom& first, const LatticeHom& second);

/// Largest c with c ∧ a ≤ b.
Elem heyting_implies(const FinDistLattice& l, Elem a, Elem b);

/// a → ⊥.
Elem heyting_negation(const FinDistLattice& l, Elem a);

/// Every element has a complement.
bool is_boolean(const FinDistLattice& l);

bool is_join_irreducible(const FinDistLattice& l, Elem a);

/// The principal down-set ↓a and the surjection p_a(b) = a ∧ b.
struct Projection {
  LatticePtr lattice;
  LatticeHom hom;
  std::vector<Elem> embedding;  // element of ↓a → element of the ambient lattice
};

Projection projection(const LatticePtr& l, Elem a);

/// Left adjoint ℓ(b) = ⋀{a | b ≤ h(a)}. Always exists for finite lattices;
/// the adjunction law is verified and a ConsistencyViolation is thrown if it
/// fails. Only monotone in general.
MonotoneMap left_adjoint(const LatticeHom& h);

/// Right adjoint ρ(b) = ⋁{a | h(a) ≤ b}, verified likewise.
MonotoneMap right_adjoint(const LatticeHom& h);

/// The square of the Frobenius condition at `a`:
///   A --p_a--> ↓a, A --h--> B, B --p_h(a)--> ↓h(a), ↓a --h|--> ↓h(a).
/// Defined in squares.hpp; `is_frobenius` checks it for every a.
bool is_frobenius(const LatticeHom& h);

/// ℓ(b ∧ h(a)) = ℓ(b) ∧ a for all a, b.
bool frobenius_reciprocity_holds(const LatticeHom& h);

/// h(a → b) = h(a) → h(b) for all a, b.
bool preserves_implication(const LatticeHom& h);

/// All homomorphisms dom → cod, found by assigning images to the
/// join-irreducibles of dom and extending by joins.
std::vector<LatticeHom> all_lattice_homs(const LatticePtr& dom, const LatticePtr& cod);

}  // namespace polyadica
