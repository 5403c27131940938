#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyadica/error.hpp"
#include "polyadica/order.hpp"
#include "polyadica/theory.hpp"

namespace polyadica {

/// Finite relational structure over a signature. Relations are stored as
/// dense bitsets indexed by tuples in lexicographic order, so iterating the
/// set bits lists tuples in sorted order.
class FinStructure {
 public:
  FinStructure() = default;
  explicit FinStructure(Signature sig, std::size_t n = 0, std::vector<std::string> names = {});

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Elem e) const { return names_[e]; }
  std::optional<Elem> find(std::string_view name) const;

  /// Appends an element; an empty name gets the first unused "eK".
  Elem add_element(std::string name = {});

  /// Returns true if the tuple was not there before.
  bool add_tuple(std::size_t rel, const std::vector<Elem>& tuple);
  bool holds(std::size_t rel, const Elem* tuple) const;
  bool holds(std::size_t rel, const std::vector<Elem>& tuple) const { return holds(rel, tuple.data()); }

  std::vector<std::vector<Elem>> tuples(std::size_t rel) const;
  std::size_t tuple_count(std::size_t rel) const { return bits_[rel].count(); }
  std::size_t fact_count() const;
  const Subset& bits(std::size_t rel) const { return bits_[rel]; }
  void set_bits(std::size_t rel, Subset bits);

  /// Identifies elements: `cls[e]` is the class of e, classes numbered
  /// 0..k-1. Class c keeps the name of its first member.
  FinStructure quotient(const std::vector<Elem>& cls) const;

  /// Is `map` (element of this → element of other) a homomorphism?
  bool is_homomorphism_to(const FinStructure& other, const std::vector<Elem>& map) const;

  /// Same signature, size and relations; names are ignored.
  friend bool operator==(const FinStructure& a, const FinStructure& b) {
    return a.sig_ == b.sig_ && a.names_.size() == b.names_.size() && a.bits_ == b.bits_;
  }

 private:
  std::size_t index(std::size_t rel, const Elem* tuple) const;

  Signature sig_;
  std::vector<std::string> names_;
  std::vector<Subset> bits_;
};

struct PointedStructure {
  FinStructure structure;
  std::vector<std::string> context;
  std::vector<Elem> point;  // context variable i ↦ point[i]
};

/// A formula compiled against a signature and a context of named variables.
/// Context variable i lives in slot i; bound variables get further slots.
class CompiledFormula {
 public:
  CompiledFormula() = default;
  CompiledFormula(const Formula& f, const Signature& sig, const std::vector<std::string>& context);

  /// Tarski semantics; `point` has one entry per context variable. `->` and
  /// `forall` are evaluated classically.
  bool eval(const FinStructure& s, const std::vector<Elem>& point) const;

  std::size_t slot_count() const { return slots_; }

 private:
  struct Node {
    FormulaKind kind;
    std::size_t rel = 0;
    std::vector<std::size_t> args;  // slots
    int left = -1;
    int right = -1;
  };
  int compile(const Formula& f, const Signature& sig, std::vector<std::pair<std::string, std::size_t>>& scope);
  bool eval_node(int i, const FinStructure& s, std::vector<Elem>& env) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t slots_ = 0;
  std::size_t context_size_ = 0;
};

bool evaluate(const Formula& f, const PointedStructure& p);

struct Violation {
  std::size_t axiom = 0;
  std::vector<Elem> assignment;  // over the axiom's context
};

/// Every (axiom, assignment) whose lhs holds and rhs fails, in axiom order
/// and lexicographic assignment order.
std::vector<Violation> check_theory(const Theory& t, const FinStructure& s);
bool satisfies(const Theory& t, const FinStructure& s);

/// Relabels by a canonical labeling; element names become e0, e1, ...
FinStructure canonical_form(const FinStructure& s);

/// All models of t with at most `max_size` elements, one per isomorphism
/// class, in canonical form, sorted by size and then by relations. Throws
/// ResourceLimit if the raw search space exceeds `budget` structures.
std::vector<FinStructure> enumerate_models(const Theory& t, std::size_t max_size,
                                           std::size_t budget = 1u << 22);

/// Every structure over `sig` with exactly n elements (no isomorphism
/// reduction), calling `visit` on each. Throws ResourceLimit past `budget`.
template <class Visit>
void for_each_structure(const Signature& sig, std::size_t n, std::size_t budget, Visit&& visit);

/// Is there a homomorphism a → b? Backtracking search.
bool homomorphism_exists(const FinStructure& a, const FinStructure& b);

/// Text format: `carrier: a b c` then one line per nonempty relation,
/// `P: (a) (b)`. Relations not listed are empty.
FinStructure parse_structure(std::string_view text, const Signature& sig);
std::string to_string(const FinStructure& s);

// ---------------------------------------------------------------------------

std::size_t tuple_space(std::size_t n, std::size_t arity);

template <class Visit>
void for_each_structure(const Signature& sig, std::size_t n, std::size_t budget, Visit&& visit) {
  std::size_t bits = 0;
  for (const auto& r : sig.relations()) bits += tuple_space(n, r.arity);
  if (bits >= 63 || (std::size_t{1} << bits) > budget) {
    throw ResourceLimit("structure enumeration: 2^" + std::to_string(bits) + " structures of size " +
                        std::to_string(n) + " exceed the budget");
  }
  FinStructure s(sig, n);
  const std::size_t total = std::size_t{1} << bits;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t offset = 0;
    for (std::size_t r = 0; r < sig.size(); ++r) {
      const std::size_t k = tuple_space(n, sig[r].arity);
      Subset b(k);
      for (std::size_t i = 0; i < k; ++i) {
        if ((code >> (offset + i)) & 1u) b.set(i);
      }
      s.set_bits(r, std::move(b));
      offset += k;
    }
    visit(static_cast<const FinStructure&>(s));
  }
}

}  // namespace polyadica
