#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polyadica {

struct SourceSpan {
  int line = 0;  // 1-based; 0 when the node was built in code
  int column = 0;
};

enum class FormulaKind { kTrue, kFalse, kAtom, kEqual, kAnd, kOr, kExists, kImplies, kForall };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

/// Immutable formula tree. `Implies` and `Forall` only occur in formulas
/// handed to the Kripke evaluator; theory files reject them.
struct FormulaNode {
  FormulaKind kind = FormulaKind::kTrue;
  std::string symbol;             // relation name of an atom
  std::vector<std::string> vars;  // atom arguments, the two sides of `=`, or the bound variable
  Formula left;                   // binary operators; body of a quantifier
  Formula right;
  SourceSpan span;
};

Formula truth();
Formula falsity();
Formula atom(std::string symbol, std::vector<std::string> args);
Formula equal(std::string x, std::string y);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula exists(std::string var, Formula body);
Formula implies(Formula a, Formula b);
Formula forall(std::string var, Formula body);

bool is_coherent(const Formula& f);

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);

/// Quantifier depth.
int formula_depth(const Formula& f);

/// Equal up to renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

/// Capture-avoiding simultaneous substitution of variables. Every free
/// variable of `f` must be in the domain of `sigma` (InvalidInput otherwise).
/// Bound variables that would be captured get primes appended.
Formula substitute(const Formula& f, const std::map<std::string, std::string>& sigma);

/// Source text that parses back to an alpha-equivalent formula.
std::string to_string(const Formula& f);

struct RelationSymbol {
  std::string name;
  std::size_t arity = 0;
  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<RelationSymbol> relations);

  /// Throws InvalidInput on a duplicate name.
  std::size_t add(std::string name, std::size_t arity);

  std::size_t size() const { return relations_.size(); }
  const RelationSymbol& operator[](std::size_t i) const { return relations_[i]; }
  const std::vector<RelationSymbol>& relations() const { return relations_; }
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<RelationSymbol> relations_;
};

/// φ ⊢ ψ, universally closed over `context`.
struct Sequent {
  std::string name;
  std::vector<std::string> context;  // free variables of lhs then rhs, first occurrence order
  Formula lhs;
  Formula rhs;
  SourceSpan span;
};

Sequent make_sequent(std::string name, Formula lhs, Formula rhs);

struct Theory {
  std::string name;
  Signature signature;
  std::vector<Sequent> axioms;
};

/// Checks atoms against the signature (known symbol, matching arity) and,
/// if `context` is given, that every free variable is in it. Throws
/// InvalidInput, or ParseError when the offending node has a source span.
void check_formula(const Formula& f, const Signature& sig,
                   const std::vector<std::string>* context = nullptr);

/// Parses a theory file. Throws ParseError with line and column.
Theory parse_theory(std::string_view text);

/// Parses one formula over `sig`. `->` and `forall` are accepted only if
/// `allow_intuitionistic` is set.
Formula parse_formula(std::string_view text, const Signature& sig,
                      bool allow_intuitionistic = false);

/// Parses `lhs |- rhs`.
Sequent parse_sequent(std::string_view text, const Signature& sig);

std::string to_string(const Sequent& s);
std::string to_string(const Theory& t);

}  // namespace polyadica
