#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polyadica/structure.hpp"
#include "polyadica/theory.hpp"

namespace polyadica {

struct ChaseBudget {
  std::size_t max_nodes = 500;
  std::size_t max_carrier = 8;
  std::size_t max_depth = 64;
};

enum class NodeStatus {
  kOpen,             // not yet expanded
  kInternal,         // fired an obligation and has children
  kSaturated,        // no violated axiom instance left
  kInconsistent,     // fired an obligation whose head is false
  kBudgetExhausted,  // truncated by one of the budgets
};

const char* to_string(NodeStatus s);

/// An axiom instance: rule index and an assignment of its context.
struct Obligation {
  std::size_t rule = 0;
  std::vector<Elem> assignment;
  friend bool operator==(const Obligation&, const Obligation&) = default;
};

/// A rule of the chase: an axiom with its head in disjunctive normal form.
/// A rule with `at_point` set is only instantiated at the node's point.
struct ChaseRule {
  struct Disjunct {
    std::vector<std::size_t> fresh;                  // slots of existential variables
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> atoms;  // relation, argument slots
    std::vector<std::pair<std::size_t, std::size_t>> equalities;
  };

  std::string name;
  std::vector<std::string> context;
  CompiledFormula lhs;
  CompiledFormula rhs;
  std::vector<Disjunct> head;  // empty: the head is false
  std::size_t slots = 0;
  bool at_point = false;
};

/// Compiles `s` into a rule. The head must be coherent.
ChaseRule compile_rule(const Sequent& s, const Signature& sig, bool at_point = false);

struct ChaseNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  FinStructure structure;
  std::vector<Elem> point;           // designated elements, tracked through merges
  std::deque<Obligation> pending;    // FIFO
  std::optional<Obligation> fired;   // the parent's obligation that produced this node
  std::size_t disjunct = 0;          // which disjunct of that obligation's head
  std::vector<Elem> from_parent;     // parent element → element here
  std::size_t depth = 0;
  std::size_t fresh_counter = 0;
  NodeStatus status = NodeStatus::kOpen;
};

struct ChaseTree {
  Signature signature;
  std::vector<ChaseRule> rules;
  std::vector<ChaseNode> nodes;  // nodes[0] is the root; parents precede children
  ChaseBudget budget;

  const ChaseNode& root() const { return nodes.front(); }
  std::vector<std::size_t> leaves() const;
  std::vector<std::size_t> leaves_with(NodeStatus s) const;
  /// Path-composed element map from `ancestor` to `descendant`.
  std::vector<Elem> transport(std::size_t ancestor, std::size_t descendant) const;
  bool is_ancestor(std::size_t ancestor, std::size_t node) const;
};

/// Every currently violated instance of `rules` in the node's structure.
std::vector<Obligation> violations(const std::vector<ChaseRule>& rules, const FinStructure& s,
                                   const std::vector<Elem>& point);

/// Fires the oldest pending obligation of `node`, dropping stale ones first.
/// Returns one child per disjunct of the fired head (none for a false head,
/// in which case the node is marked inconsistent). If nothing is pending the
/// node is marked saturated. Children are not assigned ids.
std::vector<ChaseNode> chase_step(ChaseNode& node, const std::vector<ChaseRule>& rules);

/// Chases breadth-first from `start` under the budget.
ChaseTree run_chase(const Theory& t, const FinStructure& start, const ChaseBudget& budget);

/// General form: extra rules and a designated point in `start`.
ChaseTree run_chase(const Signature& sig, std::vector<ChaseRule> rules, const FinStructure& start,
                    std::vector<Elem> point, const ChaseBudget& budget);

enum class Verdict { kRefuted, kCountermodel, kUnknown };

const char* to_string(Verdict v);

struct RefuteResult {
  Verdict verdict = Verdict::kUnknown;
  std::optional<PointedStructure> countermodel;
  ChaseTree tree;
};

/// Decides t ⊨ s within the budget by chasing t together with the pinned
/// rules `true ⊢ lhs` and `rhs ⊢ false` at fresh constants for the context.
/// Refuted means the sequent is valid. A countermodel is checked with
/// `evaluate` before it is returned.
RefuteResult refute(const Theory& t, const Sequent& s, const ChaseBudget& budget);

enum class Forcing { kForced, kNotForced, kUnknown };

const char* to_string(Forcing f);

/// Kripke forcing over the tree. Atoms, ∧, ∨, ∃ and = are local; → and ∀
/// range over the node and all its descendants, with the point transported
/// along the edges. The answer is unknown when a needed descendant is
/// budget-truncated and no definite counterexample was found.
Forcing eval_kripke(const ChaseTree& tree, std::size_t node, const Formula& f,
                    const std::vector<std::string>& context, const std::vector<Elem>& point);

/// Same forcing relation, with the subtree lists and transports of one tree
/// computed once and reused across calls.
class KripkeEvaluator {
 public:
  explicit KripkeEvaluator(const ChaseTree& tree);
  ~KripkeEvaluator();
  KripkeEvaluator(const KripkeEvaluator&) = delete;
  KripkeEvaluator& operator=(const KripkeEvaluator&) = delete;

  Forcing operator()(std::size_t node, const Formula& f, const std::vector<std::string>& context,
                     const std::vector<Elem>& point);

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

/// Stable JSON rendering of the tree.
std::string tree_to_json(const ChaseTree& tree);

}  // namespace polyadica
