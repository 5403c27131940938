#include "polyadica/chase.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "polyadica/error.hpp"

namespace polyadica {
namespace {

using Scope = std::vector<std::pair<std::string, std::size_t>>;

std::size_t lookup(const Scope& scope, const std::string& v) {
  for (std::size_t i = scope.size(); i-- > 0;) {
    if (scope[i].first == v) return scope[i].second;
  }
  throw InvalidInput("chase: variable '" + v + "' is not bound");
}

std::vector<ChaseRule::Disjunct> to_dnf(const Formula& f, const Signature& sig, Scope& scope,
                                        std::size_t& next_slot) {
  using D = ChaseRule::Disjunct;
  switch (f->kind) {
    case FormulaKind::kTrue:
      return {D{}};
    case FormulaKind::kFalse:
      return {};
    case FormulaKind::kAtom: {
      D d;
      std::vector<std::size_t> args;
      for (const auto& v : f->vars) args.push_back(lookup(scope, v));
      d.atoms.emplace_back(*sig.find(f->symbol), std::move(args));
      return {d};
    }
    case FormulaKind::kEqual: {
      D d;
      d.equalities.emplace_back(lookup(scope, f->vars[0]), lookup(scope, f->vars[1]));
      return {d};
    }
    case FormulaKind::kOr: {
      auto l = to_dnf(f->left, sig, scope, next_slot);
      auto r = to_dnf(f->right, sig, scope, next_slot);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case FormulaKind::kAnd: {
      auto l = to_dnf(f->left, sig, scope, next_slot);
      auto r = to_dnf(f->right, sig, scope, next_slot);
      std::vector<D> out;
      for (const auto& a : l) {
        for (const auto& b : r) {
          D d = a;
          d.fresh.insert(d.fresh.end(), b.fresh.begin(), b.fresh.end());
          d.atoms.insert(d.atoms.end(), b.atoms.begin(), b.atoms.end());
          d.equalities.insert(d.equalities.end(), b.equalities.begin(), b.equalities.end());
          out.push_back(std::move(d));
        }
      }
      return out;
    }
    case FormulaKind::kExists: {
      const std::size_t slot = next_slot++;
      scope.emplace_back(f->vars[0], slot);
      auto body = to_dnf(f->left, sig, scope, next_slot);
      scope.pop_back();
      for (auto& d : body) d.fresh.insert(d.fresh.begin(), slot);
      return body;
    }
    case FormulaKind::kImplies:
    case FormulaKind::kForall:
      break;
  }
  throw InvalidInput("chase: rule heads must be coherent");
}

bool violated(const ChaseRule& r, const FinStructure& s, const std::vector<Elem>& a) {
  return r.lhs.eval(s, a) && !r.rhs.eval(s, a);
}

template <class Visit>
void for_each_assignment(std::size_t k, std::size_t n, Visit&& visit) {
  if (k > 0 && n == 0) return;
  std::vector<Elem> a(k, 0);
  while (true) {
    visit(a);
    std::size_t i = k;
    while (i > 0 && a[i - 1] + 1 == n) a[--i] = 0;
    if (i == 0) return;
    ++a[i - 1];
  }
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Elem{0}); }
  Elem find(Elem x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // the smaller element represents the class
  }
  std::vector<Elem> parent;
};

ChaseNode fire(const ChaseNode& node, const ChaseRule& rule, const Obligation& ob,
               const ChaseRule::Disjunct& d, std::size_t which) {
  ChaseNode child;
  child.structure = node.structure;
  child.fired = ob;
  child.disjunct = which;
  child.depth = node.depth + 1;
  child.fresh_counter = node.fresh_counter;
  std::vector<Elem> env(rule.slots, 0);
  std::copy(ob.assignment.begin(), ob.assignment.end(), env.begin());
  for (std::size_t slot : d.fresh) {
    std::string name;
    do {
      name = "n" + std::to_string(child.fresh_counter++);
    } while (child.structure.find(name));
    env[slot] = child.structure.add_element(name);
  }
  for (const auto& [rel, args] : d.atoms) {
    std::vector<Elem> t;
    for (std::size_t s : args) t.push_back(env[s]);
    child.structure.add_tuple(rel, t);
  }
  const std::size_t n = child.structure.size();
  std::vector<Elem> cls(n);
  std::iota(cls.begin(), cls.end(), Elem{0});
  if (!d.equalities.empty()) {
    UnionFind uf(n);
    for (const auto& [a, b] : d.equalities) uf.unite(env[a], env[b]);
    std::map<Elem, Elem> number;
    for (Elem e = 0; e < n; ++e) {
      Elem root = uf.find(e);
      auto it = number.find(root);
      if (it == number.end()) it = number.emplace(root, static_cast<Elem>(number.size())).first;
      cls[e] = it->second;
    }
    child.structure = child.structure.quotient(cls);
  }
  child.from_parent.assign(cls.begin(), cls.begin() + node.structure.size());
  child.point = node.point;
  for (Elem& e : child.point) e = cls[e];
  for (const auto& p : node.pending) {
    Obligation q{p.rule, p.assignment};
    for (Elem& e : q.assignment) e = cls[e];
    if (std::find(child.pending.begin(), child.pending.end(), q) == child.pending.end()) {
      child.pending.push_back(std::move(q));
    }
  }
  return child;
}

void enqueue_new(ChaseNode& node, const std::vector<ChaseRule>& rules) {
  for (auto& v : violations(rules, node.structure, node.point)) {
    if (std::find(node.pending.begin(), node.pending.end(), v) == node.pending.end()) {
      node.pending.push_back(std::move(v));
    }
  }
}

// Pops stale obligations; true if the front one is violated.
bool settle(ChaseNode& node, const std::vector<ChaseRule>& rules) {
  while (!node.pending.empty()) {
    const Obligation& ob = node.pending.front();
    if (violated(rules[ob.rule], node.structure, ob.assignment)) return true;
    node.pending.pop_front();
  }
  return false;
}

}  // namespace

const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::kOpen: return "open";
    case NodeStatus::kInternal: return "internal";
    case NodeStatus::kSaturated: return "saturated";
    case NodeStatus::kInconsistent: return "inconsistent";
    case NodeStatus::kBudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kRefuted: return "refuted";
    case Verdict::kCountermodel: return "countermodel";
    case Verdict::kUnknown: return "unknown";
  }
  return "?";
}

const char* to_string(Forcing f) {
  switch (f) {
    case Forcing::kForced: return "forced";
    case Forcing::kNotForced: return "not-forced";
    case Forcing::kUnknown: return "unknown";
  }
  return "?";
}

ChaseRule compile_rule(const Sequent& s, const Signature& sig, bool at_point) {
  ChaseRule r;
  r.name = s.name;
  r.context = s.context;
  r.at_point = at_point;
  r.lhs = CompiledFormula(s.lhs, sig, s.context);
  r.rhs = CompiledFormula(s.rhs, sig, s.context);
  if (!is_coherent(s.rhs)) throw InvalidInput("chase: the head of '" + s.name + "' is not coherent");
  Scope scope;
  for (std::size_t i = 0; i < s.context.size(); ++i) scope.emplace_back(s.context[i], i);
  std::size_t next = s.context.size();
  r.head = to_dnf(s.rhs, sig, scope, next);
  r.slots = next;
  return r;
}

std::vector<Obligation> violations(const std::vector<ChaseRule>& rules, const FinStructure& s,
                                   const std::vector<Elem>& point) {
  std::vector<Obligation> out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const ChaseRule& r = rules[i];
    if (r.at_point) {
      if (point.size() == r.context.size() && violated(r, s, point)) out.push_back({i, point});
      continue;
    }
    for_each_assignment(r.context.size(), s.size(), [&](const std::vector<Elem>& a) {
      if (violated(r, s, a)) out.push_back({i, a});
    });
  }
  return out;
}

std::vector<ChaseNode> chase_step(ChaseNode& node, const std::vector<ChaseRule>& rules) {
  if (!settle(node, rules)) {
    node.status = NodeStatus::kSaturated;
    return {};
  }
  const Obligation ob = node.pending.front();
  node.pending.pop_front();
  const ChaseRule& rule = rules[ob.rule];
  std::vector<ChaseNode> children;
  for (std::size_t k = 0; k < rule.head.size(); ++k) {
    ChaseNode child = fire(node, rule, ob, rule.head[k], k);
    enqueue_new(child, rules);
    children.push_back(std::move(child));
  }
  node.status = children.empty() ? NodeStatus::kInconsistent : NodeStatus::kInternal;
  return children;
}

ChaseTree run_chase(const Signature& sig, std::vector<ChaseRule> rules, const FinStructure& start,
                    std::vector<Elem> point, const ChaseBudget& budget) {
  if (budget.max_nodes == 0) throw InvalidInput("chase: max_nodes must be positive");
  if (!(start.signature() == sig)) throw InvalidInput("chase: start structure has another signature");
  ChaseTree tree;
  tree.signature = sig;
  tree.rules = std::move(rules);
  tree.budget = budget;
  ChaseNode root;
  root.structure = start;
  root.point = std::move(point);
  enqueue_new(root, tree.rules);
  tree.nodes.push_back(std::move(root));

  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    ChaseNode& node = tree.nodes[id];
    node.id = id;
    if (node.structure.size() > budget.max_carrier) {
      node.status = NodeStatus::kBudgetExhausted;
      continue;
    }
    if (!settle(node, tree.rules)) {
      node.status = NodeStatus::kSaturated;
      continue;
    }
    if (node.depth >= budget.max_depth) {
      node.status = NodeStatus::kBudgetExhausted;
      continue;
    }
    std::vector<ChaseNode> children = chase_step(node, tree.rules);
    if (tree.nodes.size() + children.size() > budget.max_nodes) {
      tree.nodes[id].status = NodeStatus::kBudgetExhausted;
      continue;
    }
    for (auto& c : children) {
      c.id = tree.nodes.size();
      c.parent = id;
      tree.nodes[id].children.push_back(c.id);
      tree.nodes.push_back(std::move(c));
    }
  }
  return tree;
}

ChaseTree run_chase(const Theory& t, const FinStructure& start, const ChaseBudget& budget) {
  std::vector<ChaseRule> rules;
  for (const auto& a : t.axioms) rules.push_back(compile_rule(a, t.signature));
  return run_chase(t.signature, std::move(rules), start, {}, budget);
}

std::vector<std::size_t> ChaseTree::leaves() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes) {
    if (n.children.empty()) out.push_back(n.id);
  }
  return out;
}

std::vector<std::size_t> ChaseTree::leaves_with(NodeStatus s) const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes) {
    if (n.children.empty() && n.status == s) out.push_back(n.id);
  }
  return out;
}

bool ChaseTree::is_ancestor(std::size_t ancestor, std::size_t node) const {
  for (std::optional<std::size_t> cur = node; cur; cur = nodes[*cur].parent) {
    if (*cur == ancestor) return true;
  }
  return false;
}

std::vector<Elem> ChaseTree::transport(std::size_t ancestor, std::size_t descendant) const {
  std::vector<std::size_t> path;
  std::size_t cur = descendant;
  while (cur != ancestor) {
    if (!nodes[cur].parent) throw InvalidInput("transport: not an ancestor");
    path.push_back(cur);
    cur = *nodes[cur].parent;
  }
  std::vector<Elem> map(nodes[ancestor].structure.size());
  std::iota(map.begin(), map.end(), Elem{0});
  for (std::size_t i = path.size(); i-- > 0;) {
    for (Elem& e : map) e = nodes[path[i]].from_parent[e];
  }
  return map;
}

RefuteResult refute(const Theory& t, const Sequent& s, const ChaseBudget& budget) {
  check_formula(s.lhs, t.signature, &s.context);
  check_formula(s.rhs, t.signature, &s.context);
  std::vector<ChaseRule> rules;
  for (const auto& a : t.axioms) rules.push_back(compile_rule(a, t.signature));
  Sequent assume{"assume", s.context, truth(), s.lhs, s.span};
  Sequent deny{"deny", s.context, s.rhs, falsity(), s.span};
  rules.push_back(compile_rule(assume, t.signature, true));
  rules.push_back(compile_rule(deny, t.signature, true));

  FinStructure start(t.signature, s.context.size(), s.context);
  std::vector<Elem> point(s.context.size());
  std::iota(point.begin(), point.end(), Elem{0});

  RefuteResult r;
  r.tree = run_chase(t.signature, std::move(rules), start, std::move(point), budget);
  const auto saturated = r.tree.leaves_with(NodeStatus::kSaturated);
  if (!saturated.empty()) {
    const ChaseNode& leaf = r.tree.nodes[saturated.front()];
    PointedStructure p{leaf.structure, s.context, leaf.point};
    if (!evaluate(s.lhs, p) || evaluate(s.rhs, p) || !satisfies(t, p.structure)) {
      throw ConsistencyViolation("refute: saturated leaf is not a countermodel");
    }
    r.verdict = Verdict::kCountermodel;
    r.countermodel = std::move(p);
    return r;
  }
  const auto leaves = r.tree.leaves();
  const bool all_dead = std::all_of(leaves.begin(), leaves.end(), [&](std::size_t id) {
    return r.tree.nodes[id].status == NodeStatus::kInconsistent;
  });
  r.verdict = all_dead ? Verdict::kRefuted : Verdict::kUnknown;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Forcing kleene_and(Forcing a, Forcing b) {
  if (a == Forcing::kNotForced || b == Forcing::kNotForced) return Forcing::kNotForced;
  if (a == Forcing::kUnknown || b == Forcing::kUnknown) return Forcing::kUnknown;
  return Forcing::kForced;
}

Forcing kleene_or(Forcing a, Forcing b) {
  if (a == Forcing::kForced || b == Forcing::kForced) return Forcing::kForced;
  if (a == Forcing::kUnknown || b == Forcing::kUnknown) return Forcing::kUnknown;
  return Forcing::kNotForced;
}

}  // namespace

class KripkeEvaluator::Impl {
 public:
  explicit Impl(const ChaseTree& tree) : tree_(tree), below_(tree.nodes.size()) {
    for (std::size_t i = tree.nodes.size(); i-- > 0;) {
      below_[i].push_back(i);
      for (std::size_t c : tree.nodes[i].children) {
        below_[i].insert(below_[i].end(), below_[c].begin(), below_[c].end());
      }
    }
    truncated_.assign(tree.nodes.size(), false);
    for (std::size_t i = tree.nodes.size(); i-- > 0;) {
      const auto st = tree.nodes[i].status;
      bool t = st == NodeStatus::kBudgetExhausted || st == NodeStatus::kOpen;
      for (std::size_t c : tree.nodes[i].children) t = t || truncated_[c];
      truncated_[i] = t;
    }
  }

  using Env = std::vector<std::pair<std::string, Elem>>;

  Forcing eval(std::size_t n, const Formula& f, const Env& env) {
    const FinStructure& s = tree_.nodes[n].structure;
    auto value = [&](const std::string& v) {
      for (std::size_t i = env.size(); i-- > 0;) {
        if (env[i].first == v) return env[i].second;
      }
      throw InvalidInput("eval_kripke: variable '" + v + "' is not bound");
    };
    switch (f->kind) {
      case FormulaKind::kTrue:
        return Forcing::kForced;
      case FormulaKind::kFalse:
        return Forcing::kNotForced;
      case FormulaKind::kAtom: {
        auto rel = tree_.signature.find(f->symbol);
        if (!rel) throw InvalidInput("eval_kripke: unknown relation '" + f->symbol + "'");
        std::vector<Elem> t;
        for (const auto& v : f->vars) t.push_back(value(v));
        return s.holds(*rel, t) ? Forcing::kForced : Forcing::kNotForced;
      }
      case FormulaKind::kEqual:
        return value(f->vars[0]) == value(f->vars[1]) ? Forcing::kForced : Forcing::kNotForced;
      case FormulaKind::kAnd: {
        Forcing l = eval(n, f->left, env);
        if (l == Forcing::kNotForced) return l;
        return kleene_and(l, eval(n, f->right, env));
      }
      case FormulaKind::kOr: {
        Forcing l = eval(n, f->left, env);
        if (l == Forcing::kForced) return l;
        return kleene_or(l, eval(n, f->right, env));
      }
      case FormulaKind::kExists: {
        Forcing acc = Forcing::kNotForced;
        Env inner = env;
        inner.emplace_back(f->vars[0], 0);
        for (Elem e = 0; e < s.size() && acc != Forcing::kForced; ++e) {
          inner.back().second = e;
          acc = kleene_or(acc, eval(n, f->left, inner));
        }
        return acc;
      }
      case FormulaKind::kImplies:
      case FormulaKind::kForall: {
        bool unknown = truncated_[n];
        for (std::size_t m : below_[n]) {
          Env moved = env;
          if (m != n) {
            const auto& map = transport(n, m);
            for (auto& [v, e] : moved) e = map[e];
          }
          if (f->kind == FormulaKind::kImplies) {
            Forcing a = eval(m, f->left, moved);
            if (a == Forcing::kNotForced) continue;
            Forcing b = eval(m, f->right, moved);
            if (a == Forcing::kForced && b == Forcing::kNotForced) return Forcing::kNotForced;
            if (b != Forcing::kForced) unknown = true;
          } else {
            moved.emplace_back(f->vars[0], 0);
            for (Elem e = 0; e < tree_.nodes[m].structure.size(); ++e) {
              moved.back().second = e;
              Forcing b = eval(m, f->left, moved);
              if (b == Forcing::kNotForced) return b;
              if (b == Forcing::kUnknown) unknown = true;
            }
          }
        }
        return unknown ? Forcing::kUnknown : Forcing::kForced;
      }
    }
    return Forcing::kUnknown;
  }

 const ChaseTree& tree() const { return tree_; }

 private:
  const std::vector<Elem>& transport(std::size_t a, std::size_t d) {
    auto key = std::make_pair(a, d);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, tree_.transport(a, d)).first;
    return it->second;
  }

  const ChaseTree& tree_;
  std::vector<std::vector<std::size_t>> below_;
  std::vector<bool> truncated_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Elem>> cache_;
};

KripkeEvaluator::KripkeEvaluator(const ChaseTree& tree) : impl_(std::make_unique<Impl>(tree)) {}

KripkeEvaluator::~KripkeEvaluator() = default;

Forcing KripkeEvaluator::operator()(std::size_t node, const Formula& f, const std::vector<std::string>& context,
                                    const std::vector<Elem>& point) {
  const ChaseTree& tree = impl_->tree();
  if (node >= tree.nodes.size()) throw InvalidInput("eval_kripke: no such node");
  if (context.size() != point.size()) throw InvalidInput("eval_kripke: point does not match the context");
  for (const auto& v : free_variables(f)) {
    if (std::find(context.begin(), context.end(), v) == context.end()) {
      throw InvalidInput("eval_kripke: free variable '" + v + "' is not in the context");
    }
  }
  Impl::Env env;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (point[i] >= tree.nodes[node].structure.size()) throw InvalidInput("eval_kripke: point out of range");
    env.emplace_back(context[i], point[i]);
  }
  return impl_->eval(node, f, env);
}

Forcing eval_kripke(const ChaseTree& tree, std::size_t node, const Formula& f,
                    const std::vector<std::string>& context, const std::vector<Elem>& point) {
  return KripkeEvaluator(tree)(node, f, context, point);
}

std::string tree_to_json(const ChaseTree& tree) {
  using nlohmann::ordered_json;
  ordered_json nodes = ordered_json::array();
  for (const auto& n : tree.nodes) {
    ordered_json j;
    j["id"] = n.id;
    j["parent"] = n.parent ? ordered_json(*n.parent) : ordered_json(nullptr);
    j["depth"] = n.depth;
    j["status"] = to_string(n.status);
    if (n.fired) {
      ordered_json f;
      f["rule"] = tree.rules[n.fired->rule].name;
      ordered_json a = ordered_json::array();
      const auto& parent = tree.nodes[*n.parent].structure;
      for (Elem e : n.fired->assignment) a.push_back(parent.name(e));
      f["assignment"] = a;
      f["disjunct"] = n.disjunct;
      j["fired"] = f;
    } else {
      j["fired"] = nullptr;
    }
    ordered_json s;
    s["carrier"] = n.structure.names();
    ordered_json rels = ordered_json::object();
    for (std::size_t r = 0; r < tree.signature.size(); ++r) {
      ordered_json ts = ordered_json::array();
      for (const auto& t : n.structure.tuples(r)) {
        ordered_json tj = ordered_json::array();
        for (Elem e : t) tj.push_back(n.structure.name(e));
        ts.push_back(tj);
      }
      rels[tree.signature[r].name] = ts;
    }
    s["relations"] = rels;
    j["structure"] = s;
    j["children"] = n.children;
    nodes.push_back(j);
  }
  ordered_json out;
  out["budget"] = {{"max_nodes", tree.budget.max_nodes},
                   {"max_carrier", tree.budget.max_carrier},
                   {"max_depth", tree.budget.max_depth}};
  out["nodes"] = nodes;
  return out.dump(2);
}

}  // namespace polyadica
