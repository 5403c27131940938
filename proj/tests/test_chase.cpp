#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "polyadica/chase.hpp"
#include "polyadica/error.hpp"
#include "polyadica/io.hpp"

using namespace polyadica;

namespace {

Signature pq() { return Signature({{"P", 1}, {"Q", 1}}); }

Theory shipped() { return parse_theory(read_file(std::string(POLYADICA_DATA_DIR) + "/theories/three_models.thy")); }

FinStructure split() { return parse_structure("carrier: a b\nP: (a)\nQ: (b)\n", pq()); }

ChaseNode start_node(const std::vector<ChaseRule>& rules, const FinStructure& s) {
  ChaseNode n;
  n.structure = s;
  for (const auto& o : violations(rules, s, {})) n.pending.push_back(o);
  return n;
}

std::vector<ChaseRule> rules_of(const Theory& t) {
  std::vector<ChaseRule> out;
  for (const auto& a : t.axioms) out.push_back(compile_rule(a, t.signature));
  return out;
}

Theory mix_only() { return parse_theory("rel P/1\nrel Q/1\naxiom mix: P(x) & Q(y) |- Q(x) | P(y)"); }

Theory growing() { return parse_theory("rel P/1\nrel E/2\naxiom grow: P(x) |- exists y. P(y) & E(x, y)"); }

Formula f(std::string_view text, const Signature& sig) { return parse_formula(text, sig, true); }

}  // namespace

TEST(CompileRule, HeadInDisjunctiveNormalForm) {
  const auto s = parse_sequent("P(x) |- exists u. P(u) & (Q(u) | u = x)", pq());
  const auto r = compile_rule(s, pq());
  ASSERT_EQ(r.head.size(), 2u);
  for (const auto& d : r.head) EXPECT_EQ(d.fresh.size(), 1u);
  EXPECT_EQ(r.head[0].atoms.size(), 2u);
  EXPECT_EQ(r.head[1].atoms.size(), 1u);
  EXPECT_EQ(r.head[1].equalities.size(), 1u);

  EXPECT_TRUE(compile_rule(parse_sequent("P(x) |- false", pq()), pq()).head.empty());
  EXPECT_EQ(compile_rule(parse_sequent("P(x) |- true | false", pq()), pq()).head.size(), 1u);
}

TEST(CompileRule, RejectsNonCoherentHeads) {
  Sequent s = make_sequent("bad", atom("P", {"x"}), implies(atom("P", {"x"}), atom("Q", {"x"})));
  EXPECT_THROW(compile_rule(s, pq()), InvalidInput);
}

TEST(ChaseStep, WitnessOnEmptyStructure) {
  const auto rules = rules_of(shipped());
  auto node = start_node(rules, FinStructure(pq(), 0));
  ASSERT_EQ(node.pending.size(), 1u);
  const auto kids = chase_step(node, rules);
  ASSERT_EQ(kids.size(), 1u);
  EXPECT_EQ(node.status, NodeStatus::kInternal);
  const auto& s = kids[0].structure;
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.name(0), "n0");
  EXPECT_EQ(s.tuple_count(0), 1u);
  EXPECT_EQ(s.tuple_count(1), 1u);
}

TEST(ChaseStep, FalseHeadGivesNoChildren) {
  const auto t = parse_theory("rel P/1\naxiom no: true |- false");
  const auto rules = rules_of(t);
  auto node = start_node(rules, FinStructure(t.signature, 0));
  EXPECT_TRUE(chase_step(node, rules).empty());
  EXPECT_EQ(node.status, NodeStatus::kInconsistent);
}

TEST(ChaseStep, DisjunctiveHeadBranches) {
  const auto rules = rules_of(mix_only());
  auto node = start_node(rules, split());
  ASSERT_EQ(node.pending.size(), 1u);
  EXPECT_EQ(node.pending.front().assignment, (std::vector<Elem>{0, 1}));
  const auto kids = chase_step(node, rules);
  ASSERT_EQ(kids.size(), 2u);
  const std::vector<Elem> a = {0}, b = {1};
  EXPECT_TRUE(kids[0].structure.holds(1, a));  // Q(a)
  EXPECT_FALSE(kids[0].structure.holds(0, b));
  EXPECT_TRUE(kids[1].structure.holds(0, b));  // P(b)
  EXPECT_FALSE(kids[1].structure.holds(1, a));
  EXPECT_EQ(kids[1].disjunct, 1u);
}

TEST(ChaseStep, StaleObligationsAreDropped) {
  const auto rules = rules_of(mix_only());
  auto node = start_node(rules, split());
  node.structure.add_tuple(1, {0});  // repair by hand
  EXPECT_TRUE(chase_step(node, rules).empty());
  EXPECT_EQ(node.status, NodeStatus::kSaturated);
}

TEST(ChaseStep, EqualityMerges) {
  const auto t = parse_theory("rel P/1\nrel Q/1\naxiom one: P(x) & P(y) |- x = y");
  const auto rules = rules_of(t);
  auto s = parse_structure("carrier: a b c\nP: (a) (c)\nQ: (c)", t.signature);
  auto node = start_node(rules, s);
  const auto kids = chase_step(node, rules);
  ASSERT_EQ(kids.size(), 1u);
  const auto& k = kids[0];
  EXPECT_EQ(k.structure.size(), 2u);
  EXPECT_EQ(k.from_parent, (std::vector<Elem>{0, 1, 0}));
  EXPECT_EQ(k.structure.name(0), "a");
  EXPECT_TRUE(k.structure.holds(1, std::vector<Elem>{0}));  // Q moved onto the merged class
}

TEST(RunChase, FalseTheory) {
  const auto t = parse_theory("axiom no: true |- false");
  const auto tree = run_chase(t, FinStructure(t.signature, 0), {});
  ASSERT_EQ(tree.nodes.size(), 1u);
  EXPECT_EQ(tree.root().status, NodeStatus::kInconsistent);
}

TEST(RunChase, FiveAxiomTheoryFromEmpty) {
  const auto t = shipped();
  const auto tree = run_chase(t, FinStructure(t.signature, 0), {});
  const auto sat = tree.leaves_with(NodeStatus::kSaturated);
  ASSERT_FALSE(sat.empty());
  const auto one = parse_structure("carrier: e\nP: (e)\nQ: (e)", pq());
  bool found = false;
  for (auto id : sat) {
    EXPECT_TRUE(satisfies(t, tree.nodes[id].structure));
    found = found || canonical_form(tree.nodes[id].structure) == canonical_form(one);
  }
  EXPECT_TRUE(found);
}

TEST(RunChase, TwoStepRefutation) {
  const auto t = parse_theory("rel P/1\naxiom some: true |- exists u. P(u)\naxiom none: P(x) |- false");
  const auto tree = run_chase(t, FinStructure(t.signature, 0), {});
  EXPECT_EQ(tree.nodes.size(), 2u);
  for (auto id : tree.leaves()) EXPECT_EQ(tree.nodes[id].status, NodeStatus::kInconsistent);
}

TEST(RunChase, BudgetsTruncate) {
  const auto t = growing();
  const auto start = parse_structure("carrier: a\nP: (a)", t.signature);
  ChaseBudget carrier{500, 4, 64};
  auto tree = run_chase(t, start, carrier);
  ASSERT_EQ(tree.leaves().size(), 1u);
  EXPECT_EQ(tree.nodes[tree.leaves()[0]].status, NodeStatus::kBudgetExhausted);
  EXPECT_LE(tree.nodes[tree.leaves()[0]].structure.size(), 5u);

  ChaseBudget depth{500, 100, 3};
  tree = run_chase(t, start, depth);
  EXPECT_EQ(tree.nodes.size(), 4u);

  ChaseBudget nodes{3, 100, 64};
  tree = run_chase(t, start, nodes);
  EXPECT_LE(tree.nodes.size(), 3u);
  EXPECT_FALSE(tree.leaves_with(NodeStatus::kBudgetExhausted).empty());
}

TEST(RunChase, RandomTheoriesAreSoundAndMonotone) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 150; ++i) {
    const auto t = gen::random_theory(rng);
    const auto tree = run_chase(t, FinStructure(t.signature, 0), ChaseBudget{200, 3, 16});
    for (auto id : tree.leaves_with(NodeStatus::kSaturated)) {
      EXPECT_TRUE(check_theory(t, tree.nodes[id].structure).empty()) << to_string(t);
    }
    for (const auto& n : tree.nodes) {
      if (!n.parent) continue;
      const auto& p = tree.nodes[*n.parent];
      EXPECT_TRUE(p.structure.is_homomorphism_to(n.structure, n.from_parent));
      EXPECT_TRUE(tree.is_ancestor(*n.parent, n.id));
    }
  }
}

// A saturated leaf of a chase from the empty structure is a model, so it
// must show up among the enumerated models whenever it is small enough.
TEST(RunChase, SaturatedLeavesAreEnumeratedModels) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 80; ++i) {
    const auto t = gen::random_theory(rng);
    const auto models = enumerate_models(t, 3);
    const auto tree = run_chase(t, FinStructure(t.signature, 0), ChaseBudget{200, 3, 16});
    for (auto id : tree.leaves_with(NodeStatus::kSaturated)) {
      const auto c = canonical_form(tree.nodes[id].structure);
      EXPECT_TRUE(std::find(models.begin(), models.end(), c) != models.end());
    }
  }
}

TEST(Refute, Examples) {
  Theory empty;
  empty.signature = pq();
  ChaseBudget b;
  EXPECT_EQ(refute(empty, parse_sequent("P(x) |- P(x)", pq()), b).verdict, Verdict::kRefuted);

  const auto r = refute(empty, parse_sequent("true |- exists u. P(u)", pq()), b);
  ASSERT_EQ(r.verdict, Verdict::kCountermodel);
  EXPECT_EQ(r.countermodel->structure.size(), 0u);

  EXPECT_EQ(refute(shipped(), parse_sequent("P(x) & Q(x) & P(y) & Q(y) |- x = y", pq()), b).verdict,
            Verdict::kRefuted);
}

TEST(Refute, CountermodelsAreChecked) {
  const auto r = refute(shipped(), parse_sequent("P(x) |- Q(x)", pq()), {});
  ASSERT_EQ(r.verdict, Verdict::kCountermodel);
  const auto& m = *r.countermodel;
  EXPECT_TRUE(satisfies(shipped(), m.structure));
  EXPECT_TRUE(oracle::holds(m.structure, atom("P", {"x"}), {{"x", m.point[0]}}));
  EXPECT_FALSE(oracle::holds(m.structure, atom("Q", {"x"}), {{"x", m.point[0]}}));
}

TEST(Refute, UnknownWhenTheBudgetRunsOut) {
  const auto t = growing();
  const auto r = refute(t, parse_sequent("P(x) |- false", t.signature), ChaseBudget{50, 4, 64});
  EXPECT_EQ(r.verdict, Verdict::kUnknown);
}

TEST(Refute, AgreesWithBruteForceValidity) {
  std::mt19937_64 rng(2024);
  std::size_t definite = 0;
  for (int i = 0; i < 100; ++i) {
    const auto t = gen::random_theory(rng);
    const auto models = oracle::models_up_to_iso(t, 3);
    gen::FormulaOptions opts;
    opts.max_size = 4;
    gen::FormulaGen g(t.signature, rng(), opts);
    for (int j = 0; j < 3; ++j) {
      const auto q = make_sequent("q", g({"x"}), g({"x"}));
      const auto r = refute(t, q, ChaseBudget{300, 3, 16});
      if (r.verdict == Verdict::kRefuted) {
        ++definite;
        for (const auto& m : models) EXPECT_TRUE(oracle::sequent_holds(m, q)) << to_string(t) << to_string(q);
      } else if (r.verdict == Verdict::kCountermodel) {
        ++definite;
        const auto& m = *r.countermodel;
        EXPECT_TRUE(oracle::is_model(m.structure, t));
        std::map<std::string, Elem> env;
        for (std::size_t k = 0; k < q.context.size(); ++k) env[q.context[k]] = m.point[k];
        EXPECT_TRUE(oracle::holds(m.structure, q.lhs, env));
        EXPECT_FALSE(oracle::holds(m.structure, q.rhs, env));
      }
    }
  }
  EXPECT_GT(definite, 200u);
}

TEST(Kripke, AtomsAgreeWithEvaluate) {
  const auto t = shipped();
  const auto tree = run_chase(t, split(), {});
  const std::vector<std::string> ctx = {"x"};
  for (const auto& n : tree.nodes) {
    for (Elem e = 0; e < n.structure.size(); ++e) {
      for (const char* a : {"P(x)", "Q(x)"}) {
        const bool local = evaluate(f(a, pq()), PointedStructure{n.structure, ctx, {e}});
        EXPECT_EQ(eval_kripke(tree, n.id, f(a, pq()), ctx, {e}), local ? Forcing::kForced : Forcing::kNotForced);
      }
    }
  }
}

TEST(Kripke, FalseImpliesFalseIsForced) {
  const auto tree = run_chase(mix_only(), split(), {});
  for (const auto& n : tree.nodes) EXPECT_EQ(eval_kripke(tree, n.id, f("false -> false", pq()), {}, {}), Forcing::kForced);
}

// Both children force the disjunction but the root forces neither disjunct,
// so the root forces only its double negation.
TEST(Kripke, DisjunctionAtTheBranchingNode) {
  const auto tree = run_chase(mix_only(), split(), {});
  ASSERT_EQ(tree.nodes.size(), 3u);
  const std::vector<std::string> ctx = {"x", "y"};
  const auto phi = f("Q(x) | P(y)", pq());
  const auto nn = f("(Q(x) | P(y) -> false) -> false", pq());
  EXPECT_EQ(eval_kripke(tree, 0, phi, ctx, {0, 1}), Forcing::kNotForced);
  EXPECT_EQ(eval_kripke(tree, 0, nn, ctx, {0, 1}), Forcing::kForced);
  for (std::size_t c : tree.root().children) {
    const auto pt = tree.transport(0, c);
    EXPECT_EQ(eval_kripke(tree, c, phi, ctx, {pt[0], pt[1]}), Forcing::kForced);
  }
}

TEST(Kripke, UnknownOnTruncatedSubtrees) {
  const auto t = growing();
  const auto tree = run_chase(t, parse_structure("carrier: a\nP: (a)", t.signature), ChaseBudget{500, 4, 64});
  EXPECT_EQ(eval_kripke(tree, 0, f("forall u. P(u)", t.signature), {}, {}), Forcing::kUnknown);
  EXPECT_EQ(eval_kripke(tree, 0, f("exists u. P(u)", t.signature), {}, {}), Forcing::kForced);
  EXPECT_EQ(eval_kripke(tree, 0, f("forall u. E(u, u)", t.signature), {}, {}), Forcing::kNotForced);
}

TEST(Kripke, RejectsBadArguments) {
  const auto tree = run_chase(mix_only(), split(), {});
  EXPECT_THROW(eval_kripke(tree, 9, truth(), {}, {}), InvalidInput);
  EXPECT_THROW(eval_kripke(tree, 0, f("P(x)", pq()), {"x"}, {7}), InvalidInput);
  EXPECT_THROW(eval_kripke(tree, 0, f("P(z)", pq()), {"x"}, {0}), InvalidInput);
}

TEST(Kripke, PersistenceOnRandomTrees) {
  std::mt19937_64 rng(8);
  std::size_t forced_edges = 0;
  for (int i = 0; i < 60; ++i) {
    const auto t = gen::random_theory(rng);
    const auto start = gen::random_structure(t.signature, 1 + rng() % 2, rng);
    const auto tree = run_chase(t, start, ChaseBudget{60, 4, 8});
    KripkeEvaluator kripke(tree);
    gen::FormulaOptions opts;
    opts.intuitionistic = true;
    opts.max_size = 6;
    gen::FormulaGen g(t.signature, rng(), opts);
    for (int j = 0; j < 10; ++j) {
      const auto phi = g({"x"});
      for (const auto& n : tree.nodes) {
        if (!n.parent) continue;
        const auto& p = tree.nodes[*n.parent];
        for (Elem e = 0; e < p.structure.size(); ++e) {
          if (kripke(p.id, phi, {"x"}, {e}) != Forcing::kForced) continue;
          ++forced_edges;
          EXPECT_NE(kripke(n.id, phi, {"x"}, {n.from_parent[e]}), Forcing::kNotForced) << to_string(phi);
        }
      }
    }
  }
  EXPECT_GT(forced_edges, 100u);
}

TEST(TreeJson, StableAndComplete) {
  const auto tree = run_chase(mix_only(), split(), {});
  const auto a = tree_to_json(tree);
  EXPECT_EQ(a, tree_to_json(run_chase(mix_only(), split(), {})));
  for (const char* key : {"\"budget\"", "\"nodes\"", "\"parent\"", "\"status\"", "\"fired\"", "\"structure\"",
                          "\"children\"", "\"saturated\"", "\"mix\""}) {
    EXPECT_NE(a.find(key), std::string::npos) << key;
  }
}
