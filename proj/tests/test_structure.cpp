#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "polyadica/error.hpp"
#include "polyadica/io.hpp"
#include "polyadica/structure.hpp"

using namespace polyadica;

namespace {

Signature pq() { return Signature({{"P", 1}, {"Q", 1}}); }

Signature rich() { return Signature({{"P", 1}, {"E", 2}, {"K", 0}}); }

Theory shipped() { return parse_theory(read_file(std::string(POLYADICA_DATA_DIR) + "/theories/three_models.thy")); }

FinStructure split() { return parse_structure("carrier: a b\nP: (a)\nQ: (b)\n", pq()); }

PointedStructure pointed(FinStructure s, std::vector<std::string> ctx, std::vector<Elem> pt) {
  return PointedStructure{std::move(s), std::move(ctx), std::move(pt)};
}

FinStructure relabel(const FinStructure& s, const std::vector<Elem>& perm) {
  FinStructure out(s.signature(), s.size());
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (auto t : s.tuples(r)) {
      for (Elem& e : t) e = perm[e];
      out.add_tuple(r, t);
    }
  }
  return out;
}

}  // namespace

TEST(Evaluate, Examples) {
  const auto one = parse_structure("carrier: e\nP: (e)\nQ: (e)\n", pq());
  EXPECT_TRUE(evaluate(truth(), pointed(one, {}, {})));
  EXPECT_TRUE(evaluate(parse_formula("exists u. P(u) & Q(u)", pq()), pointed(one, {}, {})));

  const auto s = pointed(split(), {"x", "y"}, {0, 1});
  EXPECT_TRUE(evaluate(parse_formula("P(x) & Q(y)", pq()), s));
  EXPECT_FALSE(evaluate(parse_formula("Q(x) | P(y)", pq()), s));
}

TEST(Evaluate, RejectsBadPoints) {
  EXPECT_THROW(evaluate(atom("P", {"x"}), pointed(split(), {"x"}, {5})), InvalidInput);
  EXPECT_THROW(evaluate(atom("P", {"x"}), pointed(split(), {"x"}, {})), InvalidInput);
  EXPECT_THROW(evaluate(atom("P", {"z"}), pointed(split(), {"x"}, {0})), InvalidInput);
}

TEST(Evaluate, MatchesTheNaiveEvaluator) {
  gen::FormulaOptions opts;
  opts.max_depth = 3;
  opts.max_size = 10;
  opts.intuitionistic = true;
  gen::FormulaGen g(rich(), 17, opts);
  auto& rng = g.rng();
  for (int i = 0; i < 400; ++i) {
    const auto f = g({"x", "y"});
    const auto s = gen::random_structure(rich(), 1 + rng() % 3, rng);
    const CompiledFormula c(f, rich(), {"x", "y"});
    for (const auto& a : oracle::assignments(2, s.size())) {
      const bool expected = oracle::holds(s, f, {{"x", a[0]}, {"y", a[1]}});
      ASSERT_EQ(c.eval(s, a), expected) << to_string(f);
      ASSERT_EQ(evaluate(f, pointed(s, {"x", "y"}, a)), expected);
    }
  }
}

TEST(Evaluate, InvariantUnderIsomorphism) {
  gen::FormulaOptions opts;
  opts.max_size = 8;
  gen::FormulaGen g(rich(), 23, opts);
  auto& rng = g.rng();
  for (int i = 0; i < 200; ++i) {
    const auto f = g({"x"});
    const auto s = gen::random_structure(rich(), 3, rng);
    auto perms = oracle::permutations(3);
    const auto& perm = perms[rng() % perms.size()];
    const auto t = relabel(s, perm);
    for (Elem e = 0; e < 3; ++e) {
      EXPECT_EQ(evaluate(f, pointed(s, {"x"}, {e})), evaluate(f, pointed(t, {"x"}, {perm[e]})));
    }
  }
}

TEST(CheckTheory, Examples) {
  Theory t = parse_theory("rel P/1\naxiom a: true |- exists u. P(u)");
  const auto v = check_theory(t, FinStructure(t.signature, 0));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(v[0].assignment.empty());

  const Theory three = shipped();
  EXPECT_TRUE(check_theory(three, parse_structure("carrier: e\nP: (e)\nQ: (e)", pq())).empty());
  const auto bad = check_theory(three, split());
  ASSERT_FALSE(bad.empty());
  EXPECT_EQ(bad[0].axiom, 0u);
  EXPECT_EQ(bad[0].assignment, (std::vector<Elem>{0, 1}));
}

TEST(CheckTheory, AgreesWithNaiveSequentCheck) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto t = gen::random_theory(rng);
    for (int j = 0; j < 5; ++j) {
      const auto s = gen::random_structure(t.signature, rng() % 4, rng);
      const auto v = check_theory(t, s);
      EXPECT_EQ(v.empty(), oracle::is_model(s, t));
      EXPECT_EQ(satisfies(t, s), v.empty());
      for (const auto& x : v) {
        std::map<std::string, Elem> env;
        const auto& q = t.axioms[x.axiom];
        for (std::size_t k = 0; k < q.context.size(); ++k) env[q.context[k]] = x.assignment[k];
        EXPECT_TRUE(oracle::holds(s, q.lhs, env));
        EXPECT_FALSE(oracle::holds(s, q.rhs, env));
      }
    }
  }
}

TEST(EnumerateModels, TrivialTheories) {
  EXPECT_TRUE(enumerate_models(parse_theory("axiom no: true |- false"), 3).empty());
  const auto ms = enumerate_models(Theory{}, 2);
  ASSERT_EQ(ms.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ms[i].size(), i);
}

// Seven isomorphism classes, not three: see the ledger for why.
TEST(EnumerateModels, FiveAxiomTheoryUpToSizeThree) {
  const auto t = shipped();
  const auto ms = enumerate_models(t, 3);
  EXPECT_EQ(ms.size(), oracle::models_up_to_iso(t, 3).size());
  EXPECT_EQ(ms.size(), 7u);
  std::multiset<std::string> shapes;
  for (const auto& m : ms) {
    std::string shape;
    for (Elem e = 0; e < m.size(); ++e) {
      const bool p = m.holds(0, {e}), q = m.holds(1, {e});
      shape += p && q ? "B" : p ? "P" : q ? "Q" : "-";
    }
    std::sort(shape.begin(), shape.end());
    shapes.insert(shape);
  }
  EXPECT_EQ(shapes, (std::multiset<std::string>{"B", "-B", "--B", "BP", "-BP", "BQ", "-BQ"}));
}

TEST(EnumerateModels, AntichainAndCompleteAgainstOracle) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 60; ++i) {
    const auto t = gen::random_theory(rng);
    const auto ms = enumerate_models(t, 2);
    const auto expected = oracle::models_up_to_iso(t, 2);
    ASSERT_EQ(ms.size(), expected.size()) << to_string(t);
    std::set<std::string> keys;
    for (const auto& m : ms) {
      EXPECT_TRUE(oracle::is_model(m, t));
      keys.insert(oracle::structure_key(m));
    }
    EXPECT_EQ(keys.size(), ms.size());
    for (const auto& e : expected) EXPECT_TRUE(keys.count(oracle::structure_key(e)));
  }
}

TEST(EnumerateModels, BudgetIsEnforced) {
  Theory t;
  t.signature.add("E", 2);
  EXPECT_THROW(enumerate_models(t, 5, 1u << 10), ResourceLimit);
}

TEST(CanonicalForm, InvariantUnderRelabeling) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen::random_structure(rich(), 1 + rng() % 4, rng);
    auto perms = oracle::permutations(s.size());
    const auto t = relabel(s, perms[rng() % perms.size()]);
    EXPECT_EQ(canonical_form(s), canonical_form(t));
  }
}

TEST(CanonicalForm, SeparatesNonIsomorphicStructures) {
  std::map<std::string, FinStructure> by_key;
  for (std::size_t n = 0; n <= 3; ++n) {
    oracle::all_structures(Signature({{"P", 1}, {"E", 2}}), n, [&](const FinStructure& s) {
      const auto key = oracle::structure_key(s);
      auto [it, fresh] = by_key.emplace(key, canonical_form(s));
      if (!fresh) EXPECT_EQ(it->second, canonical_form(s));
    });
  }
  std::set<std::string> canon;
  for (const auto& [k, c] : by_key) canon.insert(to_string(c));
  EXPECT_EQ(canon.size(), by_key.size());
}

TEST(CanonicalForm, PredicateCardinality) {
  Signature p({{"P", 1}});
  auto one = parse_structure("carrier: a b\nP: (a)", p);
  auto both = parse_structure("carrier: a b\nP: (a) (b)", p);
  EXPECT_FALSE(canonical_form(one) == canonical_form(both));
  EXPECT_EQ(canonical_form(one).name(0), "e0");
}

TEST(Homomorphism, AgreesWithBruteForce) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto a = gen::random_structure(rich(), rng() % 4, rng);
    const auto b = gen::random_structure(rich(), rng() % 4, rng);
    EXPECT_EQ(homomorphism_exists(a, b), oracle::hom_exists(a, b));
  }
}

TEST(StructureText, RoundTrip) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto s = gen::random_structure(rich(), rng() % 4, rng);
    const auto back = parse_structure(to_string(s), rich());
    EXPECT_EQ(back, s);
    EXPECT_EQ(back.names(), s.names());
  }
}

TEST(StructureText, Errors) {
  EXPECT_THROW(parse_structure("carrier: a\nP: (b)", pq()), ParseError);
  EXPECT_THROW(parse_structure("carrier: a\nR: (a)", pq()), ParseError);
  EXPECT_THROW(parse_structure("carrier: a a", pq()), ParseError);
  EXPECT_THROW(parse_structure("carrier: a\nP: (a, a)", pq()), ParseError);
  EXPECT_THROW(parse_structure("P: (a)", pq()), ParseError);
}

TEST(FinStructure, QuotientKeepsFirstName) {
  auto s = split();
  const auto q = s.quotient({0, 0});
  EXPECT_EQ(q.size(), 1u);
  EXPECT_EQ(q.name(0), "a");
  const std::vector<Elem> only = {0};
  EXPECT_TRUE(q.holds(0, only) && q.holds(1, only));
}
