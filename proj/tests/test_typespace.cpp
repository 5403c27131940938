#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "polyadica/error.hpp"
#include "polyadica/io.hpp"
#include "polyadica/typespace.hpp"

using namespace polyadica;

namespace {

Theory shipped() { return parse_theory(read_file(std::string(POLYADICA_DATA_DIR) + "/theories/three_models.thy")); }

// "(x,y)" -> "xy"
std::string letters(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == 'x' || c == 'y' || c == 'z') out += c;
  }
  return out;
}

bool letter_leq(char a, char b) { return a == b || b == 'x'; }

bool closed_form_leq(const std::string& s, const std::string& t) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!letter_leq(s[i], t[i])) return false;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[i] == s[j] && t[i] != t[j]) return false;
    }
  }
  return true;
}

bool in_closed_form(const std::string& s) {
  return s.find('y') == std::string::npos || s.find('z') == std::string::npos;
}

// Pushout of k --s1--> n, k --s2--> m as a labelling of n ⊔ m by classes.
std::vector<std::size_t> pushout_classes(const VarMap& s1, const VarMap& s2, std::size_t& size) {
  const std::size_t n = s1.cod, m = s2.cod;
  std::vector<std::size_t> parent(n + m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t i = 0; i < s1.dom(); ++i) parent[find(s1.table[i])] = find(n + s2.table[i]);
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> cls(n + m);
  for (std::size_t x = 0; x < n + m; ++x) cls[x] = ids.emplace(find(x), ids.size()).first->second;
  size = ids.size();
  return cls;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<std::string> words(std::size_t n) {
  std::vector<std::string> out = {""};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out) {
      for (char c : {'x', 'y', 'z'}) next.push_back(w + c);
    }
    out = next;
  }
  return out;
}

// Depth-≤1 basis over context x0..x(n-1): every ∃u. (conjunction of atoms
// over the context and u), plus the quantifier-free conjunctions. Disjunctions
// add nothing to the order, since satisfaction of a disjunction is decided by
// its disjuncts and ∃ distributes over ∨.
std::vector<Formula> depth_one_basis(const Signature& sig, std::size_t n) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
  std::vector<std::string> with_u = vars;
  with_u.push_back("u");
  auto atoms_over = [&](const std::vector<std::string>& vs) {
    std::vector<Formula> out;
    for (const auto& r : sig.relations()) {
      for (const auto& a : oracle::assignments(r.arity, vs.size())) {
        std::vector<std::string> args;
        for (Elem e : a) args.push_back(vs[e]);
        out.push_back(atom(r.name, args));
      }
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) out.push_back(equal(vs[i], vs[j]));
    }
    return out;
  };
  auto conjunctions = [](const std::vector<Formula>& atoms) {
    std::vector<Formula> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
      Formula f = truth();
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (mask >> i & 1) f = conj(f, atoms[i]);
      }
      out.push_back(f);
    }
    return out;
  };
  std::vector<Formula> basis = conjunctions(atoms_over(vars));
  for (const auto& body : conjunctions(atoms_over(with_u))) basis.push_back(exists("u", body));
  return basis;
}

std::vector<bool> fingerprint(const FinStructure& s, const std::vector<Elem>& point, const std::vector<Formula>& basis) {
  std::map<std::string, Elem> env;
  for (std::size_t i = 0; i < point.size(); ++i) env["x" + std::to_string(i)] = point[i];
  std::vector<bool> out;
  for (const auto& f : basis) out.push_back(oracle::holds(s, f, env));
  return out;
}

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

// Classes and order of S(n) at depth 1 from the explicit basis, checked
// against the game-based construction.
void expect_matches_basis(const Theory& t, std::size_t n, std::size_t k, std::size_t expected_classes) {
  const auto p = approx_type_space(t, n, k, 1);
  const auto basis = depth_one_basis(t.signature, n);
  std::set<std::vector<bool>> prints;
  for (const auto& m : oracle::models_up_to_iso(t, k)) {
    for (const auto& pt : oracle::assignments(n, m.size())) prints.insert(fingerprint(m, pt, basis));
  }
  EXPECT_EQ(prints.size(), expected_classes);
  ASSERT_EQ(p.space(n)->size(), prints.size());
  std::vector<std::vector<bool>> of_class;
  for (const auto& r : p.representatives[n]) of_class.push_back(fingerprint(p.models[r.model], r.point, basis));
  for (Elem a = 0; a < of_class.size(); ++a) {
    for (Elem b = 0; b < of_class.size(); ++b) {
      EXPECT_EQ(p.space(n)->leq(a, b), subset(of_class[a], of_class[b])) << n << ": " << a << " " << b;
    }
  }
}

}  // namespace

TEST(VarMaps, CountsAndComposition) {
  EXPECT_EQ(all_var_maps(2, 3).size(), 9u);
  EXPECT_EQ(all_var_maps(0, 0).size(), 1u);
  EXPECT_TRUE(all_var_maps(1, 0).empty());
  const VarMap a{2, {1, 0, 1}};
  const VarMap b{3, {2, 0}};
  EXPECT_EQ(compose(a, b), (VarMap{3, {0, 2, 0}}));
  EXPECT_EQ(to_string(a), "3->2[1,0,1]");
}

TEST(PushoutSquares, CountMatchesIndependentEnumeration) {
  for (std::size_t N = 0; N <= 3; ++N) {
    std::size_t expected = 0;
    for (std::size_t k = 0; k <= N; ++k) {
      for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t m = 0; m <= N; ++m) {
          for (const auto& s1 : all_var_maps(k, n)) {
            for (const auto& s2 : all_var_maps(k, m)) {
              std::size_t l = 0;
              pushout_classes(s1, s2, l);
              if (l <= N) expected += factorial(l);
            }
          }
        }
      }
    }
    const auto squares = pushout_squares(N);
    EXPECT_EQ(squares.size(), expected) << N;
    for (const auto& sq : squares) EXPECT_EQ(compose(sq.s1, sq.t1), compose(sq.s2, sq.t2));
  }
  EXPECT_EQ(pushout_squares(2).size(), 55u);
}

TEST(Builtin, Sizes) {
  const auto p = builtin_counterexample(4);
  EXPECT_TRUE(p.exact());
  const std::vector<std::size_t> sizes = {1, 3, 7, 15, 31};
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(p.space(n)->size(), sizes[n]);
  EXPECT_EQ(p.space(0)->name(0), "()");
}

TEST(Builtin, OrderIsTheClosedFormAndAPartialOrder) {
  const auto p = builtin_counterexample(4);
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto& S = *p.space(n);
    std::set<std::string> expected;
    for (const auto& w : words(n)) {
      if (in_closed_form(w)) expected.insert(w);
    }
    std::set<std::string> got;
    for (Elem a = 0; a < S.size(); ++a) got.insert(letters(S.name(a)));
    EXPECT_EQ(got, expected);
    for (Elem a = 0; a < S.size(); ++a) {
      EXPECT_TRUE(closed_form_leq(letters(S.name(a)), letters(S.name(a))));
      for (Elem b = 0; b < S.size(); ++b) {
        const auto sa = letters(S.name(a)), sb = letters(S.name(b));
        EXPECT_EQ(S.leq(a, b), closed_form_leq(sa, sb));
        if (a != b) EXPECT_FALSE(closed_form_leq(sa, sb) && closed_form_leq(sb, sa));
        for (Elem c = 0; c < S.size(); ++c) {
          if (closed_form_leq(sa, sb) && closed_form_leq(sb, letters(S.name(c)))) {
            EXPECT_TRUE(closed_form_leq(sa, letters(S.name(c))));
          }
        }
      }
    }
  }
}

TEST(Builtin, ActionsArePrecomposition) {
  const auto p = builtin_counterexample(3);
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) {
      for (const auto& s : all_var_maps(n, m)) {
        const auto& act = p.action(s);
        for (Elem a = 0; a < p.space(m)->size(); ++a) {
          const auto w = letters(p.space(m)->name(a));
          std::string pulled;
          for (Elem i : s.table) pulled += w[i];
          EXPECT_EQ(letters(p.space(n)->name(act(a))), pulled);
        }
      }
    }
  }
  EXPECT_TRUE(check_functoriality(p).empty());
}

TEST(Builtin, AxiomReport) {
  const auto r = check_polyadic_axioms(builtin_counterexample(2));
  EXPECT_EQ(r.squares_checked, 55u);
  EXPECT_TRUE(r.int1_ok());
  EXPECT_TRUE(r.int2_ok());
  EXPECT_TRUE(r.functoriality.empty());
  ASSERT_EQ(r.amalgamation.size(), 2u);
  const auto p = builtin_counterexample(2);
  std::set<std::pair<std::string, std::string>> witnesses;
  for (const auto& f : r.amalgamation) {
    EXPECT_EQ(f.square.s1, (VarMap{1, {}}));
    EXPECT_EQ(f.square.s2, (VarMap{1, {}}));
    for (auto [b, c] : f.witnesses) witnesses.emplace(p.space(1)->name(b), p.space(1)->name(c));
  }
  EXPECT_EQ(witnesses, (std::set<std::pair<std::string, std::string>>{{"(y)", "(z)"}, {"(z)", "(y)"}}));
}

// Amalgamation fails exactly where the only candidate amalgam mixes y and z.
TEST(Builtin, AmalgamationFailuresMatchSpanEnumeration) {
  for (std::size_t N = 1; N <= 3; ++N) {
    const auto p = builtin_counterexample(N);
    std::set<std::tuple<VarMap, VarMap, std::string, std::string>> expected;
    for (std::size_t k = 0; k <= N; ++k) {
      for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t m = 0; m <= N; ++m) {
          for (const auto& s1 : all_var_maps(k, n)) {
            for (const auto& s2 : all_var_maps(k, m)) {
              std::size_t l = 0;
              const auto cls = pushout_classes(s1, s2, l);
              if (l > N) continue;
              for (const auto& b : words(n)) {
                for (const auto& c : words(m)) {
                  if (!in_closed_form(b) || !in_closed_form(c)) continue;
                  bool agree = true;
                  for (std::size_t i = 0; i < k; ++i) agree = agree && b[s1.table[i]] == c[s2.table[i]];
                  if (!agree) continue;
                  // The amalgam is forced: each class takes the letter of its members.
                  std::string d(l, '?');
                  for (std::size_t i = 0; i < n; ++i) d[cls[i]] = b[i];
                  for (std::size_t j = 0; j < m; ++j) d[cls[n + j]] = c[j];
                  if (!in_closed_form(d)) expected.emplace(s1, s2, b, c);
                }
              }
            }
          }
        }
      }
    }
    std::set<std::tuple<VarMap, VarMap, std::string, std::string>> got;
    for (const auto& f : check_polyadic_axioms(p).amalgamation) {
      for (auto [b, c] : f.witnesses) {
        got.emplace(f.square.s1, f.square.s2, letters(p.space(f.square.s1.cod)->name(b)),
                    letters(p.space(f.square.s2.cod)->name(c)));
      }
    }
    EXPECT_EQ(got, expected) << N;
    for (const auto& [s1, s2, b, c] : expected) {
      EXPECT_NE(b.find_first_of("yz"), std::string::npos);
      EXPECT_NE(c.find_first_of("yz"), std::string::npos);
    }
  }
}

TEST(ConstantSpace, PassesEverything) {
  const auto r = check_polyadic_axioms(constant_space(3));
  EXPECT_TRUE(r.int1_ok() && r.int2_ok() && r.amalgamation_ok());
  EXPECT_TRUE(r.functoriality.empty());
  EXPECT_GT(r.maps_checked, 0u);
}

TEST(ApproxTypeSpace, EmptySignature) {
  const auto p = approx_type_space(Theory{}, 1, 2, 1);
  ASSERT_EQ(p.space(0)->size(), 2u);
  EXPECT_FALSE(p.space(0)->is_antichain());
  EXPECT_EQ(p.space(1)->size(), 1u);
  EXPECT_FALSE(p.exact());
}

TEST(ApproxTypeSpace, InconsistentTheoryIsEmpty) {
  const auto p = approx_type_space(parse_theory("axiom no: true |- false"), 2, 2, 1);
  for (std::size_t n = 0; n <= 2; ++n) EXPECT_EQ(p.space(n)->size(), 0u);
  EXPECT_TRUE(check_functoriality(p).empty());
}

// The bare-element type sits below both y and z, so S(1) has four classes.
TEST(ApproxTypeSpace, FiveAxiomTheoryMatchesFormulaBasis) {
  expect_matches_basis(shipped(), 1, 3, 4);
  expect_matches_basis(shipped(), 2, 3, 15);
}

TEST(ApproxTypeSpace, FiveAxiomTheoryShape) {
  const auto p = approx_type_space(shipped(), 1, 3, 1);
  const auto& S = *p.space(1);
  ASSERT_EQ(S.size(), 4u);
  std::size_t top = 0, bottom = 0, middle = 0;
  for (Elem a = 0; a < 4; ++a) {
    const auto up = S.up(a).count(), down = S.down(a).count();
    if (up == 1 && down == 4) ++top;
    if (down == 1 && up == 4) ++bottom;
    if (up == 2 && down == 2) ++middle;
  }
  EXPECT_EQ(top, 1u);
  EXPECT_EQ(bottom, 1u);
  EXPECT_EQ(middle, 2u);
}

TEST(ApproxTypeSpace, GoldenReportForFiveAxiomTheory) {
  const auto p = approx_type_space(shipped(), 2, 3, 1);
  const auto r = check_polyadic_axioms(p);
  EXPECT_EQ(r.squares_checked, 55u);
  EXPECT_TRUE(r.int1_ok());
  EXPECT_TRUE(r.int2_ok());
  EXPECT_TRUE(r.functoriality.empty());
  EXPECT_EQ(r.amalgamation.size(), 2u);
}

TEST(ApproxTypeSpace, RefinesWithDepth) {
  const auto t = shipped();
  const auto models = enumerate_models(t, 3);
  std::vector<std::pair<std::size_t, std::vector<Elem>>> pts;
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (const auto& a : oracle::assignments(1, models[i].size())) pts.emplace_back(i, a);
  }
  for (const auto& [i, a] : pts) {
    for (const auto& [j, b] : pts) {
      const bool d2 = positive_type_leq(models[i], a, models[j], b, 2);
      const bool d1 = positive_type_leq(models[i], a, models[j], b, 1);
      const bool d0 = positive_type_leq(models[i], a, models[j], b, 0);
      if (d2) EXPECT_TRUE(d1);
      if (d1) EXPECT_TRUE(d0);
    }
  }
  for (std::size_t n = 0; n <= 2; ++n) {
    EXPECT_LE(approx_type_space(t, 2, 3, 1).space(n)->size(), approx_type_space(t, 2, 3, 2).space(n)->size());
  }
}

TEST(ApproxTypeSpace, LargerModelsKeepEveryClass) {
  const auto t = shipped();
  const auto small = approx_type_space(t, 1, 2, 1);
  const auto big = approx_type_space(t, 1, 3, 1);
  for (const auto& r : small.representatives[1]) {
    bool found = false;
    for (const auto& q : big.representatives[1]) {
      const auto& a = small.models[r.model];
      const auto& b = big.models[q.model];
      found = found || (positive_type_leq(a, r.point, b, q.point, 1) && positive_type_leq(b, q.point, a, r.point, 1));
    }
    EXPECT_TRUE(found);
  }
}

TEST(PositiveTypeLeq, HomomorphismAtDepthZero) {
  const Signature sig({{"P", 1}, {"Q", 1}});
  const auto pq = parse_structure("carrier: e\nP: (e)\nQ: (e)", sig);
  const auto p = parse_structure("carrier: a\nP: (a)", sig);
  const std::vector<Elem> at0 = {0};
  EXPECT_TRUE(positive_type_leq(p, at0, pq, at0, 0));
  EXPECT_FALSE(positive_type_leq(pq, at0, p, at0, 0));
  // Two points that are equal can only go to equal points.
  const auto two = parse_structure("carrier: a b\nP: (a) (b)", sig);
  EXPECT_FALSE(positive_type_leq(p, {0, 0}, two, {0, 1}, 0));
  EXPECT_TRUE(positive_type_leq(two, {0, 1}, p, {0, 0}, 0));
}

TEST(ApproxTypeSpace, WorkLimit) {
  EXPECT_THROW(approx_type_space(shipped(), 2, 3, 2, 100), ResourceLimit);
}

TEST(Dot, LabelsApproximations) {
  EXPECT_NE(to_dot(approx_type_space(shipped(), 1, 2, 1)).find("(lossy)"), std::string::npos);
  const auto exact = to_dot(builtin_counterexample(1));
  EXPECT_EQ(exact.find("(lossy)"), std::string::npos);
  EXPECT_NE(exact.find("digraph"), std::string::npos);
}
