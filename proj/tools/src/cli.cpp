#include "polyadica/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polyadica/chase.hpp"
#include "polyadica/duality.hpp"
#include "polyadica/error.hpp"
#include "polyadica/interpolants.hpp"
#include "polyadica/io.hpp"
#include "polyadica/squares.hpp"
#include "polyadica/structure.hpp"
#include "polyadica/suite.hpp"
#include "polyadica/theory.hpp"
#include "polyadica/typespace.hpp"

namespace polyadica::cli {
namespace {

using json = nlohmann::ordered_json;

json poset_json(const FinPoset& p) {
  json covers_j = json::array();
  for (const auto& [a, b] : covers(p)) covers_j.push_back({p.name(a), p.name(b)});
  return {{"elements", p.names()}, {"covers", covers_j}};
}

json structure_json(const FinStructure& s) {
  json rels = json::object();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    json ts = json::array();
    for (const auto& t : s.tuples(r)) {
      json tj = json::array();
      for (Elem e : t) tj.push_back(s.name(e));
      ts.push_back(tj);
    }
    rels[s.signature()[r].name] = ts;
  }
  return {{"carrier", s.names()}, {"relations", rels}};
}

json suite_json(const SuiteResult& r) {
  return {{"name", r.name}, {"checked", r.checked}, {"failures", r.failures}, {"first_failure", r.first_failure}};
}

void print_suite(std::ostream& out, const SuiteResult& r) {
  out << r.name << ": " << r.checked << " checked, " << r.failures << " failures";
  if (!r.ok()) out << " (first: " << r.first_failure << ")";
  out << "\n";
}

Theory load_theory(const std::string& path) { return parse_theory(read_file(path)); }

struct BudgetFlags {
  std::size_t max_nodes = 500;
  std::size_t max_carrier = 8;
  std::size_t max_depth = 64;
  CLI::Option* nodes_opt = nullptr;

  void add(CLI::App* sub) {
    nodes_opt = sub->add_option("--max-nodes", max_nodes, "Chase tree node budget");
    sub->add_option("--max-carrier", max_carrier, "Largest carrier a node may have");
    sub->add_option("--max-depth", max_depth, "Deepest node");
  }

  ChaseBudget resolve() const {
    ChaseBudget b{max_nodes, max_carrier, max_depth};
    if (nodes_opt->count() == 0) {
      if (const char* env = std::getenv("POLYADICA_BUDGET_NODES")) {
        try {
          b.max_nodes = std::stoul(env);
        } catch (const std::exception&) {
          throw InvalidInput("POLYADICA_BUDGET_NODES is not a number: '" + std::string(env) + "'");
        }
      }
    }
    return b;
  }
};

template <class Obj>
Elem element(const Obj& o, const std::string& name, const char* what) {
  auto e = o.find(name);
  if (!e) throw InvalidInput(std::string("no element '") + name + "' in " + what);
  return *e;
}

std::string orientation_name(Orientation o) { return o == Orientation::kUfLeqVg ? "uf<=vg" : "vg<=uf"; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite duality, interpolation and chase checks for coherent logic"};
  app.name("polyadica");
  app.require_subcommand(1);
  bool as_json = false;
  std::function<int()> action;

  // dualize
  auto* dualize = app.add_subcommand("dualize", "Print the dual poset of a lattice");
  std::string lattice_file;
  dualize->add_option("lattice", lattice_file, "Lattice file")->required();
  dualize->add_flag("--json", as_json);
  dualize->callback([&] {
    action = [&] {
      const auto l = parse_lattice(read_file(lattice_file));
      const DualityWitness w = spec(l);
      if (as_json) {
        json filters = json::object();
        for (Elem x = 0; x < w.space->size(); ++x) {
          json f = json::array();
          for (Elem a = 0; a < l->size(); ++a) {
            if (w.filters[x].test(a)) f.push_back(l->name(a));
          }
          filters[w.space->name(x)] = f;
        }
        out << json{{"space", poset_json(*w.space)}, {"filters", filters}}.dump(2) << "\n";
      } else {
        out << to_string(*w.space);
      }
      return kOk;
    };
  });

  // check-duality
  auto* check_duality = app.add_subcommand("check-duality", "Round-trip every small lattice and poset");
  std::size_t duality_size = 4;
  check_duality->add_option("--max-size", duality_size, "Largest dual poset")->check(CLI::Range(0, 6));
  check_duality->add_flag("--json", as_json);
  check_duality->callback([&] {
    action = [&] {
      const SuiteResult r = run_duality_roundtrip(duality_size);
      if (as_json) {
        out << suite_json(r).dump(2) << "\n";
      } else {
        print_suite(out, r);
      }
      return r.ok() ? kOk : kConsistency;
    };
  });

  // check-square
  auto* check_square = app.add_subcommand("check-square", "Run every square decider on a square file");
  std::string square_file;
  check_square->add_option("square", square_file, "Square file")->required();
  check_square->add_flag("--json", as_json);
  check_square->callback([&] {
    action = [&] {
      const AnySquare any = load_square(square_file);
      json verdicts;
      bool interpolation = false;
      if (const auto* s = std::get_if<LatticeSquare>(&any)) {
        const auto interp = has_interpolation(*s);
        interpolation = interp.holds;
        verdicts["kind"] = "lattice";
        verdicts["orientation"] = orientation_name(s->orientation);
        verdicts["interpolation"] = interp.holds;
        if (interp.first_failure) {
          const auto st = s->standard();
          verdicts["first_failure"] = {st.f.cod()->name(interp.first_failure->first),
                                       st.g.cod()->name(interp.first_failure->second)};
        }
        verdicts["amalgamation"] = has_amalgamation(underlying(*s));
        verdicts["beck_chevalley"] = beck_chevalley_holds(*s);
        verdicts["strong_interpolation"] = strong_interpolation(*s);
        verdicts["dual_interpolation"] = check_selfduality(*s);
      } else {
        const auto& p = std::get<PosetSquare>(any);
        const auto interp = has_interpolation(p);
        interpolation = interp.holds;
        const auto w = weakening_relations(p);
        verdicts["kind"] = "poset";
        verdicts["orientation"] = orientation_name(p.orientation);
        verdicts["interpolation"] = interp.holds;
        if (interp.first_failure) {
          const auto st = p.standard();
          verdicts["first_failure"] = {st.f.cod()->name(interp.first_failure->first),
                                       st.g.cod()->name(interp.first_failure->second)};
        }
        verdicts["amalgamation"] = has_amalgamation(p);
        verdicts["weakening_relations_equal"] = w.r2.is_subset_of(w.r1);
        verdicts["transposed_interpolation"] = has_interpolation(p.transposed()).holds;
        if (verdicts["weakening_relations_equal"] != interp.holds) {
          throw ConsistencyViolation("check-square: weakening relations disagree with interpolation");
        }
      }
      if (as_json) {
        out << verdicts.dump(2) << "\n";
      } else {
        for (const auto& [k, v] : verdicts.items()) {
          out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
      }
      return interpolation ? kOk : kNegative;
    };
  });

  // models
  auto* models = app.add_subcommand("models", "Enumerate finite models up to isomorphism");
  std::string theory_file;
  std::size_t max_size = 3;
  models->add_option("theory", theory_file, "Theory file")->required();
  models->add_option("--max-size", max_size, "Largest carrier");
  models->add_flag("--json", as_json);
  models->callback([&] {
    action = [&] {
      const Theory t = load_theory(theory_file);
      const auto ms = enumerate_models(t, max_size);
      if (as_json) {
        json arr = json::array();
        for (const auto& m : ms) arr.push_back(structure_json(m));
        out << arr.dump(2) << "\n";
      } else {
        out << ms.size() << " models up to isomorphism with at most " << max_size << " elements\n";
        for (const auto& m : ms) out << "\n" << to_string(m);
      }
      return kOk;
    };
  });

  // chase
  auto* chase = app.add_subcommand("chase", "Run the disjunctive chase");
  std::string start_file, tree_file;
  BudgetFlags chase_budget;
  chase->add_option("theory", theory_file, "Theory file")->required();
  chase->add_option("--start", start_file, "Structure to start from");
  chase->add_option("--emit-tree", tree_file, "Write the chase tree as JSON");
  chase_budget.add(chase);
  chase->add_flag("--json", as_json);
  chase->callback([&] {
    action = [&] {
      const Theory t = load_theory(theory_file);
      const FinStructure start =
          start_file.empty() ? FinStructure(t.signature) : parse_structure(read_file(start_file), t.signature);
      const ChaseTree tree = run_chase(t, start, chase_budget.resolve());
      for (std::size_t id : tree.leaves_with(NodeStatus::kSaturated)) {
        if (!satisfies(t, tree.nodes[id].structure)) {
          throw ConsistencyViolation("chase: saturated leaf " + std::to_string(id) + " violates the theory");
        }
      }
      const std::string tree_json = tree_to_json(tree);
      if (!tree_file.empty()) {
        std::ofstream f(tree_file);
        if (!f) throw InvalidInput("cannot write '" + tree_file + "'");
        f << tree_json << "\n";
      }
      const auto saturated = tree.leaves_with(NodeStatus::kSaturated);
      const auto exhausted = tree.leaves_with(NodeStatus::kBudgetExhausted);
      const auto inconsistent = tree.leaves_with(NodeStatus::kInconsistent);
      if (as_json) {
        out << tree_json << "\n";
      } else {
        out << tree.nodes.size() << " nodes, " << saturated.size() << " saturated, " << inconsistent.size()
            << " inconsistent, " << exhausted.size() << " budget-exhausted\n";
        for (std::size_t id : saturated) out << "\nleaf " << id << "\n" << to_string(tree.nodes[id].structure);
      }
      if (!exhausted.empty()) return kUnknown;
      return saturated.empty() ? kNegative : kOk;
    };
  });

  // prove
  auto* prove = app.add_subcommand("prove", "Decide a sequent by refutation");
  std::string sequent_text;
  BudgetFlags prove_budget;
  prove->add_option("theory", theory_file, "Theory file")->required();
  prove->add_option("--sequent", sequent_text, "lhs |- rhs")->required();
  prove_budget.add(prove);
  prove->add_flag("--json", as_json);
  prove->callback([&] {
    action = [&] {
      const Theory t = load_theory(theory_file);
      const Sequent s = parse_sequent(sequent_text, t.signature);
      const RefuteResult r = refute(t, s, prove_budget.resolve());
      if (as_json) {
        json j{{"sequent", to_string(s)}, {"verdict", to_string(r.verdict)}, {"nodes", r.tree.nodes.size()}};
        if (r.countermodel) {
          json point = json::object();
          for (std::size_t i = 0; i < s.context.size(); ++i) {
            point[s.context[i]] = r.countermodel->structure.name(r.countermodel->point[i]);
          }
          j["countermodel"] = {{"structure", structure_json(r.countermodel->structure)}, {"point", point}};
        }
        out << j.dump(2) << "\n";
      } else {
        out << to_string(s) << ": " << to_string(r.verdict) << " (" << r.tree.nodes.size() << " nodes)\n";
        if (r.verdict == Verdict::kRefuted) out << "valid: every branch of the refutation closed\n";
        if (r.countermodel) {
          out << "\n" << to_string(r.countermodel->structure) << "point:";
          for (std::size_t i = 0; i < s.context.size(); ++i) {
            out << " " << s.context[i] << "=" << r.countermodel->structure.name(r.countermodel->point[i]);
          }
          out << "\n";
        }
      }
      switch (r.verdict) {
        case Verdict::kRefuted: return kOk;
        case Verdict::kCountermodel: return kNegative;
        case Verdict::kUnknown: break;
      }
      return kUnknown;
    };
  });

  // typespace
  auto* typespace = app.add_subcommand("typespace", "Approximate the type-space functor and check its axioms");
  std::size_t max_arity = 2, max_model = 3, max_depth = 1;
  std::string dot_file;
  bool builtin = false;
  typespace->add_option("theory", theory_file, "Theory file");
  typespace->add_flag("--builtin", builtin, "Use the closed-form example space instead of a theory");
  typespace->add_option("--max-arity", max_arity, "Largest arity")->check(CLI::Range(0, 4));
  typespace->add_option("--max-model", max_model, "Largest model carrier");
  typespace->add_option("--max-depth", max_depth, "Quantifier depth of the formulas");
  typespace->add_option("--dot", dot_file, "Write Hasse diagrams in DOT");
  typespace->add_flag("--json", as_json);
  typespace->callback([&] {
    action = [&] {
      if (builtin == !theory_file.empty()) throw CLI::ValidationError("give a theory file or --builtin, not both");
      const PolyadicApprox p =
          builtin ? builtin_counterexample(max_arity)
                  : approx_type_space(load_theory(theory_file), max_arity, max_model, max_depth);
      const PolyadicReport r = check_polyadic_axioms(p);
      if (!dot_file.empty()) {
        std::ofstream f(dot_file);
        if (!f) throw InvalidInput("cannot write '" + dot_file + "'");
        f << to_dot(p);
      }
      auto space_name = [&](const PushoutSquare& sq, std::pair<Elem, Elem> w) {
        return json{p.space(sq.s1.cod)->name(w.first), p.space(sq.s2.cod)->name(w.second)};
      };
      auto failures = [&](const std::vector<SquareFailure>& fs) {
        json arr = json::array();
        for (const auto& f : fs) {
          json ws = json::array();
          for (const auto& w : f.witnesses) ws.push_back(space_name(f.square, w));
          arr.push_back({{"square", to_string(f.square)}, {"witnesses", ws}});
        }
        return arr;
      };
      json int2 = json::array();
      for (const auto& s : r.int2) int2.push_back(to_string(s));
      json j;
      j["exact"] = p.exact();
      if (p.bounds) j["bounds"] = {{"max_model", p.bounds->max_model}, {"max_depth", p.bounds->max_depth}};
      json spaces = json::array();
      for (const auto& s : p.spaces) spaces.push_back(poset_json(*s));
      j["spaces"] = spaces;
      j["squares_checked"] = r.squares_checked;
      j["maps_checked"] = r.maps_checked;
      j["int1_failures"] = failures(r.int1);
      j["int2_failures"] = int2;
      j["amalgamation_failures"] = failures(r.amalgamation);
      j["functoriality_failures"] = r.functoriality;
      if (as_json) {
        out << j.dump(2) << "\n";
      } else {
        if (p.bounds) {
          out << "approximation at max-model " << p.bounds->max_model << ", max-depth " << p.bounds->max_depth
              << "; verdicts hold at these bounds only\n";
        } else {
          out << "closed-form space\n";
        }
        for (std::size_t n = 0; n < p.spaces.size(); ++n) {
          out << "\nS(" << n << "), " << p.spaces[n]->size() << " points\n" << to_string(*p.spaces[n]);
        }
        out << "\n" << r.squares_checked << " pushout squares, " << r.maps_checked << " maps\n";
        out << "Int1*: " << (r.int1_ok() ? "pass" : "FAIL") << "\n";
        for (const auto& f : j["int1_failures"]) out << "  " << f.dump() << "\n";
        out << "Int2*: " << (r.int2_ok() ? "pass" : "FAIL") << "\n";
        for (const auto& f : r.int2) out << "  " << to_string(f) << "\n";
        out << "amalgamation: " << (r.amalgamation_ok() ? "pass" : "FAIL") << "\n";
        for (const auto& f : j["amalgamation_failures"]) out << "  " << f.dump() << "\n";
        out << "functoriality: " << (r.functoriality.empty() ? "pass" : "FAIL") << "\n";
      }
      if (!r.functoriality.empty()) return kConsistency;
      return r.int1_ok() && r.int2_ok() && r.amalgamation_ok() ? kOk : kNegative;
    };
  });

  // interpolate
  auto* interpolate = app.add_subcommand("interpolate", "Least interpolant of a lattice square");
  std::string b_name, c_name;
  interpolate->add_option("square", square_file, "Square file")->required();
  interpolate->add_option("--b", b_name, "Element of B")->required();
  interpolate->add_option("--c", c_name, "Element of C")->required();
  interpolate->add_flag("--json", as_json);
  interpolate->callback([&] {
    action = [&] {
      const AnySquare any = load_square(square_file);
      const auto* s = std::get_if<LatticeSquare>(&any);
      if (!s) throw InvalidInput("interpolate needs a lattice square");
      const LatticeSquare st = s->standard();
      const Elem b = element(*st.f.cod(), b_name, "B");
      const Elem c = element(*st.g.cod(), c_name, "C");
      const auto a = find_interpolant(*s, b, c);
      if (as_json) {
        out << json{{"b", b_name}, {"c", c_name}, {"interpolant", a ? json(st.f.dom()->name(*a)) : json(nullptr)}}
                   .dump(2)
            << "\n";
      } else {
        out << (a ? st.f.dom()->name(*a) : std::string("none")) << "\n";
      }
      return a ? kOk : kNegative;
    };
  });

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the exhaustive proposition suite");
  std::size_t self_size = 3, samples = 10000;
  std::uint64_t seed = 1;
  selftest->add_option("--max-size", self_size, "Largest dual poset")->check(CLI::Range(0, 4));
  selftest->add_option("--samples", samples, "Random squares at the largest size");
  selftest->add_option("--seed", seed, "Sampling seed");
  selftest->add_flag("--json", as_json);
  selftest->callback([&] {
    action = [&] {
      const std::size_t exhaustive = std::min<std::size_t>(self_size, 2);
      const std::vector<SuiteResult> results = {
          run_duality_roundtrip(self_size),
          run_beck_chevalley(exhaustive, self_size, samples, seed),
          run_selfduality(exhaustive, self_size, samples, seed),
          run_frobenius(self_size),
          run_heyting_pushouts(self_size),
      };
      bool ok = true;
      json arr = json::array();
      for (const auto& r : results) {
        ok = ok && r.ok();
        arr.push_back(suite_json(r));
        if (!as_json) print_suite(out, r);
      }
      if (as_json) out << arr.dump(2) << "\n";
      return ok ? kOk : kConsistency;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kUnknown;
  } catch (const ConsistencyViolation& e) {
    err << "consistency violation: " << e.what() << "\n";
    return kConsistency;
  }
}

}  // namespace polyadica::cli
