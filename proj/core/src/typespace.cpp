#include "polyadica/typespace.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "polyadica/error.hpp"
#include "polyadica/square.hpp"

namespace polyadica {

std::string to_string(const VarMap& s) {
  std::string out = std::to_string(s.dom()) + "->" + std::to_string(s.cod) + "[";
  for (std::size_t i = 0; i < s.table.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.table[i]);
  }
  return out + "]";
}

std::vector<VarMap> all_var_maps(std::size_t n, std::size_t m) {
  std::vector<VarMap> out;
  if (n > 0 && m == 0) return out;
  VarMap s{m, std::vector<Elem>(n, 0)};
  while (true) {
    out.push_back(s);
    std::size_t i = n;
    while (i > 0 && s.table[i - 1] + 1 == m) s.table[--i] = 0;
    if (i == 0) return out;
    ++s.table[i - 1];
  }
}

VarMap compose(const VarMap& first, const VarMap& second) {
  if (first.cod != second.dom()) throw InvalidInput("compose: variable maps do not compose");
  VarMap r{second.cod, {}};
  for (Elem e : first.table) r.table.push_back(second.table[e]);
  return r;
}

const MonotoneMap& PolyadicApprox::action(const VarMap& s) const {
  auto it = actions.find(s);
  if (it == actions.end()) throw InvalidInput("polyadic space: no action for " + to_string(s));
  return it->second;
}

// ---------------------------------------------------------------------------

namespace {

class Game {
 public:
  Game(const FinStructure& a, const FinStructure& b, std::size_t* work, std::size_t limit)
      : a_(a), b_(b), work_(work), limit_(limit) {
    for (std::size_t r = 0; r < a.signature().size(); ++r) facts_.push_back(a.tuples(r));
  }

  bool leq(std::vector<Elem>& pa, std::vector<Elem>& pb, std::size_t rounds) {
    std::vector<Elem> key = pa;
    key.insert(key.end(), pb.begin(), pb.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (work_ && ++*work_ > limit_) {
      throw ResourceLimit("typespace: comparison work exceeds the limit of " + std::to_string(limit_));
    }
    bool ok = base(pa, pb);
    if (ok && rounds > 0) {
      for (Elem x = 0; x < a_.size() && ok; ++x) {
        pa.push_back(x);
        bool answered = false;
        for (Elem y = 0; y < b_.size() && !answered; ++y) {
          pb.push_back(y);
          answered = leq(pa, pb, rounds - 1);
          pb.pop_back();
        }
        pa.pop_back();
        ok = answered;
      }
    }
    memo_.emplace(std::move(key), ok);
    return ok;
  }

 private:
  // Is pa ↦ pb a partial homomorphism?
  bool base(const std::vector<Elem>& pa, const std::vector<Elem>& pb) const {
    constexpr Elem kNone = ~Elem{0};
    std::vector<Elem> h(a_.size(), kNone);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      if (h[pa[i]] != kNone && h[pa[i]] != pb[i]) return false;
      h[pa[i]] = pb[i];
    }
    std::vector<Elem> image;
    for (std::size_t r = 0; r < facts_.size(); ++r) {
      for (const auto& t : facts_[r]) {
        image.clear();
        bool inside = true;
        for (Elem e : t) {
          if (h[e] == kNone) {
            inside = false;
            break;
          }
          image.push_back(h[e]);
        }
        if (inside && !b_.holds(r, image)) return false;
      }
    }
    return true;
  }

  const FinStructure& a_;
  const FinStructure& b_;
  std::vector<std::vector<std::vector<Elem>>> facts_;
  std::map<std::vector<Elem>, bool> memo_;
  std::size_t* work_;
  std::size_t limit_;
};

template <class Visit>
void for_each_tuple(std::size_t n, std::size_t size, Visit&& visit) {
  if (n > 0 && size == 0) return;
  std::vector<Elem> t(n, 0);
  while (true) {
    visit(t);
    std::size_t i = n;
    while (i > 0 && t[i - 1] + 1 == size) t[--i] = 0;
    if (i == 0) return;
    ++t[i - 1];
  }
}

std::string rep_name(const PolyadicApprox& p, const PointedRep& r) {
  std::string out = "m" + std::to_string(r.model) + "(";
  for (std::size_t i = 0; i < r.point.size(); ++i) {
    if (i) out += ",";
    out += p.models[r.model].name(r.point[i]);
  }
  return out + ")";
}

void fill_actions(PolyadicApprox& p, const std::function<Elem(const VarMap&, Elem)>& act) {
  for (std::size_t n = 0; n <= p.max_arity; ++n) {
    for (std::size_t m = 0; m <= p.max_arity; ++m) {
      for (auto& s : all_var_maps(n, m)) {
        std::vector<Elem> table;
        for (Elem c = 0; c < p.spaces[m]->size(); ++c) table.push_back(act(s, c));
        p.actions.emplace(s, MonotoneMap(p.spaces[m], p.spaces[n], std::move(table)));
      }
    }
  }
}

}  // namespace

bool positive_type_leq(const FinStructure& a, const std::vector<Elem>& pa, const FinStructure& b,
                       const std::vector<Elem>& pb, std::size_t d) {
  if (pa.size() != pb.size()) throw InvalidInput("positive_type_leq: points of different arity");
  if (!(a.signature() == b.signature())) throw InvalidInput("positive_type_leq: signatures differ");
  Game g(a, b, nullptr, 0);
  std::vector<Elem> x = pa, y = pb;
  return g.leq(x, y, d);
}

PolyadicApprox approx_type_space(const Theory& t, std::size_t max_arity, std::size_t k, std::size_t d,
                                 std::size_t work_limit) {
  PolyadicApprox p;
  p.max_arity = max_arity;
  p.bounds = TypeSpaceBounds{k, d};
  p.models = enumerate_models(t, k);
  const std::size_t nm = p.models.size();
  std::size_t work = 0;

  // class_of[n][(model, tuple)] for every pointed model.
  std::vector<std::map<std::pair<std::size_t, std::vector<Elem>>, Elem>> class_of(max_arity + 1);
  std::vector<std::vector<PointedRep>> all_pts;
  std::vector<std::vector<Elem>> all_cls;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<PointedRep> pts;
    for (std::size_t i = 0; i < nm; ++i) {
      for_each_tuple(n, p.models[i].size(), [&](const std::vector<Elem>& tup) { pts.push_back({i, tup}); });
    }
    // Games are cached per ordered pair of models.
    std::map<std::pair<std::size_t, std::size_t>, Game> games;
    auto game = [&](std::size_t i, std::size_t j) -> Game& {
      auto it = games.find({i, j});
      if (it == games.end()) {
        it = games.emplace(std::piecewise_construct, std::forward_as_tuple(i, j),
                           std::forward_as_tuple(p.models[i], p.models[j], &work, work_limit))
                 .first;
      }
      return it->second;
    };
    const std::size_t np = pts.size();
    std::vector<std::vector<char>> leq(np, std::vector<char>(np, 0));
    for (std::size_t x = 0; x < np; ++x) {
      for (std::size_t y = 0; y < np; ++y) {
        std::vector<Elem> a = pts[x].point, b = pts[y].point;
        leq[x][y] = x == y || game(pts[x].model, pts[y].model).leq(a, b, d);
      }
    }
    std::vector<Elem> cls(np);
    std::vector<std::size_t> first;  // class → first member
    for (std::size_t x = 0; x < np; ++x) {
      auto it = std::find_if(first.begin(), first.end(),
                             [&](std::size_t f) { return leq[x][f] && leq[f][x]; });
      if (it == first.end()) {
        cls[x] = static_cast<Elem>(first.size());
        first.push_back(x);
      } else {
        cls[x] = static_cast<Elem>(it - first.begin());
      }
      class_of[n].emplace(std::make_pair(pts[x].model, pts[x].point), cls[x]);
    }
    const std::size_t nc = first.size();
    std::vector<Subset> up(nc, Subset(nc));
    std::vector<std::string> names;
    std::vector<PointedRep> reps;
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t e = 0; e < nc; ++e) {
        if (leq[first[c]][first[e]]) up[c].set(e);
      }
      reps.push_back(pts[first[c]]);
    }
    p.representatives.push_back(reps);
    for (const auto& r : reps) names.push_back(rep_name(p, r));
    p.spaces.push_back(make_poset(FinPoset::from_up_sets(std::move(up), std::move(names))));

    all_pts.push_back(std::move(pts));
    all_cls.push_back(std::move(cls));
  }

  // Precomposition must not depend on the representative.
  for (std::size_t n = 0; n <= max_arity; ++n) {
    for (std::size_t m = 0; m <= max_arity; ++m) {
      for (const auto& s : all_var_maps(m, n)) {
        std::vector<std::optional<Elem>> image(p.spaces[n]->size());
        for (std::size_t x = 0; x < all_pts[n].size(); ++x) {
          const PointedRep& pt = all_pts[n][x];
          std::vector<Elem> q;
          for (Elem i : s.table) q.push_back(pt.point[i]);
          const Elem target = class_of[m].at({pt.model, q});
          auto& slot = image[all_cls[n][x]];
          if (slot && *slot != target) {
            throw ConsistencyViolation("typespace: S(" + to_string(s) + ") is not well defined");
          }
          slot = target;
        }
      }
    }
  }

  fill_actions(p, [&](const VarMap& s, Elem c) {
    const PointedRep& r = p.representatives[s.cod][c];
    std::vector<Elem> q;
    for (Elem i : s.table) q.push_back(r.point[i]);
    return class_of[s.dom()].at({r.model, q});
  });
  return p;
}

PolyadicApprox builtin_counterexample(std::size_t max_arity) {
  // Letters: 0 = x, 1 = y, 2 = z; y < x and z < x.
  static const char* const kLetter[] = {"x", "y", "z"};
  auto letter_leq = [](Elem a, Elem b) { return a == b || b == 0; };
  PolyadicApprox p;
  p.max_arity = max_arity;
  std::vector<std::vector<std::vector<Elem>>> tuples(max_arity + 1);
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::vector<std::string> names;
    for_each_tuple(n, 3, [&](const std::vector<Elem>& t) {
      const bool has_y = std::count(t.begin(), t.end(), Elem{1}) > 0;
      const bool has_z = std::count(t.begin(), t.end(), Elem{2}) > 0;
      if (has_y && has_z) return;
      tuples[n].push_back(t);
      std::string name = "(";
      for (std::size_t i = 0; i < n; ++i) name += (i ? "," : "") + std::string(kLetter[t[i]]);
      names.push_back(name + ")");
    });
    const auto& ts = tuples[n];
    std::vector<Subset> up(ts.size(), Subset(ts.size()));
    for (std::size_t a = 0; a < ts.size(); ++a) {
      for (std::size_t b = 0; b < ts.size(); ++b) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          ok = letter_leq(ts[a][i], ts[b][i]);
          for (std::size_t j = 0; j < n && ok; ++j) {
            if (ts[a][i] == ts[a][j]) ok = ts[b][i] == ts[b][j];
          }
        }
        if (ok) up[a].set(b);
      }
    }
    p.spaces.push_back(make_poset(FinPoset::from_up_sets(std::move(up), std::move(names))));
  }
  fill_actions(p, [&](const VarMap& s, Elem c) {
    const auto& t = tuples[s.cod][c];
    std::vector<Elem> q;
    for (Elem i : s.table) q.push_back(t[i]);
    const auto& target = tuples[s.dom()];
    return static_cast<Elem>(std::find(target.begin(), target.end(), q) - target.begin());
  });
  return p;
}

PolyadicApprox constant_space(std::size_t max_arity) {
  PolyadicApprox p;
  p.max_arity = max_arity;
  for (std::size_t n = 0; n <= max_arity; ++n) p.spaces.push_back(make_poset(FinPoset::chain(1)));
  fill_actions(p, [](const VarMap&, Elem) { return Elem{0}; });
  return p;
}

std::string to_string(const PushoutSquare& p) {
  return "span " + to_string(p.s1) + ", " + to_string(p.s2) + " into " + to_string(p.t1) + ", " +
         to_string(p.t2);
}

std::vector<PushoutSquare> pushout_squares(std::size_t max_arity) {
  std::vector<PushoutSquare> out;
  const std::size_t N = max_arity;
  for (std::size_t k = 0; k <= N; ++k) {
    for (std::size_t n = 0; n <= N; ++n) {
      for (std::size_t m = 0; m <= N; ++m) {
        for (const auto& s1 : all_var_maps(k, n)) {
          for (const auto& s2 : all_var_maps(k, m)) {
            // Canonical pushout: n ⊔ m modulo s1(i) ~ s2(i).
            std::vector<Elem> parent(n + m);
            std::iota(parent.begin(), parent.end(), Elem{0});
            auto find = [&](Elem x) {
              while (parent[x] != x) x = parent[x];
              return x;
            };
            for (std::size_t i = 0; i < k; ++i) {
              Elem a = find(s1.table[i]), b = find(static_cast<Elem>(n + s2.table[i]));
              if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
            std::map<Elem, Elem> number;
            std::vector<Elem> can(n + m);
            for (Elem x = 0; x < n + m; ++x) {
              auto it = number.emplace(find(x), static_cast<Elem>(number.size())).first;
              can[x] = it->second;
            }
            const std::size_t l = number.size();
            if (l > N) continue;
            std::vector<Elem> perm(l);
            std::iota(perm.begin(), perm.end(), Elem{0});
            do {
              PushoutSquare sq{s1, s2, VarMap{l, {}}, VarMap{l, {}}};
              for (std::size_t i = 0; i < n; ++i) sq.t1.table.push_back(perm[can[i]]);
              for (std::size_t i = 0; i < m; ++i) sq.t2.table.push_back(perm[can[n + i]]);
              out.push_back(std::move(sq));
            } while (std::next_permutation(perm.begin(), perm.end()));
          }
        }
      }
    }
  }
  return out;
}

ImageSquareMaps image_square(const PolyadicApprox& p, const PushoutSquare& sq) {
  return {p.action(sq.t1), p.action(sq.t2), p.action(sq.s1), p.action(sq.s2)};
}

std::vector<std::string> check_functoriality(const PolyadicApprox& p) {
  std::vector<std::string> problems;
  const std::size_t N = p.max_arity;
  for (std::size_t n = 0; n <= N; ++n) {
    VarMap id{n, std::vector<Elem>(n)};
    std::iota(id.table.begin(), id.table.end(), Elem{0});
    if (!(p.action(id) == MonotoneMap::identity(p.space(n)))) {
      problems.push_back("S(" + to_string(id) + ") is not the identity");
    }
  }
  for (std::size_t n = 0; n <= N; ++n) {
    for (std::size_t m = 0; m <= N; ++m) {
      for (std::size_t l = 0; l <= N; ++l) {
        for (const auto& s : all_var_maps(n, m)) {
          for (const auto& t : all_var_maps(m, l)) {
            const MonotoneMap lhs = p.action(compose(s, t));
            const MonotoneMap rhs = polyadica::compose(p.action(t), p.action(s));
            if (!(lhs == rhs)) {
              problems.push_back("S(" + to_string(t) + " . " + to_string(s) + ") differs from the composite");
            }
          }
        }
      }
    }
  }
  return problems;
}

PolyadicReport check_polyadic_axioms(const PolyadicApprox& p) {
  PolyadicReport r;
  r.functoriality = check_functoriality(p);
  for (const auto& [s, map] : p.actions) {
    ++r.maps_checked;
    if (!is_bounded(map)) r.int2.push_back(s);
  }
  for (const auto& sq : pushout_squares(p.max_arity)) {
    ++r.squares_checked;
    auto m = image_square(p, sq);
    auto square = LaxSquare<MonotoneMap>::make(m.f, m.g, m.u, m.v);
    auto interp = has_interpolation(square);
    if (!interp.holds) {
      SquareFailure f{sq, {}};
      const auto& D = *m.u.cod();
      for (Elem b = 0; b < square.size_b(); ++b) {
        for (Elem c = 0; c < square.size_c(); ++c) {
          if (D.leq(m.u(b), m.v(c)) && !interp.at(b, c)) f.witnesses.emplace_back(b, c);
        }
      }
      r.int1.push_back(std::move(f));
    }
    SquareFailure amal{sq, {}};
    if (!has_amalgamation(square, &amal.witnesses)) r.amalgamation.push_back(std::move(amal));
  }
  return r;
}

std::string to_dot(const PolyadicApprox& p) {
  std::ostringstream out;
  out << "digraph polyadic {\n  rankdir=BT;\n";
  if (p.bounds) {
    out << "  label=\"approximation at max-model " << p.bounds->max_model << ", max-depth "
        << p.bounds->max_depth << " (lossy)\";\n";
  }
  for (std::size_t n = 0; n < p.spaces.size(); ++n) {
    const FinPoset& s = *p.spaces[n];
    out << "  subgraph cluster_" << n << " {\n    label=\"S(" << n << ")\";\n";
    for (Elem a = 0; a < s.size(); ++a) {
      out << "    s" << n << "_" << a << " [label=\"" << s.name(a) << "\"];\n";
    }
    for (const auto& [a, b] : covers(s)) {
      out << "    s" << n << "_" << a << " -> s" << n << "_" << b << ";\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace polyadica
