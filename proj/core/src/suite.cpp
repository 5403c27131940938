#include "polyadica/suite.hpp"

#include <chrono>

#include "polyadica/duality.hpp"
#include "polyadica/error.hpp"
#include "polyadica/interpolants.hpp"

namespace polyadica {
namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string table_string(const std::vector<Elem>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + "]";
}

std::string describe(const LatticeSquare& s) {
  return "f=" + table_string(s.f.table()) + " g=" + table_string(s.g.table()) + " u=" +
         table_string(s.u.table()) + " v=" + table_string(s.v.table()) + " |A|=" + std::to_string(s.size_a()) +
         " |B|=" + std::to_string(s.size_b()) + " |C|=" + std::to_string(s.size_c()) +
         " |D|=" + std::to_string(s.size_d()) +
         (s.orientation == Orientation::kUfLeqVg ? " uf<=vg" : " vg<=uf");
}

void fail(SuiteResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

SuiteResult run_squares(const std::string& name, std::size_t exhaustive_size, std::size_t sample_size,
                        std::size_t samples, std::uint64_t seed,
                        const std::function<std::optional<std::string>(const LatticeSquare&)>& check) {
  Timer timer;
  SuiteResult r;
  r.name = name;
  auto visit = [&](const LatticeSquare& s) {
    ++r.checked;
    if (auto bad = check(s)) fail(r, *bad + " at " + describe(s));
  };
  for_each_lax_square(make_hom_table(small_lattices(exhaustive_size)), visit);
  if (samples > 0) {
    const HomTable big = make_hom_table(small_lattices(sample_size));
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) visit(sample_lax_square(big, rng));
  }
  r.seconds = timer.seconds();
  return r;
}

}  // namespace

std::vector<LatticePtr> small_lattices(std::size_t max_dual_size) {
  std::vector<LatticePtr> out;
  for (std::size_t n = 0; n <= max_dual_size; ++n) {
    for (const auto& p : all_posets(n)) out.push_back(clup(p));
  }
  return out;
}

HomTable make_hom_table(std::vector<LatticePtr> lattices) {
  HomTable t;
  t.lattices = std::move(lattices);
  const std::size_t n = t.lattices.size();
  t.homs.assign(n, std::vector<std::vector<LatticeHom>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.homs[i][j] = all_lattice_homs(t.lattices[i], t.lattices[j]);
  }
  return t;
}

void for_each_lax_square(const HomTable& t, const std::function<void(const LatticeSquare&)>& visit) {
  const std::size_t n = t.lattices.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          const auto& D = *t.lattices[d];
          for (const auto& f : t.homs[a][b]) {
            for (const auto& g : t.homs[a][c]) {
              for (const auto& u : t.homs[b][d]) {
                for (const auto& v : t.homs[c][d]) {
                  bool lax = true;
                  for (Elem x = 0; x < f.dom()->size() && lax; ++x) lax = D.leq(u(f(x)), v(g(x)));
                  if (!lax) continue;
                  visit(LatticeSquare{f, g, u, v, Orientation::kUfLeqVg});
                }
              }
            }
          }
        }
      }
    }
  }
}

LatticeSquare sample_lax_square(const HomTable& t, std::mt19937_64& rng, std::size_t max_tries) {
  const std::size_t n = t.lattices.size();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  auto any = [&](const std::vector<LatticeHom>& hs) -> const LatticeHom& {
    return hs[std::uniform_int_distribution<std::size_t>(0, hs.size() - 1)(rng)];
  };
  for (std::size_t tries = 0; tries < max_tries; ++tries) {
    const std::size_t a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
    if (t.homs[a][b].empty() || t.homs[a][c].empty() || t.homs[b][d].empty() || t.homs[c][d].empty()) continue;
    const LatticeHom& f = any(t.homs[a][b]);
    const LatticeHom& g = any(t.homs[a][c]);
    const LatticeHom& u = any(t.homs[b][d]);
    const LatticeHom& v = any(t.homs[c][d]);
    const Orientation o = rng() & 1 ? Orientation::kUfLeqVg : Orientation::kVgLeqUf;
    const auto& D = *t.lattices[d];
    bool lax = true;
    for (Elem x = 0; x < f.dom()->size() && lax; ++x) {
      lax = o == Orientation::kUfLeqVg ? D.leq(u(f(x)), v(g(x))) : D.leq(v(g(x)), u(f(x)));
    }
    if (lax) return LatticeSquare{f, g, u, v, o};
  }
  throw ResourceLimit("sample_lax_square: no lax square found");
}

SuiteResult run_duality_roundtrip(std::size_t max_dual_size) {
  Timer timer;
  SuiteResult r;
  r.name = "duality round trip";
  for (std::size_t n = 0; n <= max_dual_size; ++n) {
    for (const auto& p : all_posets(n)) {
      ++r.checked;
      const LatticePtr l = clup(p);
      const DualityWitness w = spec(l);
      if (!are_isomorphic(*w.space, *p)) fail(r, "spec(clup(P)) differs from P for P = " + std::to_string(n) + " points");
      if (!are_isomorphic(*clup(w.space)->order(), *l->order())) {
        fail(r, "clup(spec(L)) differs from L for |L| = " + std::to_string(l->size()));
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult run_beck_chevalley(std::size_t exhaustive_size, std::size_t sample_size, std::size_t samples,
                               std::uint64_t seed) {
  return run_squares("interpolation vs Beck-Chevalley", exhaustive_size, sample_size, samples, seed,
                     [](const LatticeSquare& s) -> std::optional<std::string> {
                       if (has_interpolation(s).holds == beck_chevalley_commutes(s)) return std::nullopt;
                       return "interpolation and Beck-Chevalley disagree";
                     });
}

SuiteResult run_selfduality(std::size_t exhaustive_size, std::size_t sample_size, std::size_t samples,
                            std::uint64_t seed) {
  return run_squares("interpolation vs dual square", exhaustive_size, sample_size, samples, seed,
                     [](const LatticeSquare& s) -> std::optional<std::string> {
                       if (has_interpolation(s).holds == has_interpolation(dual_square(s)).holds) return std::nullopt;
                       return "a square and its dual disagree";
                     });
}

SuiteResult run_frobenius(std::size_t max_dual_size) {
  Timer timer;
  SuiteResult r;
  r.name = "Frobenius vs bounded dual";
  const HomTable t = make_hom_table(small_lattices(max_dual_size));
  for (const auto& row : t.homs) {
    for (const auto& hs : row) {
      for (const auto& h : hs) {
        ++r.checked;
        const bool frob = is_frobenius(h);
        if (frob != is_bounded(dual_hom(h))) fail(r, "Frobenius and bounded dual disagree at " + table_string(h.table()));
        if (frob != frobenius_reciprocity_holds(h)) {
          fail(r, "Frobenius and reciprocity disagree at " + table_string(h.table()));
        }
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteResult run_heyting_pushouts(std::size_t max_dual_size) {
  Timer timer;
  SuiteResult r;
  r.name = "Heyting pushouts interpolate";
  const HomTable t = make_hom_table(small_lattices(max_dual_size));
  const std::size_t n = t.lattices.size();
  std::vector<std::vector<std::vector<LatticeHom>>> heyting(n, std::vector<std::vector<LatticeHom>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& h : t.homs[i][j]) {
        if (preserves_implication(h)) heyting[i][j].push_back(h);
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (const auto& f : heyting[a][b]) {
          for (const auto& g : heyting[a][c]) {
            ++r.checked;
            const DlPushout po = dl_pushout(f, g);
            const auto square = LatticeSquare::make(f, g, po.u, po.v);
            const auto interp = has_interpolation(square);
            if (!interp.holds) {
              fail(r, "pushout without interpolation at f=" + table_string(f.table()) + " g=" + table_string(g.table()));
              continue;
            }
            for (Elem x = 0; x < square.size_b(); ++x) {
              for (Elem y = 0; y < square.size_c(); ++y) {
                if (!po.d->leq(po.u(x), po.v(y))) continue;
                const Elem w = heyting_pushout_interpolate(f, g, po, x, y);
                if (!(f.cod()->leq(x, f(w)) && g.cod()->leq(g(w), y))) {
                  fail(r, "heyting_pushout_interpolate returned a non-interpolant");
                }
              }
            }
          }
        }
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

}  // namespace polyadica
