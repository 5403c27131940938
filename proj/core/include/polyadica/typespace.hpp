#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyadica/order.hpp"
#include "polyadica/structure.hpp"
#include "polyadica/theory.hpp"

namespace polyadica {

/// A map of finite sets σ: n → m, with n = table.size() and m = cod.
struct VarMap {
  std::size_t cod = 0;
  std::vector<Elem> table;

  std::size_t dom() const { return table.size(); }
  friend auto operator<=>(const VarMap&, const VarMap&) = default;
};

std::string to_string(const VarMap& s);

/// Every map n → m, tables in lexicographic order.
std::vector<VarMap> all_var_maps(std::size_t n, std::size_t m);

/// `second ∘ first`.
VarMap compose(const VarMap& first, const VarMap& second);

struct TypeSpaceBounds {
  std::size_t max_model = 0;
  std::size_t max_depth = 0;
};

/// An n-pointed model standing for a type class.
struct PointedRep {
  std::size_t model = 0;
  std::vector<Elem> point;
};

/// A functor from finite sets (arities ≤ max_arity) to finite posets,
/// contravariant: σ: n → m acts as S(σ): S(m) → S(n).
struct PolyadicApprox {
  std::size_t max_arity = 0;
  std::vector<PosetPtr> spaces;          // spaces[n] = S(n)
  std::map<VarMap, MonotoneMap> actions;
  std::optional<TypeSpaceBounds> bounds;  // absent for closed-form spaces

  // Only for approximations built from a theory.
  std::vector<FinStructure> models;
  std::vector<std::vector<PointedRep>> representatives;  // per arity, per class

  bool exact() const { return !bounds.has_value(); }
  const PosetPtr& space(std::size_t n) const { return spaces.at(n); }
  const MonotoneMap& action(const VarMap& s) const;
};

/// Type classes of n-pointed models of t with at most k elements under
/// coherent formulas of quantifier depth ≤ d, ordered by inclusion of the
/// formulas they satisfy. Throws ResourceLimit once the comparison work
/// exceeds `work_limit` game positions.
PolyadicApprox approx_type_space(const Theory& t, std::size_t max_arity, std::size_t k, std::size_t d,
                                 std::size_t work_limit = 1u << 22);

/// Does every depth-≤ d coherent formula true at (a, pa) hold at (b, pb)?
/// Decided by the one-way existential-positive game.
bool positive_type_leq(const FinStructure& a, const std::vector<Elem>& pa, const FinStructure& b,
                       const std::vector<Elem>& pb, std::size_t d);

/// The closed-form space S(n) = {x,y}ⁿ ∪ {x,z}ⁿ with y, z < x, ordered by
/// s ≤ t iff sᵢ ≤ tᵢ for all i and sᵢ = sⱼ implies tᵢ = tⱼ.
PolyadicApprox builtin_counterexample(std::size_t max_arity);

/// S(n) = 1 for every n.
PolyadicApprox constant_space(std::size_t max_arity);

/// A pushout square of finite sets
///
///     k --s1--> n
///     |         |
///     s2        t1
///     v         v
///     m --t2--> l
struct PushoutSquare {
  VarMap s1, s2, t1, t2;
};

std::string to_string(const PushoutSquare& p);

/// All pushout squares with every object ≤ max_arity.
std::vector<PushoutSquare> pushout_squares(std::size_t max_arity);

struct SquareFailure {
  PushoutSquare square;
  std::vector<std::pair<Elem, Elem>> witnesses;  // b ∈ S(n), c ∈ S(m)
};

struct PolyadicReport {
  std::size_t squares_checked = 0;
  std::size_t maps_checked = 0;
  std::vector<SquareFailure> int1;          // image square without interpolation
  std::vector<VarMap> int2;                  // S(σ) not bounded
  std::vector<SquareFailure> amalgamation;  // spans without a cocone
  std::vector<std::string> functoriality;

  bool int1_ok() const { return int1.empty(); }
  bool int2_ok() const { return int2.empty(); }
  bool amalgamation_ok() const { return amalgamation.empty(); }
};

/// The image of a pushout square: S(l) → S(n), S(l) → S(m), into S(k).
struct ImageSquareMaps {
  MonotoneMap f, g, u, v;
};
ImageSquareMaps image_square(const PolyadicApprox& p, const PushoutSquare& sq);

/// Checks Int1*, Int2*, amalgamation and functoriality within the arity bound.
PolyadicReport check_polyadic_axioms(const PolyadicApprox& p);

/// Identity and composition laws for every composable pair.
std::vector<std::string> check_functoriality(const PolyadicApprox& p);

/// Hasse diagrams of every S(n), one cluster per arity.
std::string to_dot(const PolyadicApprox& p);

}  // namespace polyadica
