#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "polyadica/lattice.hpp"
#include "polyadica/order.hpp"
#include "polyadica/squares.hpp"

namespace polyadica {

/// `elements: a b c` followed by generating lines `a <= b`. `#` starts a
/// comment. The reflexive-transitive closure is taken.
FinPoset parse_poset(std::string_view text);

/// Elements and cover relations, in the format `parse_poset` reads.
std::string to_string(const FinPoset& p);

/// The poset format plus optional `bot: x` and `top: y` lines, which are
/// checked against the order. Meet and join are recomputed.
LatticePtr parse_lattice(std::string_view text);
std::string lattice_to_string(const FinDistLattice& l);

/// A square file:
///
///     kind: lattice            # or poset
///     A: a.lat                 # paths relative to the square file
///     B: b.lat
///     C: c.lat
///     D: d.lat
///     f: x->y  ...             # one pair per element of the domain
///     g: ...
///     u: ...
///     v: ...
///     orientation: uf<=vg      # or vg<=uf
using AnySquare = std::variant<LatticeSquare, PosetSquare>;

AnySquare parse_square(std::string_view text, const std::filesystem::path& base_dir);
AnySquare load_square(const std::filesystem::path& file);

std::string read_file(const std::filesystem::path& file);

}  // namespace polyadica
