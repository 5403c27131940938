#include "polyadica/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "polyadica/error.hpp"

namespace polyadica {
namespace {

struct Line {
  int number;
  std::string key;  // text before the first ':' (trimmed), empty if none
  std::string rest;
  std::string text;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string t = trim(raw);
    if (t.empty()) continue;
    Line l{number, {}, {}, t};
    if (auto colon = t.find(':'); colon != std::string::npos) {
      l.key = trim(std::string_view(t).substr(0, colon));
      l.rest = trim(std::string_view(t).substr(colon + 1));
    }
    out.push_back(std::move(l));
  }
  return out;
}

struct RawPoset {
  FinPoset poset;
  std::optional<std::pair<std::string, int>> bot, top;
};

RawPoset parse_raw_poset(std::string_view text, bool lattice) {
  RawPoset r;
  std::optional<std::vector<std::string>> names;
  std::map<std::string, Elem> index;
  std::vector<std::pair<Elem, Elem>> gens;
  for (const auto& l : lines_of(text)) {
    if (l.key == "elements") {
      if (names) throw ParseError("duplicate 'elements' line", l.number, 1);
      names = words(l.rest);
      for (std::size_t i = 0; i < names->size(); ++i) {
        if (!index.emplace((*names)[i], static_cast<Elem>(i)).second) {
          throw ParseError("duplicate element '" + (*names)[i] + "'", l.number, 1);
        }
      }
      continue;
    }
    if (lattice && (l.key == "bot" || l.key == "top")) {
      auto& slot = l.key == "bot" ? r.bot : r.top;
      if (slot) throw ParseError("duplicate '" + l.key + "' line", l.number, 1);
      slot = std::make_pair(l.rest, l.number);
      continue;
    }
    if (!names) throw ParseError("expected 'elements:' first", l.number, 1);
    const auto le = l.text.find("<=");
    if (le == std::string::npos) throw ParseError("expected 'a <= b'", l.number, 1);
    const std::string a = trim(std::string_view(l.text).substr(0, le));
    const std::string b = trim(std::string_view(l.text).substr(le + 2));
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw ParseError("unknown element '" + a + "'", l.number, 1);
    if (ib == index.end()) {
      throw ParseError("unknown element '" + b + "'", l.number, static_cast<int>(le) + 3);
    }
    gens.emplace_back(ia->second, ib->second);
  }
  if (!names) throw ParseError("missing 'elements:' line", 1, 1);
  r.poset = FinPoset::from_generators(names->size(), gens, *names);
  return r;
}

}  // namespace

FinPoset parse_poset(std::string_view text) { return parse_raw_poset(text, false).poset; }

std::string to_string(const FinPoset& p) {
  std::string out = "elements:";
  for (const auto& n : p.names()) out += " " + n;
  out += "\n";
  for (const auto& [a, b] : covers(p)) out += p.name(a) + " <= " + p.name(b) + "\n";
  return out;
}

LatticePtr parse_lattice(std::string_view text) {
  RawPoset raw = parse_raw_poset(text, true);
  auto l = make_lattice(FinDistLattice::from_poset(make_poset(std::move(raw.poset))));
  auto check = [&](const auto& slot, Elem expected, const char* what) {
    if (!slot) return;
    auto e = l->find(slot->first);
    if (!e) throw ParseError(std::string("unknown ") + what + " element '" + slot->first + "'", slot->second, 1);
    if (*e != expected) {
      throw ParseError(std::string(what) + " is '" + l->name(expected) + "', not '" + slot->first + "'",
                       slot->second, 1);
    }
  };
  check(raw.bot, l->bot(), "bot");
  check(raw.top, l->top(), "top");
  return l;
}

std::string lattice_to_string(const FinDistLattice& l) {
  return to_string(*l.order()) + "bot: " + l.name(l.bot()) + "\ntop: " + l.name(l.top()) + "\n";
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + file.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

template <class Obj>
std::vector<Elem> parse_table(const Line& l, const Obj& dom, const Obj& cod) {
  std::vector<std::optional<Elem>> table(dom.size());
  for (const auto& w : words(l.rest)) {
    const auto arrow = w.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'x->y', got '" + w + "'", l.number, 1);
    auto a = dom.find(w.substr(0, arrow));
    auto b = cod.find(w.substr(arrow + 2));
    if (!a) throw ParseError("unknown domain element in '" + w + "'", l.number, 1);
    if (!b) throw ParseError("unknown codomain element in '" + w + "'", l.number, 1);
    if (table[*a]) throw ParseError("element mapped twice in '" + w + "'", l.number, 1);
    table[*a] = *b;
  }
  std::vector<Elem> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i]) throw ParseError("map '" + l.key + "' misses '" + dom.name(static_cast<Elem>(i)) + "'", l.number, 1);
    out.push_back(*table[i]);
  }
  return out;
}

}  // namespace

AnySquare parse_square(std::string_view text, const std::filesystem::path& base_dir) {
  std::map<std::string, Line> fields;
  for (auto& l : lines_of(text)) {
    static const std::set<std::string> known = {"kind", "A", "B", "C", "D", "f", "g", "u", "v", "orientation"};
    if (!known.count(l.key)) throw ParseError("unknown field '" + l.key + "'", l.number, 1);
    if (!fields.emplace(l.key, l).second) throw ParseError("duplicate field '" + l.key + "'", l.number, 1);
  }
  auto need = [&](const std::string& k) -> const Line& {
    auto it = fields.find(k);
    if (it == fields.end()) throw ParseError("missing field '" + k + "'", 1, 1);
    return it->second;
  };
  const std::string kind = need("kind").rest;
  Orientation o = Orientation::kUfLeqVg;
  if (auto it = fields.find("orientation"); it != fields.end()) {
    const std::string v = it->second.rest;
    if (v == "vg<=uf") {
      o = Orientation::kVgLeqUf;
    } else if (v != "uf<=vg") {
      throw ParseError("orientation must be 'uf<=vg' or 'vg<=uf'", it->second.number, 1);
    }
  }
  auto path = [&](const std::string& k) { return base_dir / need(k).rest; };
  if (kind == "lattice") {
    auto A = parse_lattice(read_file(path("A")));
    auto B = parse_lattice(read_file(path("B")));
    auto C = parse_lattice(read_file(path("C")));
    auto D = parse_lattice(read_file(path("D")));
    LatticeHom f(A, B, parse_table(need("f"), *A, *B));
    LatticeHom g(A, C, parse_table(need("g"), *A, *C));
    LatticeHom u(B, D, parse_table(need("u"), *B, *D));
    LatticeHom v(C, D, parse_table(need("v"), *C, *D));
    return LatticeSquare::make(f, g, u, v, o);
  }
  if (kind == "poset") {
    auto A = make_poset(parse_poset(read_file(path("A"))));
    auto B = make_poset(parse_poset(read_file(path("B"))));
    auto C = make_poset(parse_poset(read_file(path("C"))));
    auto D = make_poset(parse_poset(read_file(path("D"))));
    MonotoneMap f(A, B, parse_table(need("f"), *A, *B));
    MonotoneMap g(A, C, parse_table(need("g"), *A, *C));
    MonotoneMap u(B, D, parse_table(need("u"), *B, *D));
    MonotoneMap v(C, D, parse_table(need("v"), *C, *D));
    return PosetSquare::make(f, g, u, v, o);
  }
  throw ParseError("kind must be 'lattice' or 'poset'", need("kind").number, 1);
}

AnySquare load_square(const std::filesystem::path& file) {
  return parse_square(read_file(file), file.parent_path());
}

}  // namespace polyadica
