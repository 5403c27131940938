#include "polyadica/structure.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "polyadica/canonical.hpp"

namespace polyadica {

std::size_t tuple_space(std::size_t n, std::size_t arity) {
  std::size_t k = 1;
  for (std::size_t i = 0; i < arity; ++i) k *= n;
  return k;
}

FinStructure::FinStructure(Signature sig, std::size_t n, std::vector<std::string> names)
    : sig_(std::move(sig)) {
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  }
  if (names.size() != n) throw InvalidInput("structure: wrong number of element names");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw InvalidInput("structure: duplicate element name");
  names_ = std::move(names);
  for (const auto& r : sig_.relations()) bits_.emplace_back(tuple_space(n, r.arity));
}

std::optional<Elem> FinStructure::find(std::string_view name) const {
  for (Elem e = 0; e < names_.size(); ++e) {
    if (names_[e] == name) return e;
  }
  return std::nullopt;
}

std::size_t FinStructure::index(std::size_t rel, const Elem* tuple) const {
  std::size_t idx = 0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < sig_[rel].arity; ++i) idx = idx * n + tuple[i];
  return idx;
}

Elem FinStructure::add_element(std::string name) {
  if (name.empty()) {
    for (std::size_t k = names_.size();; ++k) {
      name = "e" + std::to_string(k);
      if (!find(name)) break;
    }
  } else if (find(name)) {
    throw InvalidInput("structure: duplicate element name '" + name + "'");
  }
  const std::size_t old_n = size();
  std::vector<std::vector<std::vector<Elem>>> old(sig_.size());
  for (std::size_t r = 0; r < sig_.size(); ++r) old[r] = tuples(r);
  names_.push_back(std::move(name));
  for (std::size_t r = 0; r < sig_.size(); ++r) {
    bits_[r] = Subset(tuple_space(old_n + 1, sig_[r].arity));
    for (const auto& t : old[r]) bits_[r].set(index(r, t.data()));
  }
  return static_cast<Elem>(old_n);
}

bool FinStructure::add_tuple(std::size_t rel, const std::vector<Elem>& tuple) {
  if (rel >= sig_.size() || tuple.size() != sig_[rel].arity) throw InvalidInput("structure: bad tuple");
  for (Elem e : tuple) {
    if (e >= size()) throw InvalidInput("structure: tuple element out of range");
  }
  const std::size_t i = index(rel, tuple.data());
  if (bits_[rel].test(i)) return false;
  bits_[rel].set(i);
  return true;
}

bool FinStructure::holds(std::size_t rel, const Elem* tuple) const {
  return bits_[rel].test(index(rel, tuple));
}

std::vector<std::vector<Elem>> FinStructure::tuples(std::size_t rel) const {
  std::vector<std::vector<Elem>> out;
  const std::size_t k = sig_[rel].arity, n = size();
  const Subset& b = bits_[rel];
  for (std::size_t i = b.find_first(); i != Subset::npos; i = b.find_next(i)) {
    std::vector<Elem> t(k);
    std::size_t rest = i;
    for (std::size_t p = k; p-- > 0;) {
      t[p] = static_cast<Elem>(rest % n);
      rest /= n;
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::size_t FinStructure::fact_count() const {
  std::size_t c = 0;
  for (const auto& b : bits_) c += b.count();
  return c;
}

void FinStructure::set_bits(std::size_t rel, Subset bits) {
  if (bits.size() != bits_[rel].size()) throw InvalidInput("structure: bitset size mismatch");
  bits_[rel] = std::move(bits);
}

FinStructure FinStructure::quotient(const std::vector<Elem>& cls) const {
  if (cls.size() != size()) throw InvalidInput("quotient: class map has the wrong size");
  std::size_t k = 0;
  for (Elem c : cls) k = std::max<std::size_t>(k, c + 1);
  std::vector<std::string> names(k);
  std::vector<bool> named(k, false);
  for (Elem e = 0; e < size(); ++e) {
    if (!named[cls[e]]) {
      names[cls[e]] = names_[e];
      named[cls[e]] = true;
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (!named[c]) throw InvalidInput("quotient: class numbering has gaps");
  }
  FinStructure q(sig_, k, std::move(names));
  for (std::size_t r = 0; r < sig_.size(); ++r) {
    for (auto t : tuples(r)) {
      for (auto& e : t) e = cls[e];
      q.bits_[r].set(q.index(r, t.data()));
    }
  }
  return q;
}

bool FinStructure::is_homomorphism_to(const FinStructure& other, const std::vector<Elem>& map) const {
  for (std::size_t r = 0; r < sig_.size(); ++r) {
    for (auto t : tuples(r)) {
      for (auto& e : t) e = map[e];
      if (!other.holds(r, t)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

CompiledFormula::CompiledFormula(const Formula& f, const Signature& sig,
                                 const std::vector<std::string>& context)
    : context_size_(context.size()) {
  std::vector<std::pair<std::string, std::size_t>> scope;
  for (std::size_t i = 0; i < context.size(); ++i) scope.emplace_back(context[i], i);
  slots_ = context.size();
  root_ = compile(f, sig, scope);
}

int CompiledFormula::compile(const Formula& f, const Signature& sig,
                             std::vector<std::pair<std::string, std::size_t>>& scope) {
  auto slot_of = [&](const std::string& v) {
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (scope[i].first == v) return scope[i].second;
    }
    throw InvalidInput("formula: variable '" + v + "' is not in the context");
  };
  Node n;
  n.kind = f->kind;
  switch (f->kind) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      break;
    case FormulaKind::kAtom: {
      auto r = sig.find(f->symbol);
      if (!r) throw InvalidInput("formula: unknown relation '" + f->symbol + "'");
      if (sig[*r].arity != f->vars.size()) throw InvalidInput("formula: arity mismatch for '" + f->symbol + "'");
      n.rel = *r;
      for (const auto& v : f->vars) n.args.push_back(slot_of(v));
      break;
    }
    case FormulaKind::kEqual:
      n.args = {slot_of(f->vars[0]), slot_of(f->vars[1])};
      break;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImplies:
      n.left = compile(f->left, sig, scope);
      n.right = compile(f->right, sig, scope);
      break;
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      const std::size_t slot = slots_++;
      n.args = {slot};
      scope.emplace_back(f->vars[0], slot);
      n.left = compile(f->left, sig, scope);
      scope.pop_back();
      break;
    }
  }
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size() - 1);
}

bool CompiledFormula::eval_node(int i, const FinStructure& s, std::vector<Elem>& env) const {
  const Node& n = nodes_[i];
  switch (n.kind) {
    case FormulaKind::kTrue:
      return true;
    case FormulaKind::kFalse:
      return false;
    case FormulaKind::kAtom: {
      Elem buf[16] = {};
      std::vector<Elem> big;
      Elem* t = buf;
      if (n.args.size() > 16) {
        big.resize(n.args.size());
        t = big.data();
      }
      for (std::size_t k = 0; k < n.args.size(); ++k) t[k] = env[n.args[k]];
      return s.holds(n.rel, t);
    }
    case FormulaKind::kEqual:
      return env[n.args[0]] == env[n.args[1]];
    case FormulaKind::kAnd:
      return eval_node(n.left, s, env) && eval_node(n.right, s, env);
    case FormulaKind::kOr:
      return eval_node(n.left, s, env) || eval_node(n.right, s, env);
    case FormulaKind::kImplies:
      return !eval_node(n.left, s, env) || eval_node(n.right, s, env);
    case FormulaKind::kExists:
      for (Elem e = 0; e < s.size(); ++e) {
        env[n.args[0]] = e;
        if (eval_node(n.left, s, env)) return true;
      }
      return false;
    case FormulaKind::kForall:
      for (Elem e = 0; e < s.size(); ++e) {
        env[n.args[0]] = e;
        if (!eval_node(n.left, s, env)) return false;
      }
      return true;
  }
  return false;
}

bool CompiledFormula::eval(const FinStructure& s, const std::vector<Elem>& point) const {
  if (point.size() != context_size_) throw InvalidInput("formula: point does not match the context");
  for (Elem e : point) {
    if (e >= s.size()) throw InvalidInput("formula: point outside the carrier");
  }
  std::vector<Elem> env(slots_, 0);
  std::copy(point.begin(), point.end(), env.begin());
  return eval_node(root_, s, env);
}

bool evaluate(const Formula& f, const PointedStructure& p) {
  return CompiledFormula(f, p.structure.signature(), p.context).eval(p.structure, p.point);
}

namespace {

// Calls visit(assignment) for every map k → n in lexicographic order; stops
// early if visit returns false.
template <class Visit>
void for_each_assignment(std::size_t k, std::size_t n, Visit&& visit) {
  if (k > 0 && n == 0) return;
  std::vector<Elem> a(k, 0);
  while (true) {
    if (!visit(a)) return;
    std::size_t i = k;
    while (i > 0 && a[i - 1] + 1 == n) a[--i] = 0;
    if (i == 0) return;
    ++a[i - 1];
  }
}

struct CompiledAxiom {
  CompiledFormula lhs;
  CompiledFormula rhs;
  std::size_t arity;
};

std::vector<CompiledAxiom> compile_theory(const Theory& t) {
  std::vector<CompiledAxiom> out;
  for (const auto& a : t.axioms) {
    out.push_back({CompiledFormula(a.lhs, t.signature, a.context), CompiledFormula(a.rhs, t.signature, a.context),
                   a.context.size()});
  }
  return out;
}

bool satisfies_compiled(const std::vector<CompiledAxiom>& axioms, const FinStructure& s) {
  for (const auto& ax : axioms) {
    bool ok = true;
    for_each_assignment(ax.arity, s.size(), [&](const std::vector<Elem>& a) {
      if (ax.lhs.eval(s, a) && !ax.rhs.eval(s, a)) ok = false;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

std::vector<TupleRelation> as_tuple_relations(const FinStructure& s) {
  std::vector<TupleRelation> rels;
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    rels.push_back({s.signature()[r].arity, s.tuples(r)});
  }
  return rels;
}

std::string structure_key(const FinStructure& s) {
  std::string key = std::to_string(s.size());
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    std::string b;
    boost::to_string(s.bits(r), b);
    key += "|" + b;
  }
  return key;
}

}  // namespace

std::vector<Violation> check_theory(const Theory& t, const FinStructure& s) {
  std::vector<Violation> out;
  const auto axioms = compile_theory(t);
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    for_each_assignment(axioms[i].arity, s.size(), [&](const std::vector<Elem>& a) {
      if (axioms[i].lhs.eval(s, a) && !axioms[i].rhs.eval(s, a)) out.push_back({i, a});
      return true;
    });
  }
  return out;
}

bool satisfies(const Theory& t, const FinStructure& s) { return satisfies_compiled(compile_theory(t), s); }

FinStructure canonical_form(const FinStructure& s) {
  const auto rels = as_tuple_relations(s);
  const auto label = canonical_labeling(s.size(), rels);
  FinStructure out(s.signature(), s.size());
  const auto relabeled = relabel(rels, label);
  for (std::size_t r = 0; r < relabeled.size(); ++r) {
    for (const auto& t : relabeled[r].tuples) out.add_tuple(r, t);
  }
  return out;
}

std::vector<FinStructure> enumerate_models(const Theory& t, std::size_t max_size, std::size_t budget) {
  const auto axioms = compile_theory(t);
  std::map<std::pair<std::size_t, std::string>, FinStructure> found;
  std::size_t spent = 0;
  for (std::size_t n = 0; n <= max_size; ++n) {
    if (spent > budget) throw ResourceLimit("enumerate_models: budget exhausted");
    for_each_structure(t.signature, n, budget - spent, [&](const FinStructure& s) {
      ++spent;
      if (!satisfies_compiled(axioms, s)) return;
      FinStructure c = canonical_form(s);
      std::string key = structure_key(c);
      found.emplace(std::make_pair(n, std::move(key)), std::move(c));
    });
  }
  std::vector<FinStructure> out;
  for (auto& [k, s] : found) out.push_back(std::move(s));
  return out;
}

bool homomorphism_exists(const FinStructure& a, const FinStructure& b) {
  const std::size_t n = a.size();
  if (n == 0) {
    // Only 0-ary facts constrain the empty structure.
    return a.is_homomorphism_to(b, {});
  }
  if (b.size() == 0) return false;
  // Tuples of a grouped by their largest element, checked once it is mapped.
  std::vector<std::vector<std::pair<std::size_t, std::vector<Elem>>>> due(n);
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    for (auto& t : a.tuples(r)) {
      if (t.empty()) {
        if (!b.holds(r, t)) return false;
        continue;
      }
      Elem m = *std::max_element(t.begin(), t.end());
      due[m].emplace_back(r, std::move(t));
    }
  }
  std::vector<Elem> map(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (Elem y = 0; y < b.size(); ++y) {
      map[i] = y;
      bool ok = true;
      for (const auto& [r, t] : due[i]) {
        std::vector<Elem> img(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) img[k] = map[t[k]];
        if (!b.holds(r, img)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

// ---------------------------------------------------------------------------

FinStructure parse_structure(std::string_view text, const Signature& sig) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<FinStructure> s;
  auto strip = [](std::string x) {
    auto hash = x.find('#');
    if (hash != std::string::npos) x.erase(hash);
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
    std::size_t i = 0;
    while (i < x.size() && std::isspace(static_cast<unsigned char>(x[i]))) ++i;
    return x.substr(i);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'name: ...'", lineno, 1);
    const std::string head = strip(line.substr(0, colon));
    const std::string rest = line.substr(colon + 1);
    if (head == "carrier") {
      if (s) throw ParseError("carrier declared twice", lineno, 1);
      std::istringstream names(rest);
      std::vector<std::string> elems;
      for (std::string w; names >> w;) elems.push_back(w);
      std::set<std::string> uniq(elems.begin(), elems.end());
      if (uniq.size() != elems.size()) throw ParseError("duplicate element in carrier", lineno, 1);
      s.emplace(sig, elems.size(), elems);
      continue;
    }
    if (!s) throw ParseError("'carrier:' must come first", lineno, 1);
    auto rel = sig.find(head);
    if (!rel) throw ParseError("unknown relation '" + head + "'", lineno, 1);
    std::size_t i = 0;
    while (true) {
      while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
      if (i == rest.size()) break;
      const int col = static_cast<int>(colon + 2 + i);
      if (rest[i] != '(') throw ParseError("expected '('", lineno, col);
      const auto close = rest.find(')', i);
      if (close == std::string::npos) throw ParseError("missing ')'", lineno, col);
      std::string inner = rest.substr(i + 1, close - i - 1);
      std::replace(inner.begin(), inner.end(), ',', ' ');
      std::istringstream parts(inner);
      std::vector<Elem> tuple;
      for (std::string w; parts >> w;) {
        auto e = s->find(w);
        if (!e) throw ParseError("unknown element '" + w + "'", lineno, col);
        tuple.push_back(*e);
      }
      if (tuple.size() != sig[*rel].arity) {
        throw ParseError("tuple of the wrong arity for '" + head + "'", lineno, col);
      }
      s->add_tuple(*rel, tuple);
      i = close + 1;
    }
  }
  if (!s) throw ParseError("missing 'carrier:' line", lineno + 1, 1);
  return *s;
}

std::string to_string(const FinStructure& s) {
  std::string out = "carrier:";
  for (const auto& n : s.names()) out += " " + n;
  out += "\n";
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    const auto ts = s.tuples(r);
    if (ts.empty()) continue;
    out += s.signature()[r].name + ":";
    for (const auto& t : ts) {
      out += " (";
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) out += ", ";
        out += s.name(t[k]);
      }
      out += ")";
    }
    out += "\n";
  }
  return out;
}

}  // namespace polyadica
