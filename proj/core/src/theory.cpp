#include "polyadica/theory.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "polyadica/error.hpp"

namespace polyadica {
namespace {

Formula make(FormulaKind kind, std::string symbol, std::vector<std::string> vars, Formula left,
             Formula right, SourceSpan span = {}) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->symbol = std::move(symbol);
  n->vars = std::move(vars);
  n->left = std::move(left);
  n->right = std::move(right);
  n->span = span;
  return n;
}

bool is_binary(FormulaKind k) {
  return k == FormulaKind::kAnd || k == FormulaKind::kOr || k == FormulaKind::kImplies;
}

bool is_quantifier(FormulaKind k) { return k == FormulaKind::kExists || k == FormulaKind::kForall; }

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  switch (f->kind) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      return;
    case FormulaKind::kAtom:
    case FormulaKind::kEqual:
      for (const auto& v : f->vars) note(v);
      return;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImplies:
      collect_free(f->left, bound, out);
      collect_free(f->right, bound, out);
      return;
    case FormulaKind::kExists:
    case FormulaKind::kForall:
      bound.push_back(f->vars[0]);
      collect_free(f->left, bound, out);
      bound.pop_back();
      return;
  }
}

bool alpha_rec(const Formula& a, const Formula& b, std::vector<std::string>& ba,
               std::vector<std::string>& bb) {
  if (a->kind != b->kind) return false;
  // Position of the innermost binder of v, or -1 if v is free.
  auto depth = [](const std::vector<std::string>& stack, const std::string& v) -> long {
    for (std::size_t i = stack.size(); i-- > 0;) {
      if (stack[i] == v) return static_cast<long>(i);
    }
    return -1;
  };
  switch (a->kind) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      return true;
    case FormulaKind::kAtom:
    case FormulaKind::kEqual:
      if (a->symbol != b->symbol || a->vars.size() != b->vars.size()) return false;
      for (std::size_t i = 0; i < a->vars.size(); ++i) {
        long da = depth(ba, a->vars[i]), db = depth(bb, b->vars[i]);
        if (da != db) return false;
        if (da < 0 && a->vars[i] != b->vars[i]) return false;
      }
      return true;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImplies:
      return alpha_rec(a->left, b->left, ba, bb) && alpha_rec(a->right, b->right, ba, bb);
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      ba.push_back(a->vars[0]);
      bb.push_back(b->vars[0]);
      bool ok = alpha_rec(a->left, b->left, ba, bb);
      ba.pop_back();
      bb.pop_back();
      return ok;
    }
  }
  return false;
}

Formula subst_rec(const Formula& f, const std::map<std::string, std::string>& sigma) {
  auto image = [&](const std::string& v) {
    auto it = sigma.find(v);
    if (it == sigma.end()) throw InvalidInput("substitute: variable '" + v + "' is not in the domain");
    return it->second;
  };
  switch (f->kind) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      return f;
    case FormulaKind::kAtom:
    case FormulaKind::kEqual: {
      std::vector<std::string> vars;
      for (const auto& v : f->vars) vars.push_back(image(v));
      return make(f->kind, f->symbol, std::move(vars), nullptr, nullptr, f->span);
    }
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImplies:
      return make(f->kind, {}, {}, subst_rec(f->left, sigma), subst_rec(f->right, sigma), f->span);
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      const std::string& v = f->vars[0];
      std::set<std::string> targets;
      for (const auto& x : free_variables(f)) targets.insert(image(x));
      std::string fresh = v;
      while (targets.count(fresh)) fresh += "'";
      auto inner = sigma;
      inner[v] = fresh;
      return make(f->kind, {}, {fresh}, subst_rec(f->left, inner), nullptr, f->span);
    }
  }
  return f;
}

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::kImplies:
      return 1;
    case FormulaKind::kOr:
      return 2;
    case FormulaKind::kAnd:
      return 3;
    case FormulaKind::kExists:
    case FormulaKind::kForall:
      return 0;
    default:
      return 4;
  }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, int min_prec, std::string& out) {
  if (precedence(f->kind) < min_prec || is_quantifier(f->kind)) {
    out += "(";
    print(f, out);
    out += ")";
  } else {
    print(f, out);
  }
}

void print(const Formula& f, std::string& out) {
  switch (f->kind) {
    case FormulaKind::kTrue:
      out += "true";
      return;
    case FormulaKind::kFalse:
      out += "false";
      return;
    case FormulaKind::kAtom:
      out += f->symbol;
      out += "(";
      for (std::size_t i = 0; i < f->vars.size(); ++i) {
        if (i) out += ", ";
        out += f->vars[i];
      }
      out += ")";
      return;
    case FormulaKind::kEqual:
      out += f->vars[0] + " = " + f->vars[1];
      return;
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      const int p = precedence(f->kind);
      print_operand(f->left, p, out);
      out += f->kind == FormulaKind::kAnd ? " & " : " | ";
      print_operand(f->right, p + 1, out);
      return;
    }
    case FormulaKind::kImplies:
      print_operand(f->left, 2, out);
      out += " -> ";
      print_operand(f->right, 1, out);
      return;
    case FormulaKind::kExists:
    case FormulaKind::kForall:
      out += f->kind == FormulaKind::kExists ? "exists " : "forall ";
      out += f->vars[0] + ". ";
      print(f->left, out);
      return;
  }
}

// ---------------------------------------------------------------------------
// Lexer and parser

enum class Tok { kIdent, kNumber, kLParen, kRParen, kComma, kDot, kColon, kSlash, kAmp, kBar,
                 kEq, kTurnstile, kArrow, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line, co = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
                                src[j] == '\'')) {
        ++j;
      }
      out.push_back({Tok::kIdent, std::string(src.substr(i, j - i)), l, co});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::kNumber, std::string(src.substr(i, j - i)), l, co});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "|-") {
      out.push_back({Tok::kTurnstile, "|-", l, co});
      advance(2);
      continue;
    }
    if (two == "->") {
      out.push_back({Tok::kArrow, "->", l, co});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::kLParen; break;
      case ')': k = Tok::kRParen; break;
      case ',': k = Tok::kComma; break;
      case '.': k = Tok::kDot; break;
      case ':': k = Tok::kColon; break;
      case '/': k = Tok::kSlash; break;
      case '&': k = Tok::kAmp; break;
      case '|': k = Tok::kBar; break;
      case '=': k = Tok::kEq; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, co);
    }
    out.push_back({k, std::string(1, c), l, co});
    advance(1);
  }
  out.push_back({Tok::kEnd, "end of input", line, col});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"theory", "rel", "axiom", "true", "false", "exists", "forall"};
  return k;
}

class Parser {
 public:
  Parser(std::string_view src, const Signature* sig, bool intuitionistic)
      : toks_(lex(src)), sig_(sig), intuitionistic_(intuitionistic) {}

  Theory theory() {
    Theory t;
    if (is_keyword("theory")) {
      next();
      t.name = ident("theory name");
    }
    while (!at(Tok::kEnd)) {
      if (is_keyword("rel")) {
        const Token kw = next();
        std::string name = ident("relation name");
        expect(Tok::kSlash, "'/'");
        const Token n = peek();
        expect(Tok::kNumber, "an arity");
        if (t.signature.find(name)) throw ParseError("relation '" + name + "' declared twice", kw.line, kw.column);
        t.signature.add(name, std::stoul(n.text));
        sig_ = &t.signature;
      } else if (is_keyword("axiom")) {
        const Token kw = next();
        std::string name = ident("axiom name");
        expect(Tok::kColon, "':'");
        for (const auto& a : t.axioms) {
          if (a.name == name) throw ParseError("axiom '" + name + "' declared twice", kw.line, kw.column);
        }
        Sequent s = sequent_body(std::move(name));
        s.span = {kw.line, kw.column};
        t.axioms.push_back(std::move(s));
      } else if (is_keyword("theory")) {
        throw error("'theory' header must come first");
      } else {
        throw error("expected 'rel' or 'axiom'");
      }
    }
    return t;
  }

  Formula formula_only() {
    Formula f = formula();
    if (!at(Tok::kEnd)) throw error("unexpected '" + peek().text + "' after formula");
    return f;
  }

  Sequent sequent_only() {
    Sequent s = sequent_body("goal");
    if (!at(Tok::kEnd)) throw error("unexpected '" + peek().text + "' after sequent");
    return s;
  }

 private:
  Sequent sequent_body(std::string name) {
    Formula lhs = formula();
    expect(Tok::kTurnstile, "'|-'");
    Formula rhs = formula();
    return make_sequent(std::move(name), std::move(lhs), std::move(rhs));
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (at(Tok::kArrow)) {
      const Token op = next();
      if (!intuitionistic_) throw ParseError("'->' is not allowed in a coherent formula", op.line, op.column);
      Formula rhs = formula();
      return make(FormulaKind::kImplies, {}, {}, lhs, rhs, lhs->span);
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (at(Tok::kBar)) {
      next();
      Formula r = conjunction();
      f = make(FormulaKind::kOr, {}, {}, f, r, f->span);
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (at(Tok::kAmp)) {
      next();
      Formula r = unary();
      f = make(FormulaKind::kAnd, {}, {}, f, r, f->span);
    }
    return f;
  }

  Formula unary() {
    const Token t = peek();
    const SourceSpan span{t.line, t.column};
    if (at(Tok::kLParen)) {
      next();
      Formula f = formula();
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (is_keyword("true")) {
      next();
      return make(FormulaKind::kTrue, {}, {}, nullptr, nullptr, span);
    }
    if (is_keyword("false")) {
      next();
      return make(FormulaKind::kFalse, {}, {}, nullptr, nullptr, span);
    }
    if (is_keyword("exists") || is_keyword("forall")) {
      const bool ex = t.text == "exists";
      if (!ex && !intuitionistic_) throw ParseError("'forall' is not allowed in a coherent formula", t.line, t.column);
      next();
      std::vector<std::string> vars{ident("a bound variable")};
      while (at(Tok::kComma)) {
        next();
        vars.push_back(ident("a bound variable"));
      }
      expect(Tok::kDot, "'.'");
      Formula body = formula();
      for (std::size_t i = vars.size(); i-- > 0;) {
        body = make(ex ? FormulaKind::kExists : FormulaKind::kForall, {}, {vars[i]}, body, nullptr, span);
      }
      return body;
    }
    if (!at(Tok::kIdent) || keywords().count(t.text)) throw error("expected a formula");
    next();
    if (at(Tok::kEq)) {
      next();
      std::string rhs = ident("a variable");
      return make(FormulaKind::kEqual, {}, {t.text, rhs}, nullptr, nullptr, span);
    }
    std::vector<std::string> args;
    if (at(Tok::kLParen)) {
      next();
      if (!at(Tok::kRParen)) {
        args.push_back(ident("a variable"));
        while (at(Tok::kComma)) {
          next();
          args.push_back(ident("a variable"));
        }
      }
      expect(Tok::kRParen, "')'");
    }
    if (!sig_ || !sig_->find(t.text)) {
      throw ParseError("unknown relation '" + t.text + "'", t.line, t.column);
    }
    const std::size_t arity = (*sig_)[*sig_->find(t.text)].arity;
    if (arity != args.size()) {
      throw ParseError("relation '" + t.text + "' has arity " + std::to_string(arity) + " but is applied to " +
                           std::to_string(args.size()) + " argument(s)",
                       t.line, t.column);
    }
    return make(FormulaKind::kAtom, t.text, std::move(args), nullptr, nullptr, span);
  }

  std::string ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || keywords().count(t.text)) {
      throw error(std::string("expected ") + what);
    }
    return next().text;
  }

  void expect(Tok k, const char* what) {
    if (!at(k)) throw error(std::string("expected ") + what + ", found '" + peek().text + "'");
    next();
  }

  ParseError error(const std::string& what) const {
    const Token& t = peek();
    return ParseError(what, t.line, t.column);
  }

  bool at(Tok k) const { return toks_[pos_].kind == k; }
  bool is_keyword(const char* kw) const { return at(Tok::kIdent) && toks_[pos_].text == kw; }
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature* sig_;
  bool intuitionistic_;
};

}  // namespace

Formula truth() { return make(FormulaKind::kTrue, {}, {}, nullptr, nullptr); }
Formula falsity() { return make(FormulaKind::kFalse, {}, {}, nullptr, nullptr); }
Formula atom(std::string symbol, std::vector<std::string> args) {
  return make(FormulaKind::kAtom, std::move(symbol), std::move(args), nullptr, nullptr);
}
Formula equal(std::string x, std::string y) {
  return make(FormulaKind::kEqual, {}, {std::move(x), std::move(y)}, nullptr, nullptr);
}
Formula conj(Formula a, Formula b) { return make(FormulaKind::kAnd, {}, {}, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return make(FormulaKind::kOr, {}, {}, std::move(a), std::move(b)); }
Formula exists(std::string var, Formula body) {
  return make(FormulaKind::kExists, {}, {std::move(var)}, std::move(body), nullptr);
}
Formula implies(Formula a, Formula b) {
  return make(FormulaKind::kImplies, {}, {}, std::move(a), std::move(b));
}
Formula forall(std::string var, Formula body) {
  return make(FormulaKind::kForall, {}, {std::move(var)}, std::move(body), nullptr);
}

bool is_coherent(const Formula& f) {
  if (f->kind == FormulaKind::kImplies || f->kind == FormulaKind::kForall) return false;
  if (f->left && !is_coherent(f->left)) return false;
  if (f->right && !is_coherent(f->right)) return false;
  return true;
}

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

int formula_depth(const Formula& f) {
  if (is_quantifier(f->kind)) return 1 + formula_depth(f->left);
  if (is_binary(f->kind)) return std::max(formula_depth(f->left), formula_depth(f->right));
  return 0;
}

bool alpha_equivalent(const Formula& a, const Formula& b) {
  std::vector<std::string> ba, bb;
  return alpha_rec(a, b, ba, bb);
}

Formula substitute(const Formula& f, const std::map<std::string, std::string>& sigma) {
  return subst_rec(f, sigma);
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

Signature::Signature(std::vector<RelationSymbol> relations) {
  for (auto& r : relations) add(std::move(r.name), r.arity);
}

std::size_t Signature::add(std::string name, std::size_t arity) {
  if (find(name)) throw InvalidInput("signature: duplicate relation '" + name + "'");
  relations_.push_back({std::move(name), arity});
  return relations_.size() - 1;
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return std::nullopt;
}

Sequent make_sequent(std::string name, Formula lhs, Formula rhs) {
  Sequent s;
  s.name = std::move(name);
  s.context = free_variables(lhs);
  for (const auto& v : free_variables(rhs)) {
    if (std::find(s.context.begin(), s.context.end(), v) == s.context.end()) s.context.push_back(v);
  }
  s.span = lhs->span;
  s.lhs = std::move(lhs);
  s.rhs = std::move(rhs);
  return s;
}

void check_formula(const Formula& f, const Signature& sig, const std::vector<std::string>* context) {
  auto fail = [&](const Formula& node, const std::string& what) {
    if (node->span.line > 0) throw ParseError(what, node->span.line, node->span.column);
    throw InvalidInput(what);
  };
  auto rec = [&](auto&& self, const Formula& g) -> void {
    if (g->kind == FormulaKind::kAtom) {
      auto i = sig.find(g->symbol);
      if (!i) fail(g, "unknown relation '" + g->symbol + "'");
      if (sig[*i].arity != g->vars.size()) {
        fail(g, "relation '" + g->symbol + "' has arity " + std::to_string(sig[*i].arity) + " but is applied to " +
                    std::to_string(g->vars.size()) + " argument(s)");
      }
    }
    if (g->left) self(self, g->left);
    if (g->right) self(self, g->right);
  };
  rec(rec, f);
  if (context) {
    for (const auto& v : free_variables(f)) {
      if (std::find(context->begin(), context->end(), v) == context->end()) {
        fail(f, "unbound variable '" + v + "'");
      }
    }
  }
}

Theory parse_theory(std::string_view text) { return Parser(text, nullptr, false).theory(); }

Formula parse_formula(std::string_view text, const Signature& sig, bool allow_intuitionistic) {
  return Parser(text, &sig, allow_intuitionistic).formula_only();
}

Sequent parse_sequent(std::string_view text, const Signature& sig) {
  return Parser(text, &sig, false).sequent_only();
}

std::string to_string(const Sequent& s) { return to_string(s.lhs) + " |- " + to_string(s.rhs); }

std::string to_string(const Theory& t) {
  std::string out;
  if (!t.name.empty()) out += "theory " + t.name + "\n";
  for (const auto& r : t.signature.relations()) out += "rel " + r.name + "/" + std::to_string(r.arity) + "\n";
  for (const auto& a : t.axioms) out += "axiom " + a.name + ": " + to_string(a) + "\n";
  return out;
}

}  // namespace polyadica
