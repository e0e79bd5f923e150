// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/formula.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "semfo/error.h"

namespace semfo {
namespace {

Formula make(Node n) { return std::make_shared<const Node>(std::move(n)); }

void check_var(const std::string& v) {
  if (v.empty()) throw Error("empty variable name");
}

}  // namespace

Formula f_true() {
  static const Formula t = make(Node{NodeKind::kTrue, {}, {}, {}, nullptr, nullptr});
  return t;
}

Formula f_false() {
  static const Formula f = make(Node{NodeKind::kFalse, {}, {}, {}, nullptr, nullptr});
  return f;
}

Formula atom(std::string rel, std::vector<std::string> args) {
  if (args.empty()) throw Error("relation " + rel + " needs at least one argument");
  for (const auto& a : args) check_var(a);
  return make(Node{NodeKind::kAtom, std::move(rel), std::move(args), {}, nullptr, nullptr});
}

Formula neg_atom(std::string rel, std::vector<std::string> args) {
  if (args.empty()) throw Error("relation " + rel + " needs at least one argument");
  for (const auto& a : args) check_var(a);
  return make(Node{NodeKind::kNegAtom, std::move(rel), std::move(args), {}, nullptr, nullptr});
}

Formula eq(std::string a, std::string b) {
  return make(Node{NodeKind::kEq, {}, {std::move(a), std::move(b)}, {}, nullptr, nullptr});
}

Formula neq(std::string a, std::string b) {
  return make(Node{NodeKind::kNeq, {}, {std::move(a), std::move(b)}, {}, nullptr, nullptr});
}

Formula conj(Formula a, Formula b) { return make(Node{NodeKind::kAnd, {}, {}, {}, std::move(a), std::move(b)}); }

Formula disj(Formula a, Formula b) { return make(Node{NodeKind::kOr, {}, {}, {}, std::move(a), std::move(b)}); }

Formula quant(NodeKind kind, std::string var, Formula body) {
  if (!is_quantifier(kind)) throw Error("not a quantifier kind");
  check_var(var);
  return make(Node{kind, {}, {}, std::move(var), std::move(body), nullptr});
}

Formula exists(std::string var, Formula body) { return quant(NodeKind::kExists, std::move(var), std::move(body)); }
Formula forall(std::string var, Formula body) { return quant(NodeKind::kForall, std::move(var), std::move(body)); }
Formula exists_d(std::string var, Formula body) { return quant(NodeKind::kExistsD, std::move(var), std::move(body)); }
Formula forall_d(std::string var, Formula body) { return quant(NodeKind::kForallD, std::move(var), std::move(body)); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_true();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_false();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool is_literal(NodeKind k) {
  return k == NodeKind::kAtom || k == NodeKind::kNegAtom || k == NodeKind::kEq || k == NodeKind::kNeq;
}

bool is_binary(NodeKind k) { return k == NodeKind::kAnd || k == NodeKind::kOr; }

bool is_quantifier(NodeKind k) {
  return k == NodeKind::kExists || k == NodeKind::kForall || k == NodeKind::kExistsD || k == NodeKind::kForallD;
}

bool is_universal(NodeKind k) { return k == NodeKind::kForall || k == NodeKind::kForallD; }

bool is_existential_quantifier(NodeKind k) { return k == NodeKind::kExists || k == NodeKind::kExistsD; }

bool is_distinct_quantifier(NodeKind k) { return k == NodeKind::kExistsD || k == NodeKind::kForallD; }

Formula negate(const Formula& f) {
  switch (f->kind) {
    case NodeKind::kTrue:
      return f_false();
    case NodeKind::kFalse:
      return f_true();
    case NodeKind::kAtom:
      return neg_atom(f->rel, f->args);
    case NodeKind::kNegAtom:
      return atom(f->rel, f->args);
    case NodeKind::kEq:
      return neq(f->args[0], f->args[1]);
    case NodeKind::kNeq:
      return eq(f->args[0], f->args[1]);
    case NodeKind::kAnd:
      return disj(negate(f->left), negate(f->right));
    case NodeKind::kOr:
      return conj(negate(f->left), negate(f->right));
    case NodeKind::kExists:
      return forall(f->var, negate(f->left));
    case NodeKind::kForall:
      return exists(f->var, negate(f->left));
    case NodeKind::kExistsD:
      return forall_d(f->var, negate(f->left));
    case NodeKind::kForallD:
      return exists_d(f->var, negate(f->left));
  }
  return f;
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->rel != b->rel || a->args != b->args || a->var != b->var) return false;
  if (a->left || b->left) {
    if (!equal(a->left, b->left)) return false;
  }
  if (a->right || b->right) {
    if (!equal(a->right, b->right)) return false;
  }
  return true;
}

void Vocabulary::add(const std::string& name, std::size_t arity) {
  if (arity == 0) throw Error("relation " + name + " must have positive arity");
  auto [it, inserted] = arity_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw Error("arity mismatch for " + name + ": " + std::to_string(it->second) + " vs " + std::to_string(arity));
  }
}

void Vocabulary::merge(const Vocabulary& other) {
  for (const auto& [n, a] : other.arity_) add(n, a);
}

std::size_t Vocabulary::arity(const std::string& name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) throw Error("unknown relation " + name);
  return it->second;
}

std::string Vocabulary::to_string() const {
  std::string s;
  for (const auto& [n, a] : arity_) {
    if (!s.empty()) s += " ";
    s += n + "/" + std::to_string(a);
  }
  return s;
}

Vocabulary vocabulary_of(const Formula& f) {
  Vocabulary v;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g->kind == NodeKind::kAtom || g->kind == NodeKind::kNegAtom) v.add(g->rel, g->args.size());
    if (g->left) go(g->left);
    if (g->right) go(g->right);
  };
  go(f);
  return v;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { kName, kLParen, kRParen, kComma, kDot, kAnd, kOr, kNot, kEq, kNeq, kExistsD, kForallD, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto is_name_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_name_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    std::size_t start_col = col;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back(Token{k, std::string(s.substr(i, len)), line, start_col});
      i += len;
      col += len;
    };
    if (is_name_start(c)) {
      std::size_t j = i;
      while (j < s.size() && is_name_char(s[j])) ++j;
      std::string_view word = s.substr(i, j - i);
      if ((word == "E" || word == "A") && j < s.size() && s[j] == '!' && (j + 1 >= s.size() || s[j + 1] != '=')) {
        push(word == "E" ? Tok::kExistsD : Tok::kForallD, j - i + 1);
      } else {
        push(Tok::kName, j - i);
      }
      continue;
    }
    switch (c) {
      case '(':
        push(Tok::kLParen, 1);
        break;
      case ')':
        push(Tok::kRParen, 1);
        break;
      case ',':
        push(Tok::kComma, 1);
        break;
      case '.':
        push(Tok::kDot, 1);
        break;
      case '&':
        push(Tok::kAnd, 1);
        break;
      case '|':
        push(Tok::kOr, 1);
        break;
      case '~':
        push(Tok::kNot, 1);
        break;
      case '=':
        push(Tok::kEq, 1);
        break;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          push(Tok::kNeq, 2);
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back(Token{Tok::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = parse_or();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().line, peek().col); }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    next();
  }
  std::string name(const char* what) {
    if (peek().kind != Tok::kName) fail(std::string("expected ") + what);
    return next().text;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::kOr) {
      next();
      f = disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (peek().kind == Tok::kAnd) {
      next();
      f = conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::kNot) {
      next();
      return negate(parse_unary());
    }
    if (t.kind == Tok::kExistsD || t.kind == Tok::kForallD) {
      next();
      return parse_quantifier(t.kind == Tok::kExistsD ? NodeKind::kExistsD : NodeKind::kForallD);
    }
    if (t.kind == Tok::kName && (t.text == "E" || t.text == "A") && peek(1).kind == Tok::kName) {
      NodeKind k = t.text == "E" ? NodeKind::kExists : NodeKind::kForall;
      next();
      return parse_quantifier(k);
    }
    return parse_primary();
  }

  Formula parse_quantifier(NodeKind k) {
    std::string v = name("variable after quantifier");
    if (v == "true" || v == "false") fail("keyword used as variable");
    expect(Tok::kDot, "'.' after quantified variable");
    return quant(k, v, parse_or());
  }

  Formula parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::kLParen) {
      next();
      Formula f = parse_or();
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (t.kind != Tok::kName) fail(t.kind == Tok::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'");
    if (t.text == "true") {
      next();
      return f_true();
    }
    if (t.text == "false") {
      next();
      return f_false();
    }
    std::string first = next().text;
    if (peek().kind == Tok::kLParen) {
      next();
      std::vector<std::string> args;
      args.push_back(var());
      while (peek().kind == Tok::kComma) {
        next();
        args.push_back(var());
      }
      expect(Tok::kRParen, "')' after arguments");
      return atom(first, std::move(args));
    }
    if (peek().kind == Tok::kEq) {
      next();
      return eq(first, var());
    }
    if (peek().kind == Tok::kNeq) {
      next();
      return neq(first, var());
    }
    fail("expected '(', '=' or '!=' after '" + first + "'");
  }

  std::string var() {
    std::string v = name("variable");
    if (v == "true" || v == "false") fail("keyword used as variable");
    return v;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) {
  Formula f = Parser(lex(text)).parse_all();
  vocabulary_of(f);
  return f;
}

Formula parse_sentence(std::string_view text) {
  Formula f = parse(text);
  auto fv = free_vars(f);
  if (!fv.empty()) throw Error("unbound variable '" + fv[0] + "' in sentence");
  return f;
}

// ---------------------------------------------------------------------------
// Renderer

namespace {

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i];
  }
  return s;
}

void render_into(const Formula& f, std::string& out);

void render_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += "(";
  render_into(f, out);
  if (parens) out += ")";
}

void render_into(const Formula& f, std::string& out) {
  switch (f->kind) {
    case NodeKind::kTrue:
      out += "true";
      return;
    case NodeKind::kFalse:
      out += "false";
      return;
    case NodeKind::kAtom:
      out += f->rel + "(" + join_args(f->args) + ")";
      return;
    case NodeKind::kNegAtom:
      out += "~" + f->rel + "(" + join_args(f->args) + ")";
      return;
    case NodeKind::kEq:
      out += f->args[0] + " = " + f->args[1];
      return;
    case NodeKind::kNeq:
      out += f->args[0] + " != " + f->args[1];
      return;
    case NodeKind::kAnd:
    case NodeKind::kOr: {
      bool is_and = f->kind == NodeKind::kAnd;
      auto needs = [&](const Formula& g, bool right) {
        if (is_quantifier(g->kind)) return true;
        if (is_and && g->kind == NodeKind::kOr) return true;
        return right && g->kind == f->kind;
      };
      render_operand(f->left, needs(f->left, false), out);
      out += is_and ? " & " : " | ";
      render_operand(f->right, needs(f->right, true), out);
      return;
    }
    case NodeKind::kExists:
      out += "E " + f->var + ". ";
      break;
    case NodeKind::kForall:
      out += "A " + f->var + ". ";
      break;
    case NodeKind::kExistsD:
      out += "E! " + f->var + ". ";
      break;
    case NodeKind::kForallD:
      out += "A! " + f->var + ". ";
      break;
  }
  render_into(f->left, out);
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Queries

Flavor flavor(const Formula& f) {
  bool fo = false;
  bool foneq = false;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    switch (g->kind) {
      case NodeKind::kEq:
      case NodeKind::kNeq:
      case NodeKind::kExists:
      case NodeKind::kForall:
        fo = true;
        break;
      case NodeKind::kExistsD:
      case NodeKind::kForallD:
        foneq = true;
        break;
      default:
        break;
    }
    if (g->left) go(g->left);
    if (g->right) go(g->right);
  };
  go(f);
  if (fo && foneq) return Flavor::kMixed;
  if (fo) return Flavor::kFO;
  if (foneq) return Flavor::kFONeq;
  return Flavor::kNone;
}

bool is_fo(const Formula& f) {
  Flavor fl = flavor(f);
  return fl == Flavor::kFO || fl == Flavor::kNone;
}

bool is_foneq(const Formula& f) {
  Flavor fl = flavor(f);
  return fl == Flavor::kFONeq || fl == Flavor::kNone;
}

std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> out;
  std::vector<std::string> bound;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    auto note = [&](const std::string& v) {
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    if (is_literal(g->kind)) {
      for (const auto& a : g->args) note(a);
      return;
    }
    if (is_quantifier(g->kind)) {
      bound.push_back(g->var);
      go(g->left);
      bound.pop_back();
      return;
    }
    if (g->left) go(g->left);
    if (g->right) go(g->right);
  };
  go(f);
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

std::vector<std::string> all_vars(const Formula& f) {
  std::vector<std::string> out;
  auto note = [&](const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    for (const auto& a : g->args) note(a);
    if (is_quantifier(g->kind)) note(g->var);
    if (g->left) go(g->left);
    if (g->right) go(g->right);
  };
  go(f);
  return out;
}

bool has_shadowing(const Formula& f) {
  std::vector<std::string> scope = free_vars(f);
  std::function<bool(const Formula&)> go = [&](const Formula& g) -> bool {
    if (is_quantifier(g->kind)) {
      if (std::find(scope.begin(), scope.end(), g->var) != scope.end()) return true;
      scope.push_back(g->var);
      bool r = go(g->left);
      scope.pop_back();
      return r;
    }
    return (g->left && go(g->left)) || (g->right && go(g->right));
  };
  return go(f);
}

namespace {

bool any_node(const Formula& f, const std::function<bool(const Node&)>& pred) {
  if (pred(*f)) return true;
  return (f->left && any_node(f->left, pred)) || (f->right && any_node(f->right, pred));
}

}  // namespace

bool has_universal(const Formula& f) {
  return any_node(f, [](const Node& n) { return is_universal(n.kind); });
}

bool is_existential(const Formula& f) { return !has_universal(f); }

bool is_universal_fragment(const Formula& f) {
  return !any_node(f, [](const Node& n) { return is_existential_quantifier(n.kind); });
}

bool is_quantifier_free(const Formula& f) {
  return !any_node(f, [](const Node& n) { return is_quantifier(n.kind); });
}

bool has_negative_literal(const Formula& f) {
  return any_node(f, [](const Node& n) { return n.kind == NodeKind::kNegAtom || n.kind == NodeKind::kNeq; });
}

FormulaMetrics metrics(const Formula& f) {
  FormulaMetrics m;
  std::function<void(const Formula&, std::size_t, std::size_t)> go = [&](const Formula& g, std::size_t q, std::size_t qa) {
    ++m.size;
    if (is_quantifier(g->kind)) {
      ++q;
      if (is_universal(g->kind)) ++qa;
    }
    m.qr = std::max(m.qr, q);
    m.qr_forall = std::max(m.qr_forall, qa);
    if (g->left) go(g->left, q, qa);
    if (g->right) go(g->right, q, qa);
  };
  go(f, 0, 0);
  return m;
}

// ---------------------------------------------------------------------------
// Paths

namespace {

const Formula& child(const Formula& f, int i) {
  if (i == 0 && f->left) return f->left;
  if (i == 1 && f->right) return f->right;
  throw Error("invalid path step " + std::to_string(i) + " at " + render(f));
}

Formula replace_child(const Formula& f, int i, Formula c) {
  Node n = *f;
  if (i == 0) {
    n.left = std::move(c);
  } else {
    n.right = std::move(c);
  }
  return make(std::move(n));
}

}  // namespace

Formula subformula_at(const Formula& f, const Path& path) {
  Formula cur = f;
  for (int i : path) cur = child(cur, i);
  return cur;
}

std::vector<std::string> visible_vars(const Formula& f, const Path& path) {
  std::vector<std::string> vis = free_vars(f);
  Formula cur = f;
  for (int i : path) {
    if (is_quantifier(cur->kind)) {
      auto it = std::find(vis.begin(), vis.end(), cur->var);
      if (it != vis.end()) vis.erase(it);
      vis.push_back(cur->var);
    }
    cur = child(cur, i);
  }
  return vis;
}

Formula substitute_subformula(const Formula& host, const Path& path, const Formula& replacement) {
  auto vis = visible_vars(host, path);
  for (const auto& v : free_vars(replacement)) {
    if (std::find(vis.begin(), vis.end(), v) == vis.end()) {
      throw Error("variable capture: '" + v + "' is not visible at the substitution point");
    }
  }
  std::function<Formula(const Formula&, std::size_t)> go = [&](const Formula& g, std::size_t depth) -> Formula {
    if (depth == path.size()) return replacement;
    return replace_child(g, path[depth], go(child(g, path[depth]), depth + 1));
  };
  return go(host, 0);
}

std::optional<Path> find_leftmost_innermost(const Formula& f, const std::function<bool(const Formula&)>& pred) {
  Path cur;
  std::optional<Path> found;
  std::function<bool(const Formula&)> go = [&](const Formula& g) -> bool {
    for (int i = 0; i < 2; ++i) {
      const Formula& c = i == 0 ? g->left : g->right;
      if (!c) continue;
      cur.push_back(i);
      if (go(c)) return true;
      cur.pop_back();
    }
    if (pred(g)) {
      found = cur;
      return true;
    }
    return false;
  };
  go(f);
  return found;
}

std::vector<Path> find_all(const Formula& f, const std::function<bool(const Formula&)>& pred) {
  std::vector<Path> out;
  Path cur;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    for (int i = 0; i < 2; ++i) {
      const Formula& c = i == 0 ? g->left : g->right;
      if (!c) continue;
      cur.push_back(i);
      go(c);
      cur.pop_back();
    }
    if (pred(g)) out.push_back(cur);
  };
  go(f);
  return out;
}

Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
  return rename_free(f, std::map<std::string, std::string>{{from, to}});
}

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& sub) {
  if (sub.empty()) return f;
  if (is_literal(f->kind)) {
    Node n = *f;
    bool changed = false;
    for (auto& a : n.args) {
      auto it = sub.find(a);
      if (it != sub.end()) {
        a = it->second;
        changed = true;
      }
    }
    return changed ? make(std::move(n)) : f;
  }
  if (is_quantifier(f->kind)) {
    if (sub.count(f->var)) {
      auto inner = sub;
      inner.erase(f->var);
      Formula body = rename_free(f->left, inner);
      return body == f->left ? f : quant(f->kind, f->var, body);
    }
    Formula body = rename_free(f->left, sub);
    return body == f->left ? f : quant(f->kind, f->var, body);
  }
  if (is_binary(f->kind)) {
    Formula l = rename_free(f->left, sub);
    Formula r = rename_free(f->right, sub);
    if (l == f->left && r == f->right) return f;
    return f->kind == NodeKind::kAnd ? conj(l, r) : disj(l, r);
  }
  return f;
}

}  // namespace semfo
