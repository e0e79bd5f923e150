// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/strategy.h"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "semfo/error.h"
#include "semfo/eval.h"

namespace semfo {

namespace {

bool is_choice(NodeKind k) { return k == NodeKind::kOr || k == NodeKind::kExists || k == NodeKind::kExistsD; }

bool is_leaf_kind(NodeKind k) { return is_literal(k) || k == NodeKind::kTrue || k == NodeKind::kFalse; }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > std::numeric_limits<std::uint64_t>::max() / b ? std::numeric_limits<std::uint64_t>::max() : a * b;
}

bool env_has_value(const Env& env, Elem e) {
  return std::any_of(env.begin(), env.end(), [&](const auto& p) { return p.second == e; });
}

std::vector<Elem> legal_children(NodeKind kind, const Env& env, std::size_t n) {
  std::vector<Elem> out;
  for (Elem b = 0; b < n; ++b) {
    if (is_distinct_quantifier(kind) && env_has_value(env, b)) continue;
    out.push_back(b);
  }
  return out;
}

Value leaf_value(const Interpretation& pi, const TreeNode& leaf) {
  const Semiring& s = pi.semiring();
  const Node& f = *leaf.formula;
  auto arg = [&](const std::string& v) {
    auto e = lookup(leaf.env, v);
    if (!e) throw Error("unbound variable '" + v + "' in strategy leaf");
    return *e;
  };
  switch (f.kind) {
    case NodeKind::kTrue:
      return s.one();
    case NodeKind::kFalse:
      return s.zero();
    case NodeKind::kEq:
      return arg(f.args[0]) == arg(f.args[1]) ? s.one() : s.zero();
    case NodeKind::kNeq:
      return arg(f.args[0]) == arg(f.args[1]) ? s.zero() : s.one();
    case NodeKind::kAtom:
    case NodeKind::kNegAtom: {
      std::vector<Elem> args;
      for (const auto& a : f.args) args.push_back(arg(a));
      return pi.value(f.rel, f.kind == NodeKind::kNegAtom, args);
    }
    default:
      throw Error("strategy leaf is not a literal");
  }
}

// Copies the subtree of `src` at `id` into `out` in preorder. `pick` returns the
// children to keep.
template <typename Nodes, typename Pick>
int copy_tree(const Nodes& src, int id, std::vector<TreeNode>& out, const Pick& pick) {
  const TreeNode& s = src[id];
  int me = static_cast<int>(out.size());
  out.push_back(TreeNode{s.formula, s.env, s.elem, {}});
  std::vector<int> kids;
  for (int c : pick(id)) kids.push_back(copy_tree(src, c, out, pick));
  out[me].children = std::move(kids);
  return me;
}

// Rebuilds in preorder with the children of quantifier nodes sorted by element.
Strategy canonical(std::size_t n, const std::vector<TreeNode>& nodes) {
  std::vector<TreeNode> out;
  copy_tree(nodes, 0, out, [&](int id) {
    std::vector<int> c = nodes[id].children;
    if (is_quantifier(nodes[id].formula->kind)) {
      std::sort(c.begin(), c.end(), [&](int a, int b) { return nodes[a].elem < nodes[b].elem; });
    }
    return c;
  });
  return Strategy(n, std::move(out));
}

Strategy materialize(const GameTree& tree, const std::vector<int>& choice) {
  std::vector<TreeNode> out;
  const auto& nodes = tree.nodes();
  copy_tree(nodes, 0, out, [&](int id) {
    if (is_choice(nodes[id].formula->kind)) return std::vector<int>{choice[id]};
    return nodes[id].children;
  });
  return Strategy(tree.universe_size(), std::move(out));
}

void require_optimizable(const Semiring& s) {
  if (!s.flags().additively_idempotent || !s.flags().linearly_ordered) {
    throw PreconditionError("optimal strategies need an additively idempotent, linearly ordered semiring; " + s.id() +
                            " is not");
  }
}

// Literal elements of every subtree, indexed by node.
std::vector<std::set<Elem>> subtree_literals(const Strategy& t) {
  std::vector<std::set<Elem>> out(t.size());
  for (int id = static_cast<int>(t.size()) - 1; id >= 0; --id) {
    const TreeNode& nd = t.node(id);
    if (auto els = literal_elements(nd)) out[id].insert(els->begin(), els->end());
    for (int c : nd.children) out[id].insert(out[c].begin(), out[c].end());
  }
  return out;
}

void swap_in_place(std::vector<TreeNode>& nodes, Elem b, Elem c) {
  auto sw = [&](Elem e) { return e == b ? c : (e == c ? b : e); };
  for (auto& nd : nodes) {
    for (auto& p : nd.env) p.second = sw(p.second);
    if (nd.elem >= 0) nd.elem = sw(static_cast<Elem>(nd.elem));
  }
}

Strategy graft(const TreeNode& root, std::size_t n, const std::vector<Strategy>& kids) {
  std::vector<TreeNode> out;
  out.push_back(TreeNode{root.formula, root.env, root.elem, {}});
  for (const auto& k : kids) {
    int base = static_cast<int>(out.size());
    out[0].children.push_back(base);
    for (const auto& nd : k.nodes()) {
      TreeNode copy = nd;
      for (int& c : copy.children) c += base;
      out.push_back(std::move(copy));
    }
  }
  return Strategy(n, std::move(out));
}

std::string literal_key(const TreeNode& leaf) {
  std::string s = leaf.formula->kind == NodeKind::kNegAtom ? "~" : "";
  s += leaf.formula->rel + "(";
  for (std::size_t i = 0; i < leaf.formula->args.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(*lookup(leaf.env, leaf.formula->args[i]));
  }
  return s + ")";
}

std::set<std::string> literal_keys(const Strategy& t) {
  std::set<std::string> out;
  for (int id : t.leaves()) {
    if (literal_elements(t.node(id))) out.insert(literal_key(t.node(id)));
  }
  return out;
}

void require_foneq_sentence(const Strategy& t) {
  const Formula& f = t.formula();
  if (flavor(f) == Flavor::kFO || flavor(f) == Flavor::kMixed) {
    throw PreconditionError("strategy translation needs an FO≠ formula");
  }
  if (!is_sentence(f) || !t.root_env().empty()) throw PreconditionError("strategy translation needs a sentence");
  if (auto err = validate_strategy(t)) throw PreconditionError("input is not a strategy: " + *err);
}

void require_literals_below(const Strategy& t, std::size_t n) {
  for (int id : t.leaves()) {
    if (auto els = literal_elements(t.node(id))) {
      for (Elem e : *els) {
        if (e >= n) {
          throw PreconditionError("leaf literal " + literal_key(t.node(id)) + " mentions an element beyond the first " +
                                  std::to_string(n));
        }
      }
    }
  }
}

}  // namespace

std::optional<Elem> lookup(const Env& env, const std::string& var) {
  for (const auto& [name, e] : env) {
    if (name == var) return e;
  }
  return std::nullopt;
}

Env bind(Env env, const std::string& var, Elem e) {
  for (auto& p : env) {
    if (p.first == var) {
      p.second = e;
      return env;
    }
  }
  env.emplace_back(var, e);
  return env;
}

GameTree::GameTree(Formula f, std::size_t n, Env env, std::uint64_t guard)
    : formula_(std::move(f)), n_(n), guard_(guard) {
  for (const auto& v : free_vars(formula_)) {
    if (!lookup(env, v)) throw Error("free variable '" + v + "' is not instantiated");
  }
  for (const auto& p : env) {
    if (p.second >= n_) throw Error("instantiation outside the universe");
  }
  build(formula_, std::move(env), -1);
}

int GameTree::build(const Formula& f, Env env, std::int64_t elem) {
  if (nodes_.size() >= guard_) throw GuardExceeded("game tree exceeds " + std::to_string(guard_) + " nodes");
  int me = static_cast<int>(nodes_.size());
  nodes_.push_back(TreeNode{f, env, elem, {}});
  std::vector<int> kids;
  if (is_binary(f->kind)) {
    kids.push_back(build(f->left, env, -1));
    kids.push_back(build(f->right, env, -1));
  } else if (is_quantifier(f->kind)) {
    for (Elem b : legal_children(f->kind, env, n_)) kids.push_back(build(f->left, bind(env, f->var, b), b));
  }
  nodes_[me].children = std::move(kids);
  return me;
}

std::uint64_t GameTree::strategy_count() const {
  std::vector<std::uint64_t> c(nodes_.size(), 1);
  for (int id = static_cast<int>(nodes_.size()) - 1; id >= 0; --id) {
    const TreeNode& nd = nodes_[id];
    if (is_choice(nd.formula->kind)) {
      std::uint64_t s = 0;
      for (int k : nd.children) s = sat_add(s, c[k]);
      c[id] = s;
    } else {
      std::uint64_t p = 1;
      for (int k : nd.children) p = sat_mul(p, c[k]);
      c[id] = p;
    }
  }
  return c[0];
}

std::vector<int> Strategy::leaves() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (is_leaf_kind(nodes_[i].formula->kind)) out.push_back(static_cast<int>(i));
  }
  return out;
}

Strategy Strategy::subtree(int id) const {
  std::vector<TreeNode> out;
  copy_tree(nodes_, id, out, [&](int v) { return nodes_[v].children; });
  out[0].elem = -1;
  return Strategy(n_, std::move(out));
}

std::size_t Strategy::truncated_inner_nodes() const {
  std::size_t count = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    const TreeNode& nd = nodes_[v];
    if (is_leaf_kind(nd.formula->kind) || is_universal(nd.formula->kind)) continue;
    ++count;
    for (int c : nd.children) stack.push_back(c);
  }
  return count;
}

std::string Strategy::to_string() const {
  std::ostringstream os;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [v, depth] = stack.back();
    stack.pop_back();
    const TreeNode& nd = nodes_[v];
    os << std::string(2 * depth, ' ') << render(nd.formula);
    if (!nd.env.empty()) {
      os << "  [";
      for (std::size_t i = 0; i < nd.env.size(); ++i) {
        if (i) os << ", ";
        os << nd.env[i].first << "=" << nd.env[i].second + 1;
      }
      os << "]";
    }
    os << "\n";
    for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it) stack.emplace_back(*it, depth + 1);
  }
  return os.str();
}

bool operator==(const Strategy& a, const Strategy& b) {
  if (a.n_ != b.n_ || a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const TreeNode& x = a.nodes_[i];
    const TreeNode& y = b.nodes_[i];
    if (x.env != y.env || x.elem != y.elem || x.children != y.children || !equal(x.formula, y.formula)) return false;
  }
  return true;
}

std::optional<std::vector<Elem>> literal_elements(const TreeNode& leaf) {
  if (leaf.formula->kind != NodeKind::kAtom && leaf.formula->kind != NodeKind::kNegAtom) return std::nullopt;
  std::vector<Elem> out;
  for (const auto& a : leaf.formula->args) {
    auto e = lookup(leaf.env, a);
    if (!e) throw Error("unbound variable '" + a + "' in strategy leaf");
    out.push_back(*e);
  }
  return out;
}

std::optional<std::string> validate_strategy(const Strategy& t) {
  if (t.nodes().empty()) return "empty strategy";
  const std::size_t n = t.universe_size();
  const auto& nodes = t.nodes();
  for (const auto& v : free_vars(t.formula())) {
    if (!lookup(t.root_env(), v)) return "free variable " + v + " is not instantiated at the root";
  }
  std::vector<int> seen(nodes.size(), 0);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (id < 0 || static_cast<std::size_t>(id) >= nodes.size() || seen[id]++) return "malformed node structure";
    const TreeNode& nd = nodes[id];
    const Node& f = *nd.formula;
    for (const auto& p : nd.env) {
      if (p.second >= n) return "element outside the universe at " + render(nd.formula);
    }
    auto child = [&](std::size_t k) -> const TreeNode& { return nodes.at(nd.children[k]); };
    if (is_leaf_kind(f.kind)) {
      if (!nd.children.empty()) return "leaf with children at " + render(nd.formula);
    } else if (f.kind == NodeKind::kOr) {
      if (nd.children.size() != 1) return "disjunction must keep exactly one operand";
      const TreeNode& c = child(0);
      if (!(equal(c.formula, f.left) || equal(c.formula, f.right)) || c.env != nd.env) {
        return "disjunction child does not match an operand";
      }
    } else if (f.kind == NodeKind::kAnd) {
      if (nd.children.size() != 2) return "conjunction must keep both operands";
      if (!equal(child(0).formula, f.left) || !equal(child(1).formula, f.right) || child(0).env != nd.env ||
          child(1).env != nd.env) {
        return "conjunction children do not match the operands";
      }
    } else {
      std::vector<Elem> legal = legal_children(f.kind, nd.env, n);
      std::vector<Elem> got;
      for (std::size_t k = 0; k < nd.children.size(); ++k) {
        const TreeNode& c = child(k);
        if (c.elem < 0) return "quantifier child without an instantiation";
        Elem e = static_cast<Elem>(c.elem);
        if (!equal(c.formula, f.left) || c.env != bind(nd.env, f.var, e)) {
          return "quantifier child does not instantiate the body at " + render(nd.formula);
        }
        got.push_back(e);
      }
      std::vector<Elem> sorted = got;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "repeated instantiation";
      if (is_existential_quantifier(f.kind)) {
        if (got.size() != 1) return "existential node must keep exactly one child";
        if (!std::binary_search(legal.begin(), legal.end(), got[0])) return "illegal witness";
      } else if (sorted != legal) {
        return "universal node must keep every legal child at " + render(nd.formula);
      }
    }
    for (int c : nd.children) stack.push_back(c);
  }
  return std::nullopt;
}

void for_each_strategy(const GameTree& tree, const std::function<bool(const Strategy&)>& fn, std::uint64_t guard) {
  std::uint64_t count = tree.strategy_count();
  if (count > guard) {
    throw GuardExceeded(std::to_string(count) + " strategies exceed the limit " + std::to_string(guard));
  }
  const auto& nodes = tree.nodes();
  std::vector<int> choice(nodes.size(), -1);
  std::vector<int> pending{0};
  bool stop = false;
  std::function<void()> rec = [&]() {
    if (stop) return;
    if (pending.empty()) {
      if (!fn(materialize(tree, choice))) stop = true;
      return;
    }
    int v = pending.back();
    pending.pop_back();
    const TreeNode& nd = nodes[v];
    if (is_choice(nd.formula->kind)) {
      for (int c : nd.children) {
        choice[v] = c;
        pending.push_back(c);
        rec();
        pending.pop_back();
        if (stop) break;
      }
      choice[v] = -1;
    } else {
      for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it) pending.push_back(*it);
      rec();
      pending.resize(pending.size() - nd.children.size());
    }
    pending.push_back(v);
  };
  rec();
}

std::vector<Strategy> enumerate_strategies(const GameTree& tree, std::uint64_t guard) {
  std::vector<Strategy> out;
  for_each_strategy(
      tree,
      [&](const Strategy& s) {
        out.push_back(s);
        return true;
      },
      guard);
  return out;
}

Value eval_strategy(const Interpretation& pi, const Strategy& t) {
  if (pi.size() != t.universe_size()) {
    throw Error("universe mismatch: strategy over " + std::to_string(t.universe_size()) + " elements, interpretation over " +
                std::to_string(pi.size()));
  }
  const Semiring& s = pi.semiring();
  Value acc = s.one();
  for (int id : t.leaves()) acc = s.mul(acc, leaf_value(pi, t.node(id)));
  return acc;
}

SumOfStrategiesReport sum_of_strategies_check(const Interpretation& pi, const Formula& f, std::uint64_t guard) {
  const Semiring& s = pi.semiring();
  GameTree tree(f, pi.size());
  SumOfStrategiesReport r;
  r.strategy_sum = s.zero();
  for_each_strategy(
      tree,
      [&](const Strategy& t) {
        r.strategy_sum = s.add(r.strategy_sum, eval_strategy(pi, t));
        ++r.strategies;
        return true;
      },
      guard);
  r.eval_value = eval(pi, f);
  r.ok = r.eval_value == r.strategy_sum;
  return r;
}

OptimalResult optimal(const Interpretation& pi, const Formula& f) { return optimal(pi, GameTree(f, pi.size())); }

OptimalResult optimal(const Interpretation& pi, const GameTree& tree) {
  const Semiring& s = pi.semiring();
  require_optimizable(s);
  if (pi.size() != tree.universe_size()) throw Error("universe mismatch between interpretation and game tree");
  const auto& nodes = tree.nodes();
  std::vector<Value> val(nodes.size());
  std::vector<Natural> cnt(nodes.size());
  std::vector<int> choice(nodes.size(), -1);
  for (int id = static_cast<int>(nodes.size()) - 1; id >= 0; --id) {
    const TreeNode& nd = nodes[id];
    NodeKind k = nd.formula->kind;
    if (is_leaf_kind(k)) {
      val[id] = leaf_value(pi, nd);
      cnt[id] = 1;
    } else if (is_choice(k)) {
      Value best = s.zero();
      for (int c : nd.children) best = s.add(best, val[c]);
      val[id] = best;
      cnt[id] = 0;
      for (int c : nd.children) {
        if (cnt[c] > 0 && val[c] == best) {
          if (choice[id] < 0) choice[id] = c;
          cnt[id] += cnt[c];
        }
      }
    } else {
      Value p = s.one();
      cnt[id] = 1;
      for (int c : nd.children) {
        p = s.mul(p, val[c]);
        cnt[id] *= cnt[c];
      }
      val[id] = p;
    }
  }
  OptimalResult r{val[0], std::nullopt, cnt[0]};
  if (cnt[0] > 0) r.strategy = materialize(tree, choice);
  return r;
}

std::string to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::kExistential:
      return "existential";
    case StrategyClass::kAlmostExistential:
      return "almost_existential";
    case StrategyClass::kReliesOnForall:
      return "relies_on_forall";
  }
  return "?";
}

StrategyStats classify(const Strategy& t) {
  StrategyStats st;
  auto lits = subtree_literals(t);
  st.literal_elements = lits[0];
  bool universal = false;
  bool relies = false;
  for (std::size_t id = 0; id < t.size(); ++id) {
    const TreeNode& nd = t.node(static_cast<int>(id));
    if (is_existential_quantifier(nd.formula->kind)) {
      for (int c : nd.children) st.witnesses.insert(static_cast<Elem>(t.node(c).elem));
    }
    if (is_universal(nd.formula->kind)) {
      universal = true;
      bool avoids = false;
      for (int c : nd.children) avoids |= !lits[c].contains(static_cast<Elem>(t.node(c).elem));
      if (!avoids) relies = true;
    }
  }
  st.cls = !universal ? StrategyClass::kExistential
                      : (relies ? StrategyClass::kReliesOnForall : StrategyClass::kAlmostExistential);
  return st;
}

std::optional<std::pair<Value, Strategy>> best_in_class(const Interpretation& pi, const GameTree& tree,
                                                        StrategyClass cls) {
  const Semiring& s = pi.semiring();
  require_optimizable(s);
  if (cls == StrategyClass::kReliesOnForall) throw PreconditionError("only existential classes can be optimized");
  if (pi.size() != tree.universe_size()) throw Error("universe mismatch between interpretation and game tree");
  const auto& nodes = tree.nodes();
  auto better = [&](const Value& a, const Value& b) { return s.leq(b, a) && !(a == b); };

  struct Entry {
    std::optional<Value> value;
    int pick = -1;
  };
  using Key = std::pair<int, std::vector<Elem>>;
  std::map<Key, Entry> memo;
  const bool existential = cls == StrategyClass::kExistential;

  std::function<const Entry&(int, const std::vector<Elem>&)> best = [&](int id,
                                                                         const std::vector<Elem>& forbid) -> const Entry& {
    Key key{id, forbid};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const TreeNode& nd = nodes[id];
    NodeKind k = nd.formula->kind;
    Entry e;
    if (is_leaf_kind(k)) {
      bool ok = true;
      if (auto els = literal_elements(nd)) {
        for (Elem x : *els) ok &= !std::binary_search(forbid.begin(), forbid.end(), x);
      }
      if (ok) e.value = leaf_value(pi, nd);
    } else if (is_choice(k)) {
      for (int c : nd.children) {
        const Entry& ce = best(c, forbid);
        if (!ce.value) continue;
        if (!e.value || better(*ce.value, *e.value)) {
          e.value = ce.value;
          e.pick = c;
        }
      }
    } else if (k == NodeKind::kAnd) {
      const Entry& l = best(nd.children[0], forbid);
      const Entry& r = best(nd.children[1], forbid);
      if (l.value && r.value) e.value = s.mul(*l.value, *r.value);
    } else if (!existential) {
      const std::size_t m = nd.children.size();
      std::vector<std::optional<Value>> plain(m);
      bool all = true;
      for (std::size_t i = 0; i < m; ++i) {
        plain[i] = best(nd.children[i], forbid).value;
        all &= plain[i].has_value();
      }
      if (all) {
        std::vector<Value> prefix(m + 1, s.one());
        std::vector<Value> suffix(m + 1, s.one());
        for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = s.mul(prefix[i], *plain[i]);
        for (std::size_t i = m; i-- > 0;) suffix[i] = s.mul(suffix[i + 1], *plain[i]);
        for (std::size_t i = 0; i < m; ++i) {
          int c = nd.children[i];
          std::vector<Elem> f2 = forbid;
          Elem b = static_cast<Elem>(nodes[c].elem);
          if (!std::binary_search(f2.begin(), f2.end(), b)) f2.insert(std::upper_bound(f2.begin(), f2.end(), b), b);
          const Entry& av = best(c, f2);
          if (!av.value) continue;
          Value v = s.mul(s.mul(prefix[i], *av.value), suffix[i + 1]);
          if (!e.value || better(v, *e.value)) {
            e.value = v;
            e.pick = c;
          }
        }
      }
    }
    return memo.emplace(std::move(key), std::move(e)).first->second;
  };

  const Entry& root = best(0, {});
  if (!root.value) return std::nullopt;

  std::vector<TreeNode> out;
  std::function<int(int, const std::vector<Elem>&)> emit = [&](int id, const std::vector<Elem>& forbid) -> int {
    const TreeNode& nd = nodes[id];
    const Entry& e = memo.at(Key{id, forbid});
    int me = static_cast<int>(out.size());
    out.push_back(TreeNode{nd.formula, nd.env, nd.elem, {}});
    std::vector<int> kids;
    NodeKind k = nd.formula->kind;
    if (is_choice(k)) {
      kids.push_back(emit(e.pick, forbid));
    } else if (is_universal(k)) {
      for (int c : nd.children) {
        if (c == e.pick) {
          std::vector<Elem> f2 = forbid;
          Elem b = static_cast<Elem>(nodes[c].elem);
          if (!std::binary_search(f2.begin(), f2.end(), b)) f2.insert(std::upper_bound(f2.begin(), f2.end(), b), b);
          kids.push_back(emit(c, f2));
        } else {
          kids.push_back(emit(c, forbid));
        }
      }
    } else {
      for (int c : nd.children) kids.push_back(emit(c, forbid));
    }
    out[me].children = std::move(kids);
    return me;
  };
  emit(0, {});
  return std::make_pair(*root.value, Strategy(tree.universe_size(), std::move(out)));
}

Strategy swap_instantiation(const Strategy& t, Elem b, Elem c) {
  for (const auto& p : t.root_env()) {
    if (p.second == c && c != b) throw PreconditionError("element " + std::to_string(c + 1) + " is already instantiated");
  }
  if (b >= t.universe_size() || c >= t.universe_size()) throw PreconditionError("element outside the universe");
  std::vector<TreeNode> nodes = t.nodes();
  swap_in_place(nodes, b, c);
  return canonical(t.universe_size(), nodes);
}

std::optional<Strategy> random_strategy(const GameTree& tree, std::mt19937_64& rng,
                                        const std::optional<std::set<Elem>>& allowed) {
  const auto& nodes = tree.nodes();
  std::vector<char> ok(nodes.size(), 0);
  for (int id = static_cast<int>(nodes.size()) - 1; id >= 0; --id) {
    const TreeNode& nd = nodes[id];
    if (is_leaf_kind(nd.formula->kind)) {
      bool fine = true;
      if (allowed) {
        if (auto els = literal_elements(nd)) {
          for (Elem e : *els) fine &= allowed->contains(e);
        }
      }
      ok[id] = fine;
    } else if (is_choice(nd.formula->kind)) {
      ok[id] = std::any_of(nd.children.begin(), nd.children.end(), [&](int c) { return ok[c]; });
    } else {
      ok[id] = std::all_of(nd.children.begin(), nd.children.end(), [&](int c) { return ok[c]; });
    }
  }
  if (!ok[0]) return std::nullopt;
  std::vector<int> choice(nodes.size(), -1);
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const TreeNode& nd = nodes[id];
    if (!is_choice(nd.formula->kind) || !ok[id]) continue;
    std::vector<int> good;
    for (int c : nd.children) {
      if (ok[c]) good.push_back(c);
    }
    choice[id] = good[std::uniform_int_distribution<std::size_t>(0, good.size() - 1)(rng)];
  }
  return materialize(tree, choice);
}

TranslationResult translate_strategy(const Strategy& t) {
  require_foneq_sentence(t);
  const FormulaMetrics m = metrics(t.formula());
  const std::size_t r = m.qr;
  const std::size_t big = t.universe_size();
  if (big < r + 2) throw PreconditionError("universe too small for the translation");
  const std::size_t n = big - r - 1;
  if (m.size + 1 >= 63 || n <= (std::size_t{1} << (m.size + 1)) + r) {
    throw PreconditionError("n = " + std::to_string(n) + " must exceed 2^(|psi|+1) + qr = " +
                            (m.size + 1 >= 63 ? std::string("2^") + std::to_string(m.size + 1)
                                              : std::to_string((std::size_t{1} << (m.size + 1)) + r)));
  }
  require_literals_below(t, n);

  const Elem last = static_cast<Elem>(big - 1);
  TranslationResult res;
  std::vector<TreeNode> out;
  std::function<void(int, const std::vector<Elem>&)> walk = [&](int id, const std::vector<Elem>& g) {
    const TreeNode& nd = t.node(id);
    std::set<Elem> moved;
    for (Elem x = 0; x < big; ++x) {
      if (g[x] != x) moved.insert(g[x]);
    }
    Elem i = moved.empty() ? last : std::min(*moved.begin(), last);
    int me = static_cast<int>(out.size());
    TreeNode copy{nd.formula, nd.env, nd.elem, {}};
    for (auto& p : copy.env) p.second = g[p.second];
    if (copy.elem >= 0) copy.elem = g[copy.elem];
    out.push_back(std::move(copy));
    NodeKind k = nd.formula->kind;
    std::vector<int> kids;
    if (k == NodeKind::kExistsD) {
      int c = nd.children[0];
      std::vector<Elem> gw = g;
      if (static_cast<Elem>(t.node(c).elem) == i) {
        std::int64_t j = -1;
        for (std::int64_t cand = static_cast<std::int64_t>(big) - 2; cand >= 0; --cand) {
          Elem e = static_cast<Elem>(cand);
          if (env_has_value(nd.env, e) || moved.contains(e)) continue;
          j = cand;
          break;
        }
        if (j < static_cast<std::int64_t>(n)) throw PreconditionError("no replacement element above n");
        gw[i] = static_cast<Elem>(j);
      }
      kids.push_back(static_cast<int>(out.size()));
      walk(c, gw);
    } else {
      for (int c : nd.children) {
        if (k == NodeKind::kForallD && static_cast<Elem>(t.node(c).elem) == i) {
          res.dropped.emplace_back(id, c);
          continue;
        }
        kids.push_back(static_cast<int>(out.size()));
        walk(c, g);
      }
    }
    out[me].children = std::move(kids);
  };
  std::vector<Elem> id(big);
  for (Elem x = 0; x < big; ++x) id[x] = x;
  walk(0, id);
  res.strategy = canonical(big - 1, out);
  if (auto err = validate_strategy(res.strategy)) throw VerificationFailure("translated strategy is invalid: " + *err);
  return res;
}

Natural c_constant(std::size_t formula_size, std::size_t m) {
  Natural c = 0;
  Natural p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, formula_size + 1);
  for (std::size_t k = 0; k < m; ++k) c = p * ((c + 1) * c + 1);
  return c;
}

std::size_t universal_depth(const Formula& f) {
  if (is_binary(f->kind)) return std::max(universal_depth(f->left), universal_depth(f->right));
  if (is_quantifier(f->kind)) return universal_depth(f->left) + (is_universal(f->kind) ? 1 : 0);
  return 0;
}

namespace {

Strategy compact_level(const Strategy& t, std::size_t level) {
  const TreeNode& root = t.node(0);
  std::vector<Strategy> kids;
  for (int c : root.children) kids.push_back(t.subtree(c));
  for (std::size_t k = 0; k < kids.size(); ++k) {
    std::vector<TreeNode> nodes = compact_level(kids[k], level).nodes();
    nodes[0].elem = t.node(root.children[k]).elem;
    kids[k] = Strategy(t.universe_size(), std::move(nodes));
  }
  if (is_universal(root.formula->kind) && universal_depth(root.formula) == level && !kids.empty()) {
    std::optional<std::size_t> keep;
    for (std::size_t k = 0; k < kids.size() && !keep; ++k) {
      auto st = classify(kids[k]);
      if (!st.literal_elements.contains(static_cast<Elem>(kids[k].node(0).elem))) keep = k;
    }
    if (!keep) throw PreconditionError("strategy relies on a universal quantifier at " + render(root.formula));
    const Strategy& model = kids[*keep];
    const Elem il = static_cast<Elem>(model.node(0).elem);
    auto st = classify(model);
    for (std::size_t k = 0; k < kids.size(); ++k) {
      if (k == *keep) continue;
      const Elem ij = static_cast<Elem>(kids[k].node(0).elem);
      if (st.witnesses.contains(ij) || st.literal_elements.contains(ij)) continue;
      std::vector<TreeNode> nodes = model.nodes();
      swap_in_place(nodes, il, ij);
      kids[k] = Strategy(t.universe_size(), std::move(nodes));
    }
  }
  return graft(root, t.universe_size(), kids);
}

}  // namespace

Strategy compact_almost_existential(const Strategy& t, std::size_t m) {
  if (auto err = validate_strategy(t)) throw PreconditionError("input is not a strategy: " + *err);
  if (!classify(t).almost_existential()) throw PreconditionError("strategy relies on a universal quantifier");
  Strategy cur = canonical(t.universe_size(), t.nodes());
  for (std::size_t level = 1; level <= m; ++level) {
    cur = canonical(cur.universe_size(), compact_level(cur, level).nodes());
  }
  if (auto err = validate_strategy(cur)) throw VerificationFailure("compacted strategy is invalid: " + *err);
  return cur;
}

Strategy translate_almost_existential(const Strategy& t) {
  require_foneq_sentence(t);
  const std::size_t r = metrics(t.formula()).qr;
  const std::size_t big = t.universe_size();
  if (big <= r) throw PreconditionError("universe too small for the translation");
  const std::size_t n = big - r;
  require_literals_below(t, n);
  if (!classify(t).almost_existential()) throw PreconditionError("strategy relies on a universal quantifier");

  Strategy compact = compact_almost_existential(t, universal_depth(t.formula()));
  auto st = classify(compact);
  std::vector<TreeNode> nodes = compact.nodes();
  std::set<Elem> used;
  for (std::size_t j = 0; j < r; ++j) {
    const Elem over = static_cast<Elem>(n + j);
    if (!st.witnesses.contains(over)) continue;
    std::optional<Elem> pick;
    for (Elem cand = static_cast<Elem>(n); cand-- > 0;) {
      if (!st.witnesses.contains(cand) && !used.contains(cand)) {
        pick = cand;
        break;
      }
    }
    if (!pick) {
      throw PreconditionError("fewer than " + std::to_string(r) + " elements below n are free of witnesses");
    }
    used.insert(*pick);
    swap_in_place(nodes, over, *pick);
  }
  std::vector<TreeNode> out;
  copy_tree(nodes, 0, out, [&](int id) {
    std::vector<int> keep;
    for (int c : nodes[id].children) {
      if (is_universal(nodes[id].formula->kind) && nodes[c].elem >= static_cast<std::int64_t>(n)) continue;
      keep.push_back(c);
    }
    return keep;
  });
  Strategy result = canonical(n, out);
  if (auto err = validate_strategy(result)) throw VerificationFailure("translated strategy is invalid: " + *err);
  if (!classify(result).almost_existential()) throw VerificationFailure("translated strategy relies on a universal");
  auto before = literal_keys(t);
  for (const auto& k : literal_keys(result)) {
    if (!before.contains(k)) throw VerificationFailure("translated strategy uses the new literal " + k);
  }
  return result;
}

}  // namespace semfo
