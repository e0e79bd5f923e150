// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/eval.h"

#include <algorithm>
#include <random>

#include "semfo/error.h"

namespace semfo {

Evaluator::Evaluator(Formula f, std::vector<std::string> free_order) : formula_(std::move(f)) {
  auto fv = free_vars(formula_);
  if (free_order.empty()) {
    free_order_ = fv;
  } else {
    free_order_ = std::move(free_order);
    for (const auto& v : fv) {
      if (std::find(free_order_.begin(), free_order_.end(), v) == free_order_.end()) {
        throw Error("free variable '" + v + "' has no position in the assignment");
      }
    }
  }
  std::vector<std::pair<std::string, int>> scope;
  for (std::size_t i = 0; i < free_order_.size(); ++i) scope.emplace_back(free_order_[i], static_cast<int>(i));
  root_ = compile(formula_, scope, static_cast<int>(free_order_.size()));
}

int Evaluator::compile(const Formula& f, std::vector<std::pair<std::string, int>>& scope, int depth) {
  slots_ = std::max(slots_, depth);
  CNode c;
  c.kind = f->kind;
  auto resolve = [&](const std::string& v) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    throw Error("unbound variable '" + v + "'");
  };
  std::vector<int> deps;
  if (is_literal(f->kind)) {
    c.rel = f->rel;
    for (const auto& a : f->args) c.arg_slots.push_back(resolve(a));
    deps = c.arg_slots;
  } else if (is_binary(f->kind)) {
    c.left = compile(f->left, scope, depth);
    c.right = compile(f->right, scope, depth);
    deps = nodes_[c.left].deps;
    deps.insert(deps.end(), nodes_[c.right].deps.begin(), nodes_[c.right].deps.end());
  } else if (is_quantifier(f->kind)) {
    if (is_distinct_quantifier(f->kind)) {
      std::vector<std::string> seen;
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (std::find(seen.begin(), seen.end(), it->first) != seen.end()) continue;
        seen.push_back(it->first);
        c.excluded.push_back(it->second);
      }
      std::sort(c.excluded.begin(), c.excluded.end());
    }
    c.slot = depth;
    scope.emplace_back(f->var, depth);
    c.left = compile(f->left, scope, depth + 1);
    scope.pop_back();
    for (int d : nodes_[c.left].deps) {
      if (d != c.slot) deps.push_back(d);
    }
    deps.insert(deps.end(), c.excluded.begin(), c.excluded.end());
  }
  std::sort(deps.begin(), deps.end());
  deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
  c.deps = std::move(deps);
  c.memo = is_quantifier(f->kind) && static_cast<int>(c.deps.size()) < depth;
  nodes_.push_back(std::move(c));
  return static_cast<int>(nodes_.size()) - 1;
}

namespace {

struct Ctx {
  const Interpretation& pi;
  const Semiring& s;
  const std::vector<Evaluator::CNode>& nodes;
  Value zero;
  Value one;
  bool absorptive;
  std::vector<const RelTable*> tables;
  std::vector<Elem> env;
  std::vector<std::map<std::vector<Elem>, Value>> memo;
  std::vector<Elem> scratch;

  Value run(int id) {
    const auto& c = nodes[id];
    std::vector<Elem> key;
    if (c.memo) {
      for (int d : c.deps) key.push_back(env[d]);
      auto it = memo[id].find(key);
      if (it != memo[id].end()) return it->second;
    }
    Value v = compute(id);
    if (c.memo) memo[id].emplace(std::move(key), v);
    return v;
  }

  Value compute(int id) {
    const auto& c = nodes[id];
    const std::size_t n = pi.size();
    switch (c.kind) {
      case NodeKind::kTrue:
        return one;
      case NodeKind::kFalse:
        return zero;
      case NodeKind::kAtom:
      case NodeKind::kNegAtom: {
        const RelTable* t = tables[id];
        std::size_t idx = 0;
        for (int sl : c.arg_slots) idx = idx * n + env[sl];
        return c.kind == NodeKind::kAtom ? t->pos[idx] : t->neg[idx];
      }
      case NodeKind::kEq:
        return env[c.arg_slots[0]] == env[c.arg_slots[1]] ? one : zero;
      case NodeKind::kNeq:
        return env[c.arg_slots[0]] == env[c.arg_slots[1]] ? zero : one;
      case NodeKind::kAnd: {
        Value l = run(c.left);
        if (l == zero) return zero;
        return s.mul(l, run(c.right));
      }
      case NodeKind::kOr: {
        Value l = run(c.left);
        if (absorptive && l == one) return one;
        return s.add(l, run(c.right));
      }
      case NodeKind::kExists:
      case NodeKind::kExistsD:
      case NodeKind::kForall:
      case NodeKind::kForallD: {
        const bool sum = is_existential_quantifier(c.kind);
        Value acc = sum ? zero : one;
        for (Elem b = 0; b < n; ++b) {
          bool skip = false;
          for (int e : c.excluded) skip |= env[e] == b;
          if (skip) continue;
          env[c.slot] = b;
          if (sum) {
            acc = s.add(acc, run(c.left));
            if (absorptive && acc == one) break;
          } else {
            acc = s.mul(acc, run(c.left));
            if (acc == zero) break;
          }
        }
        return acc;
      }
    }
    return zero;
  }
};

}  // namespace

Value Evaluator::operator()(const Interpretation& pi, std::span<const Elem> assignment) const {
  if (assignment.size() != free_order_.size()) {
    throw Error("expected " + std::to_string(free_order_.size()) + " values for the free variables, got " +
                std::to_string(assignment.size()));
  }
  const Semiring& s = pi.semiring();
  Ctx ctx{pi, s, nodes_, s.zero(), s.one(), s.flags().absorptive, {}, {}, {}, {}};
  ctx.tables.assign(nodes_.size(), nullptr);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& c = nodes_[i];
    if (c.kind != NodeKind::kAtom && c.kind != NodeKind::kNegAtom) continue;
    const RelTable* t = pi.table(c.rel);
    if (!t) throw Error("relation " + c.rel + " is not in the vocabulary of the interpretation");
    if (t->arity != c.arg_slots.size()) throw Error("arity mismatch for " + c.rel);
    ctx.tables[i] = t;
  }
  ctx.env.assign(static_cast<std::size_t>(slots_) + 1, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= pi.size()) throw Error("assigned element is not in the universe");
    ctx.env[i] = assignment[i];
  }
  ctx.memo.resize(nodes_.size());
  return ctx.run(root_);
}

Value eval(const Interpretation& pi, const Formula& f, const std::map<std::string, Elem>& assignment) {
  Evaluator ev(f);
  std::vector<Elem> a;
  for (const auto& v : ev.free_order()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw Error("uninstantiated free variable '" + v + "'");
    a.push_back(it->second);
  }
  return ev(pi, a);
}

Value eval_set(const Interpretation& pi, const std::vector<Formula>& sentences) {
  const Semiring& s = pi.semiring();
  Value acc = s.one();
  for (const auto& f : sentences) acc = s.mul(acc, eval(pi, f));
  return acc;
}

Vocabulary vocabulary_of(const std::vector<Formula>& fs) {
  Vocabulary v;
  for (const auto& f : fs) v.merge(vocabulary_of(f));
  return v;
}

EntailmentResult entails_at(const std::vector<Formula>& phi, const std::vector<Formula>& psi,
                            const Semiring& semiring, std::size_t size, const std::vector<Value>& values,
                            const SearchOptions& options) {
  std::vector<Formula> all = phi;
  all.insert(all.end(), psi.begin(), psi.end());
  for (const auto& f : all) {
    if (!is_sentence(f)) throw PreconditionError("entailment needs sentences: " + render(f));
  }
  Vocabulary vocab = vocabulary_of(all);
  if (vocab.empty()) vocab.add("R", 1);
  InterpretationSpace space(semiring, vocab, size, values, options.guard);
  std::vector<Evaluator> ephi;
  std::vector<Evaluator> epsi;
  for (const auto& f : phi) ephi.emplace_back(f);
  for (const auto& f : psi) epsi.emplace_back(f);
  EntailmentResult r;
  auto check = [&](const Interpretation& pi) {
    ++r.checked;
    Value a = semiring.one();
    for (const auto& e : ephi) a = semiring.mul(a, e(pi));
    Value b = semiring.one();
    for (const auto& e : epsi) b = semiring.mul(b, e(pi));
    if (semiring.leq(a, b)) return true;
    r.holds = false;
    r.witness = pi;
    r.phi_value = a;
    r.psi_value = b;
    return false;
  };
  if (space.within_guard()) {
    space.for_each(check);
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(options.seed);
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      if (!check(space.random(rng))) break;
    }
  }
  return r;
}

}  // namespace semfo
