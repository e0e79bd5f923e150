// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/transform.h"

#include <algorithm>
#include <functional>
#include <map>

#include "semfo/error.h"

namespace semfo {
namespace {

using Sub = std::map<std::string, std::string>;

std::string lookup(const Sub& sub, const std::string& v) {
  auto it = sub.find(v);
  return it == sub.end() ? v : it->second;
}

Formula rename_literal(const Formula& g, const Sub& sub) {
  std::vector<std::string> args;
  for (const auto& a : g->args) args.push_back(lookup(sub, a));
  switch (g->kind) {
    case NodeKind::kAtom:
      return atom(g->rel, std::move(args));
    case NodeKind::kNegAtom:
      return neg_atom(g->rel, std::move(args));
    case NodeKind::kEq:
      return eq(args[0], args[1]);
    case NodeKind::kNeq:
      return neq(args[0], args[1]);
    default:
      return g;
  }
}

Formula rebuild_binary(NodeKind k, Formula l, Formula r) {
  return k == NodeKind::kAnd ? conj(std::move(l), std::move(r)) : disj(std::move(l), std::move(r));
}

Formula simplify(const Formula& f, bool absorptive) {
  if (is_quantifier(f->kind)) {
    Formula body = simplify(f->left, absorptive);
    if (is_existential_quantifier(f->kind) && body->kind == NodeKind::kFalse) return f_false();
    if (is_universal(f->kind) && body->kind == NodeKind::kTrue) return f_true();
    return body == f->left ? f : quant(f->kind, f->var, body);
  }
  if (!is_binary(f->kind)) return f;
  Formula l = simplify(f->left, absorptive);
  Formula r = simplify(f->right, absorptive);
  if (f->kind == NodeKind::kAnd) {
    if (l->kind == NodeKind::kFalse || r->kind == NodeKind::kFalse) return f_false();
    if (l->kind == NodeKind::kTrue) return r;
    if (r->kind == NodeKind::kTrue) return l;
  } else {
    if (l->kind == NodeKind::kFalse) return r;
    if (r->kind == NodeKind::kFalse) return l;
    if (absorptive) {
      if (l->kind == NodeKind::kTrue || r->kind == NodeKind::kTrue) return f_true();
      if (equal(l, r)) return l;
    }
  }
  if (l == f->left && r == f->right) return f;
  return rebuild_binary(f->kind, l, r);
}

void require_no_shadowing(const Formula& f, const char* op) {
  if (has_shadowing(f)) throw PreconditionError(std::string(op) + ": FO≠ formula rebinds a variable in scope");
}

}  // namespace

Formula rename_apart(const Formula& f, const std::set<std::string>& avoid) {
  std::set<std::string> taken(avoid.begin(), avoid.end());
  for (const auto& v : free_vars(f)) taken.insert(v);
  std::set<std::string> everything = taken;
  for (const auto& v : all_vars(f)) everything.insert(v);
  std::set<std::string> fresh_used;
  std::function<Formula(const Formula&, const Sub&)> go = [&](const Formula& g, const Sub& sub) -> Formula {
    if (is_literal(g->kind)) return rename_literal(g, sub);
    if (is_binary(g->kind)) return rebuild_binary(g->kind, go(g->left, sub), go(g->right, sub));
    if (!is_quantifier(g->kind)) return g;
    std::string nv = g->var;
    if (taken.count(nv)) {
      for (std::size_t k = 1;; ++k) {
        std::string cand = g->var + std::to_string(k);
        if (!taken.count(cand) && !everything.count(cand)) {
          nv = cand;
          break;
        }
      }
    }
    taken.insert(nv);
    Sub inner = sub;
    inner[g->var] = nv;
    return quant(g->kind, nv, go(g->left, inner));
  };
  return go(f, {});
}

Formula simplify_exact(const Formula& f) { return simplify(f, false); }

Formula simplify_absorptive(const Formula& f) { return simplify(f, true); }

Formula fo_to_foneq(const Formula& input) {
  Flavor fl = flavor(input);
  if (fl == Flavor::kFONeq || fl == Flavor::kMixed) throw Error("fo_to_foneq: input is not an FO formula");
  Formula f = rename_apart(input);
  std::function<Formula(const Formula&, std::vector<std::string>&, Sub&)> go =
      [&](const Formula& g, std::vector<std::string>& visible, Sub& sub) -> Formula {
    switch (g->kind) {
      case NodeKind::kTrue:
      case NodeKind::kFalse:
        return g;
      case NodeKind::kAtom:
      case NodeKind::kNegAtom:
        return rename_literal(g, sub);
      case NodeKind::kEq:
        return lookup(sub, g->args[0]) == lookup(sub, g->args[1]) ? f_true() : f_false();
      case NodeKind::kNeq:
        return lookup(sub, g->args[0]) == lookup(sub, g->args[1]) ? f_false() : f_true();
      case NodeKind::kAnd:
      case NodeKind::kOr:
        return rebuild_binary(g->kind, go(g->left, visible, sub), go(g->right, visible, sub));
      case NodeKind::kExists:
      case NodeKind::kForall: {
        std::vector<Formula> parts;
        auto saved = sub.find(g->var) == sub.end() ? std::optional<std::string>() : std::optional<std::string>(sub[g->var]);
        const std::vector<std::string> outer = visible;
        for (const auto& v : outer) {
          sub[g->var] = v;
          parts.push_back(go(g->left, visible, sub));
        }
        sub[g->var] = g->var;
        visible.push_back(g->var);
        Formula body = go(g->left, visible, sub);
        visible.pop_back();
        if (saved) {
          sub[g->var] = *saved;
        } else {
          sub.erase(g->var);
        }
        bool ex = g->kind == NodeKind::kExists;
        parts.push_back(ex ? exists_d(g->var, body) : forall_d(g->var, body));
        return ex ? disj_all(parts) : conj_all(parts);
      }
      default:
        throw Error("fo_to_foneq: unexpected distinct quantifier");
    }
  };
  std::vector<std::string> visible = free_vars(f);
  Sub sub;
  return simplify_exact(go(f, visible, sub));
}

Formula foneq_to_fo(const Formula& f) {
  Flavor fl = flavor(f);
  if (fl == Flavor::kFO || fl == Flavor::kMixed) throw Error("foneq_to_fo: input is not an FO≠ formula");
  require_no_shadowing(f, "foneq_to_fo");
  std::vector<std::string> visible = free_vars(f);
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (is_binary(g->kind)) return rebuild_binary(g->kind, go(g->left), go(g->right));
    if (!is_quantifier(g->kind)) return g;
    std::vector<std::string> outer = visible;
    visible.push_back(g->var);
    Formula body = go(g->left);
    visible.pop_back();
    std::vector<Formula> parts;
    bool ex = g->kind == NodeKind::kExistsD;
    for (const auto& x : outer) parts.push_back(ex ? neq(g->var, x) : eq(g->var, x));
    parts.push_back(body);
    return ex ? exists(g->var, conj_all(parts)) : forall(g->var, disj_all(parts));
  };
  return go(f);
}

Formula psi_n(const Formula& input, std::size_t n) {
  if (n < 1) throw PreconditionError("psi_n needs n >= 1");
  if (!is_sentence(input)) throw PreconditionError("psi_n needs a sentence");
  Formula f = flavor(input) == Flavor::kFONeq ? foneq_to_fo(input) : input;
  if (flavor(f) == Flavor::kMixed) throw Error("psi_n: mixed quantifier flavors");
  auto vars = all_vars(f);
  std::string prefix = "x";
  auto collides = [&](const std::string& p) {
    for (std::size_t i = 1; i <= n; ++i) {
      if (std::find(vars.begin(), vars.end(), p + std::to_string(i)) != vars.end()) return true;
    }
    return false;
  };
  while (collides(prefix)) prefix += "x";
  std::vector<std::string> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(prefix + std::to_string(i));
  std::function<Formula(const Formula&, Sub&)> go = [&](const Formula& g, Sub& sub) -> Formula {
    if (is_literal(g->kind)) return rename_literal(g, sub);
    if (is_binary(g->kind)) return rebuild_binary(g->kind, go(g->left, sub), go(g->right, sub));
    if (!is_quantifier(g->kind)) return g;
    auto it = sub.find(g->var);
    std::optional<std::string> saved = it == sub.end() ? std::nullopt : std::optional<std::string>(it->second);
    std::vector<Formula> parts;
    for (const auto& x : xs) {
      sub[g->var] = x;
      parts.push_back(go(g->left, sub));
    }
    if (saved) {
      sub[g->var] = *saved;
    } else {
      sub.erase(g->var);
    }
    return g->kind == NodeKind::kExists ? disj_all(parts) : conj_all(parts);
  };
  Sub sub;
  Formula body = go(f, sub);
  if (n > 1) {
    std::vector<Formula> guards;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) guards.push_back(neq(xs[i], xs[j]));
    }
    body = conj(conj_all(guards), body);
  }
  for (std::size_t i = n; i-- > 0;) body = exists(xs[i], body);
  return body;
}

Formula flatten_sigma1(const Formula& input) {
  Flavor fl = flavor(input);
  if (fl == Flavor::kFONeq || fl == Flavor::kMixed) throw Error("flatten_sigma1: input is not an FO formula");
  Formula f = rename_apart(input);
  std::vector<std::string> bound;
  std::function<Formula(const Formula&)> pull = [&](const Formula& g) -> Formula {
    if (is_universal(g->kind)) throw PreconditionError("flatten_sigma1: universal quantifier in " + render(g));
    if (g->kind == NodeKind::kExists) {
      bound.push_back(g->var);
      return pull(g->left);
    }
    if (is_binary(g->kind)) {
      Formula l = pull(g->left);
      Formula r = pull(g->right);
      return rebuild_binary(g->kind, l, r);
    }
    return g;
  };
  Formula body = pull(f);
  for (std::size_t i = bound.size(); i-- > 0;) body = exists(bound[i], body);
  return body;
}

std::vector<Formula> normalize_conjunction(std::vector<Formula> lits) {
  std::vector<std::pair<std::string, Formula>> keyed;
  for (auto& l : lits) {
    if (l->kind == NodeKind::kTrue) continue;
    keyed.emplace_back(render(l), std::move(l));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  std::vector<Formula> out;
  for (auto& [k, l] : keyed) out.push_back(std::move(l));
  return out;
}

bool is_contradictory(const std::vector<Formula>& lits) {
  for (const auto& a : lits) {
    if (a->kind == NodeKind::kFalse) return true;
    if (a->kind == NodeKind::kNeq && a->args[0] == a->args[1]) return true;
    for (const auto& b : lits) {
      if (a->kind == NodeKind::kAtom && b->kind == NodeKind::kNegAtom && a->rel == b->rel && a->args == b->args) {
        return true;
      }
      if (a->kind == NodeKind::kEq && b->kind == NodeKind::kNeq &&
          (a->args == b->args || (a->args[0] == b->args[1] && a->args[1] == b->args[0]))) {
        return true;
      }
    }
  }
  return false;
}

Formula PrenexDnf::to_formula() const {
  std::vector<Formula> ds;
  for (const auto& d : disjuncts) ds.push_back(conj_all(d));
  Formula body = disj_all(ds);
  for (std::size_t i = bound.size(); i-- > 0;) body = exists_d(bound[i], body);
  return body;
}

namespace {

void injective_maps(const std::vector<std::string>& from, const std::vector<std::string>& to, std::size_t i,
                    std::vector<bool>& used, Sub& cur, std::vector<Sub>& out) {
  if (i == from.size()) {
    out.push_back(cur);
    return;
  }
  for (std::size_t j = 0; j < to.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    cur[from[i]] = to[j];
    injective_maps(from, to, i + 1, used, cur, out);
    used[j] = false;
  }
  cur.erase(from[i]);
}

std::vector<Sub> all_injective_maps(const std::vector<std::string>& from, const std::vector<std::string>& to) {
  std::vector<Sub> out;
  std::vector<bool> used(to.size(), false);
  Sub cur;
  injective_maps(from, to, 0, used, cur, out);
  return out;
}

void add_disjunct(std::vector<std::vector<Formula>>& ds, std::vector<std::string>& keys, std::vector<Formula> lits) {
  lits = normalize_conjunction(std::move(lits));
  if (is_contradictory(lits)) return;
  std::string key;
  for (const auto& l : lits) key += render(l) + ";";
  if (std::find(keys.begin(), keys.end(), key) != keys.end()) return;
  keys.push_back(key);
  ds.push_back(std::move(lits));
}

PrenexDnf dnf(const Formula& g) {
  PrenexDnf out;
  std::vector<std::string> keys;
  switch (g->kind) {
    case NodeKind::kTrue:
      out.disjuncts.push_back({});
      return out;
    case NodeKind::kFalse:
      return out;
    case NodeKind::kAtom:
    case NodeKind::kNegAtom:
      out.disjuncts.push_back({g});
      return out;
    case NodeKind::kExistsD: {
      out = dnf(g->left);
      out.bound.insert(out.bound.begin(), g->var);
      return out;
    }
    case NodeKind::kForallD:
    case NodeKind::kForall:
      throw PreconditionError("existential_prenex_dnf: universal quantifier in " + render(g));
    case NodeKind::kAnd:
    case NodeKind::kOr: {
      PrenexDnf a = dnf(g->left);
      PrenexDnf b = dnf(g->right);
      out.bound = a.bound;
      out.bound.insert(out.bound.end(), b.bound.begin(), b.bound.end());
      auto maps = all_injective_maps(b.bound, out.bound);
      if (g->kind == NodeKind::kOr) {
        for (const auto& d : a.disjuncts) add_disjunct(out.disjuncts, keys, d);
        for (const auto& m : maps) {
          for (const auto& d : b.disjuncts) {
            std::vector<Formula> lits;
            for (const auto& l : d) lits.push_back(rename_literal(l, m));
            add_disjunct(out.disjuncts, keys, std::move(lits));
          }
        }
      } else {
        for (const auto& da : a.disjuncts) {
          for (const auto& m : maps) {
            for (const auto& d : b.disjuncts) {
              std::vector<Formula> lits = da;
              for (const auto& l : d) lits.push_back(rename_literal(l, m));
              add_disjunct(out.disjuncts, keys, std::move(lits));
            }
          }
        }
      }
      return out;
    }
    default:
      throw Error("existential_prenex_dnf: not an FO≠ formula: " + render(g));
  }
}

}  // namespace

PrenexDnf existential_prenex_dnf(const Formula& f) {
  Flavor fl = flavor(f);
  if (fl == Flavor::kFO || fl == Flavor::kMixed) throw Error("existential_prenex_dnf: input is not an FO≠ formula");
  require_no_shadowing(f, "existential_prenex_dnf");
  return dnf(rename_apart(f));
}

}  // namespace semfo
