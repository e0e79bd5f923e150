// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/preservation.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "semfo/error.h"
#include "semfo/eval.h"
#include "semfo/provenance.h"
#include "semfo/transform.h"

namespace semfo {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) { return (a != 0 && b > kMax / a) ? kMax : a * b; }

std::uint64_t sat_pow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, b);
  return r;
}

std::vector<Value> grid_or_default(const Semiring& s, const std::vector<Value>& grid) {
  return nonzero_values(s, grid.empty() ? s.default_grid() : grid);
}

std::string format_grid(const Semiring& s, const std::vector<Value>& grid) {
  std::string out = "{";
  for (std::size_t i = 0; i < grid.size(); ++i) out += (i ? ", " : "") + s.format(grid[i]);
  return out + "}";
}

void require_sentence(const Formula& f) {
  if (!is_sentence(f)) throw PreconditionError("expected a sentence, got free variables in " + render(f));
}

bool violates(const Semiring& s, Property p, const Value& va, const Value& vb) {
  return p == Property::kSubinterpretations ? !s.leq(vb, va) : !s.leq(va, vb);
}

// Model-defining copy with the non-zero literal of `a` set to v.
Interpretation with_literal(const Interpretation& pi, const GroundAtom& a, bool negated, const Value& v) {
  Interpretation out = pi;
  if (negated) {
    out.set_negated(a.rel, a.args, v);
  } else {
    out.set_atom(a.rel, a.args, v);
  }
  return out;
}

// Tries to lower the non-zero literal of each atom to a smaller grid value while
// `keep` holds, repeating until nothing changes.
template <typename Keep>
Interpretation lower_values(const Interpretation& pi, const std::vector<Value>& grid, const Keep& keep) {
  const Semiring& s = pi.semiring();
  Interpretation cur = pi;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : cur.atoms()) {
      bool negated = s.is_zero(cur.value(a, false));
      Value v = cur.value(a, negated);
      for (const auto& g : grid) {
        if (!s.less(g, v)) continue;
        Interpretation cand = with_literal(cur, a, negated, g);
        if (keep(cand)) {
          cur = std::move(cand);
          changed = true;
          break;
        }
      }
    }
  }
  return cur;
}

PreservationWitness sub_witness(const Evaluator& ev, const Interpretation& b, const std::vector<Elem>& subset) {
  Interpretation a = restrict(b, subset);
  Value va = ev(a);
  Value vb = ev(b);
  return PreservationWitness{std::move(a), b, subset, std::move(va), std::move(vb)};
}

PreservationWitness minimize_sub(const Evaluator& ev, Property p, PreservationWitness w,
                                 const std::vector<Value>& grid) {
  const Semiring& s = w.b.semiring();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem e = 0; e < w.b.size() && !changed; ++e) {
      std::vector<Elem> keep;
      std::vector<Elem> subset;
      for (Elem x = 0; x < w.b.size(); ++x) {
        if (x != e) keep.push_back(x);
      }
      for (Elem x : w.map) {
        if (x != e) subset.push_back(x < e ? x : x - 1);
      }
      if (subset.empty() || subset.size() == keep.size()) continue;
      PreservationWitness cand = sub_witness(ev, restrict(w.b, keep), subset);
      if (violates(s, p, cand.value_a, cand.value_b)) {
        w = std::move(cand);
        changed = true;
      }
    }
  }
  const std::vector<Elem> subset = w.map;
  Interpretation b = lower_values(w.b, grid, [&](const Interpretation& cand) {
    return violates(s, p, ev(restrict(cand, subset)), ev(cand));
  });
  return sub_witness(ev, b, subset);
}

PreservationWitness hom_witness(const Evaluator& ev, const Interpretation& a, const Interpretation& b,
                                const std::vector<Elem>& g) {
  return PreservationWitness{a, b, g, ev(a), ev(b)};
}

PreservationWitness minimize_hom(const Evaluator& ev, PreservationWitness w, const std::vector<Value>& grid) {
  const Semiring& s = w.b.semiring();
  auto refutes = [&](const Interpretation& a, const Interpretation& b, const std::vector<Elem>& g) {
    return check_interp_hom(g, a, b) != HomClass::kNone && violates(s, Property::kHomomorphisms, ev(a), ev(b));
  };
  std::set<Elem> image(w.map.begin(), w.map.end());
  if (image.size() < w.b.size()) {
    std::vector<Elem> keep(image.begin(), image.end());
    std::vector<Elem> g;
    for (Elem x : w.map) g.push_back(static_cast<Elem>(std::lower_bound(keep.begin(), keep.end(), x) - keep.begin()));
    Interpretation b = restrict(w.b, keep);
    if (refutes(w.a, b, g)) w = hom_witness(ev, w.a, b, g);
  }
  Interpretation b = lower_values(w.b, grid, [&](const Interpretation& cand) { return refutes(w.a, cand, w.map); });
  Interpretation a = lower_values(w.a, grid, [&](const Interpretation& cand) { return refutes(cand, b, w.map); });
  return hom_witness(ev, a, b, w.map);
}

std::vector<std::vector<Elem>> proper_subsets(std::size_t k, std::size_t min_size) {
  std::vector<std::vector<Elem>> out;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < min_size) continue;
    std::vector<Elem> sub;
    for (Elem x = 0; x < k; ++x) {
      if (mask >> x & 1u) sub.push_back(x);
    }
    out.push_back(std::move(sub));
  }
  return out;
}

bool next_map(std::vector<Elem>& g, std::size_t target) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (++g[i] < target) return true;
    g[i] = 0;
  }
  return false;
}

}  // namespace

std::string to_string(Property p) {
  switch (p) {
    case Property::kExtensions:
      return "extensions";
    case Property::kSubinterpretations:
      return "subinterpretations";
    case Property::kHomomorphisms:
      return "homomorphisms";
  }
  return "?";
}

Property parse_property(std::string_view text) {
  if (text == "extensions" || text == "ext") return Property::kExtensions;
  if (text == "subints" || text == "subinterpretations") return Property::kSubinterpretations;
  if (text == "homs" || text == "homomorphisms") return Property::kHomomorphisms;
  throw Error("unknown property '" + std::string(text) + "' (expected extensions, subints or homs)");
}

std::string PreservationVerdict::to_string(const Semiring& s) const {
  std::ostringstream out;
  out << "property: " << semfo::to_string(property) << "\n";
  out << "result: " << (refuted ? "refuted" : "holds_on_search_space") << "\n";
  out << "search: sizes " << min_size << ".." << max_size << ", grid " << format_grid(s, grid) << ", "
      << (exhaustive ? "exhaustive" : "sampled") << ", " << checked << " checked\n";
  if (witness) {
    const auto& w = *witness;
    out << "witness A:\n" << w.a.to_string();
    out << "witness B:\n" << w.b.to_string();
    out << "map:";
    for (std::size_t i = 0; i < w.map.size(); ++i) {
      out << " " << w.a.element_name(static_cast<Elem>(i)) << "->" << w.b.element_name(w.map[i]);
    }
    out << "\nvalues: A = " << s.format(w.value_a) << ", B = " << s.format(w.value_b) << "\n";
  }
  return out.str();
}

bool witness_refutes(const Formula& sentence, Property property, const PreservationWitness& w) {
  const Semiring& s = w.b.semiring();
  if (!w.a.validate().ok() || !w.b.validate().ok()) return false;
  if (property == Property::kHomomorphisms) {
    if (check_interp_hom(w.map, w.a, w.b) == HomClass::kNone) return false;
  } else if (!(restrict(w.b, w.map) == w.a) || w.map.size() >= w.b.size() || w.map.empty()) {
    return false;
  }
  Value va = eval(w.a, sentence);
  Value vb = eval(w.b, sentence);
  return va == w.value_a && vb == w.value_b && violates(s, property, va, vb);
}

PreservationVerdict check_preservation(const Formula& sentence, const Semiring& s, Property property,
                                       const PreservationOptions& options) {
  require_sentence(sentence);
  if (options.min_size == 0 || options.min_size > options.max_size) {
    throw PreconditionError("sizes must satisfy 1 <= min <= max");
  }
  PreservationVerdict verdict;
  verdict.property = property;
  verdict.min_size = options.min_size;
  verdict.max_size = options.max_size;
  verdict.grid = grid_or_default(s, options.grid);
  const Vocabulary vocab = vocabulary_of(sentence);
  const Evaluator ev(sentence);
  const auto& grid = verdict.grid;
  std::mt19937_64 rng(options.seed);

  std::map<std::size_t, InterpretationSpace> spaces;
  for (std::size_t k = options.min_size; k <= options.max_size; ++k) {
    spaces.emplace(k, InterpretationSpace(s, vocab, k, grid, options.guard));
  }

  auto finish = [&](PreservationWitness w) {
    if (options.minimize) {
      w = property == Property::kHomomorphisms ? minimize_hom(ev, std::move(w), grid)
                                               : minimize_sub(ev, property, std::move(w), grid);
    }
    if (!witness_refutes(sentence, property, w)) throw VerificationFailure("preservation witness does not re-validate");
    verdict.refuted = true;
    verdict.witness = std::move(w);
  };

  if (property != Property::kHomomorphisms) {
    std::uint64_t total = 0;
    bool fits = true;
    for (std::size_t k = std::max<std::size_t>(options.min_size + 1, 2); k <= options.max_size; ++k) {
      const auto& sp = spaces.at(k);
      fits = fits && sp.within_guard();
      total = sat_add(total, sat_mul(sp.count(), proper_subsets(k, options.min_size).size()));
    }
    if (fits && total <= options.guard) {
      for (std::size_t k = std::max<std::size_t>(options.min_size + 1, 2); k <= options.max_size; ++k) {
        const auto subsets = proper_subsets(k, options.min_size);
        spaces.at(k).for_each([&](const Interpretation& b) {
          const Value vb = ev(b);
          for (const auto& sub : subsets) {
            ++verdict.checked;
            Interpretation a = restrict(b, sub);
            Value va = ev(a);
            if (violates(s, property, va, vb)) {
              finish(PreservationWitness{std::move(a), b, sub, std::move(va), vb});
              return false;
            }
          }
          return true;
        });
        if (verdict.refuted) break;
      }
      return verdict;
    }
    if (options.samples == 0) {
      throw GuardExceeded(std::to_string(total) + " pairs exceed the guard " + std::to_string(options.guard));
    }
    verdict.exhaustive = false;
    const std::size_t lo = std::max<std::size_t>(options.min_size + 1, 2);
    if (lo > options.max_size) return verdict;
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      std::size_t k = std::uniform_int_distribution<std::size_t>(lo, options.max_size)(rng);
      Interpretation b = spaces.at(k).random(rng);
      const auto subsets = proper_subsets(k, options.min_size);
      const auto& sub = subsets[std::uniform_int_distribution<std::size_t>(0, subsets.size() - 1)(rng)];
      ++verdict.checked;
      PreservationWitness w = sub_witness(ev, b, sub);
      if (violates(s, property, w.value_a, w.value_b)) {
        finish(std::move(w));
        break;
      }
    }
    return verdict;
  }

  // Homomorphisms: every pair of interpretations and every map between them.
  std::uint64_t total = 0;
  bool fits = true;
  for (std::size_t ka = options.min_size; ka <= options.max_size; ++ka) {
    for (std::size_t kb = options.min_size; kb <= options.max_size; ++kb) {
      const auto& sa = spaces.at(ka);
      const auto& sb = spaces.at(kb);
      fits = fits && sa.within_guard() && sb.within_guard();
      total = sat_add(total, sat_mul(sat_mul(sa.count(), sb.count()), sat_pow(kb, ka)));
    }
  }
  auto try_pair = [&](const Interpretation& a, const Value& va, const Interpretation& b, const Value& vb) {
    ++verdict.checked;
    if (!violates(s, property, va, vb)) return false;
    std::vector<Elem> g(a.size(), 0);
    do {
      if (check_interp_hom(g, a, b) != HomClass::kNone) {
        finish(hom_witness(ev, a, b, g));
        return true;
      }
    } while (next_map(g, b.size()));
    return false;
  };
  if (fits && total <= options.guard) {
    for (std::size_t ka = options.min_size; ka <= options.max_size && !verdict.refuted; ++ka) {
      for (std::size_t kb = options.min_size; kb <= options.max_size && !verdict.refuted; ++kb) {
        spaces.at(ka).for_each([&](const Interpretation& a) {
          const Value va = ev(a);
          bool found = false;
          spaces.at(kb).for_each([&](const Interpretation& b) {
            found = try_pair(a, va, b, ev(b));
            return !found;
          });
          return !found;
        });
      }
    }
    return verdict;
  }
  if (options.samples == 0) {
    throw GuardExceeded(std::to_string(total) + " candidates exceed the guard " + std::to_string(options.guard));
  }
  verdict.exhaustive = false;
  for (std::uint64_t i = 0; i < options.samples; ++i) {
    std::size_t ka = std::uniform_int_distribution<std::size_t>(options.min_size, options.max_size)(rng);
    std::size_t kb = std::uniform_int_distribution<std::size_t>(options.min_size, options.max_size)(rng);
    Interpretation a = spaces.at(ka).random(rng);
    Interpretation b = spaces.at(kb).random(rng);
    if (try_pair(a, ev(a), b, ev(b))) break;
  }
  return verdict;
}

// ---------------------------------------------------------------------------

namespace {

void require_foneq(const Formula& f) {
  Flavor fl = flavor(f);
  if (fl == Flavor::kFO || fl == Flavor::kMixed) throw PreconditionError("expected an FO≠ formula: " + render(f));
}

// Constant term of the canonical absorptive polynomial: every literal is sent
// to 0, so only the quantifier ranges matter.
bool zero_term(const Formula& f, std::set<std::string>& visible, std::uint64_t n) {
  switch (f->kind) {
    case NodeKind::kTrue:
      return true;
    case NodeKind::kFalse:
    case NodeKind::kAtom:
    case NodeKind::kNegAtom:
      return false;
    case NodeKind::kEq:
      return f->args[0] == f->args[1];
    case NodeKind::kNeq:
      return f->args[0] != f->args[1];
    case NodeKind::kAnd:
      return zero_term(f->left, visible, n) && zero_term(f->right, visible, n);
    case NodeKind::kOr:
      return zero_term(f->left, visible, n) || zero_term(f->right, visible, n);
    case NodeKind::kExistsD:
    case NodeKind::kForallD: {
      const std::uint64_t k = visible.size();
      const bool range_empty = n <= k;
      bool fresh = visible.insert(f->var).second;
      bool body = zero_term(f->left, visible, n);
      if (fresh) visible.erase(f->var);
      return f->kind == NodeKind::kExistsD ? (!range_empty && body) : (range_empty || body);
    }
    case NodeKind::kExists:
    case NodeKind::kForall:
      break;
  }
  throw PreconditionError("expected an FO≠ formula");
}

void require_trivial_size(const Formula& f, std::size_t n) {
  const std::size_t k = free_vars(f).size();
  if (n == 0 || n < k) {
    throw PreconditionError("size " + std::to_string(n) + " cannot instantiate " + std::to_string(k) +
                            " free variables");
  }
}

}  // namespace

bool is_trivial_at(const Formula& f, std::size_t n) {
  require_foneq(f);
  require_trivial_size(f, n);
  auto fv = free_vars(f);
  std::set<std::string> visible(fv.begin(), fv.end());
  return zero_term(f, visible, n);
}

bool is_trivial_at_literal(const Formula& f, std::size_t n) {
  require_foneq(f);
  require_trivial_size(f, n);
  Interpretation pi = pi_n(vocabulary_of(f), n, PolyFlavor::kAbsorptive);
  std::map<std::string, Elem> assignment;
  Elem next = 0;
  for (const auto& v : free_vars(f)) assignment[v] = next++;
  return pi.semiring().is_one(eval(pi, f, assignment));
}

std::string to_string(Triviality t) {
  switch (t) {
    case Triviality::kTrivial:
      return "trivial";
    case Triviality::kNonTrivial:
      return "non_trivial";
    case Triviality::kUnstable:
      return "unstable";
  }
  return "?";
}

std::string TrivialityReport::to_string() const {
  std::ostringstream out;
  out << "verdict: " << semfo::to_string(verdict) << "\n";
  out << "threshold: " << threshold << "\n";
  out << "probes:";
  for (const auto& [n, t] : probes) out << " " << n << ":" << (t ? 1 : 0);
  out << "\n";
  return out.str();
}

TrivialityReport is_eventually_trivial(const Formula& f) {
  require_foneq(f);
  const FormulaMetrics m = metrics(f);
  const std::size_t k = free_vars(f).size();
  TrivialityReport rep;
  rep.threshold = m.size + 1 >= 63 ? kMax : sat_add((std::uint64_t{1} << (m.size + 1)), m.qr + 2);
  const std::uint64_t lo = std::max<std::uint64_t>(1, k);
  const std::uint64_t hi = std::max(rep.threshold, lo);
  auto fv = free_vars(f);
  std::set<std::string> visible(fv.begin(), fv.end());
  std::set<std::uint64_t> sizes;
  for (std::uint64_t n = lo; n <= std::min(hi, lo + 64); ++n) sizes.insert(n);
  sizes.insert(hi);
  if (hi > lo) sizes.insert(hi - 1);
  for (std::uint64_t n : sizes) rep.probes.emplace_back(n, zero_term(f, visible, n));
  const bool last = rep.probes.back().second;
  const bool before = rep.probes.size() > 1 ? rep.probes[rep.probes.size() - 2].second : last;
  if (last != before) {
    rep.verdict = Triviality::kUnstable;
  } else {
    rep.verdict = last ? Triviality::kTrivial : Triviality::kNonTrivial;
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

ClassOptimum class_optimum(const Interpretation& pi, const Formula& sentence, StrategyClass cls) {
  require_sentence(sentence);
  GameTree tree(sentence, pi.size());
  OptimalResult opt = optimal(pi, tree);
  ClassOptimum res;
  res.optimum = opt.value;
  if (auto best = best_in_class(pi, tree, cls)) {
    res.class_best = best->first;
    if (opt.strategy && best->first == opt.value) {
      res.found = true;
      res.strategy = std::move(best->second);
    }
  }
  return res;
}

}  // namespace

ClassOptimum has_existential_optimal(const Interpretation& pi, const Formula& sentence) {
  return class_optimum(pi, sentence, StrategyClass::kExistential);
}

ClassOptimum has_almost_existential_optimal(const Interpretation& pi, const Formula& sentence) {
  return class_optimum(pi, sentence, StrategyClass::kAlmostExistential);
}

// ---------------------------------------------------------------------------

namespace {

bool is_strict_kind(SemiringKind k) {
  return k == SemiringKind::kViterbi || k == SemiringKind::kTropical || k == SemiringKind::kLukasiewicz ||
         k == SemiringKind::kDoubt;
}

// Larger is better; nothing for the tropical zero.
std::optional<Rational> score(const Semiring& s, const Value& v) {
  switch (s.kind()) {
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
      return s.real(v);
    case SemiringKind::kDoubt:
      return Rational(-s.real(v));
    case SemiringKind::kTropical:
      if (s.is_zero(v)) return std::nullopt;
      return Rational(-s.real(v));
    default:
      throw PreconditionError("expected viterbi, tropical, lukasiewicz or doubt");
  }
}

std::size_t literal_degree(const Strategy& t) {
  std::size_t d = 0;
  for (int id : t.leaves()) d += literal_elements(t.node(id)) ? 1 : 0;
  return d;
}

Rational rpow(const Rational& b, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

OneElimination eliminate_one_valuations(const Interpretation& pi, const Formula& sentence, std::uint64_t guard) {
  const Semiring& s = pi.semiring();
  if (!is_strict_kind(s.kind())) throw PreconditionError("expected viterbi, tropical, lukasiewicz or doubt");
  require_sentence(sentence);
  const Value total = eval(pi, sentence);
  if (s.is_zero(total)) throw PreconditionError("eval(pi, sentence) is 0");

  OneElimination res{pi, std::nullopt, Rational(0), 0};
  bool has_one = false;
  for (const auto& a : pi.atoms()) has_one = has_one || s.is_one(pi.value(a, false)) || s.is_one(pi.value(a, true));
  if (!has_one) return res;

  GameTree tree(sentence, pi.size());
  std::vector<Strategy> strategies = enumerate_strategies(tree, guard);
  std::set<Rational> scores;
  if (auto z = score(s, s.zero())) scores.insert(*z);
  std::vector<Value> before;
  for (const auto& t : strategies) {
    before.push_back(eval_strategy(pi, t));
    if (auto sc = score(s, before.back())) scores.insert(*sc);
    res.max_degree = std::max(res.max_degree, literal_degree(t));
  }
  Rational delta = 1;
  bool first = true;
  for (auto it = scores.begin(); it != scores.end() && std::next(it) != scores.end(); ++it) {
    Rational gap = *std::next(it) - *it;
    if (first || gap < delta) delta = gap;
    first = false;
  }
  res.delta = delta;
  const std::size_t e = res.max_degree;

  Value replacement;
  for (long k = 2;; ++k) {
    if (k > 100000000) throw VerificationFailure("no replacement value found");
    const Rational eps(1, k);
    bool ok = false;
    switch (s.kind()) {
      case SemiringKind::kViterbi:
        ok = rpow(1 - eps, e) > 1 - delta / s.real(total);
        break;
      default:
        ok = Rational(e) * eps < delta;
        break;
    }
    if (!ok) continue;
    const bool lower_is_better = s.kind() == SemiringKind::kViterbi || s.kind() == SemiringKind::kLukasiewicz;
    replacement = s.from_real(lower_is_better ? Rational(1 - eps) : eps);
    break;
  }
  res.replacement = replacement;

  for (const auto& a : pi.atoms()) {
    Value p = pi.value(a, false);
    Value n = pi.value(a, true);
    if (s.is_one(p)) p = replacement;
    if (s.is_one(n)) n = replacement;
    res.result.set_both(a.rel, a.args, p, n);
  }
  res.result.require_valid();

  const Value star_total = eval(res.result, sentence);
  if (s.is_zero(star_total)) throw VerificationFailure("value became 0 after replacing 1");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (eval_strategy(res.result, strategies[i]) == star_total && !(before[i] == total)) {
      throw VerificationFailure("strategy " + std::to_string(i) + " is optimal after the replacement only");
    }
  }
  return res;
}

Interpretation pad_absent_elements(const Interpretation& pi, const Formula& sentence,
                                   const std::optional<Value>& fill) {
  require_sentence(sentence);
  const Semiring& s = pi.semiring();
  const Value v = eval(pi, sentence);
  if (s.is_zero(v)) throw PreconditionError("eval(pi, sentence) is 0");
  Value f;
  if (fill) {
    f = *fill;
  } else {
    switch (s.kind()) {
      case SemiringKind::kViterbi:
      case SemiringKind::kLukasiewicz:
      case SemiringKind::kFuzzy:
        f = s.from_real(s.real(v) / 2);
        break;
      case SemiringKind::kDoubt:
        f = s.from_real((s.real(v) + 1) / 2);
        break;
      case SemiringKind::kTropical:
        f = s.from_real(2 * s.real(v) + 1);
        break;
      default:
        throw PreconditionError("no default fill value for " + s.id());
    }
  }
  if (s.is_zero(f) || !s.less(f, v)) throw PreconditionError("fill must lie strictly between 0 and eval(pi, sentence)");
  return pad(pi, metrics(sentence).qr + 1, f);
}

// ---------------------------------------------------------------------------

namespace {

Value subtree_value(const Interpretation& pi, const Strategy& t, int id) {
  const TreeNode& nd = t.node(id);
  if (nd.children.empty()) return eval_strategy(pi, t.subtree(id));
  Value acc = pi.semiring().one();
  for (int c : nd.children) acc = pi.semiring().mul(acc, subtree_value(pi, t, c));
  return acc;
}

Strategy relabel(const Strategy& t, const std::vector<Elem>& perm) {
  std::vector<TreeNode> nodes = t.nodes();
  for (auto& nd : nodes) {
    for (auto& p : nd.env) p.second = perm[p.second];
    if (nd.elem >= 0) nd.elem = perm[static_cast<Elem>(nd.elem)];
  }
  return Strategy(t.universe_size(), std::move(nodes));
}

}  // namespace

ShrinkResult shrink_counterexample(const Interpretation& pi, const Strategy& t, const Formula& sentence) {
  const Semiring& s = pi.semiring();
  if (!is_sentence(sentence) || flavor(sentence) == Flavor::kFO || flavor(sentence) == Flavor::kMixed) {
    throw PreconditionError("sentence: expected an FO≠ sentence");
  }
  if (t.size() == 0 || !equal(t.formula(), sentence) || t.universe_size() != pi.size() || validate_strategy(t)) {
    throw PreconditionError("strategy: not a strategy for the sentence over the universe");
  }
  const FormulaMetrics m = metrics(sentence);
  const std::size_t big = pi.size();
  if (m.size >= 60 || big < 2 * ((std::size_t{1} << m.size) + m.qr + 1)) {
    throw PreconditionError("universe_size: need at least 2(2^|psi| + qr + 1) elements");
  }
  const Value before = eval(pi, sentence);
  if (s.is_zero(before)) throw PreconditionError("nonzero_value: eval(pi, sentence) is 0");
  if (!(eval_strategy(pi, t) == before)) throw PreconditionError("optimal_strategy: the strategy value differs from eval");
  bool forall_ok = false;
  for (int id = 0; id < static_cast<int>(t.size()) && !forall_ok; ++id) {
    const TreeNode& nd = t.node(id);
    if (nd.formula->kind != NodeKind::kForallD || nd.children.empty()) continue;
    forall_ok = std::all_of(nd.children.begin(), nd.children.end(),
                            [&](int c) { return !s.is_one(subtree_value(pi, t, c)); });
  }
  if (!forall_ok) throw PreconditionError("forall_node: no universal node has all child subtrees valued != 1");
  std::set<Elem> used;
  for (int id : t.leaves()) {
    if (auto els = literal_elements(t.node(id))) used.insert(els->begin(), els->end());
  }
  std::vector<Elem> absent;
  for (Elem e = 0; e < big; ++e) {
    if (!used.contains(e)) absent.push_back(e);
  }
  if (absent.size() < m.qr + 1) {
    throw PreconditionError("absent_elements: need qr + 1 = " + std::to_string(m.qr + 1) +
                            " elements outside the leaf literals");
  }

  std::set<Elem> moved(absent.end() - static_cast<long>(m.qr + 1), absent.end());
  std::vector<Elem> order;
  for (Elem e = 0; e < big; ++e) {
    if (!moved.contains(e)) order.push_back(e);
  }
  order.insert(order.end(), moved.begin(), moved.end());
  std::vector<Elem> perm(big);
  for (Elem i = 0; i < big; ++i) perm[order[i]] = i;

  TranslationResult tr = translate_strategy(relabel(t, perm));
  std::vector<Elem> keep(order.begin(), order.end() - 1);
  Interpretation smaller = restrict(pi, keep);
  const Value after = eval(smaller, sentence);
  if (!s.less(before, after)) {
    throw VerificationFailure("value did not increase: " + s.format(before) + " vs " + s.format(after));
  }
  return ShrinkResult{std::move(smaller), pi.element_name(order.back()), before, after, std::move(tr.strategy)};
}

// ---------------------------------------------------------------------------

namespace {

Interpretation starred(const Interpretation& pi, const AdjoinedBottom& ab) {
  const Semiring& s = pi.semiring();
  Interpretation out(ab.star, pi.universe(), pi.vocab());
  auto lift = [&](const Value& v) { return s.is_zero(v) ? ab.star.zero() : ab.lift(v); };
  for (const auto& a : pi.atoms()) out.set_both(a.rel, a.args, lift(pi.value(a, false)), lift(pi.value(a, true)));
  return out;
}

}  // namespace

S3Lift lift_counterexample_to_s3(const Semiring& lattice, const Interpretation& pi_a, const Interpretation& pi_b,
                                 const std::vector<Formula>& phi) {
  if (!lattice.is_lattice_semiring()) throw PreconditionError("expected a finite lattice semiring");
  if (lattice_of(lattice)->size() <= 2) {
    throw PreconditionError("the lattice is the Boolean semiring, where no kernel-{0} map into S3 separates");
  }
  if (!(pi_a.semiring() == lattice) || !(pi_b.semiring() == lattice)) {
    throw PreconditionError("interpretations must be over the given lattice");
  }
  for (const auto& f : phi) require_sentence(f);
  pi_a.require_valid();
  pi_b.require_valid();
  if (!is_subinterpretation(pi_a, pi_b)) throw PreconditionError("pi_a is not a subinterpretation of pi_b");
  const Value va = eval_set(pi_a, phi);
  const Value vb = eval_set(pi_b, phi);
  if (lattice.leq(va, vb)) throw PreconditionError("pi_a[Phi] <= pi_b[Phi], nothing to lift");

  AdjoinedBottom ab = adjoin_bottom(lattice);
  Interpretation sa = starred(pi_a, ab);
  Interpretation sb = starred(pi_b, ab);
  const Value s_val = eval_set(sa, phi);
  const Value t_val = eval_set(sb, phi);
  auto h = find_weakly_separating_hom(ab.star, s_val, t_val);
  if (!h) throw VerificationFailure("no weakly separating homomorphism into S3");
  Interpretation a = compose_hom(*h, sa);
  Interpretation b = compose_hom(*h, sb);
  const Value xa = eval_set(a, phi);
  const Value xb = eval_set(b, phi);
  const Semiring s3 = Semiring::s3();
  if (!s3.less(xb, xa)) throw VerificationFailure("lifted pair is not a strict counterexample over S3");
  if (!is_subinterpretation(a, b)) throw VerificationFailure("lifted pair lost the subinterpretation relation");
  return S3Lift{*h, std::move(sa), std::move(sb), std::move(a), std::move(b), xa, xb};
}

// ---------------------------------------------------------------------------

namespace {

S3Check s3_scan(const std::vector<Formula>& phi, const std::vector<Formula>& psi, const std::vector<std::size_t>& sizes,
                std::uint64_t guard, bool both_ways) {
  for (const auto& f : phi) require_sentence(f);
  for (const auto& f : psi) require_sentence(f);
  std::vector<Formula> all = phi;
  all.insert(all.end(), psi.begin(), psi.end());
  const Vocabulary vocab = vocabulary_of(all);
  const Semiring s3 = Semiring::s3();
  S3Check res;
  for (std::size_t n : sizes) {
    if (n == 0) throw PreconditionError("sizes must be positive");
    InterpretationSpace space(s3, vocab, n, {level(kS3Eps), level(kS3One)}, guard);
    if (!space.within_guard()) {
      throw GuardExceeded("size " + std::to_string(n) + " gives " + std::to_string(space.count()) +
                          " S3 interpretations");
    }
    space.for_each([&](const Interpretation& pi) {
      ++res.checked;
      Value a = eval_set(pi, phi);
      Value b = eval_set(pi, psi);
      bool one_a = s3.is_one(a);
      bool one_b = s3.is_one(b);
      if ((one_a && !one_b) || (both_ways && one_b && !one_a)) {
        res.holds = false;
        res.witness = pi;
        res.phi_value = a;
        res.psi_value = b;
        return false;
      }
      return true;
    });
    if (!res.holds) break;
  }
  return res;
}

}  // namespace

S3Check s3_entailment(const std::vector<Formula>& phi, const std::vector<Formula>& psi,
                      const std::vector<std::size_t>& sizes, std::uint64_t guard) {
  return s3_scan(phi, psi, sizes, guard, false);
}

S3Check s3_equivalence(const std::vector<Formula>& phi, const std::vector<Formula>& psi,
                       const std::vector<std::size_t>& sizes, std::uint64_t guard) {
  return s3_scan(phi, psi, sizes, guard, true);
}

// ---------------------------------------------------------------------------

namespace {

struct SizeCheck {
  bool agree = true;
  std::uint64_t count = 0;
  bool exhaustive = true;
  std::string scope;
  std::optional<Interpretation> witness;
  std::optional<Value> va;
  std::optional<Value> vb;
};

// Compares the two values on every interpretation of one size: the full grid
// if within the guard, else the coarse grid of the extreme values, else
// `samples` random draws.
SizeCheck compare_at_size(const Evaluator& ea, const Evaluator& eb, const Semiring& s, const Vocabulary& vocab,
                          std::size_t n, const std::vector<Value>& grid, std::uint64_t guard, std::uint64_t samples,
                          std::mt19937_64& rng, bool exhaustive) {
  SizeCheck res;
  auto test = [&](const Interpretation& pi) {
    ++res.count;
    Value a = ea(pi);
    Value b = eb(pi);
    if (a == b) return true;
    res.agree = false;
    res.witness = pi;
    res.va = std::move(a);
    res.vb = std::move(b);
    return false;
  };
  const std::string head = "size " + std::to_string(n) + ": ";
  if (exhaustive) {
    InterpretationSpace full(s, vocab, n, grid, guard);
    if (full.within_guard()) {
      full.for_each(test);
      res.scope = head + "exhaustive over grid " + format_grid(s, grid) + ", " + std::to_string(res.count) +
                  " interpretations";
      return res;
    }
    std::vector<Value> coarse{grid.front(), grid.back()};
    InterpretationSpace small(s, vocab, n, coarse, guard);
    if (small.within_guard()) {
      small.for_each(test);
      res.scope = head + "exhaustive over coarse grid " + format_grid(s, coarse) + ", " +
                  std::to_string(res.count) + " interpretations";
      if (!res.agree) return res;
      std::uint64_t before = res.count;
      for (std::uint64_t i = 0; i < samples && test(full.random(rng)); ++i) {
      }
      res.scope += ", plus " + std::to_string(res.count - before) + " samples over the full grid";
      return res;
    }
  }
  res.exhaustive = false;
  InterpretationSpace full(s, vocab, n, grid, guard);
  for (std::uint64_t i = 0; i < samples && test(full.random(rng)); ++i) {
  }
  res.scope = head + "sampled " + std::to_string(res.count) + " interpretations over grid " + format_grid(s, grid);
  return res;
}

struct SuiteSpec {
  Semiring small;
  Semiring large;
};

// Exhaustive sizes use `small`, sampled sizes use `large`.
EquivalenceCheck run_suite(const Formula& a, const Formula& b, const SuiteSpec& suite, const RewriteOptions& o) {
  EquivalenceCheck res;
  const Vocabulary vocab = vocabulary_of(std::vector<Formula>{a, b});
  const Evaluator ea(a);
  const Evaluator eb(b);
  std::mt19937_64 rng(o.seed);
  auto absorb = [&](const SizeCheck& c) {
    (c.exhaustive ? res.exhaustive : res.sampled) += c.count;
    res.scope.push_back(c.scope);
    if (!c.agree) {
      res.passed = false;
      res.witness = c.witness;
      res.input_value = c.va;
      res.output_value = c.vb;
    }
    return c.agree;
  };
  const auto small_grid = grid_or_default(suite.small, {});
  for (std::size_t n = 1; n <= o.exhaustive_max; ++n) {
    if (!absorb(compare_at_size(ea, eb, suite.small, vocab, n, small_grid, o.guard, o.samples, rng, true))) return res;
  }
  if (o.samples == 0 || o.sampled_max == 0) return res;
  const auto grid = grid_or_default(suite.large, {});
  std::vector<std::uint64_t> per(o.sampled_max + 1, 0);
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    ++per[std::uniform_int_distribution<std::size_t>(1, o.sampled_max)(rng)];
  }
  for (std::size_t n = 1; n <= o.sampled_max; ++n) {
    if (per[n] == 0) continue;
    if (!absorb(compare_at_size(ea, eb, suite.large, vocab, n, grid, o.guard, per[n], rng, false))) return res;
  }
  return res;
}

// Smallest n such that both formulae agree on every suite size from n up.
std::size_t find_threshold(const Formula& psi, const Formula& chi, const SuiteSpec& suite, const RewriteOptions& o) {
  const Vocabulary vocab = vocabulary_of(std::vector<Formula>{psi, chi});
  const Evaluator ea(psi);
  const Evaluator eb(chi);
  std::mt19937_64 rng(o.seed);
  const std::size_t top = std::max(o.sampled_max, o.exhaustive_max);
  std::size_t n0 = top + 1;
  for (std::size_t n = top; n >= 1; --n) {
    const bool exhaustive = n <= o.exhaustive_max;
    const Semiring& s = exhaustive ? suite.small : suite.large;
    const std::uint64_t samples = exhaustive ? std::min<std::uint64_t>(o.samples, 200)
                                             : std::max<std::uint64_t>(o.samples / 4, 50);
    SizeCheck c = compare_at_size(ea, eb, s, vocab, n, grid_or_default(s, {}), o.guard, samples, rng, exhaustive);
    if (!c.agree) break;
    n0 = n;
  }
  return n0;
}

std::string fresh_name(const std::set<std::string>& taken, const std::string& base, std::size_t& counter) {
  while (true) {
    std::string name = base + std::to_string(++counter);
    if (!taken.contains(name)) return name;
  }
}

// (E x1..xn distinct & chi) | psi_1 | ... | psi_n, flattened; chi alone for n <= 1.
Formula combine(const Formula& input, const Formula& large, std::size_t n0) {
  Formula chi = foneq_to_fo(large);
  if (n0 <= 1) return flatten_sigma1(chi);
  std::set<std::string> taken;
  for (const auto& v : all_vars(chi)) taken.insert(v);
  for (const auto& v : all_vars(input)) taken.insert(v);
  std::size_t counter = 0;
  std::vector<std::string> xs;
  for (std::size_t i = 0; i < n0; ++i) xs.push_back(fresh_name(taken, "x", counter));
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = i + 1; j < n0; ++j) parts.push_back(neq(xs[i], xs[j]));
  }
  parts.push_back(chi);
  Formula body = conj_all(parts);
  for (std::size_t i = n0; i-- > 0;) body = exists(xs[i], body);
  std::vector<Formula> ds{body};
  for (std::size_t i = 1; i <= n0; ++i) ds.push_back(psi_n(input, i));
  return flatten_sigma1(disj_all(ds));
}

bool is_forall_d(const Formula& f) { return f->kind == NodeKind::kForallD; }

Formula to_foneq(const Formula& f) {
  Flavor fl = flavor(f);
  if (fl == Flavor::kMixed) throw PreconditionError("mixed FO and FO≠ quantifiers");
  return fl == Flavor::kFONeq ? rename_apart(f) : fo_to_foneq(rename_apart(f));
}

void finish_report(RewriteReport& rep, const SuiteSpec& suite, const RewriteOptions& o,
                   const std::function<EquivalenceCheck(const Formula&, const Formula&)>& verify) {
  rep.threshold = find_threshold(rep.input, rep.large, suite, o);
  Formula out = combine(rep.input, rep.large, rep.threshold);
  if (has_universal(out)) throw VerificationFailure("rewrite output contains a universal quantifier");
  rep.output = out;
  rep.verification = verify(rep.input, out);
}

}  // namespace

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::kTrivial:
      return "trivial";
    case StepKind::kRedundant:
      return "redundant";
    case StepKind::kContinuitySplit:
      return "continuity-split";
  }
  return "?";
}

std::string RewriteReport::to_string(const Semiring& s) const {
  std::ostringstream out;
  out << "input: " << render(input) << "\n";
  if (gate) {
    out << "gate: extensions " << (gate->refuted ? "refuted" : "not refuted") << " ("
        << (gate->exhaustive ? "exhaustive" : "sampled") << ", sizes " << gate->min_size << ".." << gate->max_size
        << ")\n";
    if (gate->refuted) out << gate->to_string(s);
  }
  if (foneq) out << "foneq: " << render(foneq) << "\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& st = steps[i];
    out << "step " << i + 1 << ": " << semfo::to_string(st.kind) << " " << st.subformula << " -> " << st.replacement;
    if (!st.note.empty()) out << " (" << st.note << ")";
    out << "\n";
  }
  if (large) out << "large universes: " << render(large) << "\n";
  if (output) {
    out << "threshold: " << threshold << " (smallest size from which the suite agrees)\n";
    out << "output: " << render(output) << "\n";
    out << "verification: " << (verification.passed ? "passed" : "FAILED") << " (" << verification.exhaustive
        << " exhaustive, " << verification.sampled << " sampled)\n";
    for (const auto& line : verification.scope) out << "  " << line << "\n";
    if (verification.witness) {
      const Semiring& ws = verification.witness->semiring();
      out << "witness:\n" << verification.witness->to_string();
      out << "values: input = " << ws.format(*verification.input_value)
          << ", output = " << ws.format(*verification.output_value) << "\n";
    }
  } else {
    out << "output: none\n";
  }
  return out.str();
}

EquivalenceCheck verify_equivalence(const Formula& a, const Formula& b, const Semiring& s,
                                    const RewriteOptions& options) {
  return run_suite(a, b, SuiteSpec{s, s}, options);
}

RewriteReport rewrite_sigma1_strict(const Formula& sentence, const Semiring& s, const RewriteOptions& options) {
  if (!is_strict_kind(s.kind())) throw PreconditionError("expected viterbi, tropical, lukasiewicz or doubt");
  require_sentence(sentence);
  RewriteReport rep;
  rep.input = sentence;
  if (options.gate) {
    PreservationOptions po;
    po.max_size = options.exhaustive_max;
    po.guard = options.guard;
    po.samples = 2000;
    po.seed = options.seed;
    rep.gate = check_preservation(sentence, s, Property::kExtensions, po);
    if (rep.gate->refuted) {
      rep.verification.passed = false;
      return rep;
    }
  }
  rep.foneq = to_foneq(sentence);
  Formula cur = rep.foneq;
  while (auto path = find_leftmost_innermost(cur, is_forall_d)) {
    Formula sub = subformula_at(cur, *path);
    TrivialityReport tr = is_eventually_trivial(sub);
    if (tr.verdict == Triviality::kUnstable) {
      throw VerificationFailure("triviality of " + render(sub) + " is unstable at the probe threshold");
    }
    const bool trivial = tr.verdict == Triviality::kTrivial;
    std::string from;
    for (const auto& [n, t] : tr.probes) {
      if (t == trivial && from.empty()) from = std::to_string(n);
      if (t != trivial) from.clear();
    }
    rep.steps.push_back(RewriteStep{trivial ? StepKind::kTrivial : StepKind::kRedundant, render(sub),
                                    trivial ? "true" : "false",
                                    (trivial ? "trivial" : "non-trivial") + std::string(" from size ") + from});
    cur = substitute_subformula(cur, *path, trivial ? f_true() : f_false());
  }
  rep.large = simplify_exact(cur);
  finish_report(rep, SuiteSpec{s, s}, options,
                [&](const Formula& a, const Formula& b) { return verify_equivalence(a, b, s, options); });
  return rep;
}

namespace {

bool mentions(const Formula& lit, const std::string& v) {
  return std::find(lit->args.begin(), lit->args.end(), v) != lit->args.end();
}

std::string base_name(const std::string& v) {
  std::size_t end = v.find_last_not_of("0123456789");
  return end == std::string::npos ? v : v.substr(0, end + 1);
}

// Canonical text of E used. lits up to renaming of `used`.
std::string disjunct_key(const std::vector<std::string>& used, const std::vector<Formula>& lits) {
  std::vector<std::size_t> perm(used.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::string best;
  bool first = true;
  do {
    std::map<std::string, std::string> sub;
    for (std::size_t i = 0; i < used.size(); ++i) sub[used[i]] = "_v" + std::to_string(perm[i]);
    std::vector<Formula> renamed;
    for (const auto& l : lits) renamed.push_back(rename_free(l, sub));
    std::string key = render(conj_all(normalize_conjunction(renamed)));
    if (first || key < best) best = key;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

RewriteReport rewrite_sigma1_lattice(const Formula& sentence, const RewriteOptions& options) {
  require_sentence(sentence);
  const Semiring s3 = Semiring::s3();
  const Semiring fuzzy = Semiring::fuzzy();
  RewriteReport rep;
  rep.input = sentence;
  if (options.gate) {
    PreservationOptions po;
    po.max_size = options.exhaustive_max;
    po.guard = options.guard;
    po.samples = 2000;
    po.seed = options.seed;
    rep.gate = check_preservation(sentence, s3, Property::kExtensions, po);
    if (rep.gate->refuted) {
      rep.verification.passed = false;
      return rep;
    }
  }
  rep.foneq = to_foneq(sentence);
  Formula cur = rep.foneq;
  while (auto path = find_leftmost_innermost(cur, is_forall_d)) {
    Formula sub = subformula_at(cur, *path);
    const std::string y = sub->var;
    const std::vector<std::string> visible = visible_vars(cur, *path);
    PrenexDnf dnf = existential_prenex_dnf(sub->left);
    std::vector<Formula> kept;
    std::set<std::string> keys;
    std::size_t dropped = 0;
    for (const auto& lits : dnf.disjuncts) {
      if (std::any_of(lits.begin(), lits.end(), [&](const Formula& l) { return mentions(l, y); })) {
        ++dropped;
        continue;
      }
      std::vector<std::string> used;
      for (const auto& z : dnf.bound) {
        if (std::any_of(lits.begin(), lits.end(), [&](const Formula& l) { return mentions(l, z); })) {
          used.push_back(z);
        }
      }
      if (!keys.insert(disjunct_key(used, lits)).second) continue;
      std::map<std::string, std::string> sub;
      std::set<std::string> taken(visible.begin(), visible.end());
      for (auto& z : used) {
        std::string name = base_name(z);
        for (int i = 1; taken.contains(name); ++i) name = base_name(z) + std::to_string(i);
        taken.insert(name);
        sub[z] = name;
        z = name;
      }
      std::vector<Formula> renamed;
      for (const auto& l : lits) renamed.push_back(rename_free(l, sub));
      Formula body = conj_all(renamed);
      for (std::size_t i = used.size(); i-- > 0;) body = exists_d(used[i], body);
      kept.push_back(body);
    }
    Formula replacement = disj_all(kept);
    std::string note = std::to_string(kept.size()) + " disjunct(s) without " + y + " kept, " +
                       std::to_string(dropped) + " relying on " + y + " replaced by false";
    rep.steps.push_back(RewriteStep{kept.empty() ? StepKind::kRedundant : StepKind::kContinuitySplit, render(sub),
                                    render(replacement), note});
    cur = substitute_subformula(cur, *path, replacement);
  }
  rep.large = simplify_absorptive(cur);
  finish_report(rep, SuiteSpec{s3, fuzzy}, options, [&](const Formula& a, const Formula& b) {
    EquivalenceCheck c = run_suite(a, b, SuiteSpec{s3, fuzzy}, options);
    if (!c.passed) return c;
    S3Check crit = s3_equivalence({a}, {b}, [&] {
      std::vector<std::size_t> sizes;
      for (std::size_t n = 1; n <= options.exhaustive_max; ++n) sizes.push_back(n);
      return sizes;
    }(), options.guard);
    c.scope.push_back("S3 criterion pi[a] = 1 iff pi[b] = 1: " + std::to_string(crit.checked) +
                      " interpretations, " + (crit.holds ? "holds" : "refuted"));
    if (!crit.holds) {
      c.passed = false;
      c.witness = crit.witness;
      c.input_value = crit.phi_value;
      c.output_value = crit.psi_value;
    }
    return c;
  });
  return rep;
}

}  // namespace semfo
