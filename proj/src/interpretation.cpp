// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/interpretation.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "semfo/error.h"

namespace semfo {
namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  return s.substr(i);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::vector<Elem> decode(std::size_t index, std::size_t arity, std::size_t n) {
  std::vector<Elem> args(arity);
  for (std::size_t i = arity; i-- > 0;) {
    args[i] = static_cast<Elem>(index % n);
    index /= n;
  }
  return args;
}

}  // namespace

Interpretation::Interpretation(Semiring semiring, std::vector<std::string> universe, Vocabulary vocab)
    : semiring_(std::move(semiring)), universe_(std::move(universe)), vocab_(std::move(vocab)) {
  std::set<std::string> seen;
  for (const auto& u : universe_) {
    if (u.empty()) throw Error("empty element name");
    if (!seen.insert(u).second) throw Error("duplicate element '" + u + "'");
  }
  extend_vocabulary(Vocabulary());
}

Interpretation Interpretation::over(Semiring semiring, std::size_t n, Vocabulary vocab) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return Interpretation(std::move(semiring), std::move(names), std::move(vocab));
}

void Interpretation::extend_vocabulary(const Vocabulary& v) {
  vocab_.merge(v);
  for (const auto& [rel, arity] : vocab_.symbols()) {
    if (tables_.count(rel)) continue;
    RelTable t;
    t.arity = arity;
    std::size_t count = ipow(universe_.size(), arity);
    t.pos.assign(count, semiring_.zero());
    t.neg.assign(count, semiring_.one());
    tables_.emplace(rel, std::move(t));
  }
}

Elem Interpretation::element(std::string_view name) const {
  auto e = find_element(name);
  if (!e) throw Error("unknown element '" + std::string(name) + "'");
  return *e;
}

std::optional<Elem> Interpretation::find_element(std::string_view name) const {
  for (Elem i = 0; i < universe_.size(); ++i) {
    if (universe_[i] == name) return i;
  }
  return std::nullopt;
}

const RelTable* Interpretation::table(const std::string& rel) const {
  auto it = tables_.find(rel);
  return it == tables_.end() ? nullptr : &it->second;
}

std::size_t Interpretation::index(std::span<const Elem> args) const {
  std::size_t idx = 0;
  for (Elem a : args) {
    if (a >= universe_.size()) throw Error("element " + std::to_string(a) + " is not in the universe");
    idx = idx * universe_.size() + a;
  }
  return idx;
}

const Value& Interpretation::value(const std::string& rel, bool negated, std::span<const Elem> args) const {
  const RelTable* t = table(rel);
  if (!t) throw Error("relation " + rel + " is not in the vocabulary");
  if (args.size() != t->arity) throw Error("arity mismatch for " + rel);
  std::size_t i = index(args);
  return negated ? t->neg[i] : t->pos[i];
}

void Interpretation::set_both(const std::string& rel, std::span<const Elem> args, const Value& pos,
                              const Value& neg) {
  auto it = tables_.find(rel);
  if (it == tables_.end()) throw Error("relation " + rel + " is not in the vocabulary");
  if (args.size() != it->second.arity) throw Error("arity mismatch for " + rel);
  semiring_.check(pos);
  semiring_.check(neg);
  std::size_t i = index(args);
  it->second.pos[i] = pos;
  it->second.neg[i] = neg;
}

void Interpretation::set_atom(const std::string& rel, std::span<const Elem> args, const Value& v) {
  set_both(rel, args, v, semiring_.is_zero(v) ? semiring_.one() : semiring_.zero());
}

void Interpretation::set_negated(const std::string& rel, std::span<const Elem> args, const Value& v) {
  set_both(rel, args, semiring_.is_zero(v) ? semiring_.one() : semiring_.zero(), v);
}

std::vector<GroundAtom> Interpretation::atoms() const {
  std::vector<GroundAtom> out;
  for (const auto& [rel, t] : tables_) {
    for (std::size_t i = 0; i < t.pos.size(); ++i) out.push_back(GroundAtom{rel, decode(i, t.arity, size())});
  }
  return out;
}

std::size_t Interpretation::atom_count() const {
  std::size_t c = 0;
  for (const auto& [rel, t] : tables_) c += t.pos.size();
  return c;
}

std::string Interpretation::atom_name(const GroundAtom& a) const {
  std::string s = a.rel + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += element_name(a.args[i]);
  }
  return s + ")";
}

std::string Interpretation::literal_name(const GroundAtom& a, bool negated) const {
  return (negated ? "~" : "") + atom_name(a);
}

ValidationReport Interpretation::validate() const {
  ValidationReport r;
  const bool poly = semiring_.kind() == SemiringKind::kNatPoly || semiring_.kind() == SemiringKind::kAbsPoly;
  for (const auto& a : atoms()) {
    bool pz = semiring_.is_zero(value(a, false));
    bool nz = semiring_.is_zero(value(a, true));
    if (pz != nz) continue;
    if (!pz && poly) {
      r.status = Validity::kPolynomial;
      continue;
    }
    r.status = Validity::kInvalid;
    r.literal = atom_name(a);
    return r;
  }
  return r;
}

void Interpretation::require_valid() const {
  auto r = validate();
  if (!r.ok()) throw NotModelDefining(r.literal);
}

std::string Interpretation::to_string() const {
  std::string s = "semiring: " + semiring_.id() + "\nuniverse:";
  for (const auto& u : universe_) s += " " + u;
  s += "\n";
  if (!vocab_.empty()) s += "relations: " + vocab_.to_string() + "\n";
  const Value zero = semiring_.zero();
  const Value one = semiring_.one();
  for (const auto& a : atoms()) {
    const Value& p = value(a, false);
    const Value& n = value(a, true);
    if (p == zero && n == one) continue;
    bool pz = p == zero;
    bool nz = n == zero;
    if (!pz && nz) {
      s += atom_name(a) + " = " + semiring_.format(p) + "\n";
    } else if (pz && !nz) {
      s += "~" + atom_name(a) + " = " + semiring_.format(n) + "\n";
    } else {
      s += atom_name(a) + " = " + semiring_.format(p) + "\n";
      s += "~" + atom_name(a) + " = " + semiring_.format(n) + "\n";
    }
  }
  s += "default: 0\n";
  return s;
}

bool operator==(const Interpretation& a, const Interpretation& b) {
  if (!(a.semiring_ == b.semiring_) || a.universe_ != b.universe_ || !(a.vocab_ == b.vocab_)) return false;
  for (const auto& [rel, t] : a.tables_) {
    const RelTable* u = b.table(rel);
    if (!u || t.pos != u->pos || t.neg != u->neg) return false;
  }
  return true;
}

Interpretation Interpretation::parse(std::string_view text, const std::optional<Semiring>& override) {
  struct Entry {
    bool negated;
    std::string rel;
    std::vector<std::string> args;
    std::string value;
    std::size_t line;
  };
  std::optional<Semiring> sem = override;
  std::optional<std::vector<std::string>> universe;
  Vocabulary vocab;
  std::vector<Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto starts = [&](const char* key) { return line.rfind(key, 0) == 0; };
    try {
      if (starts("semiring:")) {
        std::string id = trim(line.substr(9));
        if (!override) {
          sem = Semiring::from_id(id);
        } else if (id != override->id()) {
          throw CarrierMismatch("file declares semiring " + id + " but " + override->id() + " was requested");
        }
      } else if (starts("universe:")) {
        universe = words(line.substr(9));
      } else if (starts("relations:")) {
        for (const auto& w : words(line.substr(10))) {
          auto slash = w.find('/');
          if (slash == std::string::npos) throw ParseError("expected NAME/arity, got '" + w + "'", lineno, 1);
          vocab.add(w.substr(0, slash), std::stoul(w.substr(slash + 1)));
        }
      } else if (starts("default:")) {
        if (trim(line.substr(8)) != "0") throw ParseError("only 'default: 0' is supported", lineno, 1);
      } else {
        auto eqpos = line.find('=');
        auto lp = line.find('(');
        auto rp = line.find(')');
        if (eqpos == std::string::npos || lp == std::string::npos || rp == std::string::npos || rp < lp ||
            eqpos < rp) {
          throw ParseError("expected 'R(a,...) = value'", lineno, 1);
        }
        Entry e;
        e.line = lineno;
        std::string head = trim(line.substr(0, lp));
        e.negated = !head.empty() && head[0] == '~';
        e.rel = trim(e.negated ? head.substr(1) : head);
        if (e.rel.empty()) throw ParseError("missing relation name", lineno, 1);
        std::string inner = line.substr(lp + 1, rp - lp - 1);
        std::replace(inner.begin(), inner.end(), ',', ' ');
        e.args = words(inner);
        if (e.args.empty()) throw ParseError("relation " + e.rel + " needs arguments", lineno, lp + 1);
        e.value = trim(line.substr(eqpos + 1));
        vocab.add(e.rel, e.args.size());
        entries.push_back(std::move(e));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const CarrierMismatch&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(ex.what(), lineno, 1);
    }
  }
  if (!sem) throw ParseError("missing 'semiring:' line", lineno, 1);
  if (!universe) throw ParseError("missing 'universe:' line", lineno, 1);
  Interpretation pi(*sem, *universe, vocab);
  std::map<GroundAtom, std::pair<std::optional<Value>, std::optional<Value>>> given;
  for (const auto& e : entries) {
    GroundAtom a{e.rel, {}};
    try {
      for (const auto& n : e.args) a.args.push_back(pi.element(n));
      Value v = sem->parse_value(e.value);
      auto& slot = given[a];
      (e.negated ? slot.second : slot.first) = v;
    } catch (const std::exception& ex) {
      throw ParseError(ex.what(), e.line, 1);
    }
  }
  for (const auto& [a, vals] : given) {
    if (vals.first && vals.second) {
      pi.set_both(a.rel, a.args, *vals.first, *vals.second);
    } else if (vals.first) {
      pi.set_atom(a.rel, a.args, *vals.first);
    } else {
      pi.set_negated(a.rel, a.args, *vals.second);
    }
  }
  pi.require_valid();
  return pi;
}

Interpretation Interpretation::load(const std::string& path, const std::optional<Semiring>& semiring) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open interpretation file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), semiring);
}

Interpretation restrict(const Interpretation& pi, const std::vector<Elem>& subset) {
  std::vector<std::string> names;
  std::set<Elem> seen;
  for (Elem e : subset) {
    if (e >= pi.size()) throw Error("restrict: element outside the universe");
    if (!seen.insert(e).second) throw Error("restrict: repeated element");
    names.push_back(pi.element_name(e));
  }
  Interpretation out(pi.semiring(), names, pi.vocab());
  for (const auto& a : out.atoms()) {
    std::vector<Elem> src;
    for (Elem x : a.args) src.push_back(subset[x]);
    out.set_both(a.rel, a.args, pi.value(a.rel, false, src), pi.value(a.rel, true, src));
  }
  return out;
}

Interpretation pad(const Interpretation& pi, std::size_t count, const Value& fill) {
  pi.semiring().check(fill);
  std::vector<std::string> names = pi.universe();
  std::size_t k = pi.size() + 1;
  for (std::size_t i = 0; i < count; ++i) {
    while (pi.find_element(std::to_string(k)) ||
           std::find(names.begin(), names.end(), std::to_string(k)) != names.end()) {
      ++k;
    }
    names.push_back(std::to_string(k));
  }
  Interpretation out(pi.semiring(), names, pi.vocab());
  for (const auto& a : out.atoms()) {
    bool old = std::all_of(a.args.begin(), a.args.end(), [&](Elem e) { return e < pi.size(); });
    if (old) {
      out.set_both(a.rel, a.args, pi.value(a, false), pi.value(a, true));
    } else {
      out.set_atom(a.rel, a.args, fill);
    }
  }
  return out;
}

bool is_subinterpretation(const Interpretation& a, const Interpretation& b) {
  if (!(a.semiring() == b.semiring()) || !(a.vocab() == b.vocab())) return false;
  std::vector<Elem> map;
  for (const auto& n : a.universe()) {
    auto e = b.find_element(n);
    if (!e) return false;
    map.push_back(*e);
  }
  for (const auto& atom : a.atoms()) {
    std::vector<Elem> img;
    for (Elem x : atom.args) img.push_back(map[x]);
    if (!(a.value(atom, false) == b.value(atom.rel, false, img))) return false;
    if (!(a.value(atom, true) == b.value(atom.rel, true, img))) return false;
  }
  return true;
}

std::string to_string(HomClass c) {
  switch (c) {
    case HomClass::kNone:
      return "none";
    case HomClass::kHom:
      return "hom";
    case HomClass::kStrongHom:
      return "strong_hom";
    case HomClass::kEmbedding:
      return "embedding";
  }
  return "?";
}

HomClass check_interp_hom(const std::vector<Elem>& g, const Interpretation& a, const Interpretation& b) {
  if (g.size() != a.size()) throw Error("element map is not total on the source universe");
  for (Elem x : g) {
    if (x >= b.size()) throw Error("element map leaves the target universe");
  }
  if (!(a.semiring() == b.semiring())) throw CarrierMismatch("interpretations over different semirings");
  const Semiring& s = a.semiring();
  std::map<GroundAtom, Value> sums;
  bool strong = true;
  for (const auto& atom : a.atoms()) {
    GroundAtom img{atom.rel, {}};
    for (Elem x : atom.args) img.args.push_back(g[x]);
    if (!b.table(atom.rel)) throw Error("relation " + atom.rel + " missing in the target");
    auto [it, inserted] = sums.emplace(img, a.value(atom, false));
    if (!inserted) it->second = s.add(it->second, a.value(atom, false));
    if (!(a.value(atom, false) == b.value(img, false)) || !(a.value(atom, true) == b.value(img, true))) {
      strong = false;
    }
  }
  for (const auto& [img, sum] : sums) {
    if (!s.leq(sum, b.value(img, false))) return HomClass::kNone;
  }
  if (!strong) return HomClass::kHom;
  std::set<Elem> image(g.begin(), g.end());
  return image.size() == g.size() ? HomClass::kEmbedding : HomClass::kStrongHom;
}

Interpretation compose_hom_unchecked(const SemiringHom& h, const Interpretation& pi) {
  if (!(h.source() == pi.semiring())) throw CarrierMismatch("homomorphism source differs from the interpretation");
  Interpretation out(h.target(), pi.universe(), pi.vocab());
  for (const auto& a : pi.atoms()) out.set_both(a.rel, a.args, h(pi.value(a, false)), h(pi.value(a, true)));
  return out;
}

Interpretation compose_hom(const SemiringHom& h, const Interpretation& pi) {
  Interpretation out = compose_hom_unchecked(h, pi);
  out.require_valid();
  return out;
}

InterpretationSpace::InterpretationSpace(Semiring semiring, Vocabulary vocab, std::size_t size,
                                         std::vector<Value> values, std::uint64_t guard)
    : semiring_(std::move(semiring)), vocab_(std::move(vocab)), size_(size), guard_(guard) {
  values_ = nonzero_values(semiring_, values);
  if (values_.empty()) throw PreconditionError("value set must contain a non-zero value");
  for (const auto& [rel, arity] : vocab_.symbols()) atoms_ += ipow(size_, arity);
  const std::uint64_t options = 2 * values_.size();
  count_ = 1;
  for (std::size_t i = 0; i < atoms_; ++i) {
    if (count_ > std::numeric_limits<std::uint64_t>::max() / options) {
      count_ = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    count_ *= options;
  }
}

bool InterpretationSpace::within_guard() const { return atoms_ <= 16 && count_ <= guard_; }

Interpretation InterpretationSpace::at(std::uint64_t index) const {
  if (!within_guard()) {
    throw GuardExceeded(std::to_string(atoms_) + " atoms give " + std::to_string(count_) +
                        " interpretations (guard " + std::to_string(guard_) + ", at most 16 atoms)");
  }
  Interpretation pi = Interpretation::over(semiring_, size_, vocab_);
  const std::uint64_t options = 2 * values_.size();
  for (const auto& a : pi.atoms()) {
    std::uint64_t digit = index % options;
    index /= options;
    if (digit < values_.size()) {
      pi.set_atom(a.rel, a.args, values_[digit]);
    } else {
      pi.set_negated(a.rel, a.args, values_[digit - values_.size()]);
    }
  }
  return pi;
}

Interpretation InterpretationSpace::random(std::mt19937_64& rng) const {
  Interpretation pi = Interpretation::over(semiring_, size_, vocab_);
  std::uniform_int_distribution<std::size_t> pick(0, 2 * values_.size() - 1);
  for (const auto& a : pi.atoms()) {
    std::size_t digit = pick(rng);
    if (digit < values_.size()) {
      pi.set_atom(a.rel, a.args, values_[digit]);
    } else {
      pi.set_negated(a.rel, a.args, values_[digit - values_.size()]);
    }
  }
  return pi;
}

void InterpretationSpace::for_each(const std::function<bool(const Interpretation&)>& fn) const {
  if (!within_guard()) at(0);
  for (std::uint64_t i = 0; i < count_; ++i) {
    if (!fn(at(i))) return;
  }
}

std::vector<Value> nonzero_values(const Semiring& s, const std::vector<Value>& values) {
  std::vector<Value> out;
  for (const auto& v : values) {
    s.check(v);
    if (s.is_zero(v)) continue;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace semfo
