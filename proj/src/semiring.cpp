// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/semiring.h"

#include <algorithm>
#include <cctype>

#include "semfo/error.h"

namespace semfo {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_rational(std::string_view text) {
  std::string t(trim(text));
  if (t.empty()) throw Error("empty number");
  for (char c : t) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-') throw Error("not a rational: '" + t + "'");
  }
  Rational q;
  if (q.set_str(t, 10) != 0) throw Error("not a rational: '" + t + "'");
  if (q.get_den() == 0) throw Error("zero denominator in '" + t + "'");
  q.canonicalize();
  return q;
}

const Level& as_level(const Value& v) { return std::get<Level>(v); }
const Rational& as_rat(const Value& v) { return std::get<Rational>(v); }
const ExtRational& as_trop(const Value& v) { return std::get<ExtRational>(v); }
const ExtNatural& as_nat(const Value& v) { return std::get<ExtNatural>(v); }

SemiringFlags lattice_flags(bool linear) { return SemiringFlags{true, true, true, linear}; }

}  // namespace

Value level(std::uint32_t v) { return Level{v}; }

Value rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Value rational(const Rational& q) {
  Rational r(q);
  r.canonicalize();
  return r;
}

Value natural(long n) { return ExtNatural{false, Natural(n)}; }
Value nat_infinity() { return ExtNatural{true, Natural(0)}; }

Value trop(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return ExtRational{false, r};
}

Value trop_infinity() { return ExtRational{true, Rational(0)}; }

Semiring Semiring::boolean() { return Semiring(SemiringKind::kBoolean, "boolean", lattice_flags(true)); }

Semiring Semiring::s3() { return Semiring(SemiringKind::kS3, "s3", lattice_flags(true)); }

Semiring Semiring::chain(std::size_t k) {
  if (k < 2) throw Error("chain semiring needs at least 2 levels");
  Semiring s(SemiringKind::kChain, "chain:" + std::to_string(k), lattice_flags(true));
  s.k_ = k;
  return s;
}

Semiring Semiring::lattice(std::shared_ptr<const FiniteLattice> l, std::string label) {
  if (!l) throw Error("null lattice");
  Semiring s(SemiringKind::kLattice, std::move(label), lattice_flags(l->is_chain()));
  s.k_ = l->size();
  s.lattice_ = std::move(l);
  return s;
}

Semiring Semiring::fuzzy() { return Semiring(SemiringKind::kFuzzy, "fuzzy", lattice_flags(true)); }

Semiring Semiring::viterbi() { return Semiring(SemiringKind::kViterbi, "viterbi", SemiringFlags{true, true, false, true}); }

Semiring Semiring::tropical() {
  return Semiring(SemiringKind::kTropical, "tropical", SemiringFlags{true, true, false, true});
}

Semiring Semiring::lukasiewicz() {
  return Semiring(SemiringKind::kLukasiewicz, "lukasiewicz", SemiringFlags{true, true, false, true});
}

Semiring Semiring::doubt() { return Semiring(SemiringKind::kDoubt, "doubt", SemiringFlags{true, true, false, true}); }

Semiring Semiring::nat() { return Semiring(SemiringKind::kNat, "nat", SemiringFlags{false, false, false, true}); }

Semiring Semiring::nat_inf() { return Semiring(SemiringKind::kNatInf, "natinf", SemiringFlags{false, false, false, true}); }

Semiring Semiring::nat_poly() {
  return Semiring(SemiringKind::kNatPoly, "natpoly", SemiringFlags{false, false, false, false});
}

Semiring Semiring::abs_poly(std::size_t n) {
  Semiring s(SemiringKind::kAbsPoly, n == 0 ? "spoly" : "spoly:" + std::to_string(n),
             SemiringFlags{true, true, false, false});
  s.k_ = n;
  return s;
}

Semiring Semiring::from_id(std::string_view raw) {
  std::string_view id = trim(raw);
  auto colon = id.find(':');
  std::string_view head = id.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? std::string_view() : id.substr(colon + 1);
  auto number = [&](std::string_view what) -> std::size_t {
    if (arg.empty() || !std::all_of(arg.begin(), arg.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw Error(std::string(what) + " needs a numeric argument, got '" + std::string(id) + "'");
    }
    return std::stoul(std::string(arg));
  };
  if (colon == std::string_view::npos) {
    if (id == "boolean") return boolean();
    if (id == "s3") return s3();
    if (id == "fuzzy") return fuzzy();
    if (id == "viterbi") return viterbi();
    if (id == "tropical") return tropical();
    if (id == "lukasiewicz") return lukasiewicz();
    if (id == "doubt") return doubt();
    if (id == "nat") return nat();
    if (id == "natinf") return nat_inf();
    if (id == "natpoly") return nat_poly();
    if (id == "spoly") return abs_poly();
  } else {
    if (head == "chain") return chain(number("chain"));
    if (head == "spoly") return abs_poly(number("spoly"));
    if (head == "lattice") {
      if (arg.empty()) throw Error("lattice needs a file argument");
      return lattice(std::make_shared<FiniteLattice>(FiniteLattice::load(std::string(arg))), std::string(id));
    }
  }
  throw Error("unknown semiring '" + std::string(id) + "'");
}

bool operator==(const Semiring& a, const Semiring& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == SemiringKind::kChain) return a.k_ == b.k_;
  if (a.kind_ == SemiringKind::kLattice) return a.lattice_ == b.lattice_ || *a.lattice_ == *b.lattice_;
  return true;
}

bool Semiring::is_lattice_semiring() const {
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kS3:
    case SemiringKind::kChain:
    case SemiringKind::kLattice:
    case SemiringKind::kFuzzy:
      return true;
    default:
      return false;
  }
}

bool Semiring::has_finite_carrier() const {
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kS3:
    case SemiringKind::kChain:
    case SemiringKind::kLattice:
      return true;
    default:
      return false;
  }
}

bool Semiring::has_rational_carrier() const {
  switch (kind_) {
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kTropical:
    case SemiringKind::kLukasiewicz:
    case SemiringKind::kDoubt:
      return true;
    default:
      return false;
  }
}

bool Semiring::contains(const Value& a) const {
  switch (kind_) {
    case SemiringKind::kBoolean:
      return std::holds_alternative<Level>(a) && as_level(a).v < 2;
    case SemiringKind::kS3:
      return std::holds_alternative<Level>(a) && as_level(a).v < 3;
    case SemiringKind::kChain:
    case SemiringKind::kLattice:
      return std::holds_alternative<Level>(a) && as_level(a).v < k_;
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
    case SemiringKind::kDoubt:
      return std::holds_alternative<Rational>(a) && as_rat(a) >= 0 && as_rat(a) <= 1;
    case SemiringKind::kTropical:
      return std::holds_alternative<ExtRational>(a) && (as_trop(a).infinite || as_trop(a).q >= 0);
    case SemiringKind::kNat:
      return std::holds_alternative<ExtNatural>(a) && !as_nat(a).infinite && as_nat(a).n >= 0;
    case SemiringKind::kNatInf:
      return std::holds_alternative<ExtNatural>(a) && (as_nat(a).infinite || as_nat(a).n >= 0);
    case SemiringKind::kNatPoly:
      return std::holds_alternative<NatPoly>(a);
    case SemiringKind::kAbsPoly:
      return std::holds_alternative<AbsorptivePoly>(a);
  }
  return false;
}

void Semiring::check(const Value& a) const {
  if (!contains(a)) throw CarrierMismatch("value is not an element of " + id_);
}

Value Semiring::zero() const {
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kS3:
    case SemiringKind::kChain:
      return Level{0};
    case SemiringKind::kLattice:
      return Level{lattice_->bottom()};
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
      return Rational(0);
    case SemiringKind::kDoubt:
      return Rational(1);
    case SemiringKind::kTropical:
      return trop_infinity();
    case SemiringKind::kNat:
    case SemiringKind::kNatInf:
      return natural(0);
    case SemiringKind::kNatPoly:
      return NatPoly();
    case SemiringKind::kAbsPoly:
      return AbsorptivePoly::zero();
  }
  return Level{0};
}

Value Semiring::one() const {
  switch (kind_) {
    case SemiringKind::kBoolean:
      return Level{1};
    case SemiringKind::kS3:
      return Level{kS3One};
    case SemiringKind::kChain:
      return Level{static_cast<std::uint32_t>(k_ - 1)};
    case SemiringKind::kLattice:
      return Level{lattice_->top()};
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
      return Rational(1);
    case SemiringKind::kDoubt:
      return Rational(0);
    case SemiringKind::kTropical:
      return trop(0);
    case SemiringKind::kNat:
    case SemiringKind::kNatInf:
      return natural(1);
    case SemiringKind::kNatPoly:
      return NatPoly::constant(1);
    case SemiringKind::kAbsPoly:
      return AbsorptivePoly::one();
  }
  return Level{0};
}

Value Semiring::add(const Value& a, const Value& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kS3:
    case SemiringKind::kChain:
      return Level{std::max(as_level(a).v, as_level(b).v)};
    case SemiringKind::kLattice:
      return Level{lattice_->join(as_level(a).v, as_level(b).v)};
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
      return as_rat(a) >= as_rat(b) ? a : b;
    case SemiringKind::kDoubt:
      return as_rat(a) <= as_rat(b) ? a : b;
    case SemiringKind::kTropical: {
      const auto& x = as_trop(a);
      const auto& y = as_trop(b);
      if (x.infinite) return b;
      if (y.infinite) return a;
      return x.q <= y.q ? a : b;
    }
    case SemiringKind::kNat:
    case SemiringKind::kNatInf: {
      const auto& x = as_nat(a);
      const auto& y = as_nat(b);
      if (x.infinite || y.infinite) return nat_infinity();
      return ExtNatural{false, Natural(x.n + y.n)};
    }
    case SemiringKind::kNatPoly:
      return std::get<NatPoly>(a) + std::get<NatPoly>(b);
    case SemiringKind::kAbsPoly:
      return std::get<AbsorptivePoly>(a) + std::get<AbsorptivePoly>(b);
  }
  return a;
}

Value Semiring::mul(const Value& a, const Value& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kS3:
    case SemiringKind::kChain:
      return Level{std::min(as_level(a).v, as_level(b).v)};
    case SemiringKind::kLattice:
      return Level{lattice_->meet(as_level(a).v, as_level(b).v)};
    case SemiringKind::kFuzzy:
      return as_rat(a) <= as_rat(b) ? a : b;
    case SemiringKind::kViterbi:
      return Rational(as_rat(a) * as_rat(b));
    case SemiringKind::kLukasiewicz: {
      Rational s = as_rat(a) + as_rat(b) - 1;
      return s > 0 ? s : Rational(0);
    }
    case SemiringKind::kDoubt: {
      Rational s = as_rat(a) + as_rat(b);
      return s < 1 ? s : Rational(1);
    }
    case SemiringKind::kTropical: {
      const auto& x = as_trop(a);
      const auto& y = as_trop(b);
      if (x.infinite || y.infinite) return trop_infinity();
      return ExtRational{false, Rational(x.q + y.q)};
    }
    case SemiringKind::kNat:
    case SemiringKind::kNatInf: {
      const auto& x = as_nat(a);
      const auto& y = as_nat(b);
      if ((!x.infinite && x.n == 0) || (!y.infinite && y.n == 0)) return natural(0);
      if (x.infinite || y.infinite) return nat_infinity();
      return ExtNatural{false, Natural(x.n * y.n)};
    }
    case SemiringKind::kNatPoly:
      return std::get<NatPoly>(a) * std::get<NatPoly>(b);
    case SemiringKind::kAbsPoly:
      return std::get<AbsorptivePoly>(a) * std::get<AbsorptivePoly>(b);
  }
  return a;
}

Value Semiring::sum(std::span<const Value> xs) const {
  Value acc = zero();
  for (const auto& x : xs) acc = add(acc, x);
  return acc;
}

Value Semiring::product(std::span<const Value> xs) const {
  Value acc = one();
  for (const auto& x : xs) acc = mul(acc, x);
  return acc;
}

Value Semiring::power(const Value& a, std::uint64_t e) const {
  Value result = one();
  Value base = a;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

bool Semiring::leq(const Value& a, const Value& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kS3:
    case SemiringKind::kChain:
      return as_level(a).v <= as_level(b).v;
    case SemiringKind::kLattice:
      return lattice_->leq(as_level(a).v, as_level(b).v);
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
      return as_rat(a) <= as_rat(b);
    case SemiringKind::kDoubt:
      return as_rat(a) >= as_rat(b);
    case SemiringKind::kTropical: {
      const auto& x = as_trop(a);
      const auto& y = as_trop(b);
      if (x.infinite) return true;
      if (y.infinite) return false;
      return x.q >= y.q;
    }
    case SemiringKind::kNat:
    case SemiringKind::kNatInf: {
      const auto& x = as_nat(a);
      const auto& y = as_nat(b);
      if (y.infinite) return true;
      if (x.infinite) return false;
      return x.n <= y.n;
    }
    case SemiringKind::kNatPoly:
      return std::get<NatPoly>(a).leq(std::get<NatPoly>(b));
    case SemiringKind::kAbsPoly:
      return std::get<AbsorptivePoly>(a).leq(std::get<AbsorptivePoly>(b));
  }
  return false;
}

std::string Semiring::format(const Value& a) const {
  check(a);
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kChain:
      return std::to_string(as_level(a).v);
    case SemiringKind::kS3: {
      static const char* names[] = {"0", "eps", "1"};
      return names[as_level(a).v];
    }
    case SemiringKind::kLattice:
      return lattice_->name(as_level(a).v);
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
    case SemiringKind::kDoubt:
      return as_rat(a).get_str();
    case SemiringKind::kTropical:
      return as_trop(a).infinite ? "inf" : as_trop(a).q.get_str();
    case SemiringKind::kNat:
    case SemiringKind::kNatInf:
      return as_nat(a).infinite ? "inf" : as_nat(a).n.get_str();
    case SemiringKind::kNatPoly:
      return std::get<NatPoly>(a).to_string();
    case SemiringKind::kAbsPoly:
      return std::get<AbsorptivePoly>(a).to_string();
  }
  return "?";
}

Value Semiring::parse_value(std::string_view raw) const {
  std::string_view text = trim(raw);
  Value v;
  switch (kind_) {
    case SemiringKind::kBoolean:
      if (text == "0" || text == "false") {
        v = Level{0};
      } else if (text == "1" || text == "true") {
        v = Level{1};
      } else {
        throw Error("not a boolean value: '" + std::string(text) + "'");
      }
      break;
    case SemiringKind::kS3:
      if (text == "0") {
        v = Level{kS3Zero};
      } else if (text == "eps" || text == "ε" || text == "e") {
        v = Level{kS3Eps};
      } else if (text == "1") {
        v = Level{kS3One};
      } else {
        throw Error("not an S3 value: '" + std::string(text) + "'");
      }
      break;
    case SemiringKind::kChain: {
      std::string t(text);
      if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw Error("not a chain level: '" + t + "'");
      }
      v = Level{static_cast<std::uint32_t>(std::stoul(t))};
      break;
    }
    case SemiringKind::kLattice:
      v = Level{lattice_->index(text)};
      break;
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
    case SemiringKind::kDoubt:
      v = parse_rational(text);
      break;
    case SemiringKind::kTropical:
      if (text == "inf") {
        v = trop_infinity();
      } else {
        v = ExtRational{false, parse_rational(text)};
      }
      break;
    case SemiringKind::kNat:
    case SemiringKind::kNatInf:
      if (text == "inf") {
        v = nat_infinity();
      } else {
        std::string t(text);
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          throw Error("not a natural number: '" + t + "'");
        }
        v = ExtNatural{false, Natural(t)};
      }
      break;
    case SemiringKind::kNatPoly:
      v = NatPoly::parse(text);
      break;
    case SemiringKind::kAbsPoly:
      v = AbsorptivePoly::parse(text);
      break;
  }
  if (!contains(v)) throw Error("value '" + std::string(text) + "' is outside the carrier of " + id_);
  return v;
}

std::vector<Value> Semiring::carrier() const {
  if (!has_finite_carrier()) throw Error("semiring " + id_ + " has an infinite carrier");
  std::size_t n = kind_ == SemiringKind::kBoolean ? 2 : kind_ == SemiringKind::kS3 ? 3 : k_;
  std::vector<Value> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(Level{i});
  return out;
}

std::vector<Value> Semiring::default_grid() const {
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kS3:
    case SemiringKind::kChain:
    case SemiringKind::kLattice: {
      std::vector<Value> out;
      for (const auto& v : carrier()) {
        if (!is_zero(v)) out.push_back(v);
      }
      return out;
    }
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
      return {rational(1, 4), rational(1, 2), rational(1)};
    case SemiringKind::kDoubt:
      return {rational(1, 2), rational(1, 4), rational(0)};
    case SemiringKind::kTropical:
      return {trop(2), trop(1), trop(0)};
    case SemiringKind::kNat:
      return {natural(1), natural(2)};
    case SemiringKind::kNatInf:
      return {natural(1), natural(2), nat_infinity()};
    case SemiringKind::kNatPoly:
    case SemiringKind::kAbsPoly:
      break;
  }
  throw Error("no default value grid for " + id_);
}

Value Semiring::sample(std::mt19937_64& rng) const {
  auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  switch (kind_) {
    case SemiringKind::kBoolean:
    case SemiringKind::kS3:
    case SemiringKind::kChain:
    case SemiringKind::kLattice: {
      auto c = carrier();
      return c[static_cast<std::size_t>(uniform(0, static_cast<long>(c.size()) - 1))];
    }
    case SemiringKind::kFuzzy:
    case SemiringKind::kViterbi:
    case SemiringKind::kLukasiewicz:
    case SemiringKind::kDoubt: {
      long q = uniform(1, 8);
      return rational(uniform(0, q), q);
    }
    case SemiringKind::kTropical:
      if (uniform(0, 7) == 0) return trop_infinity();
      return trop(uniform(0, 12), uniform(1, 4));
    case SemiringKind::kNat:
      return natural(uniform(0, 4));
    case SemiringKind::kNatInf:
      if (uniform(0, 7) == 0) return nat_infinity();
      return natural(uniform(0, 4));
    case SemiringKind::kNatPoly: {
      NatPoly p;
      long terms = uniform(0, 3);
      for (long t = 0; t < terms; ++t) {
        Monomial m;
        long factors = uniform(0, 2);
        for (long f = 0; f < factors; ++f) {
          std::string name = "x" + std::to_string(uniform(0, 2));
          m = m * Monomial::of(uniform(0, 1) ? Var::negative(name) : Var::positive(name),
                               static_cast<std::uint32_t>(uniform(1, 2)));
        }
        p = p + NatPoly::of(m, uniform(1, 3));
      }
      return p;
    }
    case SemiringKind::kAbsPoly: {
      AbsorptivePoly p;
      long terms = uniform(0, 3);
      for (long t = 0; t < terms; ++t) {
        Monomial m;
        long factors = uniform(0, 3);
        for (long f = 0; f < factors; ++f) {
          std::string name = "x" + std::to_string(uniform(0, 3));
          m = m * Monomial::of(uniform(0, 1) ? Var::negative(name) : Var::positive(name),
                               static_cast<std::uint32_t>(uniform(1, 2)));
        }
        p = p + AbsorptivePoly::of(m);
      }
      return p;
    }
  }
  return zero();
}

Rational Semiring::real(const Value& a) const {
  check(a);
  if (std::holds_alternative<Rational>(a)) return as_rat(a);
  if (std::holds_alternative<ExtRational>(a) && !as_trop(a).infinite) return as_trop(a).q;
  throw Error("value " + format(a) + " of " + id_ + " has no rational representative");
}

Value Semiring::from_real(const Rational& q) const {
  Value v;
  if (kind_ == SemiringKind::kTropical) {
    v = ExtRational{false, q};
  } else if (has_rational_carrier()) {
    v = rational(q);
  } else {
    throw Error(id_ + " is not a rational carrier");
  }
  check(v);
  return v;
}

AxiomReport check_axioms(const Semiring& s, std::size_t samples, std::uint64_t seed) {
  AxiomReport report;
  auto fail = [&](const std::string& what, const Value& a, const Value& b, const Value& c) {
    if (!report.ok) return;
    report.ok = false;
    report.failure = what + " at (" + s.format(a) + ", " + s.format(b) + ", " + s.format(c) + ")";
  };
  const Value zero = s.zero();
  const Value one = s.one();
  if (zero == one) {
    report.ok = false;
    report.failure = "0 = 1";
    return report;
  }
  bool seen_non_idempotent_add = false;
  bool seen_non_absorptive = false;
  bool seen_non_idempotent_mul = false;
  bool seen_incomparable = false;
  auto triple = [&](const Value& a, const Value& b, const Value& c) {
    ++report.checked;
    if (!(s.add(a, b) == s.add(b, a))) fail("add not commutative", a, b, c);
    if (!(s.mul(a, b) == s.mul(b, a))) fail("mul not commutative", a, b, c);
    if (!(s.add(s.add(a, b), c) == s.add(a, s.add(b, c)))) fail("add not associative", a, b, c);
    if (!(s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)))) fail("mul not associative", a, b, c);
    if (!(s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c)))) fail("not distributive", a, b, c);
    if (!(s.add(a, zero) == a)) fail("0 not neutral", a, b, c);
    if (!(s.mul(a, one) == a)) fail("1 not neutral", a, b, c);
    if (!(s.mul(a, zero) == zero)) fail("0 not annihilating", a, b, c);
    bool idem_add = s.add(a, a) == a;
    bool absorb = s.add(a, s.mul(a, b)) == a;
    bool idem_mul = s.mul(a, a) == a;
    bool comparable = s.leq(a, b) || s.leq(b, a);
    const auto& f = s.flags();
    if (f.additively_idempotent && !idem_add) fail("flag additively_idempotent violated", a, b, c);
    if (f.absorptive && !absorb) fail("flag absorptive violated", a, b, c);
    if (f.multiplicatively_idempotent && !idem_mul) fail("flag multiplicatively_idempotent violated", a, b, c);
    if (f.linearly_ordered && !comparable) fail("flag linearly_ordered violated", a, b, c);
    seen_non_idempotent_add |= !idem_add;
    seen_non_absorptive |= !absorb;
    seen_non_idempotent_mul |= !idem_mul;
    seen_incomparable |= !comparable;
    if (s.leq(a, b) && s.leq(b, a) && !(a == b)) fail("natural order not antisymmetric", a, b, c);
  };
  if (s.has_finite_carrier()) {
    auto c = s.carrier();
    for (const auto& a : c) {
      for (const auto& b : c) {
        for (const auto& d : c) triple(a, b, d);
      }
    }
    const auto& f = s.flags();
    if (!f.additively_idempotent && !seen_non_idempotent_add) fail("flag additively_idempotent unset", zero, zero, zero);
    if (!f.absorptive && !seen_non_absorptive) fail("flag absorptive unset", zero, zero, zero);
    if (!f.multiplicatively_idempotent && !seen_non_idempotent_mul) fail("flag multiplicatively_idempotent unset", zero, zero, zero);
    if (!f.linearly_ordered && !seen_incomparable) fail("flag linearly_ordered unset", zero, zero, zero);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples && report.ok; ++i) triple(s.sample(rng), s.sample(rng), s.sample(rng));
  }
  if (s.flags().absorptive && !s.flags().additively_idempotent) {
    report.ok = false;
    report.failure = "absorptive flag without additive idempotence";
  }
  return report;
}

}  // namespace semfo
