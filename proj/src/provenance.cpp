// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/provenance.h"

#include <map>
#include <memory>

#include "semfo/error.h"
#include "semfo/eval.h"

namespace semfo {

Interpretation pi_n(const Vocabulary& vocab, std::size_t n, PolyFlavor flavor) {
  if (n == 0) throw PreconditionError("the canonical interpretation needs n >= 1");
  const bool nat = flavor == PolyFlavor::kNat;
  Interpretation pi = Interpretation::over(nat ? Semiring::nat_poly() : Semiring::abs_poly(n), n, vocab);
  for (const auto& a : pi.atoms()) {
    const std::string name = pi.atom_name(a);
    if (nat) {
      pi.set_both(a.rel, a.args, NatPoly::variable(Var::positive(name)), NatPoly::variable(Var::negative(name)));
    } else {
      pi.set_both(a.rel, a.args, AbsorptivePoly::variable(Var::positive(name)),
                  AbsorptivePoly::variable(Var::negative(name)));
    }
  }
  return pi;
}

Value canonical_polynomial(const Formula& f, std::size_t n, PolyFlavor flavor) {
  return eval(pi_n(vocabulary_of(f), n, flavor), f);
}

Assignment assignment_of(const Interpretation& pi) {
  auto copy = std::make_shared<const Interpretation>(pi);
  auto names = std::make_shared<std::map<std::string, GroundAtom>>();
  for (const auto& a : pi.atoms()) names->emplace(pi.atom_name(a), a);
  return [names, copy](Var v) -> Value {
    auto it = names->find(v.atom());
    if (it == names->end()) throw Error("variable " + v.name() + " names no atom of the interpretation");
    return copy->value(it->second, v.negated());
  };
}

namespace {

void check_consistent(const std::set<Var>& vars, const Assignment& f, const Semiring& target) {
  for (Var v : vars) {
    Value a = f(v);
    target.check(a);
    Value b = f(v.dual());
    target.check(b);
    if (!target.is_zero(target.mul(a, b))) {
      throw PreconditionError("inconsistent assignment: " + v.name() + " and " + v.dual().name() +
                              " have a non-zero product");
    }
  }
}

Value image(const Monomial& m, const Assignment& f, const Semiring& target) {
  Value acc = target.one();
  for (const auto& [v, e] : m.entries()) acc = target.mul(acc, target.power(f(v), e));
  return acc;
}

}  // namespace

Value specialize(const Value& p, const Assignment& f, const Semiring& target) {
  if (const auto* np = std::get_if<NatPoly>(&p)) {
    check_consistent(np->support(), f, target);
    Value acc = target.zero();
    for (const auto& [m, c] : np->terms()) {
      Value term = image(m, f, target);
      Value scaled = target.zero();
      for (std::size_t bit = mpz_sizeinbase(c.get_mpz_t(), 2); bit-- > 0;) {
        scaled = target.add(scaled, scaled);
        if (mpz_tstbit(c.get_mpz_t(), bit)) scaled = target.add(scaled, term);
      }
      acc = target.add(acc, scaled);
    }
    return acc;
  }
  if (const auto* ap = std::get_if<AbsorptivePoly>(&p)) {
    if (!target.flags().absorptive) {
      throw PreconditionError("absorptive polynomials only specialize into absorptive semirings");
    }
    check_consistent(ap->support(), f, target);
    Value acc = target.zero();
    for (const auto& m : ap->monomials()) acc = target.add(acc, image(m, f, target));
    return acc;
  }
  throw Error("specialize expects a polynomial");
}

std::uint64_t degree(const Value& p) {
  if (const auto* np = std::get_if<NatPoly>(&p)) return np->degree();
  if (const auto* ap = std::get_if<AbsorptivePoly>(&p)) return ap->degree();
  throw Error("degree expects a polynomial");
}

std::set<Var> support(const Value& p) {
  if (const auto* np = std::get_if<NatPoly>(&p)) return np->support();
  if (const auto* ap = std::get_if<AbsorptivePoly>(&p)) return ap->support();
  throw Error("support expects a polynomial");
}

namespace {

Monomial rename_monomial(const Monomial& m, const std::function<Var(Var)>& rename) {
  Monomial out;
  for (const auto& [v, e] : m.entries()) out = out * Monomial::of(rename(v), e);
  return out;
}

}  // namespace

NatPoly rename_variables(const NatPoly& p, const std::function<Var(Var)>& rename) {
  NatPoly out;
  for (const auto& [m, c] : p.terms()) out = out + NatPoly::of(rename_monomial(m, rename), c);
  return out;
}

AbsorptivePoly rename_variables(const AbsorptivePoly& p, const std::function<Var(Var)>& rename) {
  AbsorptivePoly out;
  for (const auto& m : p.monomials()) {
    Monomial r = rename_monomial(m, rename);
    if (!r.has_complementary_pair()) out = out + AbsorptivePoly::of(r);
  }
  return out;
}

std::set<Monomial> monomial_set(const AbsorptivePoly& p) { return {p.monomials().begin(), p.monomials().end()}; }

}  // namespace semfo
