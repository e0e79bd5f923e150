// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// The canonical polynomial interpretation and its homomorphic images.

#ifndef SEMFO_PROVENANCE_H_
#define SEMFO_PROVENANCE_H_

#include <cstddef>
#include <functional>
#include <map>
#include <set>

#include "semfo/formula.h"
#include "semfo/interpretation.h"
#include "semfo/polynomial.h"
#include "semfo/semiring.h"

namespace semfo {

enum class PolyFlavor { kAbsorptive, kNat };

// Universe "1".."n"; every literal L gets its own variable x_L, with x_R(a) and
// x_~R(a) dual.
Interpretation pi_n(const Vocabulary& vocab, std::size_t n, PolyFlavor flavor = PolyFlavor::kAbsorptive);

// eval(pi_n, f) over the vocabulary of f.
Value canonical_polynomial(const Formula& f, std::size_t n, PolyFlavor flavor = PolyFlavor::kAbsorptive);

using Assignment = std::function<Value(Var)>;

// The assignment x_L -> pi(L) induced by an interpretation over the same
// element names.
Assignment assignment_of(const Interpretation& pi);

// Image of a polynomial under the homomorphism extending `f`. Throws
// PreconditionError unless f(x_a) * f(x_~a) = 0 for every atom of the support,
// and for absorptive polynomials unless the target is absorptive.
Value specialize(const Value& p, const Assignment& f, const Semiring& target);

std::uint64_t degree(const Value& p);
std::set<Var> support(const Value& p);

// Replaces every variable v by rename(v).
NatPoly rename_variables(const NatPoly& p, const std::function<Var(Var)>& rename);
AbsorptivePoly rename_variables(const AbsorptivePoly& p, const std::function<Var(Var)>& rename);

// Monomials of an absorptive polynomial as a set, for containment checks.
std::set<Monomial> monomial_set(const AbsorptivePoly& p);

}  // namespace semfo

#endif  // SEMFO_PROVENANCE_H_
