// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Syntactic transformations between FO and FO with distinct quantifiers, the
// size-n unfolding, prenex flattening of existential combinations and the
// existential prenex DNF over lattice semirings.

#ifndef SEMFO_TRANSFORM_H_
#define SEMFO_TRANSFORM_H_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "semfo/formula.h"

namespace semfo {

// Renames bound variables so that every quantifier binds a distinct name that
// is also distinct from the free variables and from `avoid`. The first binding
// of a name keeps it when possible.
Formula rename_apart(const Formula& f, const std::set<std::string>& avoid = {});

// Rewrites valid in every semiring: true & p -> p, false | p -> p,
// false & p -> false, E x. false -> false, A x. true -> true (all flavors).
Formula simplify_exact(const Formula& f);
// Additionally true | p -> true and p | p -> p, valid in absorptive semirings.
Formula simplify_absorptive(const Formula& f);

// Equality atoms become true or false, free variables are taken to denote
// pairwise distinct elements.
Formula fo_to_foneq(const Formula& f);
Formula foneq_to_fo(const Formula& f);

// E x1 ... E xn (pairwise distinct & unfolding of f over x1..xn). FO≠ input is
// translated to FO first.
Formula psi_n(const Formula& f, std::size_t n);

// Pulls existential quantifiers out of a positive combination of existential
// FO formulae.
Formula flatten_sigma1(const Formula& f);

struct PrenexDnf {
  std::vector<std::string> bound;
  // Each disjunct is a conjunction of literals; the empty conjunction is true.
  std::vector<std::vector<Formula>> disjuncts;
  Formula to_formula() const;
};

// E! z. (disjunction of conjunctions of literals), equivalent over lattice
// semirings on universes large enough to instantiate all of z pairwise
// distinctly next to the free variables.
PrenexDnf existential_prenex_dnf(const Formula& f);

// Literal set of a conjunction in canonical order with duplicates removed.
std::vector<Formula> normalize_conjunction(std::vector<Formula> lits);
bool is_contradictory(const std::vector<Formula>& lits);

}  // namespace semfo

#endif  // SEMFO_TRANSFORM_H_
