// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Shared formula corpora, random generators and brute-force oracles for the
// test binaries.

#ifndef SEMFO_TESTS_CORPUS_H_
#define SEMFO_TESTS_CORPUS_H_

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "semfo/formula.h"
#include "semfo/interpretation.h"
#include "semfo/semiring.h"

namespace semfo::corpus {

// FO≠ sentences with quantifier rank at most 2 over at most two relations
// drawn from R/1, Q/1 and E/2.
const std::vector<std::string>& foneq_sentences();

// FO sentences with equality, mostly unary.
const std::vector<std::string>& fo_sentences();

// FO sentences preserved under finite extensions in the strict semirings.
const std::vector<std::string>& strict_rewrite_sentences();

// FO≠ formulae with at most one free variable for the triviality oracle.
const std::vector<std::string>& triviality_formulas();

// FO≠ sentences whose strategies are generated for the translation checks.
const std::vector<std::string>& translation_sentences();

std::vector<Formula> parse_all(const std::vector<std::string>& texts);

// Semirings exercised by the randomized property suites.
std::vector<Semiring> property_semirings();

enum class Fragment { kSigma1, kPi1, kSigma1Plus };

// Random sentence of the fragment over R/1 and E/2 with at most `quantifiers`
// quantifiers.
Formula random_sentence(std::mt19937_64& rng, Fragment fragment, int quantifiers = 2);

// Every S3 interpretation of the given size built from eps and 1.
void for_each_s3(const Vocabulary& vocab, std::size_t size, const std::function<bool(const Interpretation&)>& fn);

// Brute-force triviality: every S3 interpretation of size n and every
// instantiation of the free variables by pairwise distinct elements gives 1.
bool brute_force_trivial(const Formula& f, std::size_t n);

// Every injective assignment of `vars` into [n].
std::vector<std::vector<Elem>> injections(std::size_t vars, std::size_t n);

// All subsets of [n] of size k in lexicographic order.
std::vector<std::vector<Elem>> subsets(std::size_t n, std::size_t k);

}  // namespace semfo::corpus

#endif  // SEMFO_TESTS_CORPUS_H_
