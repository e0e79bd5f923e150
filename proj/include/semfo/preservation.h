// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Preservation checks, triviality, counterexample construction and the
// rewriting pipelines into the existential fragment.

#ifndef SEMFO_PRESERVATION_H_
#define SEMFO_PRESERVATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semfo/formula.h"
#include "semfo/homomorphism.h"
#include "semfo/interpretation.h"
#include "semfo/semiring.h"
#include "semfo/strategy.h"

namespace semfo {

// ---------------------------------------------------------------------------
// Preservation checking.

enum class Property { kExtensions, kSubinterpretations, kHomomorphisms };
std::string to_string(Property p);
// Accepts extensions|subints|homs and the long names.
Property parse_property(std::string_view text);

struct PreservationOptions {
  std::size_t min_size = 1;
  std::size_t max_size = 3;
  // Values given to the non-zero literal of each atom; empty means the default
  // grid of the semiring. Zeros are ignored.
  std::vector<Value> grid;
  std::uint64_t guard = 1000000;
  // Random trials when the space exceeds the guard; 0 means GuardExceeded.
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  bool minimize = true;
};

// For extensions and subinterpretations `a` is the induced subinterpretation of
// `b` on `map`; for homomorphisms `map` is a homomorphism from `a` to `b`.
struct PreservationWitness {
  Interpretation a;
  Interpretation b;
  std::vector<Elem> map;
  Value value_a;
  Value value_b;
};

struct PreservationVerdict {
  Property property = Property::kExtensions;
  bool refuted = false;
  bool exhaustive = true;
  std::uint64_t checked = 0;
  std::optional<PreservationWitness> witness;
  std::size_t min_size = 1;
  std::size_t max_size = 1;
  std::vector<Value> grid;
  std::string to_string(const Semiring& s) const;
};

PreservationVerdict check_preservation(const Formula& sentence, const Semiring& s, Property property,
                                       const PreservationOptions& options = {});

// Recomputes both values and checks the relation and the violated order.
bool witness_refutes(const Formula& sentence, Property property, const PreservationWitness& w);

// ---------------------------------------------------------------------------
// Triviality.

// True iff pi[f(a)] = 1 for every interpretation of size n and every
// instantiation a of the free variables by pairwise distinct elements. f must
// be FO≠ and n >= |free vars|. Decided through the constant term of the
// canonical absorptive polynomial.
bool is_trivial_at(const Formula& f, std::size_t n);
// The same question answered by evaluating f on pi_n for the instantiation
// 1..k of the free variables.
bool is_trivial_at_literal(const Formula& f, std::size_t n);

enum class Triviality { kTrivial, kNonTrivial, kUnstable };
std::string to_string(Triviality t);

struct TrivialityReport {
  Triviality verdict = Triviality::kNonTrivial;
  // Probe sizes with their outcomes, increasing.
  std::vector<std::pair<std::size_t, bool>> probes;
  // 2^(|f|+1) + qr(f) + 2, saturating.
  std::uint64_t threshold = 0;
  std::string to_string() const;
};

// Probes every size from max(1, |free vars|) up to 64 sizes above it and the
// two sizes at the threshold.
TrivialityReport is_eventually_trivial(const Formula& f);

// ---------------------------------------------------------------------------
// Optimal strategies of a restricted class.

struct ClassOptimum {
  bool found = false;
  Value optimum;
  // Best value reachable inside the class, when the class is non-empty.
  std::optional<Value> class_best;
  std::optional<Strategy> strategy;
};

// Requires an additively idempotent, linearly ordered semiring.
ClassOptimum has_existential_optimal(const Interpretation& pi, const Formula& sentence);
ClassOptimum has_almost_existential_optimal(const Interpretation& pi, const Formula& sentence);

// ---------------------------------------------------------------------------
// Counterexample construction.

struct OneElimination {
  Interpretation result;
  // Replacement for literal value 1; absent if the input was already 1-free.
  std::optional<Value> replacement;
  // Smallest gap between distinct strategy values, zero included.
  Rational delta;
  std::size_t max_degree = 0;
};

// Requires viterbi, tropical, lukasiewicz or doubt, eval(pi, sentence) != 0 and
// a strategy count within `guard`. Verifies the argmax refinement.
OneElimination eliminate_one_valuations(const Interpretation& pi, const Formula& sentence,
                                        std::uint64_t guard = 1000000);

// Adds qr + 1 elements whose atoms carry `fill`, by default half way between
// eval(pi, sentence) and 0 in the natural order.
Interpretation pad_absent_elements(const Interpretation& pi, const Formula& sentence,
                                   const std::optional<Value>& fill = std::nullopt);

struct ShrinkResult {
  // The input restricted to all elements but `dropped`.
  Interpretation smaller;
  std::string dropped;
  Value before;
  Value after;
  Strategy translated;
};

// Throws PreconditionError naming the first unmet precondition and
// VerificationFailure if the value fails to increase strictly.
ShrinkResult shrink_counterexample(const Interpretation& pi, const Strategy& t, const Formula& sentence);

struct S3Lift {
  SemiringHom hom;
  Interpretation star_a;
  Interpretation star_b;
  Interpretation a;
  Interpretation b;
  Value value_a;
  Value value_b;
};

// Lifts a counterexample over a finite lattice semiring (pi_a a
// subinterpretation of pi_b with pi_a[Phi] not below pi_b[Phi]) to S3.
S3Lift lift_counterexample_to_s3(const Semiring& lattice, const Interpretation& pi_a, const Interpretation& pi_b,
                                 const std::vector<Formula>& phi);

// ---------------------------------------------------------------------------
// Bounded S3 checks.

struct S3Check {
  bool holds = true;
  std::uint64_t checked = 0;
  std::optional<Interpretation> witness;
  std::optional<Value> phi_value;
  std::optional<Value> psi_value;
};

// pi[Phi] = 1 implies pi[Psi] = 1 on all model-defining S3 interpretations of
// the given sizes. Throws GuardExceeded past `guard` interpretations per size.
S3Check s3_entailment(const std::vector<Formula>& phi, const std::vector<Formula>& psi,
                      const std::vector<std::size_t>& sizes, std::uint64_t guard = 1000000);
// pi[Phi] = 1 iff pi[Psi] = 1.
S3Check s3_equivalence(const std::vector<Formula>& phi, const std::vector<Formula>& psi,
                       const std::vector<std::size_t>& sizes, std::uint64_t guard = 1000000);

// ---------------------------------------------------------------------------
// Rewriting into the existential fragment.

struct RewriteOptions {
  std::size_t exhaustive_max = 3;
  std::size_t sampled_max = 5;
  std::uint64_t samples = 1000;
  std::uint64_t guard = 1000000;
  std::uint64_t seed = 1;
  bool gate = true;
};

enum class StepKind { kTrivial, kRedundant, kContinuitySplit };
std::string to_string(StepKind k);

struct RewriteStep {
  StepKind kind = StepKind::kRedundant;
  std::string subformula;
  std::string replacement;
  std::string note;
};

struct EquivalenceCheck {
  bool passed = true;
  std::uint64_t exhaustive = 0;
  std::uint64_t sampled = 0;
  // One line per size or sample batch stating how it was checked.
  std::vector<std::string> scope;
  std::optional<Interpretation> witness;
  std::optional<Value> input_value;
  std::optional<Value> output_value;
};

struct RewriteReport {
  Formula input;
  // The input in FO≠ and the universal-free result valid on large universes.
  Formula foneq;
  Formula large;
  Formula output;
  std::size_t threshold = 1;
  std::vector<RewriteStep> steps;
  std::optional<PreservationVerdict> gate;
  EquivalenceCheck verification;
  bool ok() const { return output != nullptr && verification.passed; }
  std::string to_string(const Semiring& s) const;
};

// Pipeline for viterbi, tropical, lukasiewicz and doubt.
RewriteReport rewrite_sigma1_strict(const Formula& sentence, const Semiring& s, const RewriteOptions& options = {});
// Pipeline for lattice semirings; verified over S3 and sampled over fuzzy.
RewriteReport rewrite_sigma1_lattice(const Formula& sentence, const RewriteOptions& options = {});

// Value equality on grids of sizes 1..exhaustive_max (coarser grid past the
// guard, sampling past that) plus `samples` random grid interpretations of
// sizes up to sampled_max.
EquivalenceCheck verify_equivalence(const Formula& a, const Formula& b, const Semiring& s,
                                    const RewriteOptions& options = {});

}  // namespace semfo

#endif  // SEMFO_PRESERVATION_H_
