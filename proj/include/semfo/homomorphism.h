// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Semiring homomorphisms: threshold maps on S3, embeddings of S3, lattice
// maps produced by adjoining a bottom, and weakly separating maps into S3.

#ifndef SEMFO_HOMOMORPHISM_H_
#define SEMFO_HOMOMORPHISM_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semfo/lattice.h"
#include "semfo/semiring.h"

namespace semfo {

class SemiringHom {
 public:
  // Table map on a finite carrier: images[i] is the image of level i.
  static SemiringHom table(Semiring source, Semiring target, std::vector<Value> images, std::string name);
  static SemiringHom function(Semiring source, Semiring target, std::function<Value(const Value&)> fn,
                              std::string name);

  const Semiring& source() const { return source_; }
  const Semiring& target() const { return target_; }
  const std::string& name() const { return name_; }
  Value apply(const Value& v) const;
  Value operator()(const Value& v) const { return apply(v); }
  // True if only 0 maps to 0 on the finite source carrier.
  bool has_trivial_kernel() const;

 private:
  SemiringHom(Semiring source, Semiring target, std::string name)
      : source_(std::move(source)), target_(std::move(target)), name_(std::move(name)) {}

  Semiring source_;
  Semiring target_;
  std::string name_;
  std::vector<Value> table_;
  std::function<Value(const Value&)> fn_;
};

enum class Threshold { kGeqEps, kGeqOne };

// S3 -> S3 maps sending values at or above the threshold to 1 and others to 0.
SemiringHom threshold_hom(Threshold kind);
// S3 -> fuzzy with eps -> 1/2.
SemiringHom s3_to_fuzzy();
// S3 -> lattice semiring with eps -> `mid`; mid must lie strictly between 0 and 1.
SemiringHom s3_to_lattice(const Semiring& lattice, std::uint32_t mid);

struct HomReport {
  bool ok = true;
  std::string failure;
  std::size_t checked = 0;
};

// Exhaustive on finite sources, `samples` random pairs otherwise.
HomReport check_hom(const SemiringHom& h, std::size_t samples = 2000, std::uint64_t seed = 1);

// The finite lattice underlying boolean, s3, chain and lattice semirings.
std::shared_ptr<const FiniteLattice> lattice_of(const Semiring& s);

struct AdjoinedBottom {
  Semiring star;
  // L* -> L sending the new bottom to 0 and fixing the rest.
  SemiringHom collapse;
  // L -> L* as a map of levels (not a homomorphism: 0 is not preserved).
  std::function<Value(const Value&)> lift;
};

AdjoinedBottom adjoin_bottom(const Semiring& lattice_semiring);

// Searches all maps L -> S3 for a lattice homomorphism h with kernel {0},
// h(s) > h(t), no join of elements below h(s) reaching s and no meet of
// elements above h(t) reaching t. Throws PreconditionError if s <= t, if L
// has zero divisors, or if |L| > 12. Returns nullopt if none exists.
std::optional<SemiringHom> find_weakly_separating_hom(const Semiring& lattice, const Value& s, const Value& t);

// Literal check of conditions (3) and (4) by enumerating all subsets of L.
bool weakly_separates_by_subsets(const FiniteLattice& l, const std::vector<std::uint32_t>& h, std::uint32_t s,
                                 std::uint32_t t);

}  // namespace semfo

#endif  // SEMFO_HOMOMORPHISM_H_
