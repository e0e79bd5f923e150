// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Commutative semirings with exact carriers. A Semiring object describes one
// semiring; values are plain tagged data and all operations are pure.

#ifndef SEMFO_SEMIRING_H_
#define SEMFO_SEMIRING_H_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semfo/lattice.h"
#include "semfo/polynomial.h"

namespace semfo {

using Rational = mpq_class;

// Level of a finite chain or index of a finite lattice element.
struct Level {
  std::uint32_t v = 0;
  friend bool operator==(const Level&, const Level&) = default;
};

// Non-negative rational or infinity (tropical carrier).
struct ExtRational {
  bool infinite = false;
  Rational q;
  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.infinite == b.infinite && (a.infinite || a.q == b.q);
  }
};

// Natural number or infinity.
struct ExtNatural {
  bool infinite = false;
  Natural n;
  friend bool operator==(const ExtNatural& a, const ExtNatural& b) {
    return a.infinite == b.infinite && (a.infinite || a.n == b.n);
  }
};

using Value = std::variant<Level, Rational, ExtRational, ExtNatural, NatPoly, AbsorptivePoly>;

enum class SemiringKind {
  kBoolean,
  kS3,
  kChain,
  kLattice,
  kFuzzy,
  kViterbi,
  kTropical,
  kLukasiewicz,
  kDoubt,
  kNat,
  kNatInf,
  kNatPoly,
  kAbsPoly,
};

struct SemiringFlags {
  bool additively_idempotent = false;
  bool absorptive = false;
  bool multiplicatively_idempotent = false;
  bool linearly_ordered = false;
};

class Semiring {
 public:
  static Semiring boolean();
  static Semiring s3();
  static Semiring chain(std::size_t k);
  static Semiring lattice(std::shared_ptr<const FiniteLattice> l, std::string label = "lattice");
  static Semiring fuzzy();
  static Semiring viterbi();
  static Semiring tropical();
  static Semiring lukasiewicz();
  static Semiring doubt();
  static Semiring nat();
  static Semiring nat_inf();
  static Semiring nat_poly();
  static Semiring abs_poly(std::size_t n = 0);
  // Parses a command-line identifier such as `chain:4` or `lattice:file.txt`.
  static Semiring from_id(std::string_view id);

  SemiringKind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  const SemiringFlags& flags() const { return flags_; }
  std::size_t chain_size() const { return k_; }
  const FiniteLattice* finite_lattice() const { return lattice_.get(); }
  std::shared_ptr<const FiniteLattice> lattice_ptr() const { return lattice_; }
  bool is_lattice_semiring() const;
  bool has_finite_carrier() const;
  bool has_rational_carrier() const;

  Value zero() const;
  Value one() const;
  Value add(const Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  Value sum(std::span<const Value> xs) const;
  Value product(std::span<const Value> xs) const;
  Value power(const Value& a, std::uint64_t e) const;

  // Natural order: a <= b iff a + r = b for some r.
  bool leq(const Value& a, const Value& b) const;
  bool less(const Value& a, const Value& b) const { return leq(a, b) && !(a == b); }
  bool is_zero(const Value& a) const { return a == zero(); }
  bool is_one(const Value& a) const { return a == one(); }
  // Throws CarrierMismatch unless `a` is an element of the carrier.
  void check(const Value& a) const;
  bool contains(const Value& a) const;

  std::string format(const Value& a) const;
  Value parse_value(std::string_view text) const;

  // Every element of a finite carrier, in increasing natural order where linear.
  std::vector<Value> carrier() const;
  // A small default set of non-zero values used by enumerations.
  std::vector<Value> default_grid() const;
  Value sample(std::mt19937_64& rng) const;
  // The numeric representative of a value over a rational carrier.
  Rational real(const Value& a) const;
  Value from_real(const Rational& q) const;

  friend bool operator==(const Semiring& a, const Semiring& b);

 private:
  Semiring(SemiringKind kind, std::string id, SemiringFlags flags) : kind_(kind), id_(std::move(id)), flags_(flags) {}

  SemiringKind kind_;
  std::string id_;
  SemiringFlags flags_;
  std::size_t k_ = 0;
  std::shared_ptr<const FiniteLattice> lattice_;
};

// Convenience constructors.
Value level(std::uint32_t v);
Value rational(long p, long q = 1);
Value rational(const Rational& q);
Value natural(long n);
Value nat_infinity();
Value trop(long p, long q = 1);
Value trop_infinity();

// S3 = {0, eps, 1} as chain levels.
inline constexpr std::uint32_t kS3Zero = 0;
inline constexpr std::uint32_t kS3Eps = 1;
inline constexpr std::uint32_t kS3One = 2;

struct AxiomReport {
  bool ok = true;
  std::string failure;
  std::size_t checked = 0;
};

// Checks the commutative semiring axioms, exhaustively on finite carriers and on
// `samples` random triples otherwise. Also checks that the flags match behavior.
AxiomReport check_axioms(const Semiring& s, std::size_t samples = 10000, std::uint64_t seed = 1);

}  // namespace semfo

#endif  // SEMFO_SEMIRING_H_
