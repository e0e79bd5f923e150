// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Finite semiring interpretations: a universe, a vocabulary and a value for
// every instantiated literal.

#ifndef SEMFO_INTERPRETATION_H_
#define SEMFO_INTERPRETATION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semfo/formula.h"
#include "semfo/homomorphism.h"
#include "semfo/semiring.h"

namespace semfo {

using Elem = std::uint32_t;

// Values of R(a) and ~R(a) for every tuple a, indexed in mixed radix |A|.
struct RelTable {
  std::size_t arity = 0;
  std::vector<Value> pos;
  std::vector<Value> neg;
};

struct GroundAtom {
  std::string rel;
  std::vector<Elem> args;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

enum class Validity {
  kModelDefining,
  // Both literals of some atom are non-zero in a polynomial semiring, as in the
  // canonical polynomial interpretation.
  kPolynomial,
  kInvalid,
};

struct ValidationReport {
  Validity status = Validity::kModelDefining;
  std::string literal;
  bool ok() const { return status != Validity::kInvalid; }
};

class Interpretation {
 public:
  // Every atom starts at 0 with its negation at 1.
  Interpretation(Semiring semiring, std::vector<std::string> universe, Vocabulary vocab);
  // Universe named "1".."n".
  static Interpretation over(Semiring semiring, std::size_t n, Vocabulary vocab);
  static Interpretation parse(std::string_view text, const std::optional<Semiring>& semiring = std::nullopt);
  static Interpretation load(const std::string& path, const std::optional<Semiring>& semiring = std::nullopt);

  const Semiring& semiring() const { return semiring_; }
  std::size_t size() const { return universe_.size(); }
  const std::vector<std::string>& universe() const { return universe_; }
  const std::string& element_name(Elem e) const { return universe_.at(e); }
  Elem element(std::string_view name) const;
  std::optional<Elem> find_element(std::string_view name) const;
  const Vocabulary& vocab() const { return vocab_; }
  // Adds relations absent from the vocabulary with all atoms at 0.
  void extend_vocabulary(const Vocabulary& v);

  const RelTable* table(const std::string& rel) const;
  std::size_t index(std::span<const Elem> args) const;
  const Value& value(const std::string& rel, bool negated, std::span<const Elem> args) const;
  const Value& value(const GroundAtom& a, bool negated) const { return value(a.rel, negated, a.args); }
  // Sets the atom to v and its negation to 0, or to 1 when v is 0.
  void set_atom(const std::string& rel, std::span<const Elem> args, const Value& v);
  // Sets the negated atom to v and the atom to 0, or to 1 when v is 0.
  void set_negated(const std::string& rel, std::span<const Elem> args, const Value& v);
  void set_both(const std::string& rel, std::span<const Elem> args, const Value& pos, const Value& neg);

  std::vector<GroundAtom> atoms() const;
  std::size_t atom_count() const;
  std::string atom_name(const GroundAtom& a) const;
  std::string literal_name(const GroundAtom& a, bool negated) const;

  ValidationReport validate() const;
  // Throws NotModelDefining unless validate() succeeds.
  void require_valid() const;
  // Text in the file format, listing the non-default literals.
  std::string to_string() const;

  friend bool operator==(const Interpretation& a, const Interpretation& b);

 private:
  Semiring semiring_;
  std::vector<std::string> universe_;
  Vocabulary vocab_;
  std::map<std::string, RelTable> tables_;
};

// Induced subinterpretation on `subset`, in the given order.
Interpretation restrict(const Interpretation& pi, const std::vector<Elem>& subset);
// Adds `count` fresh elements; every atom mentioning a fresh element gets
// `fill` and its negation 0 (or 1 when fill is 0).
Interpretation pad(const Interpretation& pi, std::size_t count, const Value& fill);

// Elements are matched by name.
bool is_subinterpretation(const Interpretation& a, const Interpretation& b);

enum class HomClass { kNone, kHom, kStrongHom, kEmbedding };
std::string to_string(HomClass c);

// Classifies the element map g: A -> B.
HomClass check_interp_hom(const std::vector<Elem>& g, const Interpretation& a, const Interpretation& b);

// Literal-wise image; throws NotModelDefining if the image is not model-defining.
Interpretation compose_hom(const SemiringHom& h, const Interpretation& pi);
// Literal-wise image without validation.
Interpretation compose_hom_unchecked(const SemiringHom& h, const Interpretation& pi);

// All model-defining interpretations of `size` where each atom takes a value
// from `values` with negation 0, or is 0 with its negation from `values`.
class InterpretationSpace {
 public:
  InterpretationSpace(Semiring semiring, Vocabulary vocab, std::size_t size, std::vector<Value> values,
                      std::uint64_t guard = 1000000);
  // Saturates at UINT64_MAX.
  std::uint64_t count() const { return count_; }
  std::size_t atom_count() const { return atoms_; }
  // False if exhaustive enumeration would exceed the guard or 16 atoms.
  bool within_guard() const;
  // at() and for_each() throw GuardExceeded unless within_guard().
  Interpretation at(std::uint64_t index) const;
  Interpretation random(std::mt19937_64& rng) const;
  // Stops early when `fn` returns false.
  void for_each(const std::function<bool(const Interpretation&)>& fn) const;

 private:
  Semiring semiring_;
  Vocabulary vocab_;
  std::size_t size_;
  std::vector<Value> values_;
  std::uint64_t guard_;
  std::size_t atoms_ = 0;
  std::uint64_t count_ = 0;
};

// Drops zeros from a value grid, keeping order and removing duplicates.
std::vector<Value> nonzero_values(const Semiring& s, const std::vector<Value>& values);

}  // namespace semfo

#endif  // SEMFO_INTERPRETATION_H_
