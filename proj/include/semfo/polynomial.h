// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Provenance polynomials: the natural-number polynomial semiring N[X] and the
// absorptive quotient S(X+, X-) whose elements are antichains of monomials.

#ifndef SEMFO_POLYNOMIAL_H_
#define SEMFO_POLYNOMIAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semfo {

using Natural = mpz_class;

// A polynomial indeterminate. Each variable names an atom and carries a
// polarity: x_a and x_~a are dual to each other.
class Var {
 public:
  Var() = default;
  static Var positive(std::string_view atom);
  static Var negative(std::string_view atom);

  std::uint32_t code() const { return code_; }
  bool negated() const { return (code_ & 1u) != 0; }
  Var dual() const { return Var(code_ ^ 1u); }
  const std::string& atom() const;
  std::string name() const;

  friend auto operator<=>(const Var&, const Var&) = default;

 private:
  explicit Var(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

class Monomial {
 public:
  using Entry = std::pair<Var, std::uint32_t>;

  Monomial() = default;
  static Monomial of(Var v, std::uint32_t exponent = 1);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }
  std::uint64_t degree() const;
  std::uint32_t exponent(Var v) const;

  // Ordinary product. Throws if an exponent would reach 2^32.
  Monomial operator*(const Monomial& other) const;
  // True if some x_a and x_~a both occur; such a monomial is 0 in the quotient.
  bool has_complementary_pair() const;
  // True if this monomial divides `other`.
  bool divides(const Monomial& other) const;

  // Variables sorted by printed name, for canonical output.
  std::vector<std::pair<std::string, std::uint32_t>> named() const;
  std::string to_string() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Entry> entries_;
};

// m1 absorbs m2 when m1 has smaller exponents, i.e. m2 = m * m1.
bool absorbs(const Monomial& m1, const Monomial& m2);

class AbsorptivePoly {
 public:
  AbsorptivePoly() = default;
  static AbsorptivePoly zero() { return AbsorptivePoly(); }
  static AbsorptivePoly one();
  static AbsorptivePoly of(const Monomial& m);
  static AbsorptivePoly variable(Var v) { return of(Monomial::of(v)); }
  static AbsorptivePoly parse(std::string_view text);

  const std::vector<Monomial>& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }
  bool is_one() const { return monomials_.size() == 1 && monomials_[0].is_one(); }
  bool is_antichain() const;

  AbsorptivePoly operator+(const AbsorptivePoly& other) const;
  AbsorptivePoly operator*(const AbsorptivePoly& other) const;
  // Natural order: s <= t iff s + t = t.
  bool leq(const AbsorptivePoly& other) const;

  std::set<Var> support() const;
  std::uint64_t degree() const;
  std::string to_string() const;

  friend bool operator==(const AbsorptivePoly&, const AbsorptivePoly&) = default;

 private:
  static AbsorptivePoly from_unpruned(std::vector<Monomial> ms);
  std::vector<Monomial> monomials_;
};

class NatPoly {
 public:
  NatPoly() = default;
  static NatPoly constant(const Natural& c);
  static NatPoly of(const Monomial& m, const Natural& c = 1);
  static NatPoly variable(Var v) { return of(Monomial::of(v)); }
  static NatPoly parse(std::string_view text);

  const std::map<Monomial, Natural>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  NatPoly operator+(const NatPoly& other) const;
  NatPoly operator*(const NatPoly& other) const;
  // Natural order: coefficient-wise comparison.
  bool leq(const NatPoly& other) const;

  std::set<Var> support() const;
  std::uint64_t degree() const;
  std::string to_string() const;

  friend bool operator==(const NatPoly& a, const NatPoly& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Monomial, Natural> terms_;
};

}  // namespace semfo

#endif  // SEMFO_POLYNOMIAL_H_
