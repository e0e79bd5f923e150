// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semfo/homomorphism.h"

#include "semfo/error.h"

namespace semfo {

SemiringHom SemiringHom::table(Semiring source, Semiring target, std::vector<Value> images, std::string name) {
  if (!source.has_finite_carrier()) throw Error("table homomorphism needs a finite source carrier");
  if (images.size() != source.carrier().size()) throw Error("homomorphism table has the wrong size");
  for (const auto& v : images) target.check(v);
  SemiringHom h(std::move(source), std::move(target), std::move(name));
  h.table_ = std::move(images);
  return h;
}

SemiringHom SemiringHom::function(Semiring source, Semiring target, std::function<Value(const Value&)> fn,
                                  std::string name) {
  SemiringHom h(std::move(source), std::move(target), std::move(name));
  h.fn_ = std::move(fn);
  return h;
}

Value SemiringHom::apply(const Value& v) const {
  source_.check(v);
  Value out = table_.empty() ? fn_(v) : table_[std::get<Level>(v).v];
  target_.check(out);
  return out;
}

bool SemiringHom::has_trivial_kernel() const {
  if (!source_.has_finite_carrier()) throw Error("kernel check needs a finite source carrier");
  for (const auto& v : source_.carrier()) {
    if (!source_.is_zero(v) && target_.is_zero(apply(v))) return false;
  }
  return true;
}

SemiringHom threshold_hom(Threshold kind) {
  Semiring s = Semiring::s3();
  if (kind == Threshold::kGeqEps) return SemiringHom::table(s, s, {level(0), level(2), level(2)}, "geq_eps");
  return SemiringHom::table(s, s, {level(0), level(0), level(2)}, "geq_one");
}

SemiringHom s3_to_fuzzy() {
  return SemiringHom::table(Semiring::s3(), Semiring::fuzzy(), {rational(0), rational(1, 2), rational(1)},
                            "s3_to_fuzzy");
}

SemiringHom s3_to_lattice(const Semiring& lattice, std::uint32_t mid) {
  auto l = lattice_of(lattice);
  if (mid >= l->size() || mid == l->bottom() || mid == l->top()) {
    throw PreconditionError("image of eps must lie strictly between 0 and 1");
  }
  return SemiringHom::table(Semiring::s3(), lattice, {level(l->bottom()), level(mid), level(l->top())},
                            "s3_to_" + lattice.id());
}

HomReport check_hom(const SemiringHom& h, std::size_t samples, std::uint64_t seed) {
  HomReport r;
  const Semiring& s = h.source();
  const Semiring& t = h.target();
  auto fail = [&](const std::string& what) {
    if (r.ok) {
      r.ok = false;
      r.failure = what;
    }
  };
  if (!(h(s.zero()) == t.zero())) fail("h(0) != 0");
  if (!(h(s.one()) == t.one())) fail("h(1) != 1");
  auto pair = [&](const Value& a, const Value& b) {
    ++r.checked;
    if (!(h(s.add(a, b)) == t.add(h(a), h(b)))) fail("h(" + s.format(a) + " + " + s.format(b) + ") is not additive");
    if (!(h(s.mul(a, b)) == t.mul(h(a), h(b)))) {
      fail("h(" + s.format(a) + " * " + s.format(b) + ") is not multiplicative");
    }
  };
  if (s.has_finite_carrier()) {
    auto c = s.carrier();
    for (const auto& a : c) {
      for (const auto& b : c) pair(a, b);
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples && r.ok; ++i) pair(s.sample(rng), s.sample(rng));
  }
  return r;
}

std::shared_ptr<const FiniteLattice> lattice_of(const Semiring& s) {
  switch (s.kind()) {
    case SemiringKind::kBoolean:
      return std::make_shared<FiniteLattice>(FiniteLattice::chain(2));
    case SemiringKind::kS3:
      return std::make_shared<FiniteLattice>(FiniteLattice::chain(3));
    case SemiringKind::kChain:
      return std::make_shared<FiniteLattice>(FiniteLattice::chain(s.chain_size()));
    case SemiringKind::kLattice:
      return s.lattice_ptr();
    default:
      throw Error(s.id() + " is not a finite lattice semiring");
  }
}

AdjoinedBottom adjoin_bottom(const Semiring& sem) {
  auto l = lattice_of(sem);
  std::string name = "0*";
  while (true) {
    bool clash = false;
    for (const auto& n : l->names()) clash |= n == name;
    if (!clash) break;
    name += "*";
  }
  auto star_lattice = std::make_shared<FiniteLattice>(l->adjoin_bottom(name));
  Semiring star = Semiring::lattice(star_lattice, sem.id() + "*");
  std::vector<Value> images;
  images.push_back(sem.zero());
  for (std::uint32_t i = 0; i < l->size(); ++i) images.push_back(level(i));
  SemiringHom collapse = SemiringHom::table(star, sem, std::move(images), "collapse_bottom");
  return AdjoinedBottom{star, collapse, [](const Value& v) { return level(std::get<Level>(v).v + 1); }};
}

bool weakly_separates_by_subsets(const FiniteLattice& l, const std::vector<std::uint32_t>& h, std::uint32_t s,
                                 std::uint32_t t) {
  const std::size_t n = l.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint32_t join = l.bottom();
    std::uint32_t meet = l.top();
    bool hits_s = false;
    bool hits_t = false;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (!(mask >> x & 1u)) continue;
      join = l.join(join, x);
      meet = l.meet(meet, x);
      hits_s |= h[x] == h[s];
      hits_t |= h[x] == h[t];
    }
    if (join == s && !hits_s) return false;
    if (meet == t && !hits_t) return false;
  }
  return true;
}

std::optional<SemiringHom> find_weakly_separating_hom(const Semiring& sem, const Value& sv, const Value& tv) {
  auto lp = lattice_of(sem);
  const FiniteLattice& l = *lp;
  sem.check(sv);
  sem.check(tv);
  const std::uint32_t s = std::get<Level>(sv).v;
  const std::uint32_t t = std::get<Level>(tv).v;
  const std::size_t n = l.size();
  if (n > 12) throw GuardExceeded("weakly separating search is limited to lattices with at most 12 elements");
  if (l.leq(s, t)) throw PreconditionError("s <= t, nothing to separate");
  if (l.has_zero_divisors()) throw PreconditionError("lattice has divisors of 0; adjoin a bottom first");
  std::vector<std::uint32_t> free;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (x != l.bottom() && x != l.top()) free.push_back(x);
  }
  std::vector<std::uint32_t> h(n, kS3Eps);
  h[l.bottom()] = kS3Zero;
  h[l.top()] = kS3One;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    for (std::size_t i = 0; i < free.size(); ++i) h[free[i]] = (mask >> i & 1u) ? kS3One : kS3Eps;
    if (h[s] <= h[t]) continue;
    bool hom = true;
    for (std::uint32_t a = 0; a < n && hom; ++a) {
      for (std::uint32_t b = 0; b < n && hom; ++b) {
        hom = h[l.join(a, b)] == std::max(h[a], h[b]) && h[l.meet(a, b)] == std::min(h[a], h[b]);
      }
    }
    if (!hom) continue;
    std::uint32_t below = l.bottom();
    std::uint32_t above = l.top();
    for (std::uint32_t x = 0; x < n; ++x) {
      if (l.leq(x, s) && h[x] < h[s]) below = l.join(below, x);
      if (l.leq(t, x) && h[x] > h[t]) above = l.meet(above, x);
    }
    if (below == s || above == t) continue;
    std::vector<Value> images;
    for (auto v : h) images.push_back(level(v));
    return SemiringHom::table(sem, Semiring::s3(), std::move(images), "weakly_separating");
  }
  return std::nullopt;
}

}  // namespace semfo
