// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// First-order formulae in negation normal form, in two quantifier flavors:
// standard FO (E, A) and FO with distinct quantifiers (E!, A!).

#ifndef SEMFO_FORMULA_H_
#define SEMFO_FORMULA_H_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semfo {

enum class NodeKind {
  kTrue,
  kFalse,
  kAtom,
  kNegAtom,
  kEq,
  kNeq,
  kAnd,
  kOr,
  kExists,
  kForall,
  kExistsD,
  kForallD,
};

struct Node;
using Formula = std::shared_ptr<const Node>;

// Immutable AST node. Atoms keep the relation name and variable arguments,
// Eq/Neq keep two arguments, quantifiers keep the bound variable in `var` and
// the body in `left`.
struct Node {
  NodeKind kind;
  std::string rel;
  std::vector<std::string> args;
  std::string var;
  Formula left;
  Formula right;
};

Formula f_true();
Formula f_false();
Formula atom(std::string rel, std::vector<std::string> args);
Formula neg_atom(std::string rel, std::vector<std::string> args);
Formula eq(std::string a, std::string b);
Formula neq(std::string a, std::string b);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula quant(NodeKind kind, std::string var, Formula body);
Formula exists(std::string var, Formula body);
Formula forall(std::string var, Formula body);
Formula exists_d(std::string var, Formula body);
Formula forall_d(std::string var, Formula body);
// Left-nested chains; the empty conjunction is true, the empty disjunction false.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

bool is_literal(NodeKind k);
bool is_binary(NodeKind k);
bool is_quantifier(NodeKind k);
bool is_universal(NodeKind k);
bool is_existential_quantifier(NodeKind k);
bool is_distinct_quantifier(NodeKind k);

// Negation pushed to atoms.
Formula negate(const Formula& f);

bool equal(const Formula& a, const Formula& b);

// Relation symbols with arities.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Adds a symbol; throws on an arity conflict or arity 0.
  void add(const std::string& name, std::size_t arity);
  void merge(const Vocabulary& other);
  bool contains(const std::string& name) const { return arity_.count(name) != 0; }
  std::size_t arity(const std::string& name) const;
  const std::map<std::string, std::size_t>& symbols() const { return arity_; }
  bool empty() const { return arity_.empty(); }
  std::string to_string() const;
  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::map<std::string, std::size_t> arity_;
};

Vocabulary vocabulary_of(const Formula& f);

Formula parse(std::string_view text);
// Parses and rejects free variables.
Formula parse_sentence(std::string_view text);
std::string render(const Formula& f);

enum class Flavor { kNone, kFO, kFONeq, kMixed };

// kNone for quantifier-free formulae without equality.
Flavor flavor(const Formula& f);
bool is_fo(const Formula& f);
bool is_foneq(const Formula& f);

// Free variables in order of first occurrence.
std::vector<std::string> free_vars(const Formula& f);
bool is_sentence(const Formula& f);
// Every variable name occurring anywhere, bound or free.
std::vector<std::string> all_vars(const Formula& f);
// True if a quantifier rebinds a variable already in scope.
bool has_shadowing(const Formula& f);

bool has_universal(const Formula& f);
bool is_existential(const Formula& f);
bool is_universal_fragment(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool has_negative_literal(const Formula& f);

struct FormulaMetrics {
  std::size_t size = 0;
  std::size_t qr = 0;
  std::size_t qr_forall = 0;
};

FormulaMetrics metrics(const Formula& f);

// Root-to-node child indices: 0 = left or body, 1 = right.
using Path = std::vector<int>;

Formula subformula_at(const Formula& f, const Path& path);
// Variables in scope at the node: free variables of the host, then the bound
// variables on the way down with later bindings replacing earlier ones.
std::vector<std::string> visible_vars(const Formula& f, const Path& path);
// Replaces the node at `path`. Throws on an invalid path or when a free
// variable of `replacement` is not visible at the path.
Formula substitute_subformula(const Formula& host, const Path& path, const Formula& replacement);
// First node in left-to-right post-order satisfying `pred`, which makes the
// result an innermost match among overlapping candidates.
std::optional<Path> find_leftmost_innermost(const Formula& f, const std::function<bool(const Formula&)>& pred);
std::vector<Path> find_all(const Formula& f, const std::function<bool(const Formula&)>& pred);

// Renames free occurrences of `from` to `to`. The caller ensures `to` is not
// captured, e.g. after rename_apart.
Formula rename_free(const Formula& f, const std::string& from, const std::string& to);
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& sub);

}  // namespace semfo

#endif  // SEMFO_FORMULA_H_
