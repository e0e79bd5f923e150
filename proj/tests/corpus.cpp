// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#include "corpus.h"

#include <map>

#include "semfo/eval.h"

namespace semfo::corpus {

const std::vector<std::string>& foneq_sentences() {
  static const std::vector<std::string> kSentences = {
      "E! x. R(x)",
      "A! x. R(x)",
      "E! x. ~R(x)",
      "A! x. ~R(x)",
      "E! x. (R(x) | ~R(x))",
      "A! x. (R(x) | ~R(x))",
      "E! x. (R(x) & ~R(x))",
      "E! x. E! y. E(x,y)",
      "E! x. A! y. E(x,y)",
      "A! x. E! y. E(x,y)",
      "A! x. A! y. E(x,y)",
      "E! x. A! y. R(x)",
      "A! x. E! y. R(y)",
      "(A! x. R(x)) | E! x. R(x)",
      "(A! x. R(x)) & E! x. R(x)",
      "E! x. (R(x) & Q(x))",
      "E! x. (R(x) | Q(x))",
      "A! x. (R(x) | Q(x))",
      "A! x. (R(x) & Q(x))",
      "E! x. E! y. (R(x) & Q(y))",
      "E! x. A! y. (R(x) | Q(y))",
      "A! x. E! y. (R(x) & Q(y))",
      "A! x. A! y. (R(x) | ~R(y))",
      "E! x. (R(x) & A! y. Q(y))",
      "E! x. (R(x) | A! y. ~R(y))",
      "A! x. (R(x) | E! y. ~R(y))",
      "E! x. A! y. (E(x,y) | ~E(y,x))",
      "A! x. E! y. (E(x,y) & ~E(y,x))",
      "E! x. E! y. (E(x,y) & E(y,x))",
      "E! x. (E(x,x) & A! y. ~E(x,y))",
      "A! x. (~E(x,x) | E! y. E(x,y))",
      "E! x. E! y. (R(x) & E(x,y))",
      "A! x. (R(x) | E! y. E(y,x))",
      "E! x. (true | R(x))",
      "A! x. (false | R(x))",
      "E! x. A! y. true",
      "A! x. E! y. true",
      "A! x. A! y. false",
      "E! x. A! y. false",
      "true",
      "false",
      "(E! x. R(x)) & E! y. Q(y)",
      "(E! x. R(x)) | A! y. Q(y)",
      "(A! x. ~R(x)) | E! x. (R(x) & Q(x))",
      "E! x. ((R(x) & Q(x)) | (~R(x) & ~Q(x)))",
      "A! x. ((R(x) | Q(x)) & (~R(x) | ~Q(x)))",
      "E! x. (~Q(x) & E! y. (Q(y) & R(y)))",
      "A! x. E! y. (R(x) | ~Q(y))",
      "E! x. A! y. (~R(x) & (Q(y) | R(y)))",
      "A! x. (Q(x) & E! y. R(y))",
      "E! x. E! y. (~E(x,y) | E(y,y))",
      "A! x. A! y. (E(x,y) | E(y,x))",
      "E! x. (R(x) & E! y. (R(y) & ~R(x)))",
      "(A! x. E! y. E(x,y)) | E! x. E(x,x)",
      "(E! x. A! y. ~E(x,y)) & A! x. E(x,x)",
  };
  return kSentences;
}

const std::vector<std::string>& fo_sentences() {
  static const std::vector<std::string> kSentences = {
      "E x. R(x)",
      "A x. R(x)",
      "E x. A y. R(x)",
      "A x. E y. R(y)",
      "E x. (R(x) | ~R(x))",
      "A x. (R(x) | ~R(x))",
      "E x. E y. (x != y & R(x) & R(y))",
      "A x. A y. (x = y | R(x))",
      "E x. (R(x) & A y. (x = y | ~R(y)))",
      "(A x. R(x)) | E x. Q(x)",
      "E x. (R(x) & Q(x))",
      "A x. (R(x) | Q(x))",
      "E x. A y. (R(x) | Q(y))",
      "A x. E y. (x != y & Q(y))",
      "E x. E y. (R(x) & Q(y))",
      "(E x. R(x)) & A y. ~Q(y)",
      "A x. (~R(x) | E y. (x != y & R(y)))",
      "E x. A y. E(x,y)",
      "A x. E y. E(x,y)",
      "E x. (E(x,x) & A y. (x = y | ~E(x,y)))",
  };
  return kSentences;
}

const std::vector<std::string>& strict_rewrite_sentences() {
  static const std::vector<std::string> kSentences = {
      "(A x. R(x)) | E x. R(x)",
      "(A! x. R(x)) | E! x. R(x)",
      "E x. (R(x) | (R(x) & A y. Q(y)))",
      "(A x. x = x) & E x. R(x)",
      "(A x. E y. x != y) & E x. R(x)",
      "(E x. E y. E(x,y)) | A x. E(x,x)",
      "(E x. R(x)) | A x. (R(x) & Q(x))",
      "(E x. Q(x)) | A x. E y. (Q(y) & R(x))",
      "E x. (R(x) & A y. (Q(y) | true))",
      "E x. (R(x) | A y. R(y))",
      "(A x. E y. (x != y | R(x))) & E x. R(x)",
      "(A x. A y. (x = y | true)) & E x. E y. (R(x) & R(y))",
  };
  return kSentences;
}

const std::vector<std::string>& triviality_formulas() {
  static const std::vector<std::string> kFormulas = {
      "A! x. E! y. (true | R(x))",
      "E! x. (R(x) | ~R(x))",
      "E! y. (true | R(x))",
      "A! y. R(y)",
      "A! y. false",
      "A! x. A! y. false",
      "E! x. A! y. false",
      "A! x. E! y. E! z. true",
      "true",
      "false",
      "A! x. (R(x) | ~R(x))",
      "E! y. true",
      "A! y. (R(x) | true)",
      "A! y. R(x)",
      "E! y. E! z. (true & (R(y) | true))",
      "A! y. E! z. true",
      "A! x. E! y. (E(x,y) | true)",
      "A! y. (E(x,y) | ~E(x,y))",
      "A! y. (false & R(y))",
      "E! x. true",
      "A! x. true",
      "A! x. false",
      "E! x. false",
      "A! x. A! y. (R(x) | true)",
      "E! x. A! y. (R(y) | true)",
      "A! x. E! y. (R(y) & ~R(y))",
      "A! y. ((A! z. false) | R(x))",
      "E! y. (R(x) | A! z. false)",
      "A! x. ((E! y. true) & E! y. R(y))",
      "E! x. (E(x,x) | E! y. true)",
      "A! y. E! z. (E(y,z) | true)",
  };
  return kFormulas;
}

const std::vector<std::string>& translation_sentences() {
  static const std::vector<std::string> kSentences = {
      "E! x. R(x)",
      "E! x. A! y. R(x)",
      "A! x. E! y. R(y)",
      "A! y. E! x. E(x,x)",
      "E! x. E! y. E(x,y)",
      "E! x. A! y. A! z. R(x)",
      "A! x. A! y. E! z. R(z)",
      "E! x. A! y. (R(x) | R(y))",
      "A! x. E! y. (R(y) | Q(x))",
      "E! x. (R(x) & A! y. Q(x))",
      "A! x. ((E! y. R(y)) | E! z. Q(z))",
      "(A! x. E! y. R(y)) & E! x. Q(x)",
  };
  return kSentences;
}

std::vector<Formula> parse_all(const std::vector<std::string>& texts) {
  std::vector<Formula> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse(t));
  return out;
}

std::vector<Semiring> property_semirings() {
  return {Semiring::boolean(), Semiring::s3(),       Semiring::chain(4),  Semiring::fuzzy(),
          Semiring::viterbi(), Semiring::tropical(), Semiring::lukasiewicz(), Semiring::doubt(),
          Semiring::nat(),     Semiring::nat_inf()};
}

namespace {

const char* const kVars[] = {"x", "y", "z"};

Formula random_leaf(std::mt19937_64& rng, Fragment fragment, const std::vector<std::string>& scope) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  if (scope.empty()) return pick(2) == 0 ? f_true() : f_false();
  const std::string& a = scope[pick(scope.size())];
  const std::string& b = scope[pick(scope.size())];
  const bool positive = fragment == Fragment::kSigma1Plus;
  switch (pick(7)) {
    case 0:
      return positive ? eq(a, b) : (pick(2) == 0 ? eq(a, b) : neq(a, b));
    case 1:
      return pick(2) == 0 ? f_true() : f_false();
    case 2:
    case 3:
      return positive || pick(2) == 0 ? atom("E", {a, b}) : neg_atom("E", {a, b});
    default:
      return positive || pick(2) == 0 ? atom("R", {a}) : neg_atom("R", {a});
  }
}

Formula random_body(std::mt19937_64& rng, Fragment fragment, std::vector<std::string> scope, int quantifiers,
                    int depth) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::size_t choice = depth >= 3 ? 0 : pick(quantifiers > 0 ? 4 : 3);
  if (choice == 0) return random_leaf(rng, fragment, scope);
  if (choice == 3) {
    std::string v = kVars[scope.size() % 3];
    scope.push_back(v);
    Formula body = random_body(rng, fragment, scope, quantifiers - 1, depth + 1);
    return fragment == Fragment::kPi1 ? forall(v, body) : exists(v, body);
  }
  const int left_q = quantifiers > 0 ? static_cast<int>(pick(static_cast<std::size_t>(quantifiers) + 1)) : 0;
  Formula l = random_body(rng, fragment, scope, left_q, depth + 1);
  Formula r = random_body(rng, fragment, scope, quantifiers - left_q, depth + 1);
  return choice == 1 ? conj(l, r) : disj(l, r);
}

}  // namespace

Formula random_sentence(std::mt19937_64& rng, Fragment fragment, int quantifiers) {
  const std::string v = "x";
  Formula body = random_body(rng, fragment, {v}, quantifiers - 1, 0);
  return fragment == Fragment::kPi1 ? forall(v, body) : exists(v, body);
}

void for_each_s3(const Vocabulary& vocab, std::size_t size, const std::function<bool(const Interpretation&)>& fn) {
  InterpretationSpace space(Semiring::s3(), vocab, size, {level(kS3Eps), level(kS3One)});
  space.for_each(fn);
}

std::vector<std::vector<Elem>> injections(std::size_t vars, std::size_t n) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == vars) {
      out.push_back(cur);
      return;
    }
    for (Elem e = 0; e < n; ++e) {
      bool used = false;
      for (Elem c : cur) used = used || c == e;
      if (used) continue;
      cur.push_back(e);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

std::vector<std::vector<Elem>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur;
  std::function<void(Elem)> rec = [&](Elem from) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (Elem e = from; e < n; ++e) {
      cur.push_back(e);
      rec(e + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

bool brute_force_trivial(const Formula& f, std::size_t n) {
  const std::vector<std::string> free = free_vars(f);
  const auto inst = injections(free.size(), n);
  const Evaluator ev(f, free);
  const Value one = level(kS3One);
  bool trivial = true;
  for_each_s3(vocabulary_of(f), n, [&](const Interpretation& pi) {
    for (const auto& a : inst) {
      if (ev(pi, a) != one) {
        trivial = false;
        return false;
      }
    }
    return true;
  });
  return trivial;
}

}  // namespace semfo::corpus
