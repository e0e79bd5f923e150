// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: eval, strategies, provenance, check, trivial,
// rewrite, entail and repro.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "semfo/error.h"
#include "semfo/eval.h"
#include "semfo/formula.h"
#include "semfo/homomorphism.h"
#include "semfo/interpretation.h"
#include "semfo/lattice.h"
#include "semfo/preservation.h"
#include "semfo/provenance.h"
#include "semfo/semiring.h"
#include "semfo/strategy.h"

namespace {

using namespace semfo;

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::uint64_t guard = 1000000;
  bool quiet = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<Value> parse_grid(const Semiring& s, const std::string& text) {
  std::vector<Value> out;
  for (const auto& w : split(text, ',')) out.push_back(s.parse_value(w));
  return out;
}

// "1..3" or "1,2,3".
std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    std::size_t lo = std::stoul(text.substr(0, dots));
    std::size_t hi = std::stoul(text.substr(dots + 2));
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  for (const auto& w : split(text, ',')) out.push_back(std::stoul(w));
  return out;
}

std::vector<Formula> load_sentences(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<Formula> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_sentence(line));
  }
  return out;
}

std::map<std::string, Elem> parse_assignment(const Interpretation& pi, const std::string& text) {
  std::map<std::string, Elem> out;
  for (const auto& w : split(text, ',')) {
    auto eq = w.find('=');
    if (eq == std::string::npos) throw Error("expected var=element in '" + w + "'");
    out[w.substr(0, eq)] = pi.element(w.substr(eq + 1));
  }
  return out;
}

Value identify_variables(const Value& p) {
  auto rename = [](Var v) { return v.negated() ? Var::negative("x") : Var::positive("x"); };
  if (const auto* np = std::get_if<NatPoly>(&p)) return rename_variables(*np, rename);
  return rename_variables(std::get<AbsorptivePoly>(p), rename);
}

std::string format_poly(const Value& p) {
  if (const auto* np = std::get_if<NatPoly>(&p)) return np->to_string();
  return std::get<AbsorptivePoly>(p).to_string();
}

// ---------------------------------------------------------------------------
// Reproduction scripts. Each prints its values and ends with PASS or FAIL.

struct Repro {
  std::string name;
  std::string summary;
  std::function<bool(std::ostream&, const Globals&, std::size_t)> run;
};

bool expect(std::ostream& out, const std::string& what, const std::string& got, const std::string& want) {
  out << what << " = " << got;
  if (got != want) out << " (expected " << want << ")";
  out << "\n";
  return got == want;
}

bool repro_viterbi_extension(std::ostream& out, const Globals&, std::size_t) {
  const Semiring v = Semiring::viterbi();
  const Formula psi = parse_sentence("E x. A y. R(x)");
  Interpretation p1 = Interpretation::parse("semiring: viterbi\nuniverse: a\nR(a) = 1/2\n");
  Interpretation p2 = Interpretation::parse("semiring: viterbi\nuniverse: a b\nR(a) = 1/2\nR(b) = 1/2\n");
  bool ok = is_subinterpretation(p1, p2);
  out << "pi1 is a subinterpretation of pi2: " << (ok ? "yes" : "no") << "\n";
  ok &= expect(out, "pi1[E x. A y. R(x)]", v.format(eval(p1, psi)), "1/2");
  ok &= expect(out, "pi2[E x. A y. R(x)]", v.format(eval(p2, psi)), "1/4");
  PreservationOptions po;
  po.max_size = 2;
  po.grid = parse_grid(v, "0,1/4,1/2,1");
  PreservationVerdict verdict = check_preservation(psi, v, Property::kExtensions, po);
  ok &= verdict.refuted && verdict.witness && verdict.witness->a.size() == 1 && verdict.witness->b.size() == 2;
  out << verdict.to_string(v);
  return ok;
}

bool repro_nat_polynomial(std::ostream& out, const Globals&, std::size_t n) {
  const Formula psi = parse_sentence("E x. A y. R(x)");
  bool ok = true;
  std::vector<std::size_t> ns;
  if (n) {
    ns.push_back(n);
  } else {
    for (std::size_t k = 1; k <= 5; ++k) ns.push_back(k);
  }
  for (std::size_t k : ns) {
    Value p = identify_variables(canonical_polynomial(psi, k, PolyFlavor::kNat));
    std::string want = k == 1 ? "x" : std::to_string(k) + "*x^" + std::to_string(k);
    ok &= expect(out, "pi_" + std::to_string(k) + "[E x. A y. R(x)] identified", format_poly(p), want);
  }
  return ok;
}

bool repro_nat_degree(std::ostream& out, const Globals&, std::size_t) {
  const Formula phi = parse_sentence("E x. E y. (R(x) & R(y))");
  bool ok = true;
  for (std::size_t k = 1; k <= 5; ++k) {
    std::uint64_t d = degree(canonical_polynomial(phi, k, PolyFlavor::kNat));
    ok &= expect(out, "deg pi_" + std::to_string(k) + "[E x. E y. (R(x) & R(y))]", std::to_string(d), "2");
  }
  return ok;
}

bool repro_fuzzy_rewrite(std::ostream& out, const Globals& g, std::size_t) {
  RewriteOptions ro;
  ro.seed = g.seed;
  ro.guard = g.guard;
  bool ok = true;
  for (const char* text : {"A y. E z. R(z)", "A y. (E z. R(z) | E z. (R(z) & Q(y)))"}) {
    RewriteReport rep = rewrite_sigma1_lattice(parse_sentence(text), ro);
    out << text << " -> " << (rep.output ? render(rep.output) : "none") << " ("
        << (rep.verification.passed ? "verified" : "verification failed") << ")\n";
    ok &= rep.ok() && render(rep.output) == "E z. R(z)";
  }
  return ok;
}

bool repro_s3_reduction(std::ostream& out, const Globals& g, std::size_t) {
  S3Check c = s3_equivalence({parse_sentence("E x. x = x")}, {parse_sentence("E x. (R(x) | ~R(x))")}, {1}, g.guard);
  const Semiring s3 = Semiring::s3();
  out << "E x. x = x vs E x. (R(x) | ~R(x)) over S3, size 1: " << (c.holds ? "equivalent" : "refuted") << "\n";
  if (c.witness) {
    out << c.witness->to_string();
    out << "values: " << s3.format(*c.phi_value) << " vs " << s3.format(*c.psi_value) << "\n";
  }
  return !c.holds && c.psi_value && s3.format(*c.psi_value) == "eps";
}

bool repro_triviality(std::ostream& out, const Globals&, std::size_t) {
  const Formula a = parse("A! x. E! y. (true | R(x))");
  const Formula b = parse("E! x. (R(x) | ~R(x))");
  bool ok = true;
  for (std::size_t n = 1; n <= 4; ++n) {
    ok &= expect(out, "trivial(" + render(a) + ", " + std::to_string(n) + ")", is_trivial_at(a, n) ? "yes" : "no",
                 n >= 2 ? "yes" : "no");
    ok &= expect(out, "trivial(" + render(b) + ", " + std::to_string(n) + ")", is_trivial_at(b, n) ? "yes" : "no",
                 "no");
  }
  return ok;
}

bool repro_redundancy(std::ostream& out, const Globals&, std::size_t) {
  Interpretation pi = Interpretation::parse("semiring: viterbi\nuniverse: a b\nR(a) = 1/2\nR(b) = 1/2\n");
  bool ok = true;
  ClassOptimum dis = has_existential_optimal(pi, parse_sentence("(A! x. R(x)) | E! x. R(x)"));
  ok &= expect(out, "existential optimal for (A! x. R(x)) | E! x. R(x)", dis.found ? "yes" : "no", "yes");
  ClassOptimum con = has_existential_optimal(pi, parse_sentence("(A! x. R(x)) & E! x. R(x)"));
  ok &= expect(out, "existential optimal for (A! x. R(x)) & E! x. R(x)", con.found ? "yes" : "no", "no");
  Interpretation pi3 =
      Interpretation::parse("semiring: viterbi\nuniverse: a b c\nR(a) = 1/2\nR(b) = 1/4\nR(c) = 1/2\n");
  const Formula f = parse_sentence("A! y. E! z. R(z)");
  ok &= expect(out, "existential optimal for A! y. E! z. R(z)", has_existential_optimal(pi3, f).found ? "yes" : "no",
               "no");
  ok &= expect(out, "almost existential optimal for A! y. E! z. R(z)",
               has_almost_existential_optimal(pi3, f).found ? "yes" : "no", "yes");
  return ok;
}

bool repro_lattice_lifting(std::ostream& out, const Globals&, std::size_t) {
  const Semiring l = Semiring::lattice(std::make_shared<FiniteLattice>(FiniteLattice::parse(
                                           "elements: 0 p q 1\nleq: 0 p\nleq: p q\nleq: q 1\n")),
                                       "chain4");
  const Formula phi = parse_sentence("A x. (R(x) | ~R(x))");
  PreservationOptions po;
  po.max_size = 2;
  PreservationVerdict v = check_preservation(phi, l, Property::kExtensions, po);
  if (!v.refuted) {
    out << "no counterexample over the 4-chain\n";
    return false;
  }
  out << "4-chain counterexample:\n" << v.to_string(l);
  S3Lift lift = lift_counterexample_to_s3(l, v.witness->a, v.witness->b, {phi});
  const Semiring s3 = Semiring::s3();
  out << "homomorphism: " << lift.hom.name() << "\n";
  out << "S3 pair:\n" << lift.a.to_string() << lift.b.to_string();
  out << "values: " << s3.format(lift.value_a) << " > " << s3.format(lift.value_b) << "\n";
  return s3.less(lift.value_b, lift.value_a);
}

const std::vector<Repro>& repros() {
  static const std::vector<Repro> all = {
      {"viterbi-extension", "E x. A y. R(x) is not extension preserved over Viterbi", repro_viterbi_extension},
      {"nat-polynomial", "pi_n[E x. A y. R(x)] is n*x^n after identifying variables", repro_nat_polynomial},
      {"nat-degree", "the degree of pi_n[E x. E y. (R(x) & R(y))] does not grow", repro_nat_degree},
      {"fuzzy-rewrite", "lattice rewrites of the two universal examples", repro_fuzzy_rewrite},
      {"s3-reduction", "E x. x = x and E x. (R(x) | ~R(x)) differ over S3", repro_s3_reduction},
      {"triviality", "trivial from size 2 on, and never trivial", repro_triviality},
      {"redundancy", "existential and almost existential optimal strategies", repro_redundancy},
      {"lattice-lifting", "a 4-chain counterexample lifted to S3", repro_lattice_lifting},
  };
  return all;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Semiring semantics for first-order logic"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--guard", g.guard, "Limit for exhaustive enumerations");
  app.add_flag("--quiet", g.quiet, "Print only the result line");

  std::string semiring_id;
  std::string interp_path;
  std::string formula_text;
  std::string assignment_text;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on an interpretation");
  eval_cmd->add_option("--interp", interp_path, "Interpretation file")->required();
  eval_cmd->add_option("--formula", formula_text, "Formula")->required();
  eval_cmd->add_option("--semiring", semiring_id, "Override the semiring of the file");
  eval_cmd->add_option("--assign", assignment_text, "Free variables, e.g. x=a,y=b");

  bool list_all = false;
  bool show_optimal = false;
  bool classify_all = false;
  std::size_t strat_n = 0;
  auto* strat_cmd = app.add_subcommand("strategies", "Strategies, optimal strategies and their classes");
  strat_cmd->add_option("--formula", formula_text, "Sentence")->required();
  strat_cmd->add_option("--n", strat_n, "Universe size when no interpretation is given")->check(CLI::PositiveNumber);
  strat_cmd->add_option("--interp", interp_path, "Interpretation file");
  strat_cmd->add_option("--semiring", semiring_id, "Override the semiring of the file");
  strat_cmd->add_flag("--list", list_all, "Print every strategy");
  auto* optimal_opt = strat_cmd->add_flag("--optimal", show_optimal, "Print an optimal strategy");
  strat_cmd->add_flag("--classify", classify_all, "Count the strategies of each class");

  std::size_t poly_n = 1;
  bool poly_nat = false;
  bool poly_identify = false;
  auto* prov_cmd = app.add_subcommand("provenance", "Canonical polynomial of a sentence");
  prov_cmd->add_option("--formula", formula_text, "Sentence")->required();
  prov_cmd->add_option("--n", poly_n, "Universe size")->check(CLI::PositiveNumber);
  prov_cmd->add_flag("--nat", poly_nat, "Use N[X] instead of the absorptive polynomials");
  prov_cmd->add_option("--semiring", semiring_id, "natpoly or spoly (the default)")
      ->check(CLI::IsMember({"natpoly", "spoly"}));
  prov_cmd->add_flag("--identify", poly_identify, "Map every positive variable to x and negative one to ~x");

  std::string property_text = "extensions";
  std::size_t min_size = 1;
  std::size_t max_size = 3;
  std::string grid_text;
  std::uint64_t samples = 0;
  bool no_minimize = false;
  auto* check_cmd = app.add_subcommand("check", "Search for a preservation counterexample");
  check_cmd->add_option("--property", property_text, "extensions, subints or homs");
  check_cmd->add_option("--semiring", semiring_id, "Semiring id")->required();
  check_cmd->add_option("--formula", formula_text, "Sentence")->required();
  check_cmd->add_option("--min-size", min_size, "Smallest universe");
  check_cmd->add_option("--max-size", max_size, "Largest universe");
  check_cmd->add_option("--grid", grid_text, "Comma separated values, e.g. 0,1/4,1/2,1");
  check_cmd->add_option("--samples", samples, "Random trials when the space exceeds the guard");
  check_cmd->add_flag("--no-minimize", no_minimize, "Keep the first witness found");

  std::size_t trivial_n = 0;
  bool probe = false;
  auto* trivial_cmd = app.add_subcommand("trivial", "Triviality of an FO≠ formula");
  trivial_cmd->add_option("--formula", formula_text, "FO≠ formula")->required();
  auto* n_opt = trivial_cmd->add_option("--n", trivial_n, "Universe size");
  auto* probe_opt = trivial_cmd->add_flag("--probe", probe, "Decide eventual triviality by probing");
  n_opt->excludes(probe_opt);

  std::string mode = "strict";
  std::size_t exhaustive_max = 3;
  std::size_t sampled_max = 5;
  std::uint64_t verify_samples = 1000;
  auto* rewrite_cmd = app.add_subcommand("rewrite", "Rewrite a sentence into the existential fragment");
  rewrite_cmd->add_option("--mode", mode, "strict or lattice")->check(CLI::IsMember({"strict", "lattice"}));
  rewrite_cmd->add_option("--formula", formula_text, "Sentence")->required();
  rewrite_cmd->add_option("--semiring", semiring_id, "viterbi, tropical, lukasiewicz or doubt (strict mode)");
  rewrite_cmd->add_option("--exhaustive-max", exhaustive_max, "Largest exhaustively verified size");
  rewrite_cmd->add_option("--sampled-max", sampled_max, "Largest sampled size");
  rewrite_cmd->add_option("--samples", verify_samples, "Random verification interpretations");

  std::string phi_path;
  std::string psi_path;
  std::string sizes_text = "1..3";
  bool equivalence = false;
  auto* entail_cmd = app.add_subcommand("entail", "Bounded entailment check between sentence sets");
  entail_cmd->add_option("--semiring", semiring_id, "s3, or any semiring with a default grid")->required();
  entail_cmd->add_option("--phi", phi_path, "File with one sentence per line")->required();
  entail_cmd->add_option("--psi", psi_path, "File with one sentence per line")->required();
  entail_cmd->add_option("--sizes", sizes_text, "Sizes, e.g. 1..3");
  entail_cmd->add_flag("--equivalence", equivalence, "Check both directions");

  std::string repro_name;
  std::size_t repro_n = 0;
  bool repro_list = false;
  auto* repro_cmd = app.add_subcommand("repro", "Replay a worked example");
  repro_cmd->add_option("name", repro_name, "Example name");
  repro_cmd->add_option("--n", repro_n, "Universe size for nat-polynomial");
  repro_cmd->add_flag("--list", repro_list, "List the examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::ostream& out = std::cout;
  auto semiring_override = [&]() -> std::optional<Semiring> {
    if (semiring_id.empty()) return std::nullopt;
    return Semiring::from_id(semiring_id);
  };

  try {
    if (*eval_cmd) {
      Interpretation pi = Interpretation::load(interp_path, semiring_override());
      pi.require_valid();
      Formula f = parse(formula_text);
      Value v = eval(pi, f, parse_assignment(pi, assignment_text));
      out << pi.semiring().format(v) << "\n";
      return kOk;
    }
    if (*strat_cmd) {
      Formula f = parse_sentence(formula_text);
      if (interp_path.empty()) {
        if (strat_n == 0) throw Error("strategies needs --interp or --n");
        if (show_optimal) throw Error("--optimal needs --interp");
        GameTree tree(f, strat_n);
        out << "strategies: " << tree.strategy_count() << "\n";
        std::map<std::string, std::uint64_t> classes;
        for (const auto& t : enumerate_strategies(tree, g.guard)) {
          const std::string cls = to_string(classify(t).cls);
          ++classes[cls];
          if (list_all && !g.quiet) out << cls << "\n" << t.to_string();
        }
        if (classify_all) {
          for (const auto& [cls, count] : classes) out << cls << ": " << count << "\n";
        }
        return kOk;
      }
      Interpretation pi = Interpretation::load(interp_path, semiring_override());
      pi.require_valid();
      if (strat_n != 0 && strat_n != pi.size()) throw Error("--n differs from the universe size of the interpretation");
      const Semiring& s = pi.semiring();
      GameTree tree(f, pi.size());
      SumOfStrategiesReport sum = sum_of_strategies_check(pi, f, g.guard);
      out << "eval: " << s.format(sum.eval_value) << "\n";
      out << "strategies: " << sum.strategies << "\n";
      out << "sum of strategies: " << s.format(sum.strategy_sum) << (sum.ok ? " (equal)" : " (DIFFERENT)") << "\n";
      if ((list_all || classify_all) && !g.quiet) {
        std::map<std::string, std::uint64_t> classes;
        for (const auto& t : enumerate_strategies(tree, g.guard)) {
          const std::string cls = to_string(classify(t).cls);
          ++classes[cls];
          if (list_all) out << s.format(eval_strategy(pi, t)) << " " << cls << "\n" << t.to_string();
        }
        if (classify_all) {
          for (const auto& [cls, count] : classes) out << cls << ": " << count << "\n";
        }
      }
      if (s.flags().additively_idempotent && s.flags().linearly_ordered) {
        OptimalResult opt = optimal(pi, tree);
        out << "optimal: " << s.format(opt.value) << " (" << opt.tie_count.get_str() << " optimal strategies)\n";
        if (opt.strategy && !g.quiet) out << opt.strategy->to_string();
        if (is_foneq(f) || flavor(f) == Flavor::kNone) {
          ClassOptimum ex = has_existential_optimal(pi, f);
          ClassOptimum ae = has_almost_existential_optimal(pi, f);
          out << "existential optimal: " << (ex.found ? "yes" : "no") << "\n";
          out << "almost existential optimal: " << (ae.found ? "yes" : "no") << "\n";
        }
      } else if (*optimal_opt) {
        throw Error("optimal strategies need an additively idempotent, linearly ordered semiring");
      }
      return sum.ok ? kOk : kRefuted;
    }
    if (*prov_cmd) {
      Formula f = parse_sentence(formula_text);
      const bool nat = poly_nat || semiring_id == "natpoly";
      Value p = canonical_polynomial(f, poly_n, nat ? PolyFlavor::kNat : PolyFlavor::kAbsorptive);
      if (poly_identify) p = identify_variables(p);
      out << format_poly(p) << "\n";
      if (!g.quiet) out << "degree: " << degree(p) << "\n";
      return kOk;
    }
    if (*check_cmd) {
      const Semiring s = Semiring::from_id(semiring_id);
      PreservationOptions po;
      po.min_size = min_size;
      po.max_size = max_size;
      if (!grid_text.empty()) po.grid = parse_grid(s, grid_text);
      po.guard = g.guard;
      po.samples = samples;
      po.seed = g.seed;
      po.minimize = !no_minimize;
      PreservationVerdict v = check_preservation(parse_sentence(formula_text), s, parse_property(property_text), po);
      if (g.quiet) {
        out << (v.refuted ? "refuted" : "holds_on_search_space") << "\n";
      } else {
        out << v.to_string(s);
      }
      return v.refuted ? kRefuted : kOk;
    }
    if (*trivial_cmd) {
      Formula f = parse(formula_text);
      if (probe || trivial_n == 0) {
        TrivialityReport rep = is_eventually_trivial(f);
        out << (g.quiet ? to_string(rep.verdict) + "\n" : rep.to_string());
        return rep.verdict == Triviality::kUnstable ? kRefuted : kOk;
      }
      out << (is_trivial_at(f, trivial_n) ? "trivial" : "non_trivial") << "\n";
      return kOk;
    }
    if (*rewrite_cmd) {
      RewriteOptions ro;
      ro.seed = g.seed;
      ro.guard = g.guard;
      ro.exhaustive_max = exhaustive_max;
      ro.sampled_max = sampled_max;
      ro.samples = verify_samples;
      Formula f = parse_sentence(formula_text);
      RewriteReport rep;
      Semiring report_semiring = Semiring::s3();
      if (mode == "strict") {
        report_semiring = Semiring::from_id(semiring_id.empty() ? "viterbi" : semiring_id);
        rep = rewrite_sigma1_strict(f, report_semiring, ro);
      } else {
        rep = rewrite_sigma1_lattice(f, ro);
      }
      out << (rep.output ? render(rep.output) : "none") << "\n";
      if (!g.quiet) out << rep.to_string(report_semiring);
      return rep.ok() ? kOk : kRefuted;
    }
    if (*entail_cmd) {
      const Semiring s = Semiring::from_id(semiring_id);
      auto phi = load_sentences(phi_path);
      auto psi = load_sentences(psi_path);
      auto sizes = parse_sizes(sizes_text);
      if (s.kind() == SemiringKind::kS3) {
        S3Check c = equivalence ? s3_equivalence(phi, psi, sizes, g.guard) : s3_entailment(phi, psi, sizes, g.guard);
        out << (c.holds ? "consistent_with_entailment" : "refuted") << " (" << c.checked << " interpretations)\n";
        if (c.witness && !g.quiet) {
          out << c.witness->to_string();
          out << "values: Phi = " << s.format(*c.phi_value) << ", Psi = " << s.format(*c.psi_value) << "\n";
        }
        return c.holds ? kOk : kRefuted;
      }
      SearchOptions so{g.guard, 0, g.seed};
      bool holds = true;
      std::uint64_t checked = 0;
      for (std::size_t n : sizes) {
        for (int dir = 0; dir < (equivalence ? 2 : 1) && holds; ++dir) {
          EntailmentResult r = dir == 0 ? entails_at(phi, psi, s, n, s.default_grid(), so)
                                        : entails_at(psi, phi, s, n, s.default_grid(), so);
          checked += r.checked;
          if (!r.holds) {
            holds = false;
            out << "refuted at size " << n << "\n";
            if (!g.quiet) {
              out << r.witness->to_string();
              out << "values: " << s.format(*r.phi_value) << " vs " << s.format(*r.psi_value) << "\n";
            }
          }
        }
      }
      if (holds) out << "consistent_with_entailment (" << checked << " interpretations)\n";
      return holds ? kOk : kRefuted;
    }
    if (*repro_cmd) {
      if (repro_list || repro_name.empty()) {
        for (const auto& r : repros()) out << r.name << ": " << r.summary << "\n";
        return repro_list ? kOk : kUsage;
      }
      for (const auto& r : repros()) {
        if (r.name != repro_name) continue;
        std::ostringstream body;
        bool ok = r.run(body, g, repro_n);
        if (!g.quiet) out << body.str();
        out << (ok ? "PASS" : "FAIL") << "\n";
        return ok ? kOk : kRefuted;
      }
      std::cerr << "unknown example '" << repro_name << "'; see repro --list\n";
      return kUsage;
    }
  } catch (const GuardExceeded& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
