#pragma once

#include <string>
#include <vector>

#include "tvb/rewrite.hpp"
#include "tvb/word.hpp"

namespace tvb {

/// Rewrites every letter in terms of sigma_1, gamma_1 and v_1..v_{n-1}:
///   sigma_i^e -> (v_{i-1}..v_1)(v_i..v_2) sigma_1^e (v_2..v_i)(v_1..v_{i-1})
///   gamma_i   -> (v_{i-1}..v_1) gamma_1 (v_1..v_{i-1})
/// The substitution is literal except for a final free reduction.
BraidWord reduce_generators(const BraidWord& w);

/// Relations of the reduced presentation on sigma_1, gamma_1, v_1..v_{n-1}
/// (virtual relations shared with the standard set), plus free cancellation.
/// Requires n >= 2.
RuleSet reduced_rules(int n);

std::vector<std::string> reduced_family_names();

/// A replayable proof chain for one lemma: the script rewrites the reduced
/// form of one side of a standard relation into the reduced form of the
/// other, using only the listed relation families.
struct LemmaScript {
  std::string name;
  std::string statement;
  std::vector<std::string> families;
  DerivationScript script;

  RuleSet replay_rules(int degree) const;
};

/// Proof chains for the standard relations that need them, at degree n:
/// bar involutivity, bar/virtual and bar/bar heights, sigma/bar heights
/// (with the inductive sigma_i gamma_1 = gamma_1 sigma_i step materialized
/// as the rel-sb-gamma1 family), the type-I twisted move, and the twisted
/// relation itself.
std::vector<LemmaScript> builtin_lemma_scripts(int n);

enum class Direction { StandardToReduced, ReducedToStandard };

struct PresentationReport {
  Direction direction;
  std::vector<std::pair<std::string, Verdict>> perRelation;
  bool allProven = false;
};

/// Direction A: every defining relation of the standard presentation,
/// rewritten by reduce_generators, is proven under the reduced rules
/// (augmented, in lemma order, with already-proven relation images).
/// Direction B: every reduced relation is proven under the standard rules.
std::pair<PresentationReport, PresentationReport> verify_presentation_equivalence(
    int n, const SearchBudget& budget);

std::string presentation_report_to_json(const PresentationReport& a,
                                        const PresentationReport& b);

}  // namespace tvb
