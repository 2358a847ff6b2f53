#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tvb/word.hpp"

namespace tvb {

/// One oriented rewrite rule: replace lhs by rhs. Every relation is
/// instantiated in both orientations; the reverse of "name" is "name~rev".
struct RewriteRule {
  std::string name;
  std::vector<Generator> lhs;
  std::vector<Generator> rhs;
  std::string origin;    // relation family tag
  bool derived = false;  // consequence of the defining relations, not one of them
  bool autoNorm = true;  // may participate in state normalization
};

/// Degree-specific set of rewrite rules, closed under orientation reversal.
/// Rules are kept sorted by name; iteration order is deterministic.
class RuleSet {
 public:
  RuleSet(int degree, std::vector<RewriteRule> rules);

  int degree() const { return degree_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  const RewriteRule* find(std::string_view name) const;
  const RewriteRule& at(std::string_view name) const;

  /// Rule indices whose lhs begins with the given letter (insertion rules
  /// with empty lhs are excluded; see empty_lhs()).
  std::span<const int> candidates(Generator first) const;
  std::span<const int> empty_lhs() const;

  /// Index into rules() of the reverse-orientation twin.
  int reverse_index(int ruleIndex) const;

  RuleSet without_family(std::string_view familyTag) const;
  RuleSet merged_with(const RuleSet& other) const;

 private:
  void build_index();

  int degree_;
  std::vector<RewriteRule> rules_;
  std::vector<std::vector<int>> buckets_;  // by first lhs letter
  std::vector<int> emptyLhs_;
  std::vector<int> reverse_;
};

/// Families of the standard presentation: relations (defining and derived
/// variants) of the twisted virtual braid group on sigma_i, v_i, gamma_i.
/// Derived families are sign/inversion variants and the short equivalent
/// forms gamma_{i+1} = v_i gamma_i v_i, sigma_{i+1} = v_i v_{i+1} sigma_i
/// v_{i+1} v_i, gamma_i v_i = v_i gamma_{i+1} and the negative twist form.
RuleSet standard_rules(int degree, bool with_derived = true);

/// Instantiates the named relation families at the given degree.
/// Unknown family names throw.
RuleSet rules_from_families(int degree, std::span<const std::string> families);

std::vector<std::string> standard_family_names(bool with_derived = true);

/// Replaces the occurrence of rule.lhs at 1-based letter position pos.
BraidWord apply_rule(const BraidWord& w, int pos, const RewriteRule& rule);

/// True if rule.lhs occurs at 1-based position pos.
bool rule_matches(const BraidWord& w, int pos, const RewriteRule& rule);

/// Replayable rewriting proof: apply steps[k].rule at steps[k].pos in order,
/// starting from start; the result must equal expectedEnd exactly.
struct DerivationScript {
  struct Step {
    int pos = 1;  // 1-based letter offset
    std::string rule;
    friend bool operator==(const Step&, const Step&) = default;
  };
  BraidWord start;
  std::vector<Step> steps;
  BraidWord expectedEnd;

  friend bool operator==(const DerivationScript&, const DerivationScript&) = default;
};

struct VerificationReport {
  bool accepted = false;
  size_t failedStep = 0;    // 1-based index of the first failing step; 0 if none
  std::string message;
  BraidWord finalWord;
};

/// Strict replay: no implicit normalization; every free-reduction step must
/// appear as an explicit rule application.
VerificationReport verify_derivation(const DerivationScript& script, const RuleSet& rules);

/// Line-oriented script file:
///   first line: the start word, e.g. "n=3; v1 t1 v1 v1 t1 v1"
///   then one "@<pos> <ruleName>" line per step
///   last line: "=> <expected word>"
DerivationScript parse_script(std::string_view text);
std::string format_script(const DerivationScript& script);

struct SearchBudget {
  int maxDepth = 16;
  int maxWordLength = 64;
  std::uint64_t maxStates = 200000;

  void validate() const;
};

enum class Outcome { Equal, Distinct, Unknown };

/// Result of a bounded equality search. Equal carries a script accepted by
/// verify_derivation; Distinct names a separating invariant; Unknown means
/// the budget ran out first.
struct Verdict {
  Outcome outcome = Outcome::Unknown;
  DerivationScript script;   // set when outcome == Equal
  std::string witness;       // set when outcome == Distinct
  std::string details;
  std::uint64_t statesExplored = 0;
};

/// Semi-decision procedure for equality in the group presented by `rules`.
/// Checks the signed-permutation and abelian quotients first, then runs a
/// bidirectional search over rewriting with canonicalizing normalization.
Verdict bounded_equal(const BraidWord& a, const BraidWord& b, const RuleSet& rules,
                      const SearchBudget& budget);

/// Deterministic canonicalization used for search states: free cancellation,
/// length-reducing rules, and order-sorting commutation swaps from the rule
/// set, applied greedily leftmost-first. If trace is non-null, each applied
/// step is appended as a (1-based pos, rule name) script step.
BraidWord normalize(const BraidWord& w, const RuleSet& rules,
                    std::vector<DerivationScript::Step>* trace = nullptr);

}  // namespace tvb
