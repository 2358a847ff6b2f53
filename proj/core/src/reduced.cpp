#include "tvb/reduced.hpp"

#include <algorithm>
#include <future>
#include <map>

#include <nlohmann/json.hpp>

namespace tvb {

namespace {

void push_desc(std::vector<Generator>& out, int from, int to) {
  for (int k = from; k >= to; --k) out.push_back(virt(k));
}
void push_asc(std::vector<Generator>& out, int from, int to) {
  for (int k = from; k <= to; ++k) out.push_back(virt(k));
}

}  // namespace

BraidWord reduce_generators(const BraidWord& w) {
  validate_word(w);
  BraidWord out{w.degree, {}};
  for (const Generator& g : w.letters) {
    switch (g.kind) {
      case Kind::V:
        out.letters.push_back(g);
        break;
      case Kind::Gamma:
        if (g.index == 1) {
          out.letters.push_back(g);
        } else {
          push_desc(out.letters, g.index - 1, 1);
          out.letters.push_back(bar(1));
          push_asc(out.letters, 1, g.index - 1);
        }
        break;
      case Kind::Sigma:
      case Kind::SigmaInv:
        if (g.index == 1) {
          out.letters.push_back(g);
        } else {
          push_desc(out.letters, g.index - 1, 1);
          push_desc(out.letters, g.index, 2);
          out.letters.push_back({g.kind, 1});
          push_asc(out.letters, 2, g.index);
          push_asc(out.letters, 1, g.index - 1);
        }
        break;
    }
  }
  return free_reduce(out);
}

std::vector<std::string> reduced_family_names() {
  return {"free-cancel-pn", "free-cancel-np", "rel-inverse-v",  "rel-height-vv",
          "rel-vvv",        "relB-height-ss", "relB-sss",       "relB-height-sv",
          "relB-inverse-b", "relB-height-bv", "relB-height-bb", "relB-height-sb",
          "relB-bv"};
}

RuleSet reduced_rules(int n) {
  if (n < 2) throw std::invalid_argument("reduced presentation requires n >= 2");
  auto fams = reduced_family_names();
  return rules_from_families(n, fams);
}

RuleSet LemmaScript::replay_rules(int degree) const {
  return rules_from_families(degree, families);
}

namespace {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Equal: return "equal";
    case Outcome::Distinct: return "distinct";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

// Relation instances (forward orientation, relations only) of a family list.
std::vector<const RewriteRule*> forward_relations(const RuleSet& rs) {
  std::vector<const RewriteRule*> out;
  for (const RewriteRule& r : rs.rules()) {
    if (r.name.ends_with("~rev")) continue;
    if (r.origin.starts_with("free-cancel")) continue;
    out.push_back(&r);
  }
  return out;
}

template <class Fn>
std::vector<std::pair<std::string, Verdict>> run_batch(
    const std::vector<const RewriteRule*>& relations, Fn&& prove) {
  std::vector<std::future<Verdict>> futs;
  futs.reserve(relations.size());
  for (const RewriteRule* r : relations)
    futs.push_back(std::async(std::launch::async, [&prove, r] { return prove(*r); }));
  std::vector<std::pair<std::string, Verdict>> out;
  for (size_t k = 0; k < relations.size(); ++k)
    out.push_back({relations[k]->name, futs[k].get()});
  return out;
}

}  // namespace

std::pair<PresentationReport, PresentationReport> verify_presentation_equivalence(
    int n, const SearchBudget& budget) {
  if (n < 2) throw std::invalid_argument("verify_presentation_equivalence requires n >= 2");

  PresentationReport repA{Direction::StandardToReduced, {}, true};
  PresentationReport repB{Direction::ReducedToStandard, {}, true};

  // Direction A: standard relations under the reduced rules, proven in the
  // order of the lemmas; every proven relation joins the working set as a
  // derived image rule so later relations may assume it.
  const std::vector<std::string> lemmaOrder = {
      "rel-inverse-v", "rel-height-vv", "rel-vvv",       "rel-vsv",
      "rel-height-sv", "rel-height-ss", "rel-sss",       "rel-inverse-b",
      "rel-height-bv", "rel-height-bb", "rel-height-sb", "rel-bv",
      "rel-twist-III"};

  std::map<std::string, const LemmaScript*> lemmaByName;
  std::vector<LemmaScript> lemmas = builtin_lemma_scripts(n);
  for (const LemmaScript& l : lemmas) lemmaByName[l.name] = &l;

  RuleSet acc = reduced_rules(n);
  std::vector<RewriteRule> images;

  for (const std::string& family : lemmaOrder) {
    std::vector<std::string> one = {family};
    RuleSet instances = rules_from_families(n, one);
    std::vector<const RewriteRule*> relations = forward_relations(instances);

    auto prove = [&](const RewriteRule& rel) -> Verdict {
      BraidWord lhs = reduce_generators(BraidWord{n, rel.lhs});
      BraidWord rhs = reduce_generators(BraidWord{n, rel.rhs});
      auto it = lemmaByName.find("lemma:" + rel.name);
      if (it != lemmaByName.end()) {
        const LemmaScript& lemma = *it->second;
        bool matches = (lemma.script.start == lhs && lemma.script.expectedEnd == rhs) ||
                       (lemma.script.start == rhs && lemma.script.expectedEnd == lhs);
        if (matches) {
          RuleSet replay = lemma.replay_rules(n);
          VerificationReport vr = verify_derivation(lemma.script, replay);
          if (vr.accepted) {
            Verdict v;
            v.outcome = Outcome::Equal;
            v.script = lemma.script;
            v.details = "lemma script " + lemma.name;
            return v;
          }
        }
      }
      return bounded_equal(lhs, rhs, acc, budget);
    };

    auto results = run_batch(relations, prove);
    // Materialize the reduced-word images of the relations just proven, so
    // later lemmas may assume them.
    for (size_t k = 0; k < relations.size(); ++k) {
      const RewriteRule* rel = relations[k];
      Verdict& verdict = results[k].second;
      if (verdict.outcome == Outcome::Equal) {
        BraidWord lhs = reduce_generators(BraidWord{n, rel->lhs});
        BraidWord rhs = reduce_generators(BraidWord{n, rel->rhs});
        if (lhs != rhs) {
          images.push_back({"imgA:" + rel->name, lhs.letters, rhs.letters, "imgA", true});
          images.push_back(
              {"imgA:" + rel->name + "~rev", rhs.letters, lhs.letters, "imgA", true});
        }
      } else {
        repA.allProven = false;
      }
      repA.perRelation.push_back({results[k].first, std::move(verdict)});
    }
    acc = reduced_rules(n).merged_with(RuleSet(n, images));
  }

  // Direction B: reduced relations under the standard rules.
  {
    RuleSet reduced = reduced_rules(n);
    RuleSet standard = standard_rules(n);
    std::vector<const RewriteRule*> relations = forward_relations(reduced);
    auto prove = [&](const RewriteRule& rel) -> Verdict {
      return bounded_equal(BraidWord{n, rel.lhs}, BraidWord{n, rel.rhs}, standard, budget);
    };
    auto results = run_batch(relations, prove);
    for (auto& [name, verdict] : results) {
      if (verdict.outcome != Outcome::Equal) repB.allProven = false;
      repB.perRelation.push_back({name, std::move(verdict)});
    }
  }

  return {repA, repB};
}

std::string presentation_report_to_json(const PresentationReport& a,
                                        const PresentationReport& b) {
  auto render = [](const PresentationReport& rep) {
    nlohmann::ordered_json j;
    j["direction"] =
        rep.direction == Direction::StandardToReduced ? "standard=>reduced" : "reduced=>standard";
    j["allProven"] = rep.allProven;
    j["relations"] = nlohmann::ordered_json::array();
    for (const auto& [name, verdict] : rep.perRelation) {
      nlohmann::ordered_json e;
      e["name"] = name;
      e["outcome"] = outcome_name(verdict.outcome);
      if (verdict.outcome == Outcome::Equal) e["steps"] = verdict.script.steps.size();
      if (verdict.outcome == Outcome::Distinct) e["witness"] = verdict.witness;
      if (!verdict.details.empty()) e["details"] = verdict.details;
      j["relations"].push_back(e);
    }
    return j;
  };
  nlohmann::ordered_json j;
  j["standardToReduced"] = render(a);
  j["reducedToStandard"] = render(b);
  return j.dump(2);
}

}  // namespace tvb
