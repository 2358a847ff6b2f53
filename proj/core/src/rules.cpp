#include "tvb/rewrite.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tvb {

namespace {

struct Relation {
  std::string name;
  std::vector<Generator> lhs;
  std::vector<Generator> rhs;
  std::string origin;
  bool derived = false;
};

std::string at_i(int i) { return "@i=" + std::to_string(i); }
std::string at_ij(int i, int j) {
  return "@i=" + std::to_string(i) + ",j=" + std::to_string(j);
}

// v_a v_{a+1} ... v_b (empty when a > b)
std::vector<Generator> asc(int a, int b) {
  std::vector<Generator> out;
  for (int k = a; k <= b; ++k) out.push_back(virt(k));
  return out;
}
// v_b v_{b-1} ... v_a (empty when b < a)
std::vector<Generator> desc(int b, int a) {
  std::vector<Generator> out;
  for (int k = b; k >= a; --k) out.push_back(virt(k));
  return out;
}

std::vector<Generator> cat(std::initializer_list<std::vector<Generator>> parts) {
  std::vector<Generator> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

using FamilyFn = void (*)(int n, std::vector<Relation>& out);

void add(std::vector<Relation>& out, std::string name, std::vector<Generator> lhs,
         std::vector<Generator> rhs, const std::string& origin, bool derived) {
  out.push_back({std::move(name), std::move(lhs), std::move(rhs), origin, derived});
}

// ----- free cancellation (group-theoretic plumbing) -----

void fam_free_cancel_pn(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    add(out, "free-cancel-pn" + at_i(i), {sigma(i), sigma_inv(i)}, {}, "free-cancel-pn", false);
}
void fam_free_cancel_np(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    add(out, "free-cancel-np" + at_i(i), {sigma_inv(i), sigma(i)}, {}, "free-cancel-np", false);
}

// ----- defining relations of the standard presentation -----

void fam_height_ss(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 2; j <= n - 1; ++j)
      add(out, "rel-height-ss" + at_ij(i, j), {sigma(i), sigma(j)}, {sigma(j), sigma(i)},
          "rel-height-ss", false);
}
void fam_sss(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 2; ++i)
    add(out, "rel-sss" + at_i(i), {sigma(i), sigma(i + 1), sigma(i)},
        {sigma(i + 1), sigma(i), sigma(i + 1)}, "rel-sss", false);
}
void fam_inverse_v(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    add(out, "rel-inverse-v" + at_i(i), {virt(i), virt(i)}, {}, "rel-inverse-v", false);
}
void fam_height_vv(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 2; j <= n - 1; ++j)
      add(out, "rel-height-vv" + at_ij(i, j), {virt(i), virt(j)}, {virt(j), virt(i)},
          "rel-height-vv", false);
}
void fam_vvv(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 2; ++i)
    add(out, "rel-vvv" + at_i(i), {virt(i), virt(i + 1), virt(i)},
        {virt(i + 1), virt(i), virt(i + 1)}, "rel-vvv", false);
}
void fam_height_sv(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      if (j < i - 1 || j > i + 1)
        add(out, "rel-height-sv" + at_ij(i, j), {sigma(i), virt(j)}, {virt(j), sigma(i)},
            "rel-height-sv", false);
}
void fam_vsv(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 2; ++i)
    add(out, "rel-vsv" + at_i(i), {virt(i), sigma(i + 1), virt(i)},
        {virt(i + 1), sigma(i), virt(i + 1)}, "rel-vsv", false);
}
void fam_inverse_b(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n; ++i)
    add(out, "rel-inverse-b" + at_i(i), {bar(i), bar(i)}, {}, "rel-inverse-b", false);
}
void fam_height_bb(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      add(out, "rel-height-bb" + at_ij(i, j), {bar(i), bar(j)}, {bar(j), bar(i)},
          "rel-height-bb", false);
}
void fam_height_bv(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n; ++j)
      if (j != i && j != i + 1)
        add(out, "rel-height-bv" + at_ij(i, j), {bar(j), virt(i)}, {virt(i), bar(j)},
            "rel-height-bv", false);
}
void fam_height_sb(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n; ++j)
      if (j != i && j != i + 1)
        add(out, "rel-height-sb" + at_ij(i, j), {sigma(i), bar(j)}, {bar(j), sigma(i)},
            "rel-height-sb", false);
}
void fam_bv(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    add(out, "rel-bv" + at_i(i), {bar(i + 1), virt(i)}, {virt(i), bar(i)}, "rel-bv", false);
}
void fam_twist_III(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    add(out, "rel-twist-III" + at_i(i), {virt(i), sigma(i), virt(i)},
        {bar(i + 1), bar(i), sigma(i), bar(i), bar(i + 1)}, "rel-twist-III", false);
}

// ----- derived variants (consequences of the defining relations) -----

void fam_height_ss_nn(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 2; j <= n - 1; ++j)
      add(out, "rel-height-ss-nn" + at_ij(i, j), {sigma_inv(i), sigma_inv(j)},
          {sigma_inv(j), sigma_inv(i)}, "rel-height-ss-nn", true);
}
void fam_height_ss_pn(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 2; j <= n - 1; ++j)
      add(out, "rel-height-ss-pn" + at_ij(i, j), {sigma(i), sigma_inv(j)},
          {sigma_inv(j), sigma(i)}, "rel-height-ss-pn", true);
}
void fam_height_ss_np(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 2; j <= n - 1; ++j)
      add(out, "rel-height-ss-np" + at_ij(i, j), {sigma_inv(i), sigma(j)},
          {sigma(j), sigma_inv(i)}, "rel-height-ss-np", true);
}
void fam_sss_inv(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 2; ++i)
    add(out, "rel-sss-inv" + at_i(i), {sigma_inv(i), sigma_inv(i + 1), sigma_inv(i)},
        {sigma_inv(i + 1), sigma_inv(i), sigma_inv(i + 1)}, "rel-sss-inv", true);
}
void fam_height_sv_n(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      if (j < i - 1 || j > i + 1)
        add(out, "rel-height-sv-n" + at_ij(i, j), {sigma_inv(i), virt(j)},
            {virt(j), sigma_inv(i)}, "rel-height-sv-n", true);
}
void fam_vsv_n(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 2; ++i)
    add(out, "rel-vsv-n" + at_i(i), {virt(i), sigma_inv(i + 1), virt(i)},
        {virt(i + 1), sigma_inv(i), virt(i + 1)}, "rel-vsv-n", true);
}
void fam_height_sb_n(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n; ++j)
      if (j != i && j != i + 1)
        add(out, "rel-height-sb-n" + at_ij(i, j), {sigma_inv(i), bar(j)},
            {bar(j), sigma_inv(i)}, "rel-height-sb-n", true);
}
void fam_relC_vsv(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 2; ++i)
    add(out, "relC-vsv" + at_i(i), {sigma(i + 1)},
        {virt(i), virt(i + 1), sigma(i), virt(i + 1), virt(i)}, "relC-vsv", true);
}
void fam_relC_vsv_n(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 2; ++i)
    add(out, "relC-vsv-n" + at_i(i), {sigma_inv(i + 1)},
        {virt(i), virt(i + 1), sigma_inv(i), virt(i + 1), virt(i)}, "relC-vsv-n", true);
}
void fam_relC_vb(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    add(out, "relC-vb" + at_i(i), {bar(i + 1)}, {virt(i), bar(i), virt(i)}, "relC-vb", true);
}
void fam_vb(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    add(out, "rel-vb" + at_i(i), {bar(i), virt(i)}, {virt(i), bar(i + 1)}, "rel-vb", true);
}
void fam_twist_III_neg(int n, std::vector<Relation>& out) {
  for (int i = 1; i <= n - 1; ++i)
    add(out, "rel-twist-III-neg" + at_i(i), {virt(i), sigma_inv(i), virt(i)},
        {bar(i + 1), bar(i), sigma_inv(i), bar(i), bar(i + 1)}, "rel-twist-III-neg", true);
}
void fam_sb_gamma1(int n, std::vector<Relation>& out) {
  for (int i = 2; i <= n - 1; ++i)
    add(out, "rel-sb-gamma1" + at_i(i), {sigma(i), bar(1)}, {bar(1), sigma(i)},
        "rel-sb-gamma1", true);
}

// ----- relations of the reduced presentation -----

void fam_relB_height_ss(int n, std::vector<Relation>& out) {
  if (n < 4) return;
  std::vector<Generator> block =
      cat({{virt(2), virt(3), virt(1), virt(2), sigma(1), virt(2), virt(1), virt(3), virt(2)}});
  std::vector<Generator> lhs = cat({{sigma(1)}, block});
  std::vector<Generator> rhs = cat({block, {sigma(1)}});
  add(out, "relB-height-ss", std::move(lhs), std::move(rhs), "relB-height-ss", false);
}
void fam_relB_sss(int n, std::vector<Relation>& out) {
  if (n < 3) return;
  std::vector<Generator> a = {virt(1), sigma(1), virt(1)};
  std::vector<Generator> b = {virt(2), sigma(1), virt(2)};
  add(out, "relB-sss", cat({a, b, a}), cat({b, a, b}), "relB-sss", false);
}
void fam_relB_height_sv(int n, std::vector<Relation>& out) {
  for (int j = 3; j <= n - 1; ++j)
    add(out, "relB-height-sv@j=" + std::to_string(j), {sigma(1), virt(j)},
        {virt(j), sigma(1)}, "relB-height-sv", false);
}
void fam_relB_inverse_b(int n, std::vector<Relation>& out) {
  (void)n;
  add(out, "relB-inverse-b", {bar(1), bar(1)}, {}, "relB-inverse-b", false);
}
void fam_relB_height_bv(int n, std::vector<Relation>& out) {
  for (int j = 2; j <= n - 1; ++j)
    add(out, "relB-height-bv@j=" + std::to_string(j), {bar(1), virt(j)}, {virt(j), bar(1)},
        "relB-height-bv", false);
}
void fam_relB_height_bb(int n, std::vector<Relation>& out) {
  if (n < 2) return;
  add(out, "relB-height-bb", {bar(1), virt(1), bar(1), virt(1)},
      {virt(1), bar(1), virt(1), bar(1)}, "relB-height-bb", false);
}
void fam_relB_height_sb(int n, std::vector<Relation>& out) {
  if (n < 3) return;
  std::vector<Generator> c = {virt(1), virt(2), sigma(1), virt(2), virt(1)};
  add(out, "relB-height-sb", cat({{bar(1)}, c}), cat({c, {bar(1)}}), "relB-height-sb", false);
}
void fam_relB_bv(int n, std::vector<Relation>& out) {
  if (n < 2) return;
  add(out, "relB-bv", {bar(1), virt(1), bar(1), sigma(1), bar(1), virt(1), bar(1)},
      {sigma(1)}, "relB-bv", false);
}

// ----- generator elimination equations (definitions, not relations) -----

void fam_1st_reduction(int n, std::vector<Relation>& out) {
  for (int i = 2; i <= n - 1; ++i) {
    add(out, "1st-reduction" + at_i(i), {sigma(i)},
        cat({desc(i - 1, 1), desc(i, 2), {sigma(1)}, asc(2, i), asc(1, i - 1)}),
        "1st-reduction", true);
    add(out, "1st-reduction-n" + at_i(i), {sigma_inv(i)},
        cat({desc(i - 1, 1), desc(i, 2), {sigma_inv(1)}, asc(2, i), asc(1, i - 1)}),
        "1st-reduction", true);
  }
}
void fam_2nd_reduction(int n, std::vector<Relation>& out) {
  for (int i = 2; i <= n; ++i)
    add(out, "2nd-reduction" + at_i(i), {bar(i)},
        cat({desc(i - 1, 1), {bar(1)}, asc(1, i - 1)}), "2nd-reduction", true);
}

const std::map<std::string, FamilyFn>& family_registry() {
  static const std::map<std::string, FamilyFn> reg = {
      {"free-cancel-pn", fam_free_cancel_pn},
      {"free-cancel-np", fam_free_cancel_np},
      {"rel-height-ss", fam_height_ss},
      {"rel-sss", fam_sss},
      {"rel-inverse-v", fam_inverse_v},
      {"rel-height-vv", fam_height_vv},
      {"rel-vvv", fam_vvv},
      {"rel-height-sv", fam_height_sv},
      {"rel-vsv", fam_vsv},
      {"rel-inverse-b", fam_inverse_b},
      {"rel-height-bb", fam_height_bb},
      {"rel-height-bv", fam_height_bv},
      {"rel-height-sb", fam_height_sb},
      {"rel-bv", fam_bv},
      {"rel-twist-III", fam_twist_III},
      {"rel-height-ss-nn", fam_height_ss_nn},
      {"rel-height-ss-pn", fam_height_ss_pn},
      {"rel-height-ss-np", fam_height_ss_np},
      {"rel-sss-inv", fam_sss_inv},
      {"rel-height-sv-n", fam_height_sv_n},
      {"rel-vsv-n", fam_vsv_n},
      {"rel-height-sb-n", fam_height_sb_n},
      {"relC-vsv", fam_relC_vsv},
      {"relC-vsv-n", fam_relC_vsv_n},
      {"relC-vb", fam_relC_vb},
      {"rel-vb", fam_vb},
      {"rel-twist-III-neg", fam_twist_III_neg},
      {"rel-sb-gamma1", fam_sb_gamma1},
      {"relB-height-ss", fam_relB_height_ss},
      {"relB-sss", fam_relB_sss},
      {"relB-height-sv", fam_relB_height_sv},
      {"relB-inverse-b", fam_relB_inverse_b},
      {"relB-height-bv", fam_relB_height_bv},
      {"relB-height-bb", fam_relB_height_bb},
      {"relB-height-sb", fam_relB_height_sb},
      {"relB-bv", fam_relB_bv},
      {"1st-reduction", fam_1st_reduction},
      {"2nd-reduction", fam_2nd_reduction},
  };
  return reg;
}

}  // namespace

RuleSet rules_from_families(int degree, std::span<const std::string> families) {
  if (degree < 1) throw std::invalid_argument("rule set degree must be positive");
  std::vector<Relation> relations;
  std::set<std::string> seen;
  for (const std::string& f : families) {
    if (!seen.insert(f).second) continue;
    auto it = family_registry().find(f);
    if (it == family_registry().end())
      throw std::invalid_argument("unknown relation family: " + f);
    it->second(degree, relations);
  }
  std::vector<RewriteRule> rules;
  rules.reserve(relations.size() * 2);
  for (Relation& r : relations) {
    // Generator elimination equations are definitions: they expand and
    // collapse freely as search edges but must stay out of normalization,
    // which would otherwise undo every expansion.
    bool autoNorm = !(r.origin == "1st-reduction" || r.origin == "2nd-reduction");
    rules.push_back({r.name, r.lhs, r.rhs, r.origin, r.derived, autoNorm});
    rules.push_back({r.name + "~rev", r.rhs, r.lhs, r.origin, r.derived, autoNorm});
  }
  return RuleSet(degree, std::move(rules));
}

std::vector<std::string> standard_family_names(bool with_derived) {
  std::vector<std::string> fams = {
      "free-cancel-pn", "free-cancel-np",
      "rel-height-ss", "rel-sss", "rel-inverse-v", "rel-height-vv", "rel-vvv",
      "rel-height-sv", "rel-vsv", "rel-inverse-b", "rel-height-bb", "rel-height-bv",
      "rel-height-sb", "rel-bv", "rel-twist-III",
  };
  if (with_derived) {
    const char* extra[] = {"rel-height-ss-nn", "rel-height-ss-pn", "rel-height-ss-np",
                           "rel-sss-inv",      "rel-height-sv-n",  "rel-vsv-n",
                           "rel-height-sb-n",  "relC-vsv",         "relC-vsv-n",
                           "relC-vb",          "rel-vb",           "rel-twist-III-neg"};
    fams.insert(fams.end(), std::begin(extra), std::end(extra));
  }
  return fams;
}

RuleSet standard_rules(int degree, bool with_derived) {
  auto fams = standard_family_names(with_derived);
  return rules_from_families(degree, fams);
}

// ----- RuleSet -----

RuleSet::RuleSet(int degree, std::vector<RewriteRule> rules)
    : degree_(degree), rules_(std::move(rules)) {
  for (const RewriteRule& r : rules_) {
    for (const Generator& g : r.lhs)
      if (!valid_at_degree(g, degree_))
        throw std::invalid_argument("rule " + r.name + " invalid at degree " +
                                    std::to_string(degree_));
    for (const Generator& g : r.rhs)
      if (!valid_at_degree(g, degree_))
        throw std::invalid_argument("rule " + r.name + " invalid at degree " +
                                    std::to_string(degree_));
  }
  build_index();
}

namespace {
int letter_slot(Generator g) { return (g.index << 2) | static_cast<int>(g.kind); }
}  // namespace

void RuleSet::build_index() {
  std::sort(rules_.begin(), rules_.end(),
            [](const RewriteRule& a, const RewriteRule& b) { return a.name < b.name; });
  rules_.erase(std::unique(rules_.begin(), rules_.end(),
                           [](const RewriteRule& a, const RewriteRule& b) {
                             return a.name == b.name;
                           }),
               rules_.end());

  buckets_.assign((degree_ + 1) << 2, {});
  emptyLhs_.clear();
  for (int idx = 0; idx < static_cast<int>(rules_.size()); ++idx) {
    if (rules_[idx].lhs.empty())
      emptyLhs_.push_back(idx);
    else
      buckets_[letter_slot(rules_[idx].lhs.front())].push_back(idx);
  }

  reverse_.assign(rules_.size(), -1);
  for (int idx = 0; idx < static_cast<int>(rules_.size()); ++idx) {
    const std::string& name = rules_[idx].name;
    std::string twin = name.ends_with("~rev") ? name.substr(0, name.size() - 4) : name + "~rev";
    const RewriteRule* r = find(twin);
    if (r) reverse_[idx] = static_cast<int>(r - rules_.data());
  }
}

const RewriteRule* RuleSet::find(std::string_view name) const {
  auto it = std::lower_bound(rules_.begin(), rules_.end(), name,
                             [](const RewriteRule& r, std::string_view n) { return r.name < n; });
  if (it != rules_.end() && it->name == name) return &*it;
  return nullptr;
}

const RewriteRule& RuleSet::at(std::string_view name) const {
  const RewriteRule* r = find(name);
  if (!r) throw std::invalid_argument("no such rule: " + std::string(name));
  return *r;
}

std::span<const int> RuleSet::candidates(Generator first) const {
  int slot = letter_slot(first);
  if (slot < 0 || slot >= static_cast<int>(buckets_.size())) return {};
  return buckets_[slot];
}

std::span<const int> RuleSet::empty_lhs() const { return emptyLhs_; }

int RuleSet::reverse_index(int ruleIndex) const {
  int r = reverse_.at(ruleIndex);
  if (r < 0)
    throw std::logic_error("rule " + rules_[ruleIndex].name + " has no reverse in the set");
  return r;
}

RuleSet RuleSet::without_family(std::string_view familyTag) const {
  std::vector<RewriteRule> keep;
  for (const RewriteRule& r : rules_)
    if (r.origin != familyTag) keep.push_back(r);
  return RuleSet(degree_, std::move(keep));
}

RuleSet RuleSet::merged_with(const RuleSet& other) const {
  if (degree_ != other.degree_)
    throw std::invalid_argument("cannot merge rule sets of different degree");
  std::vector<RewriteRule> all = rules_;
  all.insert(all.end(), other.rules_.begin(), other.rules_.end());
  return RuleSet(degree_, std::move(all));
}

// ----- rule application -----

bool rule_matches(const BraidWord& w, int pos, const RewriteRule& rule) {
  if (pos < 1) return false;
  size_t at = static_cast<size_t>(pos - 1);
  if (at + rule.lhs.size() > w.letters.size() + (rule.lhs.empty() ? 1 : 0)) return false;
  if (rule.lhs.empty()) return at <= w.letters.size();
  if (at + rule.lhs.size() > w.letters.size()) return false;
  return std::equal(rule.lhs.begin(), rule.lhs.end(), w.letters.begin() + at);
}

BraidWord apply_rule(const BraidWord& w, int pos, const RewriteRule& rule) {
  if (!rule_matches(w, pos, rule))
    throw std::invalid_argument("rule " + rule.name + " does not match at position " +
                                std::to_string(pos));
  BraidWord out{w.degree, {}};
  size_t at = static_cast<size_t>(pos - 1);
  out.letters.reserve(w.letters.size() - rule.lhs.size() + rule.rhs.size());
  out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + at);
  out.letters.insert(out.letters.end(), rule.rhs.begin(), rule.rhs.end());
  out.letters.insert(out.letters.end(), w.letters.begin() + at + rule.lhs.size(),
                     w.letters.end());
  return out;
}

}  // namespace tvb
