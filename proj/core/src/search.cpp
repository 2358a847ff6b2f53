#include <algorithm>
#include <cstdint>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "tvb/quotients.hpp"
#include "tvb/rewrite.hpp"

namespace tvb {

void SearchBudget::validate() const {
  if (maxDepth < 1 || maxWordLength < 1 || maxStates < 1)
    throw std::invalid_argument("search budget values must be positive");
}

namespace {

// Canonical order used by sorting swaps: bars, then virtual letters, then
// sigma letters; ties broken by strand index.
int class_rank(Kind k) {
  switch (k) {
    case Kind::Gamma: return 0;
    case Kind::V: return 1;
    case Kind::Sigma:
    case Kind::SigmaInv: return 2;
  }
  return 3;
}

std::pair<int, int> sort_key(Generator g) { return {class_rank(g.kind), g.index}; }

enum class AutoKind : std::uint8_t { None, Shrink, OrderSwap };

// A rule participates in normalization when it strictly shortens the word
// or when it is an index-preserving transposition toward canonical order.
AutoKind classify(const RewriteRule& r) {
  if (!r.autoNorm || r.lhs.empty()) return AutoKind::None;
  if (r.rhs.size() < r.lhs.size()) return AutoKind::Shrink;
  if (r.lhs.size() == 2 && r.rhs.size() == 2 && r.rhs[0] == r.lhs[1] && r.rhs[1] == r.lhs[0] &&
      sort_key(r.lhs[1]) < sort_key(r.lhs[0]))
    return AutoKind::OrderSwap;
  return AutoKind::None;
}

struct AutoIndex {
  std::vector<std::vector<int>> shrink;  // bucketed by first lhs letter slot
  std::vector<std::vector<int>> swap;
  size_t maxShrinkLhs = 1;
};

int letter_slot(Generator g) { return (g.index << 2) | static_cast<int>(g.kind); }

AutoIndex build_auto_index(const RuleSet& rules) {
  AutoIndex ai;
  ai.shrink.assign((rules.degree() + 1) << 2, {});
  ai.swap.assign((rules.degree() + 1) << 2, {});
  for (int idx = 0; idx < static_cast<int>(rules.rules().size()); ++idx) {
    const RewriteRule& r = rules.rules()[idx];
    switch (classify(r)) {
      case AutoKind::Shrink:
        ai.shrink[letter_slot(r.lhs.front())].push_back(idx);
        ai.maxShrinkLhs = std::max(ai.maxShrinkLhs, r.lhs.size());
        break;
      case AutoKind::OrderSwap:
        ai.swap[letter_slot(r.lhs.front())].push_back(idx);
        break;
      case AutoKind::None:
        break;
    }
  }
  return ai;
}

bool matches_at(const std::vector<Generator>& letters, size_t at,
                const std::vector<Generator>& lhs) {
  if (at + lhs.size() > letters.size()) return false;
  return std::equal(lhs.begin(), lhs.end(), letters.begin() + at);
}

// Applies the leftmost match from the bucket table, scanning from fromPos.
// Returns the position applied at, or -1.
int apply_first(BraidWord& w, const RuleSet& rules, const std::vector<std::vector<int>>& table,
                size_t fromPos, std::vector<DerivationScript::Step>* trace) {
  for (size_t p = fromPos; p < w.letters.size(); ++p) {
    for (int idx : table[letter_slot(w.letters[p])]) {
      const RewriteRule& r = rules.rules()[idx];
      if (!matches_at(w.letters, p, r.lhs)) continue;
      BraidWord next{w.degree, {}};
      next.letters.reserve(w.letters.size() - r.lhs.size() + r.rhs.size());
      next.letters.insert(next.letters.end(), w.letters.begin(), w.letters.begin() + p);
      next.letters.insert(next.letters.end(), r.rhs.begin(), r.rhs.end());
      next.letters.insert(next.letters.end(), w.letters.begin() + p + r.lhs.size(),
                          w.letters.end());
      w = std::move(next);
      if (trace) trace->push_back({static_cast<int>(p) + 1, r.name});
      return static_cast<int>(p);
    }
  }
  return -1;
}

struct NormalizerCache {
  const RuleSet* rules = nullptr;
  AutoIndex index;
};

BraidWord normalize_impl(const BraidWord& w, const RuleSet& rules, const AutoIndex& ai,
                         std::vector<DerivationScript::Step>* trace) {
  BraidWord cur = w;
  size_t shrinkFrom = 0;
  for (;;) {
    int p = apply_first(cur, rules, ai.shrink, shrinkFrom, trace);
    if (p >= 0) {
      // New shrink matches can only appear overlapping the rewritten spot.
      shrinkFrom = static_cast<size_t>(std::max<long long>(
          0, static_cast<long long>(p) - static_cast<long long>(ai.maxShrinkLhs) + 1));
      continue;
    }
    if (apply_first(cur, rules, ai.swap, 0, trace) >= 0) {
      shrinkFrom = 0;
      continue;
    }
    return cur;
  }
}

// ----- state encoding for the bidirectional search -----

std::string encode(const BraidWord& w) {
  std::string key;
  key.reserve(w.letters.size());
  for (Generator g : w.letters)
    key.push_back(static_cast<char>(((g.index << 2) | static_cast<int>(g.kind)) + 1));
  return key;
}

BraidWord decode(const std::string& key, int degree) {
  BraidWord w{degree, {}};
  w.letters.reserve(key.size());
  for (char c : key) {
    int raw = static_cast<unsigned char>(c) - 1;
    w.letters.push_back({static_cast<Kind>(raw & 3), raw >> 2});
  }
  return w;
}

long long gamma_weight(const BraidWord& w) {
  long long s = 0;
  for (size_t i = 0; i < w.letters.size(); ++i)
    if (w.letters[i].kind == Kind::Gamma) s += static_cast<long long>(i);
  return s;
}

struct Edge {
  std::string parent;
  int ruleIdx = -1;
  int pos0 = -1;  // 0-based application position in the parent word
  int depth = 0;
};

struct QueueItem {
  size_t len;
  long long gpot;
  std::uint64_t seq;
  std::string key;
  int depth;
  bool operator>(const QueueItem& o) const {
    return std::tie(len, gpot, seq) > std::tie(o.len, o.gpot, o.seq);
  }
};

using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<QueueItem>>;

struct Side {
  std::unordered_map<std::string, Edge> visited;
  MinQueue queue;
  std::uint64_t seq = 0;
};

// Expands one edge (rule application followed by normalization) and appends
// its explicit script steps: the application itself plus the recorded
// normalization trace.
void append_edge_steps(const BraidWord& parent, const RuleSet& rules, const AutoIndex& ai,
                       int ruleIdx, int pos0, std::vector<DerivationScript::Step>& steps,
                       BraidWord* childOut) {
  const RewriteRule& r = rules.rules()[ruleIdx];
  BraidWord raw = apply_rule(parent, pos0 + 1, r);
  steps.push_back({pos0 + 1, r.name});
  BraidWord child = normalize_impl(raw, rules, ai, &steps);
  if (childOut) *childOut = std::move(child);
}

// Same edge, replayed backwards: undo the normalization trace (reversed
// rules at the recorded positions), then undo the application.
void append_reversed_edge_steps(const BraidWord& parent, const RuleSet& rules,
                                const AutoIndex& ai, int ruleIdx, int pos0,
                                std::vector<DerivationScript::Step>& steps) {
  const RewriteRule& r = rules.rules()[ruleIdx];
  BraidWord raw = apply_rule(parent, pos0 + 1, r);
  std::vector<DerivationScript::Step> trace;
  normalize_impl(raw, rules, ai, &trace);
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    const std::string& n = it->rule;
    steps.push_back({it->pos, n.ends_with("~rev") ? n.substr(0, n.size() - 4) : n + "~rev"});
  }
  steps.push_back({pos0 + 1, r.name.ends_with("~rev") ? r.name.substr(0, r.name.size() - 4)
                                                      : r.name + "~rev"});
}

std::vector<Edge> path_from_root(const Side& side, const std::string& meetKey) {
  std::vector<Edge> path;
  std::string cur = meetKey;
  for (;;) {
    const Edge& e = side.visited.at(cur);
    if (e.ruleIdx < 0) break;
    path.push_back(e);
    cur = e.parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

BraidWord normalize(const BraidWord& w, const RuleSet& rules,
                    std::vector<DerivationScript::Step>* trace) {
  AutoIndex ai = build_auto_index(rules);
  return normalize_impl(w, rules, ai, trace);
}

Verdict bounded_equal(const BraidWord& a, const BraidWord& b, const RuleSet& rules,
                      const SearchBudget& budget) {
  budget.validate();
  if (a.degree != b.degree)
    throw std::invalid_argument("bounded_equal: degree mismatch");
  if (rules.degree() != a.degree)
    throw std::invalid_argument("bounded_equal: rule set degree does not match the words");

  Verdict out;
  if (a == b) {
    out.outcome = Outcome::Equal;
    out.script = {a, {}, b};
    out.details = "identical words";
    return out;
  }

  // Cheap separating invariants first.
  SignedPermutation pa = signed_perm_image(a), pb = signed_perm_image(b);
  if (pa.perm != pb.perm) {
    out.outcome = Outcome::Distinct;
    out.witness = "perm";
    return out;
  }
  if (pa.flips != pb.flips) {
    out.outcome = Outcome::Distinct;
    out.witness = "flips";
    return out;
  }
  AbelianTriple ta = abelian_invariant(a), tb = abelian_invariant(b);
  if (ta.writhe != tb.writhe) {
    out.outcome = Outcome::Distinct;
    out.witness = "writhe";
    return out;
  }
  if (ta.vParity != tb.vParity) {
    out.outcome = Outcome::Distinct;
    out.witness = "v-parity";
    return out;
  }
  if (ta.barParity != tb.barParity) {
    out.outcome = Outcome::Distinct;
    out.witness = "bar-parity";
    return out;
  }

  AutoIndex ai = build_auto_index(rules);

  std::vector<DerivationScript::Step> traceA, traceB;
  BraidWord na = normalize_impl(a, rules, ai, &traceA);
  BraidWord nb = normalize_impl(b, rules, ai, &traceB);

  auto finish_equal = [&](std::vector<DerivationScript::Step> mid) {
    out.outcome = Outcome::Equal;
    out.script.start = a;
    out.script.expectedEnd = b;
    out.script.steps = traceA;
    out.script.steps.insert(out.script.steps.end(), mid.begin(), mid.end());
    for (auto it = traceB.rbegin(); it != traceB.rend(); ++it) {
      const std::string& n = it->rule;
      out.script.steps.push_back(
          {it->pos, n.ends_with("~rev") ? n.substr(0, n.size() - 4) : n + "~rev"});
    }
    return out;
  };

  if (na == nb) return finish_equal({});

  std::string rootA = encode(na), rootB = encode(nb);
  Side sides[2];
  sides[0].visited.emplace(rootA, Edge{});
  sides[1].visited.emplace(rootB, Edge{});
  sides[0].queue.push({na.letters.size(), gamma_weight(na), sides[0].seq++, rootA, 0});
  sides[1].queue.push({nb.letters.size(), gamma_weight(nb), sides[1].seq++, rootB, 0});

  std::uint64_t states = 2;
  int meetSide = -1;
  std::string meetKey;

  int active = 0;
  while (meetSide < 0 && (!sides[0].queue.empty() || !sides[1].queue.empty())) {
    if (sides[active].queue.empty()) active ^= 1;
    Side& side = sides[active];
    Side& other = sides[active ^ 1];
    QueueItem item = side.queue.top();
    side.queue.pop();
    if (item.depth >= budget.maxDepth) {
      active ^= 1;
      continue;
    }
    BraidWord word = decode(item.key, a.degree);
    for (size_t p = 0; p < word.letters.size() && meetSide < 0; ++p) {
      for (int idx : rules.candidates(word.letters[p])) {
        const RewriteRule& r = rules.rules()[idx];
        if (!matches_at(word.letters, p, r.lhs)) continue;
        if (word.letters.size() - r.lhs.size() + r.rhs.size() >
            static_cast<size_t>(budget.maxWordLength))
          continue;
        BraidWord raw = apply_rule(word, static_cast<int>(p) + 1, r);
        BraidWord child = normalize_impl(raw, rules, ai, nullptr);
        std::string childKey = encode(child);
        if (side.visited.contains(childKey)) continue;
        side.visited.emplace(childKey,
                             Edge{item.key, idx, static_cast<int>(p), item.depth + 1});
        ++states;
        if (other.visited.contains(childKey)) {
          meetSide = active;
          meetKey = childKey;
          break;
        }
        if (states > budget.maxStates) {
          out.outcome = Outcome::Unknown;
          out.details = "state budget exhausted";
          out.statesExplored = states;
          return out;
        }
        side.queue.push({child.letters.size(), gamma_weight(child), side.seq++, childKey,
                         item.depth + 1});
      }
    }
    active ^= 1;
  }

  out.statesExplored = states;
  if (meetSide < 0) {
    out.outcome = Outcome::Unknown;
    out.details = "search space exhausted within budget";
    return out;
  }

  // Rebuild the explicit step list through the meeting word.
  std::vector<DerivationScript::Step> mid;
  std::vector<Edge> pathA = path_from_root(sides[0], meetKey);
  BraidWord cur = na;
  for (const Edge& e : pathA) {
    BraidWord parent = decode(e.parent, a.degree);
    BraidWord child;
    append_edge_steps(parent, rules, ai, e.ruleIdx, e.pos0, mid, &child);
    cur = child;
  }
  std::vector<Edge> pathB = path_from_root(sides[1], meetKey);
  for (auto it = pathB.rbegin(); it != pathB.rend(); ++it) {
    BraidWord parent = decode(it->parent, a.degree);
    append_reversed_edge_steps(parent, rules, ai, it->ruleIdx, it->pos0, mid);
  }
  return finish_equal(std::move(mid));
}

}  // namespace tvb
