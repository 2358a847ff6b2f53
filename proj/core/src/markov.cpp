#include "tvb/markov.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

#include "tvb/diagram.hpp"

namespace tvb {

namespace {

// Letters confined to the first n-1 strands of a degree-n word, i.e. the
// image of iota_0^1.
bool avoids_last_strand(const Generator& g, int degree) {
  if (g.kind == Kind::Gamma) return g.index <= degree - 1;
  return g.index <= degree - 2;
}
bool avoids_first_strand(const Generator& g) {
  return g.index >= 2;
}

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

}  // namespace

MarkovMove inverse_move(const MarkovMove& m) {
  return std::visit(
      Overload{
          [](const moves::ConjugateBy& c) -> MarkovMove {
            return moves::ConjugateBy{inverse(c.g)};
          },
          [](const moves::CyclicShift& s) -> MarkovMove { return moves::CyclicShift{-s.shift}; },
          [](const moves::Stabilize& s) -> MarkovMove { return moves::Destabilize{s.kind}; },
          [](const moves::Destabilize& s) -> MarkovMove { return moves::Stabilize{s.kind}; },
          [](const moves::ExchangeRight& e) -> MarkovMove {
            return moves::ExchangeRight{e.split, !e.toVirtual};
          },
          [](const moves::ExchangeLeft& e) -> MarkovMove {
            return moves::ExchangeLeft{e.split, !e.toVirtual};
          },
      },
      m);
}

std::string describe_move(const MarkovMove& m) {
  return std::visit(
      Overload{
          [](const moves::ConjugateBy& c) { return "conjugate by " + format_letter(c.g); },
          [](const moves::CyclicShift& s) {
            return std::string("cyclic shift ") + std::to_string(s.shift);
          },
          [](const moves::Stabilize& s) {
            const char* k = s.kind == StabKind::Positive   ? "positive"
                            : s.kind == StabKind::Negative ? "negative"
                                                           : "virtual";
            return std::string("stabilize ") + k;
          },
          [](const moves::Destabilize& s) {
            const char* k = s.kind == StabKind::Positive   ? "positive"
                            : s.kind == StabKind::Negative ? "negative"
                                                           : "virtual";
            return std::string("destabilize ") + k;
          },
          [](const moves::ExchangeRight& e) {
            return std::string("right exchange at ") + std::to_string(e.split) +
                   (e.toVirtual ? " (to virtual)" : " (to crossing)");
          },
          [](const moves::ExchangeLeft& e) {
            return std::string("left exchange at ") + std::to_string(e.split) +
                   (e.toVirtual ? " (to virtual)" : " (to crossing)");
          },
      },
      m);
}

namespace {

Generator stab_letter(StabKind kind, int index) {
  switch (kind) {
    case StabKind::Positive: return sigma(index);
    case StabKind::Negative: return sigma_inv(index);
    case StabKind::Virtual: return virt(index);
  }
  throw std::logic_error("bad stabilization kind");
}

// Checks the exchange shape A g B h at degree m and returns the replaced
// word, or nullopt. Right form uses strand m (letters sigma_{m-1}/v_{m-1});
// left form mirrors on strand 1.
std::optional<BraidWord> try_exchange(const BraidWord& w, int split, bool toVirtual, bool right) {
  const int m = w.degree;
  if (m < 2) return std::nullopt;
  if (split < 1 || static_cast<size_t>(split) > w.letters.size()) return std::nullopt;
  if (w.letters.empty()) return std::nullopt;

  const size_t g = static_cast<size_t>(split - 1);
  const size_t h = w.letters.size() - 1;
  if (g >= h) return std::nullopt;

  const Generator mid = w.letters[g];
  const Generator last = w.letters[h];
  const int edge = right ? m - 1 : 1;
  const Generator sNeg = sigma_inv(edge), sPos = sigma(edge), vv = virt(edge);
  if (toVirtual) {
    if (mid != sNeg || last != sPos) return std::nullopt;
  } else {
    if (mid != vv || last != vv) return std::nullopt;
  }
  for (size_t k = 0; k < h; ++k) {
    if (k == g) continue;
    bool ok = right ? avoids_last_strand(w.letters[k], m) : avoids_first_strand(w.letters[k]);
    if (!ok) return std::nullopt;
  }
  BraidWord out = w;
  out.letters[g] = toVirtual ? vv : sNeg;
  out.letters[h] = toVirtual ? vv : sPos;
  return out;
}

std::optional<BraidWord> try_apply(const BraidWord& w, const MarkovMove& m) {
  return std::visit(
      Overload{
          [&](const moves::ConjugateBy& c) -> std::optional<BraidWord> {
            if (!valid_at_degree(c.g, w.degree)) return std::nullopt;
            BraidWord out{w.degree, {c.g}};
            out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
            out.letters.push_back(inverse(c.g));
            return free_reduce(out);
          },
          [&](const moves::CyclicShift& s) -> std::optional<BraidWord> {
            BraidWord out = w;
            if (out.letters.empty()) return out;
            int n = static_cast<int>(out.letters.size());
            int k = ((s.shift % n) + n) % n;
            std::rotate(out.letters.begin(), out.letters.begin() + k, out.letters.end());
            return out;
          },
          [&](const moves::Stabilize& s) -> std::optional<BraidWord> {
            BraidWord out = embed(w, 0, 1);
            out.letters.push_back(stab_letter(s.kind, w.degree));
            return out;
          },
          [&](const moves::Destabilize& s) -> std::optional<BraidWord> {
            if (w.degree < 2 || w.letters.empty()) return std::nullopt;
            if (w.letters.back() != stab_letter(s.kind, w.degree - 1)) return std::nullopt;
            for (size_t k = 0; k + 1 < w.letters.size(); ++k)
              if (!avoids_last_strand(w.letters[k], w.degree)) return std::nullopt;
            BraidWord out{w.degree - 1,
                          std::vector<Generator>(w.letters.begin(), w.letters.end() - 1)};
            return out;
          },
          [&](const moves::ExchangeRight& e) { return try_exchange(w, e.split, e.toVirtual, true); },
          [&](const moves::ExchangeLeft& e) { return try_exchange(w, e.split, e.toVirtual, false); },
      },
      m);
}

}  // namespace

bool markov_move_applies(const BraidWord& w, const MarkovMove& m) {
  return try_apply(w, m).has_value();
}

BraidWord apply_markov(const BraidWord& w, const MarkovMove& m) {
  auto out = try_apply(w, m);
  if (!out)
    throw std::invalid_argument("markov move '" + describe_move(m) +
                                "' does not match word " + format_word(w));
  return *out;
}

BraidWord nabla(int n) {
  if (n < 1) throw std::invalid_argument("nabla requires n >= 1");
  BraidWord w{n, {}};
  for (int i = 1; i <= n - 1; ++i)
    for (int k = i; k >= 1; --k) w.letters.push_back(virt(k));
  for (int j = 1; j <= n; ++j) w.letters.push_back(bar(j));
  return w;
}

BraidWord flip(const BraidWord& w) {
  const int n = w.degree;
  BraidWord out{n, {}};
  out.letters.reserve(w.letters.size());
  for (const Generator& g : w.letters) {
    int idx = g.kind == Kind::Gamma ? n - g.index + 1 : n - g.index;
    out.letters.push_back({g.kind, idx});
  }
  validate_word(out);
  return out;
}

// ----- bounded Markov-equivalence search -----

namespace {

struct MState {
  int degree;
  std::string key;
  bool operator<(const MState& o) const {
    return std::tie(degree, key) < std::tie(o.degree, o.key);
  }
  bool operator==(const MState& o) const { return degree == o.degree && key == o.key; }
};

std::string encode_letters(const BraidWord& w) {
  std::string key;
  key.reserve(w.letters.size());
  for (Generator g : w.letters)
    key.push_back(static_cast<char>(((g.index << 2) | static_cast<int>(g.kind)) + 1));
  return key;
}

BraidWord decode_letters(const MState& s) {
  BraidWord w{s.degree, {}};
  for (char c : s.key) {
    int raw = static_cast<unsigned char>(c) - 1;
    w.letters.push_back({static_cast<Kind>(raw & 3), raw >> 2});
  }
  return w;
}

struct MEdge {
  MState parent;
  MarkovMove move{moves::CyclicShift{0}};
  bool viaRewrite = false;
  std::string rewriteRule;
  int rewritePos = 0;
  int depth = 0;
};

}  // namespace

MarkovVerdict markov_equal_bounded(const BraidWord& a, const BraidWord& b,
                                   const MarkovBudget& budget) {
  MarkovVerdict out;

  GaussData ga = closure_gauss_data(a), gb = closure_gauss_data(b);
  if (ga.mu != gb.mu) {
    out.outcome = Outcome::Distinct;
    out.witness = "component-count";
    out.details = "closure component counts " + std::to_string(ga.mu) + " vs " +
                  std::to_string(gb.mu);
    return out;
  }

  const int degCap = std::max(a.degree, b.degree) + budget.maxDegreeHeadroom;

  std::map<int, RuleSet> ruleCache;
  auto rules_for = [&](int degree) -> const RuleSet& {
    auto it = ruleCache.find(degree);
    if (it == ruleCache.end())
      it = ruleCache.emplace(degree, standard_rules(degree)).first;
    return it->second;
  };

  auto canon = [&](const BraidWord& w) {
    return MState{w.degree, encode_letters(normalize(w, rules_for(w.degree)))};
  };

  MState rootA = canon(a), rootB = canon(b);

  std::map<MState, MEdge> visited[2];
  std::queue<std::pair<MState, int>> queue[2];
  visited[0].emplace(rootA, MEdge{});
  visited[1].emplace(rootB, MEdge{});
  queue[0].push({rootA, 0});
  queue[1].push({rootB, 0});

  std::uint64_t states = 2;
  int meetSide = -1;
  MState meet;

  if (rootA == rootB) {
    meetSide = 0;
    meet = rootA;
  }

  auto expand = [&](int side) -> bool {  // returns true when a meet is found
    auto [state, depth] = queue[side].front();
    queue[side].pop();
    if (depth >= budget.maxDepth) return false;
    BraidWord w = decode_letters(state);

    std::vector<std::pair<MarkovMove, BraidWord>> nexts;
    auto consider = [&](const MarkovMove& m) {
      auto r = try_apply(w, m);
      if (r && r->letters.size() <= static_cast<size_t>(budget.maxWordLength))
        nexts.push_back({m, *r});
    };

    for (int i = 1; i <= w.degree - 1; ++i) {
      consider(moves::ConjugateBy{sigma(i)});
      consider(moves::ConjugateBy{sigma_inv(i)});
      consider(moves::ConjugateBy{virt(i)});
    }
    for (int i = 1; i <= w.degree; ++i) consider(moves::ConjugateBy{bar(i)});
    consider(moves::CyclicShift{1});
    consider(moves::CyclicShift{-1});
    if (w.degree < degCap) {
      consider(moves::Stabilize{StabKind::Positive});
      consider(moves::Stabilize{StabKind::Negative});
      consider(moves::Stabilize{StabKind::Virtual});
    }
    consider(moves::Destabilize{StabKind::Positive});
    consider(moves::Destabilize{StabKind::Negative});
    consider(moves::Destabilize{StabKind::Virtual});
    for (int split = 1; split <= static_cast<int>(w.letters.size()); ++split) {
      consider(moves::ExchangeRight{split, true});
      consider(moves::ExchangeRight{split, false});
      consider(moves::ExchangeLeft{split, true});
      consider(moves::ExchangeLeft{split, false});
    }

    for (auto& [m, res] : nexts) {
      MState child = canon(res);
      if (visited[side].count(child)) continue;
      MEdge e;
      e.parent = state;
      e.move = m;
      e.depth = depth + 1;
      visited[side].emplace(child, e);
      ++states;
      if (visited[side ^ 1].count(child)) {
        meetSide = side;
        meet = child;
        return true;
      }
      if (states > budget.maxStates) return false;
      queue[side].push({child, depth + 1});
    }

    // One-step rewrites under the defining relations (type 0 moves beyond
    // the canonicalizer).
    const RuleSet& rules = rules_for(w.degree);
    for (size_t p = 0; p < w.letters.size(); ++p) {
      for (int idx : rules.candidates(w.letters[p])) {
        const RewriteRule& r = rules.rules()[idx];
        if (!rule_matches(w, static_cast<int>(p) + 1, r)) continue;
        if (w.letters.size() - r.lhs.size() + r.rhs.size() >
            static_cast<size_t>(budget.maxWordLength))
          continue;
        BraidWord raw = apply_rule(w, static_cast<int>(p) + 1, r);
        MState child{w.degree, encode_letters(normalize(raw, rules))};
        if (visited[side].count(child)) continue;
        MEdge e;
        e.parent = state;
        e.viaRewrite = true;
        e.rewriteRule = r.name;
        e.rewritePos = static_cast<int>(p) + 1;
        e.depth = depth + 1;
        visited[side].emplace(child, e);
        ++states;
        if (visited[side ^ 1].count(child)) {
          meetSide = side;
          meet = child;
          return true;
        }
        if (states > budget.maxStates) return false;
        queue[side].push({child, depth + 1});
      }
    }
    return false;
  };

  while (meetSide < 0 && (!queue[0].empty() || !queue[1].empty())) {
    if (states > budget.maxStates) {
      out.outcome = Outcome::Unknown;
      out.details = "state budget exhausted";
      out.statesExplored = states;
      return out;
    }
    int side = queue[0].size() <= queue[1].size() && !queue[0].empty() ? 0 : 1;
    if (queue[side].empty()) side ^= 1;
    if (expand(side)) break;
  }

  out.statesExplored = states;
  if (meetSide < 0) {
    out.outcome = Outcome::Unknown;
    out.details = "no connection found within budget";
    return out;
  }

  out.outcome = Outcome::Equal;
  auto trace_side = [&](int side) {
    std::vector<MEdge> path;
    MState cur = meet;
    for (;;) {
      const MEdge& e = visited[side].at(cur);
      if (e.depth == 0) break;
      path.push_back(e);
      cur = e.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  for (const MEdge& e : trace_side(0)) {
    std::string d = e.viaRewrite
                        ? "rewrite " + e.rewriteRule + " @" + std::to_string(e.rewritePos)
                        : describe_move(e.move);
    out.trace.push_back({d, decode_letters(e.parent)});
  }
  out.trace.push_back({"meet", decode_letters(meet)});
  auto pathB = trace_side(1);
  for (auto it = pathB.rbegin(); it != pathB.rend(); ++it) {
    std::string d = it->viaRewrite
                        ? "rewrite (reversed) " + it->rewriteRule + " @" +
                              std::to_string(it->rewritePos)
                        : "inverse of: " + describe_move(it->move);
    out.trace.push_back({d, decode_letters(it->parent)});
  }
  return out;
}

}  // namespace tvb
