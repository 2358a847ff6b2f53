#include "tvb/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace tvb {

namespace {

struct SiteTable {
  // site id -> (isBar, index within its kind)
  std::map<std::string, std::pair<bool, int>> sites;
  int nCross = 0;
  int nBars = 0;

  static SiteTable build(const GaussData& gd, ValidationReport* rep) {
    SiteTable t;
    for (const Crossing& c : gd.crossings) {
      if (!t.sites.emplace(c.id, std::make_pair(false, t.nCross)).second && rep)
        rep->problems.push_back("duplicate site id '" + c.id + "'");
      ++t.nCross;
    }
    for (const std::string& b : gd.bars) {
      if (!t.sites.emplace(b, std::make_pair(true, t.nBars)).second && rep)
        rep->problems.push_back("duplicate site id '" + b + "'");
      ++t.nBars;
    }
    return t;
  }

  // Dense endpoint code, or -1 when the endpoint is malformed.
  int code(const Endpoint& e) const {
    auto it = sites.find(e.site);
    if (it == sites.end()) return -1;
    auto [isBar, idx] = it->second;
    if (isBar) {
      if (e.slot < 1 || e.slot > 2) return -1;
      return 4 * nCross + 2 * idx + (e.slot - 1);
    }
    if (e.slot < 1 || e.slot > 4) return -1;
    return 4 * idx + (e.slot - 1);
  }

  bool outgoing_code(int c) const {
    if (c < 4 * nCross) {
      int slot = c % 4 + 1;
      return slot == 3 || slot == 4;
    }
    return (c - 4 * nCross) % 2 + 1 == 2;
  }

  bool is_outgoing(const Endpoint& e) const {
    int c = code(e);
    return c >= 0 && outgoing_code(c);
  }
  bool is_incoming(const Endpoint& e) const {
    int c = code(e);
    return c >= 0 && !outgoing_code(c);
  }

  // Through-strand pairing: incoming endpoint code -> outgoing endpoint code.
  int through(int incomingCode) const {
    if (incomingCode < 4 * nCross) {
      int idx = incomingCode / 4, slot = incomingCode % 4 + 1;
      if (slot == 1) return 4 * idx + 3;  // 1 -> 4
      if (slot == 2) return 4 * idx + 2;  // 2 -> 3
      return -1;
    }
    if ((incomingCode - 4 * nCross) % 2 == 0) return incomingCode + 1;  // bar 1 -> 2
    return -1;
  }

  std::string endpoint_name(const GaussData& gd, int c) const {
    if (c < 4 * nCross)
      return gd.crossings[c / 4].id + "(" + std::to_string(c % 4 + 1) + ")";
    int rel = c - 4 * nCross;
    return gd.bars[rel / 2] + "(" + std::to_string(rel % 2 + 1) + ")";
  }
};

int count_cycles(const GaussData& gd) {
  SiteTable t = SiteTable::build(gd, nullptr);
  int total = 4 * t.nCross + 2 * t.nBars;
  std::vector<int> arcTo(total, -1);
  for (const Arc& a : gd.arcs) {
    int from = t.code(a.from);
    int to = t.code(a.to);
    if (from < 0 || to < 0 || !t.outgoing_code(from) || t.outgoing_code(to))
      throw std::invalid_argument("malformed arc endpoint");
    if (arcTo[from] != -1) throw std::invalid_argument("outgoing endpoint used twice");
    arcTo[from] = to;
  }
  std::vector<char> seen(total, 0);
  int cycles = 0;
  for (int start = 0; start < total; ++start) {
    if (seen[start] || !t.outgoing_code(start)) continue;
    int cur = start;
    for (;;) {
      if (seen[cur]) break;
      seen[cur] = 1;
      int in = arcTo[cur];
      if (in < 0) throw std::invalid_argument("dangling endpoint " + t.endpoint_name(gd, cur));
      int next = t.through(in);
      if (next < 0) throw std::invalid_argument("arc targets an outgoing endpoint");
      cur = next;
    }
    ++cycles;
  }
  return cycles;
}

}  // namespace

int component_count(const GaussData& gd) { return count_cycles(gd) + gd.freeLoops; }

ValidationReport validate(const GaussData& gd) {
  ValidationReport rep;
  SiteTable t = SiteTable::build(gd, &rep);
  for (const Crossing& c : gd.crossings)
    if (c.sign != 1 && c.sign != -1)
      rep.problems.push_back("crossing '" + c.id + "' has sign " + std::to_string(c.sign));
  if (gd.freeLoops < 0) rep.problems.push_back("negative free loop count");

  int total = 4 * t.nCross + 2 * t.nBars;
  std::vector<int> srcUse(total, 0), tgtUse(total, 0);
  for (const Arc& a : gd.arcs) {
    if (!t.is_outgoing(a.from)) {
      rep.problems.push_back("arc source " + a.from.site + "(" + std::to_string(a.from.slot) +
                             ") is not an outgoing endpoint");
      continue;
    }
    if (!t.is_incoming(a.to)) {
      rep.problems.push_back("arc target " + a.to.site + "(" + std::to_string(a.to.slot) +
                             ") is not an incoming endpoint");
      continue;
    }
    if (++srcUse[t.code(a.from)] > 1)
      rep.problems.push_back("endpoint " + a.from.site + "(" + std::to_string(a.from.slot) +
                             ") used twice as arc source");
    if (++tgtUse[t.code(a.to)] > 1)
      rep.problems.push_back("endpoint " + a.to.site + "(" + std::to_string(a.to.slot) +
                             ") used twice as arc target");
  }
  if (rep.problems.empty()) {
    for (int c = 0; c < total; ++c) {
      if (t.outgoing_code(c) && srcUse[c] == 0)
        rep.problems.push_back("outgoing endpoint " + t.endpoint_name(gd, c) + " has no arc");
      if (!t.outgoing_code(c) && tgtUse[c] == 0)
        rep.problems.push_back("incoming endpoint " + t.endpoint_name(gd, c) + " has no arc");
    }
  }
  if (rep.problems.empty()) {
    int computed = component_count(gd);
    if (gd.mu != computed)
      rep.problems.push_back("recorded mu " + std::to_string(gd.mu) + " != computed " +
                             std::to_string(computed));
  }
  rep.valid = rep.problems.empty();
  return rep;
}

GaussData closure_gauss_data(const BraidWord& w) {
  validate_word(w);
  GaussData gd;
  const int n = w.degree;

  struct Pending {
    bool fromTop;
    int top = 0;   // set when fromTop
    Endpoint src;  // set when !fromTop
  };
  std::vector<Pending> pending(n);
  for (int j = 0; j < n; ++j) pending[j] = {true, j, {}};

  std::map<int, Endpoint> topSeg;  // top position -> first endpoint below it
  int crossSeq = 0, barSeq = 0;

  auto terminate_at = [&](int pos, const Endpoint& target) {
    if (pending[pos].fromTop)
      topSeg[pending[pos].top] = target;
    else
      gd.arcs.push_back({pending[pos].src, target});
  };

  for (const Generator& g : w.letters) {
    const int i = g.index - 1;
    switch (g.kind) {
      case Kind::V:
        std::swap(pending[i], pending[i + 1]);
        break;
      case Kind::Gamma: {
        std::string id = "g" + std::to_string(++barSeq);
        gd.bars.push_back(id);
        terminate_at(i, {id, 1});
        pending[i] = {false, 0, {id, 2}};
        break;
      }
      case Kind::Sigma:
      case Kind::SigmaInv: {
        std::string id = "c" + std::to_string(++crossSeq);
        gd.crossings.push_back({id, g.kind == Kind::Sigma ? +1 : -1});
        terminate_at(i, {id, 1});
        terminate_at(i + 1, {id, 2});
        pending[i] = {false, 0, {id, 3}};
        pending[i + 1] = {false, 0, {id, 4}};
        break;
      }
    }
  }

  std::map<int, Endpoint> botSeg;  // bottom position -> last endpoint above it
  std::map<int, int> thru;         // top position -> bottom position (no sites met)
  for (int j = 0; j < n; ++j) {
    if (pending[j].fromTop)
      thru[pending[j].top] = j;
    else
      botSeg[j] = pending[j].src;
  }

  // Stitch around the closure: bottom position j reconnects to top position j.
  std::set<int> usedTops;
  for (const auto& [j, src] : botSeg) {
    int cur = j;
    for (;;) {
      auto hit = topSeg.find(cur);
      if (hit != topSeg.end()) {
        gd.arcs.push_back({src, hit->second});
        break;
      }
      usedTops.insert(cur);
      cur = thru.at(cur);
    }
  }
  // Through-strands not absorbed into any arc close up into free loops.
  std::set<int> remaining;
  for (const auto& [top, bottom] : thru)
    if (!usedTops.count(top)) remaining.insert(top);
  while (!remaining.empty()) {
    int start = *remaining.begin();
    int cur = start;
    do {
      remaining.erase(cur);
      cur = thru.at(cur);
    } while (cur != start);
    ++gd.freeLoops;
  }

  gd.mu = component_count(gd);
  return gd;
}

std::optional<GaussIso> gauss_isomorphic(const GaussData& g1, const GaussData& g2) {
  if (g1.crossings.size() != g2.crossings.size() || g1.bars.size() != g2.bars.size() ||
      g1.arcs.size() != g2.arcs.size() || g1.freeLoops != g2.freeLoops || g1.mu != g2.mu)
    return std::nullopt;

  const size_t nc = g1.crossings.size(), nb = g1.bars.size();
  SiteTable t1 = SiteTable::build(g1, nullptr);
  SiteTable t2 = SiteTable::build(g2, nullptr);

  std::set<std::pair<int, int>> arcs2;
  for (const Arc& a : g2.arcs) arcs2.insert({t2.code(a.from), t2.code(a.to)});

  // g1 arcs as (site order index, slot offset) pairs; site order counts
  // crossings first, then bars.
  struct CArc {
    int fromSite, fromOff, toSite, toOff;
  };
  auto site_of = [&](const Endpoint& e, int& site, int& off) {
    auto it = t1.sites.find(e.site);
    site = it->second.first ? static_cast<int>(nc) + it->second.second : it->second.second;
    off = e.slot - 1;
  };
  std::vector<CArc> arcs1;
  for (const Arc& a : g1.arcs) {
    CArc ca{};
    site_of(a.from, ca.fromSite, ca.fromOff);
    site_of(a.to, ca.toSite, ca.toOff);
    arcs1.push_back(ca);
  }

  const size_t total = nc + nb;
  std::vector<int> assign(total, -1);  // g1 site order index -> g2 site order index
  std::vector<char> used(total, 0);

  auto code2 = [&](int siteIdx, int off) {
    return siteIdx < static_cast<int>(nc)
               ? 4 * siteIdx + off
               : 4 * static_cast<int>(nc) + 2 * (siteIdx - static_cast<int>(nc)) + off;
  };

  auto arcs_consistent = [&](int justAssigned) {
    for (const CArc& a : arcs1) {
      if (a.fromSite != justAssigned && a.toSite != justAssigned) continue;
      int f = assign[a.fromSite], to = assign[a.toSite];
      if (f < 0 || to < 0) continue;
      if (!arcs2.count({code2(f, a.fromOff), code2(to, a.toOff)})) return false;
    }
    return true;
  };

  auto backtrack = [&](auto&& self, size_t k) -> bool {
    if (k == total) return true;
    bool isBar = k >= nc;
    size_t lo = isBar ? nc : 0, hi = isBar ? total : nc;
    for (size_t cand = lo; cand < hi; ++cand) {
      if (used[cand]) continue;
      if (!isBar && g1.crossings[k].sign != g2.crossings[cand].sign) continue;
      assign[k] = static_cast<int>(cand);
      used[cand] = 1;
      if (arcs_consistent(static_cast<int>(k)) && self(self, k + 1)) return true;
      used[cand] = 0;
      assign[k] = -1;
    }
    return false;
  };

  if (!backtrack(backtrack, 0)) return std::nullopt;

  GaussIso iso;
  for (size_t k = 0; k < nc; ++k)
    iso.crossingMap.push_back({g1.crossings[k].id, g2.crossings[assign[k]].id});
  for (size_t k = 0; k < nb; ++k)
    iso.barMap.push_back({g1.bars[k], g2.bars[assign[nc + k] - nc]});
  return iso;
}

std::string gauss_data_to_json(const GaussData& gd) {
  nlohmann::ordered_json j;
  j["crossings"] = nlohmann::ordered_json::array();
  for (const Crossing& c : gd.crossings)
    j["crossings"].push_back(nlohmann::ordered_json{{"id", c.id}, {"sign", c.sign}});
  j["bars"] = gd.bars;
  j["arcs"] = nlohmann::ordered_json::array();
  for (const Arc& a : gd.arcs)
    j["arcs"].push_back(
        nlohmann::ordered_json::array({a.from.site, a.from.slot, a.to.site, a.to.slot}));
  j["freeLoops"] = gd.freeLoops;
  return j.dump();
}

GaussData gauss_data_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GaussData gd;
  for (const auto& c : j.at("crossings"))
    gd.crossings.push_back({c.at("id").get<std::string>(), c.at("sign").get<int>()});
  gd.bars = j.at("bars").get<std::vector<std::string>>();
  for (const auto& a : j.at("arcs")) {
    if (!a.is_array() || a.size() != 4)
      throw std::invalid_argument("arc entries must be [fromId, fromSlot, toId, toSlot]");
    gd.arcs.push_back(
        {{a[0].get<std::string>(), a[1].get<int>()}, {a[2].get<std::string>(), a[3].get<int>()}});
  }
  gd.freeLoops = j.value("freeLoops", 0);
  try {
    gd.mu = component_count(gd);
  } catch (const std::invalid_argument&) {
    gd.mu = 0;  // structurally broken; validate() reports the details
  }
  return gd;
}

}  // namespace tvb
