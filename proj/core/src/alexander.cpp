#include "tvb/alexander.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tvb {

namespace {

struct Site {
  std::string id;
  bool isBar;
  int sign = 0;
};

}  // namespace

BraidWord braid_from_gauss_data(const GaussData& gd) {
  ValidationReport rep = validate(gd);
  if (!rep.valid) {
    std::string msg = "invalid Gauss data";
    for (const std::string& p : rep.problems) msg += "; " + p;
    throw std::invalid_argument(msg);
  }

  // Cyclic site order: crossings first, then bars, each sorted by id.
  std::vector<Site> sites;
  for (const Crossing& c : gd.crossings) sites.push_back({c.id, false, c.sign});
  for (const std::string& b : gd.bars) sites.push_back({b, true, 0});
  std::stable_sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    if (a.isBar != b.isBar) return !a.isBar;
    return a.id < b.id;
  });
  std::map<std::string, int> siteOrder;
  for (size_t k = 0; k < sites.size(); ++k) siteOrder[sites[k].id] = static_cast<int>(k);

  if (sites.empty() && gd.freeLoops == 0)
    throw std::invalid_argument("empty Gauss data with no free loops has no braid form");

  // Arc lookup by endpoint; each arc winds forward with minimal winding.
  std::map<std::pair<int, int>, int> bySource, byTarget;  // (site order, slot) -> arc
  for (size_t a = 0; a < gd.arcs.size(); ++a) {
    const Arc& arc = gd.arcs[a];
    bySource[{siteOrder.at(arc.from.site), arc.from.slot}] = static_cast<int>(a);
    byTarget[{siteOrder.at(arc.to.site), arc.to.slot}] = static_cast<int>(a);
  }
  auto src_order = [&](int a) { return siteOrder.at(gd.arcs[a].from.site); };
  auto dst_order = [&](int a) { return siteOrder.at(gd.arcs[a].to.site); };
  auto wraps = [&](int a) { return dst_order(a) <= src_order(a); };

  // Strands crossing the base angle, innermost first.
  std::vector<int> initial;
  for (size_t a = 0; a < gd.arcs.size(); ++a)
    if (wraps(static_cast<int>(a))) initial.push_back(static_cast<int>(a));
  std::sort(initial.begin(), initial.end(), [&](int a, int b) {
    return std::make_pair(src_order(a), gd.arcs[a].from.slot) <
           std::make_pair(src_order(b), gd.arcs[b].from.slot);
  });

  const int L = static_cast<int>(initial.size());
  const int degree = L + gd.freeLoops;
  BraidWord word{degree, {}};
  std::vector<int> live = initial;

  auto pos_of = [&](int arc) {
    auto it = std::find(live.begin(), live.end(), arc);
    if (it == live.end()) throw std::logic_error("arc not live when its site is swept");
    return static_cast<int>(it - live.begin());
  };
  auto move_left = [&](int from, int to) {  // bubble live[from] down to position `to`
    for (int q = from; q > to; --q) {
      word.letters.push_back(virt(q));  // swaps strands q, q+1 (live[q-1], live[q])
      std::swap(live[q - 1], live[q]);
    }
  };

  for (size_t k = 0; k < sites.size(); ++k) {
    const Site& s = sites[k];
    if (s.isBar) {
      int in = byTarget.at({static_cast<int>(k), 1});
      int p = pos_of(in);
      word.letters.push_back(bar(p + 1));
      live[p] = bySource.at({static_cast<int>(k), 2});
    } else {
      int in1 = byTarget.at({static_cast<int>(k), 1});
      int in2 = byTarget.at({static_cast<int>(k), 2});
      int p1 = pos_of(in1), p2 = pos_of(in2);
      if (p1 < p2) {
        move_left(p2, p1 + 1);
      } else {
        move_left(p1, p2);  // passing in2 leaves in1 directly left of it
      }
      int t = std::min(p1, p2);
      word.letters.push_back(s.sign > 0 ? sigma(t + 1) : sigma_inv(t + 1));
      live[t] = bySource.at({static_cast<int>(k), 3});
      live[t + 1] = bySource.at({static_cast<int>(k), 4});
    }
  }

  // Match the bottom order back to the base-angle order for the closure.
  for (int q = 0; q < L; ++q) {
    int r = pos_of(initial[q]);
    move_left(r, q);
  }

  validate_word(word);
  return word;
}

}  // namespace tvb
