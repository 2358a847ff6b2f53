#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvb/word.hpp"

namespace tvb {

/// A site of a twisted link diagram: a real crossing (four boundary points,
/// slots 1..4) or a bar (two boundary points, slots 1..2). Slots 1,2 of a
/// crossing are the incoming endpoints (1 left, 2 right), slots 3,4 the
/// outgoing ones (3 left, 4 right); the through-strand pairing is 1->4 and
/// 2->3. A bar receives at slot 1 and emits at slot 2.
struct Endpoint {
  std::string site;
  int slot = 1;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct Crossing {
  std::string id;
  int sign = +1;  // +1 or -1

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct Arc {
  Endpoint from;  // an outgoing slot
  Endpoint to;    // an incoming slot

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Combinatorial fingerprint of a twisted link diagram away from its sites:
/// real crossings with signs, bars, the oriented arc connections between
/// site boundary points, free loops (components with no sites), and the
/// component count mu. Virtual crossings leave no trace here.
struct GaussData {
  std::vector<Crossing> crossings;
  std::vector<std::string> bars;
  std::vector<Arc> arcs;
  int freeLoops = 0;
  int mu = 0;

  friend bool operator==(const GaussData&, const GaussData&) = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> problems;
};

/// Checks endpoint usage (each incoming slot used exactly once as an arc
/// target, each outgoing slot exactly once as a source), id uniqueness,
/// sign values, and that the recorded mu matches the computed one.
ValidationReport validate(const GaussData& gd);

/// Number of components: cycles of the successor map (arc, then through-
/// strand pairing) plus recorded free loops. Throws on dangling endpoints.
int component_count(const GaussData& gd);

/// Gauss data of the closure of a braid word. Sigma letters become signed
/// crossings, gamma letters become bars, v letters vanish; arcs follow the
/// strands through the word and around the closure.
GaussData closure_gauss_data(const BraidWord& w);

/// Witness that two Gauss data are the same up to renaming sites.
struct GaussIso {
  std::vector<std::pair<std::string, std::string>> crossingMap;
  std::vector<std::pair<std::string, std::string>> barMap;
};

/// Backtracking search for a kind- and sign-preserving site bijection whose
/// induced endpoint map carries arcs to arcs; requires equal mu and equal
/// free loop counts.
std::optional<GaussIso> gauss_isomorphic(const GaussData& g1, const GaussData& g2);

/// JSON with stable field order:
/// {"crossings":[{"id":"c1","sign":-1}],"bars":["g1"],"arcs":[["c1",4,"g1",1]],
///  "freeLoops":0}
std::string gauss_data_to_json(const GaussData& gd);
GaussData gauss_data_from_json(std::string_view text);

}  // namespace tvb
