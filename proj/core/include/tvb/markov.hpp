#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tvb/rewrite.hpp"
#include "tvb/word.hpp"

namespace tvb {

enum class StabKind { Positive, Negative, Virtual };

/// Moves on braid words whose closures are equivalent twisted links:
/// conjugation and cyclic shift (type 1), stabilization and its inverse
/// (type 2), and the right/left virtual exchange moves (type 3).
namespace moves {

struct ConjugateBy {
  Generator g;
};
/// Rotates b1 b2 -> b2 b1 by one letter; negative shift rotates back.
struct CyclicShift {
  int shift = 1;
};
struct Stabilize {
  StabKind kind;
};
/// Inverse of Stabilize: requires the word to be iota_0^1(b) x with
/// x in {sigma_n, sigma_n^-1, v_n} and strand n+1 otherwise untouched.
struct Destabilize {
  StabKind kind;
};
/// iota_0^1(b1) sigma_{n-1}^-1 iota_0^1(b2) sigma_{n-1}  <->
/// iota_0^1(b1) v_{n-1}        iota_0^1(b2) v_{n-1}
/// split is the 1-based position of the middle letter; toVirtual selects
/// the replacement direction.
struct ExchangeRight {
  int split;
  bool toVirtual = true;
};
/// Mirror form on the left-most strand with sigma_1 / v_1.
struct ExchangeLeft {
  int split;
  bool toVirtual = true;
};

}  // namespace moves

using MarkovMove = std::variant<moves::ConjugateBy, moves::CyclicShift, moves::Stabilize,
                                moves::Destabilize, moves::ExchangeRight, moves::ExchangeLeft>;

MarkovMove inverse_move(const MarkovMove& m);
std::string describe_move(const MarkovMove& m);

/// Applies the move, throwing std::invalid_argument when the word does not
/// match the move's shape. Conjugation results are free-reduced; all other
/// moves are exact letter operations.
BraidWord apply_markov(const BraidWord& w, const MarkovMove& m);

/// True if apply_markov would succeed.
bool markov_move_applies(const BraidWord& w, const MarkovMove& m);

struct MarkovStep {
  std::string description;
  BraidWord result;
};

struct MarkovVerdict {
  Outcome outcome = Outcome::Unknown;
  std::vector<MarkovStep> trace;  // set when outcome == Equal
  std::string witness;            // set when outcome == Distinct
  std::string details;
  std::uint64_t statesExplored = 0;
};

struct MarkovBudget {
  int maxDepth = 6;
  int maxDegreeHeadroom = 2;  // degrees explored up to max(deg a, deg b) + headroom
  int maxWordLength = 32;
  std::uint64_t maxStates = 50000;
};

/// Bounded bidirectional search over the Markov move graph. States are
/// canonicalized with the standard rule set of their degree; Distinct is
/// reported only from closure invariants stable under all implemented moves
/// (the component count), otherwise Unknown.
MarkovVerdict markov_equal_bounded(const BraidWord& a, const BraidWord& b,
                                   const MarkovBudget& budget);

/// The half-twist-like involution word: prod_{i=1}^{n-1}(v_i ... v_1)
/// followed by gamma_1 ... gamma_n. Its square is trivial and conjugation
/// by it realizes the index-reversing isomorphism.
BraidWord nabla(int n);

/// Letterwise index reflection: sigma_i -> sigma_{n-i}, v_i -> v_{n-i},
/// gamma_i -> gamma_{n-i+1}. An involution.
BraidWord flip(const BraidWord& w);

}  // namespace tvb
