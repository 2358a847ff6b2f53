#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tvb {

/// Generator letters of the twisted virtual braid group on n strands:
/// sigma_i (positive crossing), sigma_i^-1, v_i (virtual crossing) for
/// 1 <= i <= n-1, and gamma_i (bar) for 1 <= i <= n.
enum class Kind : std::uint8_t { Sigma = 0, SigmaInv = 1, V = 2, Gamma = 3 };

struct Generator {
  Kind kind;
  int index;  // 1-based strand index

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

constexpr Generator sigma(int i) { return {Kind::Sigma, i}; }
constexpr Generator sigma_inv(int i) { return {Kind::SigmaInv, i}; }
constexpr Generator virt(int i) { return {Kind::V, i}; }
constexpr Generator bar(int i) { return {Kind::Gamma, i}; }

/// Inverse letter: sigma <-> sigma^-1; v and gamma are involutions.
constexpr Generator inverse(Generator g) {
  if (g.kind == Kind::Sigma) return {Kind::SigmaInv, g.index};
  if (g.kind == Kind::SigmaInv) return {Kind::Sigma, g.index};
  return g;
}

/// True if the letter is legal at the given degree.
constexpr bool valid_at_degree(Generator g, int degree) {
  if (g.index < 1) return false;
  if (g.kind == Kind::Gamma) return g.index <= degree;
  return g.index <= degree - 1;
}

/// A word in the standard generators, read top to bottom; the product of
/// two braids is concatenation (b b' stacks b on top of b').
struct BraidWord {
  int degree = 1;
  std::vector<Generator> letters;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument unless every letter is valid at w.degree.
void validate_word(const BraidWord& w);

BraidWord make_word(int degree, std::vector<Generator> letters);

/// Text format. Header "n=<degree>;" followed by whitespace-separated
/// tokens: s<k> = sigma_k, S<k> = sigma_k^-1, v<k> = v_k, t<k> = gamma_k.
/// The identity of degree 4 renders as "n=4;".
BraidWord parse_word(std::string_view text);
std::string format_word(const BraidWord& w);

/// Single-token render of one letter ("s2", "S2", "v2", "t2").
std::string format_letter(Generator g);

/// Concatenation. Degrees must agree.
BraidWord compose(const BraidWord& a, const BraidWord& b);

/// Reversed word with sigma <-> sigma^-1 swapped; v and gamma fixed.
BraidWord invert(const BraidWord& w);

/// Deletes adjacent pairs s_i s_i^-1, s_i^-1 s_i, v_i v_i, gamma_i gamma_i
/// until none remain. The result is the unique fixed point.
BraidWord free_reduce(const BraidWord& w);

/// True if free_reduce would not change the word.
bool is_free_reduced(const BraidWord& w);

/// Adds s trivial strands on the left and t on the right: degree becomes
/// n+s+t and every index shifts by +s.
BraidWord embed(const BraidWord& w, int s, int t);

}  // namespace tvb
