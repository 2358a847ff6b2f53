#pragma once

#include <cstdint>
#include <vector>

#include "tvb/word.hpp"

namespace tvb {

/// Image in the signed symmetric group Z_2^n x| S_n. perm[i] is the
/// 0-based bottom position of the strand entering at top position i;
/// flips[i] is the mod-2 number of bars that strand meets.
///
/// Multiplication follows word concatenation order: (a*b) is "a then b".
struct SignedPermutation {
  int degree = 1;
  std::vector<int> perm;
  std::vector<std::uint8_t> flips;

  static SignedPermutation identity(int degree);
  SignedPermutation operator*(const SignedPermutation& rhs) const;
  SignedPermutation inverse() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

/// Exponent sums in the abelianization: sigma exponent sum, v count mod 2,
/// gamma count mod 2.
struct AbelianTriple {
  long long writhe = 0;
  int vParity = 0;
  int barParity = 0;

  friend bool operator==(const AbelianTriple&, const AbelianTriple&) = default;
};

SignedPermutation signed_perm_image(const BraidWord& w);
AbelianTriple abelian_invariant(const BraidWord& w);

}  // namespace tvb
