#include "tvb/quotients.hpp"

#include <numeric>
#include <utility>

namespace tvb {

SignedPermutation SignedPermutation::identity(int degree) {
  SignedPermutation p;
  p.degree = degree;
  p.perm.resize(degree);
  std::iota(p.perm.begin(), p.perm.end(), 0);
  p.flips.assign(degree, 0);
  return p;
}

SignedPermutation SignedPermutation::operator*(const SignedPermutation& rhs) const {
  if (degree != rhs.degree)
    throw std::invalid_argument("signed permutation degree mismatch");
  SignedPermutation out;
  out.degree = degree;
  out.perm.resize(degree);
  out.flips.resize(degree);
  for (int i = 0; i < degree; ++i) {
    out.perm[i] = rhs.perm[perm[i]];
    out.flips[i] = static_cast<std::uint8_t>(flips[i] ^ rhs.flips[perm[i]]);
  }
  return out;
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation out;
  out.degree = degree;
  out.perm.resize(degree);
  out.flips.resize(degree);
  for (int i = 0; i < degree; ++i) {
    out.perm[perm[i]] = i;
    out.flips[perm[i]] = flips[i];
  }
  return out;
}

SignedPermutation signed_perm_image(const BraidWord& w) {
  const int n = w.degree;
  // occupant[p] = strand currently at position p (both 0-based).
  std::vector<int> occupant(n);
  std::iota(occupant.begin(), occupant.end(), 0);
  std::vector<std::uint8_t> flips(n, 0);
  for (const Generator& g : w.letters) {
    const int i = g.index - 1;
    switch (g.kind) {
      case Kind::Sigma:
      case Kind::SigmaInv:
      case Kind::V:
        std::swap(occupant[i], occupant[i + 1]);
        break;
      case Kind::Gamma:
        flips[occupant[i]] ^= 1;
        break;
    }
  }
  SignedPermutation out;
  out.degree = n;
  out.perm.resize(n);
  out.flips = std::move(flips);
  for (int p = 0; p < n; ++p) out.perm[occupant[p]] = p;
  return out;
}

AbelianTriple abelian_invariant(const BraidWord& w) {
  AbelianTriple t;
  for (const Generator& g : w.letters) {
    switch (g.kind) {
      case Kind::Sigma: ++t.writhe; break;
      case Kind::SigmaInv: --t.writhe; break;
      case Kind::V: t.vParity ^= 1; break;
      case Kind::Gamma: t.barParity ^= 1; break;
    }
  }
  return t;
}

}  // namespace tvb
