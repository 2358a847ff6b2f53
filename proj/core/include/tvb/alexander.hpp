#pragma once

#include "tvb/diagram.hpp"
#include "tvb/word.hpp"

namespace tvb {

/// Constructs a braid word whose closure has Gauss data isomorphic to gd.
///
/// The sites are swept in a fixed cyclic order (crossings then bars, by id);
/// every arc winds forward with minimal winding, strands are routed to the
/// sites with v letters only, and each free loop contributes one trivial
/// strand on the right. Throws on invalid Gauss data.
BraidWord braid_from_gauss_data(const GaussData& gd);

}  // namespace tvb
