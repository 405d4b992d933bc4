#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "obk/interchange.hpp"

namespace obk {

using Rng = std::mt19937_64;

/// OPENBOOK_KIT_SEED when set to an unsigned integer, else `fallback`.
/// Throws DomainError on a malformed value.
std::uint64_t seed_from_env(std::uint64_t fallback = 20240607);

/// Page layout plus one orientation list per parallel class.
struct PlacementShape {
  int genus = 0;
  int boundary_count = 1;
  std::vector<std::vector<Sign>> classes;
};

/// Valid placement of the given shape. Class homologies are drawn from the
/// span of the a- and d-classes, so all components are pairwise disjoint.
LinkPlacement make_placement(const PlacementShape& shape, Rng& rng);

/// Monodromy word of `twists` random page curves on Σ_{g,b}.
OpenBook random_open_book(Rng& rng, int genus, int boundary_count, int twists);

/// g <= max_genus, b <= 4, up to three classes of up to three copies.
LinkPlacement random_placement(Rng& rng, int max_genus = 2);

/// Marked bindings of a random open book, g <= max_genus.
TransverseWitness random_witness(Rng& rng, int max_genus = 2);

/// Loose-flagged placement on a planar page.
LinkPlacement random_loose_planar(Rng& rng);

/// Any document kind, built through the library operations.
Document random_document(Rng& rng);

}  // namespace obk
