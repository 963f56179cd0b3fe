#pragma once

#include <compare>
#include <vector>

#include "goldman/free_group.hpp"

namespace goldman {

// Canonical label of a double coset. `tags` carries factor or epsilon markers.
struct CosetKey {
  std::vector<int> tags;
  std::vector<Word> words;

  friend bool operator==(const CosetKey&, const CosetKey&) = default;
  friend auto operator<=>(const CosetKey&, const CosetKey&) = default;
};

using CosetCycle = std::vector<CosetKey>;

bool rotation_equal(const CosetCycle& lhs, const CosetCycle& rhs);
// Least rotation; equal for rotation-equal cycles.
CosetCycle canonical_rotation(const CosetCycle& cycle);

// Key for the pair (u, v) modulo (L^i u M^j, M'^-j v R^k), where M and M' are the
// images of one cyclic generator on either side of the seam.
CosetKey pair_key(const Word& u, const Word& v, const Word& left, const Word& seam_u,
                  const Word& seam_v, const Word& right);

}  // namespace goldman
