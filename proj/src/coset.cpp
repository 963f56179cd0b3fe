#include "goldman/coset.hpp"

#include <algorithm>

namespace goldman {

bool rotation_equal(const CosetCycle& lhs, const CosetCycle& rhs) {
  if (lhs.size() != rhs.size()) return false;
  const std::size_t n = lhs.size();
  if (n == 0) return true;
  for (std::size_t k = 0; k < n; ++k) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = lhs[i] == rhs[(i + k) % n];
    if (same) return true;
  }
  return false;
}

CosetCycle canonical_rotation(const CosetCycle& cycle) {
  const std::size_t n = cycle.size();
  CosetCycle best = cycle;
  for (std::size_t k = 1; k < n; ++k) {
    CosetCycle rot;
    rot.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rot.push_back(cycle[(i + k) % n]);
    if (rot < best) best = std::move(rot);
  }
  return best;
}

CosetKey pair_key(const Word& u, const Word& v, const Word& left, const Word& seam_u,
                  const Word& seam_v, const Word& right) {
  const CosetRep first = double_coset_min(u, left, seam_u);
  const CosetRep second = right_coset_min(seam_v.pow(-first.q) * v, right);
  return CosetKey{{}, {first.rep, second.rep}};
}

}  // namespace goldman
