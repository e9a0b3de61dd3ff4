#pragma once

// Classification of monomial-affine maps between local models: b-map class
// plus the fibration flags. Surjectivity onto the target model is declared
// at the model level (full-rank data), not verified point-set-topologically.

#include <optional>

#include "corner/chart_map.hpp"

namespace corner {

enum class BMapClass { NotBMap, BoundaryBMap, InteriorBMap };

struct BMapFlags {
  bool b_normal = false;
  bool b_submersion = false;
  bool b_fibration = false;
  bool simple = false;
};

struct BoundaryComponentData {
  bool zero = false;
  Rat alpha = Rat(0);
  std::vector<int> exps;  // over source boundary coordinates
};

struct Classification {
  BMapClass cls = BMapClass::NotBMap;
  BMapFlags flags;
  std::vector<BoundaryComponentData> boundary;  // size dst.b when b-map
};

Classification classify_map(const MonomialAffineMap& f);

}  // namespace corner
