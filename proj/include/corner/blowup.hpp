#pragma once

// Real blow-up of tracked affine submanifolds. Charts are generated
// projectively: one chart per dominant boundary normal coordinate, plus a
// pair of sign charts per interior normal direction, so all transition data
// stays rational. Tracked submanifolds are assumed connected; their lifts
// (full preimage when contained in the center, proper transform otherwise)
// are computed per chart and stay in the affine class.

#include <map>
#include <optional>
#include <vector>

#include "corner/atlas.hpp"

namespace corner {

// blow up the tracked submanifold `center_id`. Every part of the center
// must be p-positioned with an interior-pivot normal form in its chart.
// The result has one fresh front-face label registered under the center's
// id; every other tracked submanifold is replaced by its lift and the
// center itself is removed. A codimension-1 boundary center only renames
// its hypersurface label (the blow-up is a diffeomorphism).
Atlas blow_up(const Atlas& a, int center_id);

// lift of arbitrary per-chart parts (keyed by source chart index) under the
// blow-up of `center_id` that produced `dst` from `src`; result is keyed by
// destination chart index
std::map<int, AffinePSub> lift_sub(const Atlas& src,
                                   const std::map<int, AffinePSub>& parts,
                                   int center_id, const Atlas& dst);

struct StepRecord {
  int center_id = -1;
  int chart_count = 0;             // charts after this step
  bool remaining_p_clean = false;  // informative: lifts of later centers
};

struct BlowupSequence {
  Atlas base;
  std::vector<int> centers;  // requested order of tracked submanifold ids
  std::vector<StepRecord> step_results;
  std::optional<Atlas> result;  // engaged when every step succeeded
  int failed_step = -1;         // index of the center that was not liftable

  bool ok() const { return result.has_value(); }
};

// iterated blow-up in the given order; a step whose center is no longer
// p-positioned stops the sequence and reports the step index
BlowupSequence resolve(const Atlas& base, const std::vector<int>& order);

// every part of the tracked submanifold is p-positioned in its chart
bool global_p_positioned(const Atlas& a, int sub_id);

// within every chart, the parts of the listed submanifolds admit one
// common adapted frame near every point (vacuous with no parts)
bool global_p_clean(const Atlas& a, const std::vector<int>& sub_ids);

}  // namespace corner
