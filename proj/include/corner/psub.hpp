#pragma once

// Affine p-submanifolds of an orthant chart: a set of boundary coordinates
// pinned to zero plus affine equations on the remaining coordinates. All
// set-level predicates are decided exactly over the rationals, relative to
// the chart's orthant and validity region.

#include <optional>

#include "corner/chart.hpp"
#include "corner/fourier_motzkin.hpp"
#include "corner/linalg.hpp"

namespace corner {

struct AffinePSub {
  OrthantChart chart;
  std::vector<int> zero_hyps;  // sorted boundary coordinate indices
  std::vector<AffForm> eqs;    // reduced row echelon, no zero_hyps columns

  int codim() const {
    return static_cast<int>(zero_hyps.size() + eqs.size());
  }
  int dim() const { return chart.dim() - codim(); }
};

// canonical form: the zero set is maximal (every boundary coordinate that
// vanishes identically on the set is listed), equations are reduced with
// interior-first pivoting. Returns nullopt when the set misses the chart.
std::optional<AffinePSub> make_psub(const OrthantChart& chart,
                                    std::vector<int> zero_hyps,
                                    std::vector<AffForm> eqs);

// chart constraints plus the submanifold's defining system
LinSystem psub_system(const AffinePSub& p);

bool psub_equal(const AffinePSub& a, const AffinePSub& b);

// rows spanning the conormal: unit rows for zero_hyps plus equation rows
Mat conormal_rows(const AffinePSub& p);

std::optional<AffinePSub> intersect(const AffinePSub& p, const AffinePSub& q);

// a contains b as subsets of the chart
bool psub_contains(const AffinePSub& a, const AffinePSub& b);

enum class Rel {
  Disjoint,
  FirstContainsSecond,
  SecondContainsFirst,
  Equal,
  Transversal,
  CleanNonTransversal,
  NotClean,
};

Rel relation(const AffinePSub& p, const AffinePSub& q);

const char* rel_name(Rel r);

// true iff adapted coordinates exist near every point: at each boundary
// stratum the submanifold meets, the equations stay independent after
// projecting onto the coordinates that are interior there
bool is_p_positioned(const AffinePSub& p);

}  // namespace corner
