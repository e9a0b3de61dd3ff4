#pragma once

// Chart atlases over orthant base charts. Each chart records the projective
// step that produced it (dominant normal coordinate, inverse-step data) plus
// the composite blow-down to its base chart, so chart-to-chart transitions
// are recovered symbolically by inverting blow-down chains with exact
// Laurent division. Hypersurface labels are global across charts; each is
// original data or the front face of a recorded center. Tracked global
// submanifolds are stored as one affine part per chart they meet.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corner/chart_map.hpp"
#include "corner/psub.hpp"

namespace corner {

enum class HypKind { Original, Front };

struct HypEntry {
  HypLabel label = -1;
  HypKind kind = HypKind::Original;
  int center_id = -1;  // identifies the blow-up for Front entries
  std::string name;
};

// a global submanifold: one affine part per chart whose region it meets
struct GlobalSub {
  int id = -1;
  std::map<int, AffinePSub> parts;  // chart index -> part
};

// one projective blow-up step in a chart's ancestry
struct ChartStep {
  // t = the dominant normal coordinate (as a parent-coordinate function,
  // sign already folded in for interior normals)
  LaurentPoly dom;
  // inverse of the step: child coordinate j = inv_num[j] / dom^inv_den[j],
  // both sides read in parent coordinates
  std::vector<LaurentPoly> inv_num;
  std::vector<int> inv_den;
  MonomialAffineMap down;  // child -> parent, polynomial components
};

struct Atlas {
  std::vector<OrthantChart> base;  // generation-zero charts
  // explicit transitions between base charts, keyed (from, to)
  std::map<std::pair<int, int>, MonomialAffineMap> base_transitions;

  struct ChartData {
    OrthantChart chart;
    int base_idx = 0;
    MonomialAffineMap blowdown;    // composite chart -> base[base_idx]
    std::vector<ChartStep> chain;  // steps from the base chart down to here
    int parent = -1;  // chart index in the atlas this one was derived from
  };
  std::vector<ChartData> charts;

  std::vector<HypEntry> registry;
  std::map<int, GlobalSub> subs;  // tracked submanifolds by id
  int next_id = 0;                // source for fresh labels / sub ids

  int chart_count() const { return static_cast<int>(charts.size()); }
  const OrthantChart& chart(int i) const { return charts.at(i).chart; }
};

// single-chart base; registry carries the chart's labels as Original
Atlas make_atlas(const OrthantChart& base_chart);

// multi-chart base with explicit transitions between base charts
Atlas make_atlas_multi(
    std::vector<OrthantChart> bases,
    std::map<std::pair<int, int>, MonomialAffineMap> transitions);

// register a tracked submanifold; parts keyed by chart index
int add_sub(Atlas& a, std::map<int, AffinePSub> parts);
// convenience: a part in a single chart
int add_sub(Atlas& a, int chart_idx, const AffinePSub& part);

const HypEntry& registry_entry(const Atlas& a, HypLabel l);

// chart-to-chart transition certificate inside one atlas: exact Laurent
// inversion of the target chain over the source blow-down; nullopt when a
// division fails or sign data is ambiguous (no monomial-affine certificate)
std::optional<MonomialAffineMap> atlas_transition(const Atlas& a, int from,
                                                  int to);

// the same across two atlases over a common base (used by equivalence)
std::optional<MonomialAffineMap> cross_transition(const Atlas& A, int from,
                                                  const Atlas& B, int to);

// certified overlap pieces of the identity between chart `from` of A and
// chart `to` of B: regions of the source chart on which an exact transition
// into the target chart is certified, allowing rational transition data with
// sign-pinned affine denominators. A sign-split overlap yields one piece per
// component; empty means nothing is certified
std::vector<Region> cross_overlap(const Atlas& A, int from, const Atlas& B,
                                  int to);

// structural checks: every registry label appears in some chart; blow-downs
// commute with transitions; cocycle identity on feasible chart triples.
// Throws DomainError on violation.
void atlas_check(const Atlas& a);

// is the chart's region (orthant + constraints) covered by the union of the
// given pieces? decided exactly by expanding the complement; pieces flagged
// inexact never count toward coverage
bool region_covered(const OrthantChart& src, const std::vector<Region>& pieces);

// do the listed charts' validity regions jointly cover chart `idx`'s region
// (each piece given by its transition validity)? exact DNF complement test
bool charts_cover(const Atlas& a, int idx, const std::vector<int>& others);

// compactification of R^m by a sphere at infinity: 1 interior chart plus 2m
// boundary charts, one hypersurface label, explicit transitions
Atlas radial_compactification(int m);

}  // namespace corner
