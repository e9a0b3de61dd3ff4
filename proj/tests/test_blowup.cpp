#include <algorithm>
#include <vector>

#include "corner/blowup.hpp"
#include "corner/errors.hpp"
#include "corner/pclean.hpp"
#include "doctest.h"

using namespace corner;

namespace {

AffForm interior_eq(const OrthantChart& c, int i) {
  return aff_coord(c.dim(), c.b + i);
}

AffForm interior_diff(const OrthantChart& c, int i, int j) {
  return aff_sub(interior_eq(c, i), interior_eq(c, j));
}

AffinePSub sub(const OrthantChart& c, std::vector<int> zeros,
               std::vector<AffForm> eqs) {
  auto p = make_psub(c, std::move(zeros), std::move(eqs));
  REQUIRE(p.has_value());
  return *p;
}

int front_count(const Atlas& a) {
  int n = 0;
  for (const auto& e : a.registry)
    if (e.kind == HypKind::Front) ++n;
  return n;
}

}  // namespace

TEST_CASE("corner blow-up of the quadrant") {
  const OrthantChart chart = make_chart(2, 0, {0, 1});
  Atlas a = make_atlas(chart);
  const int cid = add_sub(a, 0, sub(chart, {0, 1}, {}));
  const Atlas b = blow_up(a, cid);
  CHECK(b.chart_count() == 2);
  CHECK(b.registry.size() == 3);
  CHECK(front_count(b) == 1);
  for (int i = 0; i < 2; ++i) {
    CHECK(b.chart(i).b == 2);
    CHECK(b.chart(i).m == 0);
  }
  // each child keeps the other original label and gains the front label
  const HypLabel ff = registry_entry(b, b.chart(0).labels[0]).label;
  CHECK(registry_entry(b, ff).kind == HypKind::Front);
  CHECK(registry_entry(b, ff).center_id == cid);
  CHECK(b.chart(0).labels[1] == 1);
  CHECK(b.chart(1).labels[0] == 0);
  CHECK(b.chart(1).labels[1] == ff);
  CHECK_NOTHROW(atlas_check(b));

  // sibling transitions exist and compose to the identity
  const auto t01 = atlas_transition(b, 0, 1);
  const auto t10 = atlas_transition(b, 1, 0);
  REQUIRE(t01.has_value());
  REQUIRE(t10.has_value());
  for (int j = 0; j < 2; ++j)
    CHECK(substitute(t10->comp[j], t01->comp) == poly_coord(2, j));
  // the overlap certificate pins the divided coordinate positive
  REQUIRE(t01->validity.conds.size() >= 1);
  CHECK(t01->validity.exact);

  // chart 0 alone does not see the whole of chart 1's region and vice versa
  CHECK_FALSE(charts_cover(b, 0, {1}));
  CHECK(charts_cover(b, 0, {0, 1}));
}

TEST_CASE("boundary hypersurface blow-up only renames") {
  const OrthantChart chart = make_chart(2, 1, {0, 1});
  Atlas a = make_atlas(chart);
  const int h = add_sub(a, 0, sub(chart, {0}, {}));
  const int q2 =
      add_sub(a, 0, sub(chart, {}, {aff_sub(aff_coord(3, 2), aff_coord(3, 1))}));
  const Atlas b = blow_up(a, h);
  CHECK(b.chart_count() == 1);
  CHECK(b.chart(0).b == 2);
  CHECK(b.chart(0).m == 1);
  CHECK(b.chart(0).labels[1] == 1);
  const HypLabel nl = b.chart(0).labels[0];
  CHECK(nl != 0);
  CHECK(registry_entry(b, nl).kind == HypKind::Front);
  CHECK(registry_entry(b, nl).center_id == h);
  CHECK(b.registry.size() == 2);  // the old label is retired
  const AffinePSub& lifted = b.subs.at(q2).parts.at(0);
  CHECK(lifted.zero_hyps.empty());
  CHECK(lifted.eqs.size() == 1);
  CHECK_NOTHROW(atlas_check(b));
}

TEST_CASE("point blow-up in the plane gives four sign charts") {
  const OrthantChart chart = make_chart(0, 2, {});
  Atlas a = make_atlas(chart);
  const int cid =
      add_sub(a, 0, sub(chart, {}, {interior_eq(chart, 0), interior_eq(chart, 1)}));
  const Atlas b = blow_up(a, cid);
  CHECK(b.chart_count() == 4);
  CHECK(b.registry.size() == 1);
  CHECK(front_count(b) == 1);
  for (int i = 0; i < 4; ++i) {
    CHECK(b.chart(i).b == 1);
    CHECK(b.chart(i).m == 1);
  }
  CHECK_NOTHROW(atlas_check(b));
  // opposite sign charts never meet; neighbouring ones do
  CHECK_FALSE(atlas_transition(b, 0, 1).has_value());
  const auto t02 = atlas_transition(b, 0, 2);
  REQUIRE(t02.has_value());
  const auto t20 = atlas_transition(b, 2, 0);
  REQUIRE(t20.has_value());
  for (int j = 0; j < 2; ++j)
    CHECK(substitute(t20->comp[j], t02->comp) == poly_coord(2, j));
}

TEST_CASE("point blow-up in higher dimension has 2n charts") {
  for (int n = 3; n <= 4; ++n) {
    const OrthantChart chart = make_chart(0, n, {});
    Atlas a = make_atlas(chart);
    std::vector<AffForm> eqs;
    for (int i = 0; i < n; ++i) eqs.push_back(interior_eq(chart, i));
    const int cid = add_sub(a, 0, sub(chart, {}, eqs));
    const Atlas b = blow_up(a, cid);
    CHECK(b.chart_count() == 2 * n);
    CHECK_NOTHROW(atlas_check(b));
  }
}

TEST_CASE("lift of a plane through a blown-up line keeps its normal form") {
  // center: the middle axis; lifted sub: a transversal plane through it
  const OrthantChart chart = make_chart(0, 3, {});
  Atlas a = make_atlas(chart);
  const int f1 =
      add_sub(a, 0, sub(chart, {}, {interior_eq(chart, 0), interior_eq(chart, 2)}));
  const int f4 = add_sub(
      a, 0, sub(chart, {}, {interior_diff(chart, 0, 1), interior_eq(chart, 2)}));
  const Atlas b = blow_up(a, f1);
  CHECK(b.chart_count() == 4);
  const auto& parts = b.subs.at(f4).parts;
  // the lift meets every sign chart of the first normal direction
  REQUIRE(parts.count(0) == 1);
  const AffinePSub& p = parts.at(0);
  CHECK(p.zero_hyps.empty());
  CHECK(p.eqs.size() == 2);  // {t - r = 0, w = 0} shape
  CHECK(p.dim() == 1);
  CHECK(is_p_positioned(p));
  for (const auto& [idx, part] : parts) CHECK(is_p_positioned(part));
}

TEST_CASE("full preimage of a sub contained in the center") {
  const OrthantChart chart = make_chart(1, 2, {0});
  Atlas a = make_atlas(chart);
  const int c = add_sub(a, 0, sub(chart, {0}, {interior_eq(chart, 0)}));
  const int q =
      add_sub(a, 0, sub(chart, {0}, {interior_eq(chart, 0), interior_eq(chart, 1)}));
  const Atlas b = blow_up(a, c);
  CHECK(b.chart_count() == 3);  // one boundary-dominant chart, two sign charts
  const auto& parts = b.subs.at(q).parts;
  CHECK(parts.size() == 3);  // the preimage of a point of the center is a fibre
  for (const auto& [idx, part] : parts) {
    CHECK(part.dim() == 1);
    // the preimage lies inside the front face
    const HypLabel ff = registry_entry(b, b.chart(idx).labels[0]).kind ==
                                HypKind::Front
                            ? b.chart(idx).labels[0]
                            : b.chart(idx).labels[b.chart(idx).b - 1];
    bool on_front = false;
    for (int z : part.zero_hyps)
      if (b.chart(idx).labels[z] == ff) on_front = true;
    CHECK(on_front);
  }
}

TEST_CASE("disjoint sub lifts with its equations re-expressed") {
  const OrthantChart chart = make_chart(1, 1, {0});
  Atlas a = make_atlas(chart);
  const int c = add_sub(a, 0, sub(chart, {0}, {interior_eq(chart, 0)}));
  AffForm off = interior_eq(chart, 0);
  off.c = Rat(-1);  // y - 1 = 0
  const int q = add_sub(a, 0, sub(chart, {0}, {off}));
  const Atlas b = blow_up(a, c);
  const auto& parts = b.subs.at(q).parts;
  CHECK(parts.size() == 1);  // visible only where its coordinate dominates
  const auto& [idx, part] = *parts.begin();
  CHECK(part.zero_hyps.size() == 1);
  CHECK(part.eqs.size() == 1);
  CHECK(part.dim() == 0);
  CHECK(is_p_positioned(part));
}

TEST_CASE("resolution of three concurrent lines and the origin") {
  const OrthantChart chart = make_chart(0, 3, {});
  Atlas a = make_atlas(chart);
  const int f1 =
      add_sub(a, 0, sub(chart, {}, {interior_eq(chart, 0), interior_eq(chart, 2)}));
  const int f2 = add_sub(a, 0, sub(chart, {}, {interior_eq(chart, 0),
                                               interior_eq(chart, 1),
                                               interior_eq(chart, 2)}));
  const int f3 =
      add_sub(a, 0, sub(chart, {}, {interior_eq(chart, 1), interior_eq(chart, 2)}));
  const int f4 = add_sub(
      a, 0, sub(chart, {}, {interior_diff(chart, 0, 1), interior_eq(chart, 2)}));

  SUBCASE("size order is permissible and stays clean") {
    const BlowupSequence seq = resolve(a, {f2, f1, f3, f4});
    REQUIRE(seq.ok());
    CHECK(seq.failed_step == -1);
    REQUIRE(seq.step_results.size() == 4);
    for (const auto& st : seq.step_results) CHECK(st.remaining_p_clean);
    CHECK_NOTHROW(atlas_check(*seq.result));
  }

  SUBCASE("line-first order loses cleanness for one step") {
    const BlowupSequence seq = resolve(a, {f1, f2, f3, f4});
    REQUIRE(seq.ok());
    REQUIRE(seq.step_results.size() == 4);
    CHECK_FALSE(seq.step_results[0].remaining_p_clean);
    CHECK(seq.step_results[1].remaining_p_clean);
    CHECK(seq.step_results[2].remaining_p_clean);
    CHECK_NOTHROW(atlas_check(*seq.result));
  }
}

TEST_CASE("a center that is not p-positioned stops the sequence") {
  const OrthantChart chart = make_chart(2, 0, {0, 1});
  Atlas a = make_atlas(chart);
  AffForm diag = aff_sub(aff_coord(2, 0), aff_coord(2, 1));
  const auto p = make_psub(chart, {}, {diag});
  REQUIRE(p.has_value());
  const int c = add_sub(a, 0, *p);
  const BlowupSequence seq = resolve(a, {c});
  CHECK_FALSE(seq.ok());
  CHECK(seq.failed_step == 0);
  CHECK(seq.step_results.empty());
}

TEST_CASE("radial compactification of the plane") {
  const Atlas rc = radial_compactification(2);
  CHECK(rc.chart_count() == 5);
  CHECK(rc.registry.size() == 1);
  CHECK_NOTHROW(atlas_check(rc));
  // interior chart sees every boundary chart
  for (int i = 1; i < 5; ++i) CHECK(atlas_transition(rc, 0, i).has_value());
  // antipodal charts of one axis never meet
  CHECK_FALSE(atlas_transition(rc, 1, 2).has_value());
  CHECK(atlas_transition(rc, 1, 3).has_value());
  // boundary-to-boundary composite returns home
  const auto t13 = atlas_transition(rc, 1, 3);
  const auto t31 = atlas_transition(rc, 3, 1);
  REQUIRE(t13.has_value());
  REQUIRE(t31.has_value());
  for (int j = 0; j < 2; ++j)
    CHECK(substitute(t31->comp[j], t13->comp) == poly_coord(2, j));
}

TEST_CASE("radial compactification of the line has two separate ends") {
  const Atlas rc = radial_compactification(1);
  CHECK(rc.chart_count() == 3);
  CHECK_NOTHROW(atlas_check(rc));
  CHECK_FALSE(atlas_transition(rc, 1, 2).has_value());
}

TEST_CASE("blow-up rejects a center equal to the whole chart") {
  const OrthantChart chart = make_chart(0, 2, {});
  Atlas a = make_atlas(chart);
  const int c = add_sub(a, 0, sub(chart, {}, {}));
  CHECK_THROWS_AS(blow_up(a, c), PreconditionError);
}

TEST_CASE("blow-up of an interior hypersurface splits into sides") {
  const OrthantChart chart = make_chart(0, 2, {});
  Atlas a = make_atlas(chart);
  const int c = add_sub(a, 0, sub(chart, {}, {interior_eq(chart, 0)}));
  const Atlas b = blow_up(a, c);
  CHECK(b.chart_count() == 2);
  CHECK(front_count(b) == 1);
  // the two sides never meet
  CHECK_FALSE(atlas_transition(b, 0, 1).has_value());
  CHECK_NOTHROW(atlas_check(b));
}
