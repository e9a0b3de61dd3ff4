#include "doctest.h"

#include "corner/blowup.hpp"
#include "corner/equivalence.hpp"
#include "corner/errors.hpp"

using namespace corner;

namespace {

AffForm ieq(const OrthantChart& c, int i) { return aff_coord(c.dim(), c.b + i); }

AffinePSub sub(const OrthantChart& c, std::vector<int> zeros,
               std::vector<AffForm> eqs) {
  auto p = make_psub(c, std::move(zeros), std::move(eqs));
  REQUIRE(p.has_value());
  return *p;
}

}  // namespace

TEST_CASE("a resolution is equivalent to itself") {
  const OrthantChart chart = make_chart(1, 1, {0});
  Atlas a = make_atlas(chart);
  const int c = add_sub(a, 0, sub(chart, {0}, {ieq(chart, 0)}));
  const BlowupSequence seq = resolve(a, {c});
  REQUIRE(seq.ok());
  const EquivReport rep = check_equivalence_report(*seq.result, *seq.result);
  CHECK(rep.verdict == EquivVerdict::Equivalent);
  for (const auto& [la, lb] : rep.label_map) CHECK(la == lb);
  CHECK(check_equivalence(*seq.result, *seq.result));
}

TEST_CASE("nested centres may be blown up in either order") {
  // origin inside a line in the plane: the smaller centre first or last
  const OrthantChart chart = make_chart(0, 2, {});
  Atlas a = make_atlas(chart);
  const int line = add_sub(a, 0, sub(chart, {}, {ieq(chart, 0)}));
  const int origin =
      add_sub(a, 0, sub(chart, {}, {ieq(chart, 0), ieq(chart, 1)}));

  const BlowupSequence small_first = resolve(a, {origin, line});
  const BlowupSequence big_first = resolve(a, {line, origin});
  REQUIRE(small_first.ok());
  REQUIRE(big_first.ok());

  const EquivReport rep =
      check_equivalence_report(*small_first.result, *big_first.result);
  CHECK(rep.verdict == EquivVerdict::Equivalent);
  // front faces correspond by the centre they resolve, not by label value
  CHECK(rep.label_map.size() == 2);
  CHECK(check_equivalence(*big_first.result, *small_first.result));
}

TEST_CASE("transversal centres may be blown up in either order") {
  const OrthantChart chart = make_chart(0, 2, {});
  Atlas a = make_atlas(chart);
  const int h0 = add_sub(a, 0, sub(chart, {}, {ieq(chart, 0)}));
  const int h1 = add_sub(a, 0, sub(chart, {}, {ieq(chart, 1)}));

  const BlowupSequence ab = resolve(a, {h0, h1});
  const BlowupSequence ba = resolve(a, {h1, h0});
  REQUIRE(ab.ok());
  REQUIRE(ba.ok());
  CHECK(check_equivalence(*ab.result, *ba.result));
}

TEST_CASE("disjoint centres may be blown up in either order") {
  // two points on a line, each blown up to a pair of half-line ends
  const OrthantChart chart = make_chart(0, 1, {});
  Atlas a = make_atlas(chart);
  const int p0 = add_sub(a, 0, sub(chart, {}, {ieq(chart, 0)}));
  AffForm shifted = ieq(chart, 0);
  shifted.c = Rat(-1);
  const int p1 = add_sub(a, 0, sub(chart, {}, {shifted}));

  const BlowupSequence ab = resolve(a, {p0, p1});
  const BlowupSequence ba = resolve(a, {p1, p0});
  REQUIRE(ab.ok());
  REQUIRE(ba.ok());
  CHECK(check_equivalence(*ab.result, *ba.result));
}

TEST_CASE("different centre sets are a proven mismatch") {
  const OrthantChart chart = make_chart(1, 1, {0});
  Atlas a = make_atlas(chart);
  const int face_pt = add_sub(a, 0, sub(chart, {0}, {ieq(chart, 0)}));
  const int face = add_sub(a, 0, sub(chart, {0}, {}));

  // blowing up the whole face only renames it, so the surviving original
  // labels differ from those of the point blow-up
  const BlowupSequence pt_seq = resolve(a, {face_pt});
  const BlowupSequence face_seq = resolve(a, {face});
  REQUIRE(pt_seq.ok());
  REQUIRE(face_seq.ok());
  const EquivReport rep =
      check_equivalence_report(*pt_seq.result, *face_seq.result);
  CHECK(rep.verdict == EquivVerdict::RegistryMismatch);
  CHECK_FALSE(rep.detail.empty());
  CHECK(rep.label_map.empty());
  CHECK_FALSE(check_equivalence(*pt_seq.result, *face_seq.result));
}

TEST_CASE("equivalence requires a common base") {
  const OrthantChart quad = make_chart(2, 0, {0, 1});
  const OrthantChart half = make_chart(1, 1, {0});
  const Atlas a = make_atlas(quad);
  const Atlas b = make_atlas(half);
  CHECK_THROWS_AS(static_cast<void>(check_equivalence_report(a, b)),
                  PreconditionError);
}

TEST_CASE("both resolution orders of the concurrent-line family agree") {
  const OrthantChart chart = make_chart(0, 3, {});
  Atlas a = make_atlas(chart);
  const int f1 = add_sub(a, 0, sub(chart, {}, {ieq(chart, 0), ieq(chart, 2)}));
  const int f2 = add_sub(
      a, 0, sub(chart, {}, {ieq(chart, 0), ieq(chart, 1), ieq(chart, 2)}));
  const int f3 = add_sub(a, 0, sub(chart, {}, {ieq(chart, 1), ieq(chart, 2)}));
  const int f4 = add_sub(
      a, 0,
      sub(chart, {}, {aff_sub(ieq(chart, 0), ieq(chart, 1)), ieq(chart, 2)}));

  const BlowupSequence by_size = resolve(a, {f2, f1, f3, f4});
  const BlowupSequence line_first = resolve(a, {f1, f2, f3, f4});
  REQUIRE(by_size.ok());
  REQUIRE(line_first.ok());

  const EquivReport rep =
      check_equivalence_report(*by_size.result, *line_first.result);
  CHECK(rep.verdict == EquivVerdict::Equivalent);
}
