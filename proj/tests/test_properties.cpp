#include <random>

#include "doctest.h"

#include "corner/blowup.hpp"
#include "corner/equivalence.hpp"
#include "corpus.hpp"

using namespace corner;
using namespace corner_corpus;

namespace {

int add_center(Atlas& a, const OrthantChart& chart, const AffineCenter& c) {
  auto p = make_psub(chart, {}, c.eqs);
  REQUIRE(p.has_value());
  return add_sub(a, 0, *p);
}

void check_orders_commute(const PairConfig& cfg) {
  const OrthantChart chart = make_chart(0, cfg.dim, {});
  Atlas a = make_atlas(chart);
  const int id1 = add_center(a, chart, cfg.f1);
  const int id2 = add_center(a, chart, cfg.f2);
  const BlowupSequence ab = resolve(a, {id1, id2});
  const BlowupSequence ba = resolve(a, {id2, id1});
  REQUIRE(ab.ok());
  REQUIRE(ba.ok());
  CHECK(check_equivalence(*ab.result, *ba.result));
}

}  // namespace

TEST_CASE("orders of nested centres commute on a random corpus") {
  std::mt19937 rng(2026'01'01);
  for (int d = 2; d <= 4; ++d)
    for (int rep = 0; rep < 6; ++rep) {
      CAPTURE(d);
      CAPTURE(rep);
      check_orders_commute(nested_pair(d, rng));
    }
}

TEST_CASE("orders of transversal centres commute on a random corpus") {
  std::mt19937 rng(2026'01'02);
  for (int d = 2; d <= 4; ++d)
    for (int rep = 0; rep < 6; ++rep) {
      CAPTURE(d);
      CAPTURE(rep);
      check_orders_commute(transversal_pair(d, rng));
    }
}

TEST_CASE("orders of disjoint centres commute on a random corpus") {
  std::mt19937 rng(2026'01'03);
  for (int d = 2; d <= 4; ++d)
    for (int rep = 0; rep < 6; ++rep) {
      CAPTURE(d);
      CAPTURE(rep);
      check_orders_commute(disjoint_pair(d, rng));
    }
}

TEST_CASE("centres pinched through a blown-up third lift to disjoint sets") {
  std::mt19937 rng(2026'02'01);
  for (int d = 2; d <= 4; ++d)
    for (int rep = 0; rep < 5; ++rep) {
      CAPTURE(d);
      CAPTURE(rep);
      const TripleConfig cfg = pinch_triple(d, rng);
      const OrthantChart chart = make_chart(0, cfg.dim, {});
      Atlas a = make_atlas(chart);
      const int id1 = add_center(a, chart, cfg.f1);
      const int id2 = add_center(a, chart, cfg.f2);
      const int id3 = add_center(a, chart, cfg.f3);
      const BlowupSequence seq = resolve(a, {id3});
      REQUIRE(seq.ok());
      const GlobalSub& s1 = seq.result->subs.at(id1);
      const GlobalSub& s2 = seq.result->subs.at(id2);
      for (const auto& [k, p1] : s1.parts) {
        auto it = s2.parts.find(k);
        if (it == s2.parts.end()) continue;
        CHECK(relation(p1, it->second) == Rel::Disjoint);
      }
    }
}

TEST_CASE("a sub transversal within a blown-up centre lifts transversally") {
  std::mt19937 rng(2026'02'02);
  for (int d = 3; d <= 4; ++d)
    for (int rep = 0; rep < 5; ++rep) {
      CAPTURE(d);
      CAPTURE(rep);
      const TripleConfig cfg = interior_transversal_triple(d, rng);
      const OrthantChart chart = make_chart(0, cfg.dim, {});
      Atlas a = make_atlas(chart);
      const int id1 = add_center(a, chart, cfg.f1);
      const int id2 = add_center(a, chart, cfg.f2);
      const int id3 = add_center(a, chart, cfg.f3);
      const BlowupSequence seq = resolve(a, {id1});
      REQUIRE(seq.ok());
      const GlobalSub& s2 = seq.result->subs.at(id2);
      const GlobalSub& s3 = seq.result->subs.at(id3);
      int meetings = 0;
      for (const auto& [k, p2] : s2.parts) {
        auto it = s3.parts.find(k);
        if (it == s3.parts.end()) continue;
        const Rel r = relation(p2, it->second);
        // transversal wherever they meet; charts where they miss are fine
        CHECK((r == Rel::Transversal || r == Rel::Disjoint));
        if (r == Rel::Transversal) ++meetings;
      }
      CHECK(meetings > 0);
    }
}
