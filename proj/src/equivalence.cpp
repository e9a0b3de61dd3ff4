#include "corner/equivalence.hpp"

#include <set>
#include <vector>

#include "corner/errors.hpp"

namespace corner {

namespace {

void require_same_base(const Atlas& A, const Atlas& B) {
  if (A.base.size() != B.base.size())
    throw PreconditionError("check_equivalence: atlases have different bases");
  for (std::size_t k = 0; k < A.base.size(); ++k) {
    const OrthantChart& a = A.base[k];
    const OrthantChart& b = B.base[k];
    if (a.b != b.b || a.m != b.m || a.labels != b.labels)
      throw PreconditionError("check_equivalence: atlases have different bases");
  }
}

// canonical bijection: original faces match by label, front faces by the
// centre that produced them; nullopt when no such bijection exists
std::optional<std::map<HypLabel, HypLabel>> registry_bijection(
    const Atlas& A, const Atlas& B, std::string& why) {
  std::set<HypLabel> orig_a, orig_b;
  std::map<int, HypLabel> front_a, front_b;
  for (const auto& e : A.registry) {
    if (e.kind == HypKind::Original) orig_a.insert(e.label);
    else if (!front_a.emplace(e.center_id, e.label).second) {
      why = "first atlas has two front faces for one centre";
      return std::nullopt;
    }
  }
  for (const auto& e : B.registry) {
    if (e.kind == HypKind::Original) orig_b.insert(e.label);
    else if (!front_b.emplace(e.center_id, e.label).second) {
      why = "second atlas has two front faces for one centre";
      return std::nullopt;
    }
  }
  if (orig_a != orig_b) {
    why = "different original boundary faces survive";
    return std::nullopt;
  }
  std::map<HypLabel, HypLabel> phi;
  for (HypLabel l : orig_a) phi[l] = l;
  for (const auto& [cid, la] : front_a) {
    auto it = front_b.find(cid);
    if (it == front_b.end()) {
      why = "a centre contributes a front face in only one atlas";
      return std::nullopt;
    }
    phi[la] = it->second;
  }
  if (front_b.size() != front_a.size()) {
    why = "a centre contributes a front face in only one atlas";
    return std::nullopt;
  }
  return phi;
}

}  // namespace

EquivReport check_equivalence_report(const Atlas& A, const Atlas& B) {
  require_same_base(A, B);

  EquivReport rep;
  std::string why;
  auto phi = registry_bijection(A, B, why);
  if (!phi) {
    rep.verdict = EquivVerdict::RegistryMismatch;
    rep.detail = why;
    return rep;
  }
  rep.label_map = *phi;

  const int na = A.chart_count();
  const int nb = B.chart_count();
  // Certified overlap pieces, per chart of each atlas, in that chart's own
  // coordinates. Every piece is produced by exactly inverting the other
  // atlas's blow-down chain over the shared base identity, so all pieces
  // restrict one and the same interior identity; once both atlases are
  // covered, the glued maps are automatically mutually inverse and no
  // pairwise composition check is needed.
  std::vector<std::vector<Region>> cover_a(static_cast<std::size_t>(na));
  std::vector<std::vector<Region>> cover_b(static_cast<std::size_t>(nb));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      if (A.chart(i).dim() != B.chart(j).dim()) continue;
      for (Region& r : cross_overlap(A, i, B, j))
        cover_a[static_cast<std::size_t>(i)].push_back(std::move(r));
      for (Region& r : cross_overlap(B, j, A, i))
        cover_b[static_cast<std::size_t>(j)].push_back(std::move(r));
    }
  for (int i = 0; i < na; ++i) {
    if (!region_covered(A.chart(i), cover_a[static_cast<std::size_t>(i)])) {
      rep.verdict = EquivVerdict::Uncertified;
      rep.detail = "chart " + A.chart(i).name +
                   " of the first atlas is not covered by certified overlaps";
      return rep;
    }
  }
  for (int j = 0; j < nb; ++j) {
    if (!region_covered(B.chart(j), cover_b[static_cast<std::size_t>(j)])) {
      rep.verdict = EquivVerdict::Uncertified;
      rep.detail = "chart " + B.chart(j).name +
                   " of the second atlas is not covered by certified overlaps";
      return rep;
    }
  }
  rep.verdict = EquivVerdict::Equivalent;
  return rep;
}

bool check_equivalence(const Atlas& A, const Atlas& B) {
  return check_equivalence_report(A, B).verdict == EquivVerdict::Equivalent;
}

}  // namespace corner
