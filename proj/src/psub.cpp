#include "corner/psub.hpp"

#include <algorithm>

#include "corner/errors.hpp"

namespace corner {

LinSystem psub_system(const AffinePSub& p) {
  LinSystem sys = chart_system(p.chart);
  for (int s : p.zero_hyps) sys.eq(aff_coord(sys.n, s));
  for (const auto& f : p.eqs) sys.eqs.push_back(f);
  return sys;
}

std::optional<AffinePSub> make_psub(const OrthantChart& chart,
                                    std::vector<int> zero_hyps,
                                    std::vector<AffForm> eqs) {
  const std::size_t n = chart.dim();
  for (int s : zero_hyps)
    if (!chart.is_boundary(s)) throw DomainError("zero_hyps: not boundary");
  for (const auto& f : eqs)
    if (f.lin.size() != n) throw DomainError("equation width mismatch");

  LinSystem sys = chart_system(chart);
  for (int s : zero_hyps) sys.eq(aff_coord(n, s));
  for (const auto& f : eqs) sys.eqs.push_back(f);
  if (!feasible(sys)) return std::nullopt;

  // maximal zero set: every boundary coordinate that cannot be positive
  std::vector<int> S;
  for (int i = 0; i < chart.b; ++i) {
    LinSystem probe = sys;
    probe.gt(aff_coord(n, i));
    if (!feasible(probe)) S.push_back(i);
  }

  // reduce the equations with the zero coordinates substituted away
  Mat rows;
  for (const auto& f : eqs) {
    Vec row = f.lin;
    for (int s : S) row[s] = Rat(0);
    row.push_back(f.c);
    if (!is_zero(row)) rows.push_back(std::move(row));
  }
  std::vector<int> order;
  for (std::size_t j = 0; j < n; ++j) order.push_back(static_cast<int>(j));
  order.push_back(static_cast<int>(n));
  rref(rows, order);

  AffinePSub out;
  out.chart = chart;
  out.zero_hyps = std::move(S);
  for (auto& row : rows) {
    AffForm f;
    f.c = row.back();
    row.pop_back();
    if (is_zero(row)) {
      if (f.c != 0) return std::nullopt;  // guarded already by feasibility
      continue;
    }
    f.lin = std::move(row);
    out.eqs.push_back(std::move(f));
  }
  return out;
}

bool psub_equal(const AffinePSub& a, const AffinePSub& b) {
  return a.chart.b == b.chart.b && a.chart.m == b.chart.m &&
         a.zero_hyps == b.zero_hyps && a.eqs.size() == b.eqs.size() &&
         std::equal(a.eqs.begin(), a.eqs.end(), b.eqs.begin(),
                    [](const AffForm& f, const AffForm& g) {
                      return f.lin == g.lin && f.c == g.c;
                    });
}

Mat conormal_rows(const AffinePSub& p) {
  const std::size_t n = p.chart.dim();
  Mat rows;
  for (int s : p.zero_hyps) {
    Vec e = zero_vec(n);
    e[s] = Rat(1);
    rows.push_back(std::move(e));
  }
  for (const auto& f : p.eqs) rows.push_back(f.lin);
  return rows;
}

std::optional<AffinePSub> intersect(const AffinePSub& p, const AffinePSub& q) {
  if (p.chart.b != q.chart.b || p.chart.m != q.chart.m)
    throw DomainError("intersect: chart mismatch");
  std::vector<int> zeros = p.zero_hyps;
  zeros.insert(zeros.end(), q.zero_hyps.begin(), q.zero_hyps.end());
  std::sort(zeros.begin(), zeros.end());
  zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());
  std::vector<AffForm> eqs = p.eqs;
  eqs.insert(eqs.end(), q.eqs.begin(), q.eqs.end());
  return make_psub(p.chart, std::move(zeros), std::move(eqs));
}

bool psub_contains(const AffinePSub& a, const AffinePSub& b) {
  auto r = intersect(a, b);
  return r && psub_equal(*r, b);
}

const char* rel_name(Rel r) {
  switch (r) {
    case Rel::Disjoint: return "Disjoint";
    case Rel::FirstContainsSecond: return "FirstContainsSecond";
    case Rel::SecondContainsFirst: return "SecondContainsFirst";
    case Rel::Equal: return "Equal";
    case Rel::Transversal: return "Transversal";
    case Rel::CleanNonTransversal: return "CleanNonTransversal";
    case Rel::NotClean: return "NotClean";
  }
  return "?";
}

bool is_p_positioned(const AffinePSub& p) {
  const std::size_t n = p.chart.dim();
  const int b = p.chart.b;
  if (p.eqs.empty()) return true;
  for (unsigned mask = 0; mask < (1u << b); ++mask) {
    bool skip = false;
    for (int s : p.zero_hyps)
      if (!(mask & (1u << s))) skip = true;
    if (skip) continue;
    LinSystem sys = psub_system(p);
    for (int i = 0; i < b; ++i) {
      if (mask & (1u << i))
        sys.eq(aff_coord(n, i));
      else
        sys.gt(aff_coord(n, i));
    }
    if (!feasible(sys)) continue;
    // equations must stay independent in the directions that are interior
    // on this stratum
    Mat proj;
    for (const auto& f : p.eqs) {
      Vec row = f.lin;
      for (int i = 0; i < b; ++i)
        if (mask & (1u << i)) row[i] = Rat(0);
      proj.push_back(std::move(row));
    }
    if (rank(proj) != p.eqs.size()) return false;
  }
  return true;
}

}  // namespace corner
