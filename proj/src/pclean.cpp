#include "corner/pclean.hpp"

#include <algorithm>
#include <iterator>

#include "corner/errors.hpp"

namespace corner {

namespace {

bool present(const std::vector<AffinePSub>& v, const AffinePSub& p) {
  for (const auto& e : v)
    if (psub_equal(e, p)) return true;
  return false;
}

}  // namespace

PCleanFamily intersection_closure(const PCleanFamily& fam) {
  PCleanFamily out;
  for (const auto& e : fam.elements)
    if (!present(out.elements, e)) out.elements.push_back(e);
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      auto r = intersect(out.elements[i], out.elements[j]);
      if (r && !present(out.elements, *r))
        out.elements.push_back(std::move(*r));
    }
  }
  out.closure_flag = true;
  return out;
}

bool family_is_closed(const PCleanFamily& fam) {
  for (std::size_t i = 0; i < fam.elements.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto r = intersect(fam.elements[i], fam.elements[j]);
      if (r && !present(fam.elements, *r)) return false;
    }
  return true;
}

namespace {

// Decides whether one adapted frame exists over the stratum where exactly
// the coordinates in T vanish. Such a frame is a complement Y* of
// X_T = span{dx_t : t in T} that contains, for every listed conormal N, a
// complement of N's own boundary part X_S inside N. Writing Y* as the graph
// of a linear shear g from the projected conormal span into X_T, the
// containment conditions become linear equations on g, so existence is an
// exact rational solvability question.
bool clean_config(const OrthantChart& chart, unsigned T,
                  const std::vector<const AffinePSub*>& through) {
  const std::size_t n = chart.dim();
  std::vector<int> tcols;
  for (int i = 0; i < chart.b; ++i)
    if (T & (1u << i)) tcols.push_back(i);
  if (tcols.empty() || through.empty()) return true;

  auto project = [&](Vec v) {
    for (int t : tcols) v[t] = Rat(0);
    return v;
  };

  Mat xt;
  for (int t : tcols) {
    Vec u = zero_vec(n);
    u[t] = Rat(1);
    xt.push_back(std::move(u));
  }

  // each conormal may meet X_T only in its own boundary part
  for (const auto* e : through) {
    Mat meet = span_intersection(conormal_rows(*e), xt);
    if (rank(std::move(meet)) != e->zero_hyps.size()) return false;
  }

  // W = joint span of the projected conormals
  Mat wrows;
  for (const auto* e : through)
    for (auto& row : conormal_rows(*e)) wrows.push_back(project(row));
  Mat w = span_basis(std::move(wrows));
  const std::size_t r = w.size();
  if (r == 0) return true;

  Mat wt(n, Vec(r, Rat(0)));  // transpose, for coordinates in W
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t j = 0; j < n; ++j) wt[j][s] = w[s][j];

  // unknowns: the shear images g(w_s) in X_T, entry (s, ti)
  const std::size_t nt = tcols.size();
  Mat a;
  Vec b;
  for (const auto* e : through) {
    for (auto& v : conormal_rows(*e)) {
      Vec u = project(v);
      auto c = solve(wt, u);
      if (!c) throw DomainError("clean_config: projection left its span");
      for (std::size_t ti = 0; ti < nt; ++ti) {
        int t = tcols[ti];
        if (std::binary_search(e->zero_hyps.begin(), e->zero_hyps.end(), t))
          continue;  // ambiguity inside the element's own boundary part
        Vec row = zero_vec(r * nt);
        for (std::size_t s = 0; s < r; ++s) row[s * nt + ti] = (*c)[s];
        a.push_back(std::move(row));
        b.push_back(v[t]);
      }
    }
  }
  if (a.empty()) return true;
  return solve(a, b).has_value();
}

}  // namespace

bool is_p_clean(const PCleanFamily& fam) {
  if (fam.elements.empty()) return true;
  const OrthantChart& chart = fam.elements.front().chart;
  for (const auto& e : fam.elements)
    if (e.chart.b != chart.b || e.chart.m != chart.m)
      throw DomainError("is_p_clean: mixed charts");
  for (const auto& e : fam.elements)
    if (!is_p_positioned(e)) return false;

  const std::size_t n = chart.dim();
  PCleanFamily closure = intersection_closure(fam);
  for (const auto& R : closure.elements) {
    for (unsigned T = 0; T < (1u << chart.b); ++T) {
      bool skip = false;
      for (int s : R.zero_hyps)
        if (!(T & (1u << s))) skip = true;
      if (skip) continue;
      LinSystem sys = psub_system(R);
      for (int i = 0; i < chart.b; ++i) {
        if (T & (1u << i))
          sys.eq(aff_coord(n, i));
        else
          sys.gt(aff_coord(n, i));
      }
      if (!feasible(sys)) continue;

      // the members containing this whole stratum piece
      std::vector<const AffinePSub*> through;
      for (const auto& e : fam.elements) {
        bool inside = true;
        for (int s : e.zero_hyps) {
          LinSystem probe = sys;
          probe.gt(aff_coord(n, s));
          if (feasible(probe)) inside = false;
          if (!inside) break;
        }
        for (const auto& f : e.eqs) {
          if (!inside) break;
          LinSystem above = sys;
          above.gt(f);
          LinSystem below = sys;
          below.gt(aff_scale(Rat(-1), f));
          if (feasible(above) || feasible(below)) inside = false;
        }
        if (inside) through.push_back(&e);
      }
      if (!clean_config(chart, T, through)) return false;
    }
  }
  return true;
}

Rel relation(const AffinePSub& p, const AffinePSub& q) {
  if (p.chart.b != q.chart.b || p.chart.m != q.chart.m)
    throw DomainError("relation: chart mismatch");
  auto r = intersect(p, q);
  if (!r) return Rel::Disjoint;
  bool p_has_q = psub_equal(*r, q);
  bool q_has_p = psub_equal(*r, p);
  if (p_has_q && q_has_p) return Rel::Equal;
  if (p_has_q) return Rel::FirstContainsSecond;
  if (q_has_p) return Rel::SecondContainsFirst;
  Mat joint = conormal_rows(p);
  for (auto& row : conormal_rows(q)) joint.push_back(row);
  if (rank(joint) == static_cast<std::size_t>(p.codim() + q.codim()))
    return Rel::Transversal;
  PCleanFamily pair;
  pair.elements = {p, q};
  return is_p_clean(pair) ? Rel::CleanNonTransversal : Rel::NotClean;
}

const char* order_class_name(OrderClass c) {
  switch (c) {
    case OrderClass::SizeOrder: return "SizeOrder";
    case OrderClass::IntersectionOrder: return "IntersectionOrder";
    case OrderClass::Neither: return "Neither";
  }
  return "?";
}

OrderClass order_class(const PCleanFamily& ordered) {
  const auto& el = ordered.elements;
  auto position = [&](const AffinePSub& p) -> int {
    for (std::size_t k = 0; k < el.size(); ++k)
      if (psub_equal(el[k], p)) return static_cast<int>(k);
    return -1;
  };
  bool size_ok = true, inter_ok = true;
  for (std::size_t j = 0; j < el.size(); ++j) {
    if (j > 0 && el[j].dim() < el[j - 1].dim()) size_ok = false;
    for (std::size_t i = 0; i < j; ++i) {
      auto r = intersect(el[i], el[j]);
      if (!r) continue;
      int pos = position(*r);
      if (pos < 0)
        throw PreconditionError("order_class: family not closed");
      if (pos > static_cast<int>(j)) inter_ok = false;
    }
  }
  if (size_ok && !inter_ok)
    throw PreconditionError("order_class: size order violating intersection rule");
  if (size_ok) return OrderClass::SizeOrder;
  if (inter_ok) return OrderClass::IntersectionOrder;
  return OrderClass::Neither;
}

AffinePSub diagonal_psub(const OrthantChart& chart, int fibre_offset, int k,
                         int kappa, const Partition& part,
                         const std::vector<int>& pins) {
  const std::size_t n = chart.dim();
  std::vector<AffForm> eqs;
  for (const auto& block : part.blocks) {
    for (std::size_t t = 1; t < block.size(); ++t) {
      for (int c = 0; c < kappa; ++c) {
        AffForm f = aff_zero(n);
        f.lin[fibre_offset + (block[t - 1] - 1) * kappa + c] = 1;
        f.lin[fibre_offset + (block[t] - 1) * kappa + c] = -1;
        eqs.push_back(std::move(f));
      }
    }
  }
  auto p = make_psub(chart, pins, std::move(eqs));
  if (!p) throw DomainError("diagonal_psub: empty diagonal");
  (void)k;
  return *p;
}

PCleanFamily diagonal_family(int k, int kappa, bool scl) {
  if (k < 2 || kappa < 1)
    throw PreconditionError("diagonal_family: need k >= 2, kappa >= 1");
  OrthantChart chart = make_chart(scl ? 1 : 0, k * kappa,
                                  scl ? std::vector<HypLabel>{0}
                                      : std::vector<HypLabel>{});
  if (scl) {
    // declared extent of the parameter interval
    AffForm cap = aff_coord(chart.dim(), 0);
    cap = aff_sub(AffForm{zero_vec(chart.dim()), Rat(1)}, cap);
    chart.region.conds.push_back({cap, false});
  }
  std::vector<int> pins;
  if (scl) pins.push_back(0);
  PCleanFamily fam;
  for (const auto& part : enumerate_partitions(k)) {
    if (static_cast<int>(part.blocks.size()) == k) continue;  // discrete
    fam.elements.push_back(
        diagonal_psub(chart, scl ? 1 : 0, k, kappa, part, pins));
  }
  fam.closure_flag = true;
  return fam;
}

}  // namespace corner
