#include "corner/blowup.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "corner/errors.hpp"
#include "corner/pclean.hpp"

namespace corner {

namespace {

// normalized center data in one chart: boundary coordinates pinned to zero
// plus equations solved for distinct pivot coordinates; pivots are interior
// except possibly one boundary coordinate held at a positive offset (refit)
struct CenterForm {
  std::vector<int> zeros;
  std::vector<AffForm> eqs;  // pivot coefficient 1, reduced
  std::vector<int> pivots;   // coordinate solved by each equation
  int refit = -1;            // boundary pivot slot, -1 when all pivots interior
  Rat offset;                // its distance from the face when refit >= 0
};

CenterForm normalize_center(const AffinePSub& part) {
  const OrthantChart& c = part.chart;
  const int n = c.dim();
  if (part.codim() == 0)
    throw PreconditionError("blow_up: center is the whole chart");
  if (!is_p_positioned(part))
    throw NotPPositioned("blow_up: center part is not p-positioned");
  CenterForm f;
  f.zeros = part.zero_hyps;
  if (part.eqs.empty()) return f;
  Mat rows;
  for (const auto& e : part.eqs) {
    Vec r = e.lin;
    r.push_back(e.c);
    rows.push_back(std::move(r));
  }
  std::vector<int> order;
  for (int i = c.b; i < n; ++i) order.push_back(i);
  for (int i = 0; i < c.b; ++i) order.push_back(i);
  order.push_back(n);  // constant column last
  const std::vector<int> piv = rref(rows, order);
  if (piv.size() != part.eqs.size())
    throw DomainError("blow_up: dependent center equations");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (piv[r] >= n)
      throw DomainError("blow_up: inconsistent center equations");
    AffForm e;
    e.lin = Vec(rows[r].begin(), rows[r].begin() + n);
    e.c = rows[r][static_cast<std::size_t>(n)];
    if (piv[r] < c.b) {
      // the center sits at a positive distance from this boundary face; the
      // face can be cut away and the slot refit with the new front
      // coordinate, supported for a single untilted offset
      if (f.refit >= 0)
        throw NotPPositioned(
            "blow_up: center offset from more than one boundary face");
      if (!f.zeros.empty())
        throw NotPPositioned(
            "blow_up: center mixes zero and offset boundary faces");
      for (int j = 0; j < n; ++j)
        if (j != piv[r] && !(e.lin[j] == Rat(0)))
          throw NotPPositioned("blow_up: center tilted against a face");
      f.refit = piv[r];
      f.offset = -e.c;
      if (!(f.offset > Rat(0)))
        throw NotPPositioned("blow_up: center behind a boundary face");
    }
    f.eqs.push_back(std::move(e));
    f.pivots.push_back(piv[r]);
  }
  return f;
}

// the affine remainder once the pivot is moved to the other side
AffForm rest_of(const AffForm& eq, int pivot) {
  AffForm r = eq;
  r.lin[pivot] = Rat(0);
  return r;
}

// child chart where the boundary normal coordinate s_star dominates:
// x_{s_star} = t carries the front label, the other center coordinates
// divide by t in place, every index is preserved
Atlas::ChartData make_bd_child(const Atlas::ChartData& pc, const CenterForm& cf,
                               int s_star, HypLabel ff, int center_id,
                               int parent_idx) {
  const OrthantChart& p = pc.chart;
  const std::size_t n = p.dim();
  OrthantChart child;
  child.b = p.b;
  child.m = p.m;
  child.labels = p.labels;
  child.labels[s_star] = ff;
  child.name = p.name + "/c" + std::to_string(center_id) + "x" +
               std::to_string(s_star);
  ChartStep st;
  st.dom = poly_coord(n, s_star);
  st.inv_den.assign(n, 0);
  std::vector<LaurentPoly> down(n);
  for (std::size_t j = 0; j < n; ++j) {
    down[j] = poly_coord(n, j);
    st.inv_num.push_back(poly_coord(n, j));
  }
  for (int s : cf.zeros) {
    if (s == s_star) continue;
    down[s] = pmul(poly_coord(n, s_star), poly_coord(n, s));
    st.inv_den[s] = 1;
  }
  for (std::size_t a = 0; a < cf.eqs.size(); ++a) {
    const int pa = cf.pivots[a];
    down[pa] = psub(pmul(poly_coord(n, s_star), poly_coord(n, pa)),
                    poly_from_affine(rest_of(cf.eqs[a], pa)));
    st.inv_num[pa] = poly_from_affine(cf.eqs[a]);
    st.inv_den[pa] = 1;
  }
  st.down.src = child;
  st.down.dst = p;
  st.down.comp = std::move(down);
  child.region = pullback_region(p.region, st.down);
  st.down.src = child;
  Atlas::ChartData cd;
  cd.chart = child;
  cd.base_idx = pc.base_idx;
  cd.blowdown = compose_maps(pc.blowdown, st.down);
  cd.chain = pc.chain;
  cd.chain.push_back(std::move(st));
  cd.parent = parent_idx;
  return cd;
}

// sign chart where the interior normal coordinate of equation a_star
// dominates: t = sigma * eq value is appended as a boundary coordinate and
// the pivot coordinate disappears, shifting earlier interior indices by one
Atlas::ChartData make_sign_child(const Atlas::ChartData& pc,
                                 const CenterForm& cf, std::size_t a_star,
                                 int sigma, HypLabel ff, int center_id,
                                 int parent_idx) {
  const OrthantChart& p = pc.chart;
  const int n = p.dim();
  const int b = p.b;
  const int pstar = cf.pivots[a_star];
  auto cmap = [&](int j) {
    if (j < b) return j;
    return j < pstar ? j + 1 : j;
  };
  auto remap = [&](const AffForm& f) {
    AffForm g;
    g.lin = zero_vec(static_cast<std::size_t>(n));
    g.c = f.c;
    for (int j = 0; j < n; ++j) {
      if (f.lin[j] == 0) continue;
      if (j == pstar)
        throw DomainError("blow_up: pivot appears in a remainder");
      g.lin[cmap(j)] = f.lin[j];
    }
    return g;
  };
  OrthantChart child;
  child.b = b + 1;
  child.m = p.m - 1;
  child.labels = p.labels;
  child.labels.push_back(ff);
  child.name = p.name + "/c" + std::to_string(center_id) + "e" +
               std::to_string(a_star) + (sigma > 0 ? "p" : "m");
  std::vector<int> pivot_of(static_cast<std::size_t>(n), -1);
  for (std::size_t a = 0; a < cf.pivots.size(); ++a)
    pivot_of[cf.pivots[a]] = static_cast<int>(a);
  std::vector<LaurentPoly> down(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i < b) {
      const bool in_s =
          std::binary_search(cf.zeros.begin(), cf.zeros.end(), i);
      down[i] = in_s ? pmul(poly_coord(n, b), poly_coord(n, i))
                     : poly_coord(n, i);
    } else if (i == pstar) {
      down[i] = psub(pscale(Rat(sigma), poly_coord(n, b)),
                     poly_from_affine(remap(rest_of(cf.eqs[a_star], pstar))));
    } else if (pivot_of[i] >= 0) {
      const int a = pivot_of[i];
      down[i] = psub(pmul(poly_coord(n, b), poly_coord(n, cmap(i))),
                     poly_from_affine(remap(rest_of(cf.eqs[a], i))));
    } else {
      down[i] = poly_coord(n, cmap(i));
    }
  }
  ChartStep st;
  st.dom = pscale(Rat(sigma), poly_from_affine(cf.eqs[a_star]));
  st.inv_den.assign(static_cast<std::size_t>(n), 0);
  st.inv_num.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    if (j < b) {
      st.inv_num[j] = poly_coord(n, j);
      if (std::binary_search(cf.zeros.begin(), cf.zeros.end(), j))
        st.inv_den[j] = 1;
    } else if (j == b) {
      st.inv_num[j] = st.dom;
    } else {
      const int pj = j <= pstar ? j - 1 : j;
      if (pivot_of[pj] >= 0) {
        st.inv_num[j] = poly_from_affine(cf.eqs[pivot_of[pj]]);
        st.inv_den[j] = 1;
      } else {
        st.inv_num[j] = poly_coord(n, pj);
      }
    }
  }
  st.down.src = child;
  st.down.dst = p;
  st.down.comp = std::move(down);
  child.region = pullback_region(p.region, st.down);
  st.down.src = child;
  Atlas::ChartData cd;
  cd.chart = child;
  cd.base_idx = pc.base_idx;
  cd.blowdown = compose_maps(pc.blowdown, st.down);
  cd.chain = pc.chain;
  cd.chain.push_back(std::move(st));
  cd.parent = parent_idx;
  return cd;
}

// sign chart over a center offset from the innermost boundary face: that
// face is cut away here (a region-restricted copy of the parent keeps
// covering it), its slot carries the new front coordinate t, and when the
// dominant pivot is interior its slot holds the divided offset direction
Atlas::ChartData make_refit_child(const Atlas::ChartData& pc,
                                  const CenterForm& cf, std::size_t a_star,
                                  int sigma, HypLabel ff, int center_id,
                                  int parent_idx) {
  const OrthantChart& p = pc.chart;
  const int n = p.dim();
  const int r = cf.refit;
  const int pstar = cf.pivots[a_star];
  int a_r = -1;
  for (std::size_t a = 0; a < cf.pivots.size(); ++a)
    if (cf.pivots[a] == r) a_r = static_cast<int>(a);
  OrthantChart child;
  child.b = p.b;
  child.m = p.m;
  child.labels = p.labels;
  child.labels[r] = ff;
  child.name = p.name + "/c" + std::to_string(center_id) + "e" +
               std::to_string(a_star) + (sigma > 0 ? "p" : "m");
  std::vector<int> pivot_of(static_cast<std::size_t>(n), -1);
  for (std::size_t a = 0; a < cf.pivots.size(); ++a)
    pivot_of[cf.pivots[a]] = static_cast<int>(a);
  std::vector<LaurentPoly> down(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i == pstar) {
      down[i] = psub(pscale(Rat(sigma), poly_coord(n, r)),
                     poly_from_affine(rest_of(cf.eqs[a_star], pstar)));
    } else if (i == r) {
      // non-dominant refit slot: its ratio lives in the freed pivot slot
      down[i] = psub(pmul(poly_coord(n, r), poly_coord(n, pstar)),
                     poly_from_affine(rest_of(cf.eqs[a_r], r)));
    } else if (pivot_of[i] >= 0) {
      const int a = pivot_of[i];
      down[i] = psub(pmul(poly_coord(n, r), poly_coord(n, i)),
                     poly_from_affine(rest_of(cf.eqs[a], i)));
    } else {
      down[i] = poly_coord(n, i);
    }
  }
  ChartStep st;
  st.dom = pscale(Rat(sigma), poly_from_affine(cf.eqs[a_star]));
  st.inv_den.assign(static_cast<std::size_t>(n), 0);
  st.inv_num.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    if (j == r) {
      st.inv_num[j] = st.dom;
    } else if (j == pstar) {
      st.inv_num[j] = poly_from_affine(cf.eqs[a_r]);
      st.inv_den[j] = 1;
    } else if (pivot_of[j] >= 0) {
      st.inv_num[j] = poly_from_affine(cf.eqs[pivot_of[j]]);
      st.inv_den[j] = 1;
    } else {
      st.inv_num[j] = poly_coord(n, j);
    }
  }
  st.down.src = child;
  st.down.dst = p;
  st.down.comp = std::move(down);
  child.region = pullback_region(p.region, st.down);
  if (pstar == r && sigma < 0) {
    // the cut face sits at t = offset; stay strictly inside it
    AffForm away;
    away.lin = zero_vec(static_cast<std::size_t>(n));
    away.lin[r] = Rat(-1);
    away.c = cf.offset;
    child.region.conds.push_back({std::move(away), true});
  }
  st.down.src = child;
  Atlas::ChartData cd;
  cd.chart = child;
  cd.base_idx = pc.base_idx;
  cd.blowdown = compose_maps(pc.blowdown, st.down);
  cd.chain = pc.chain;
  cd.chain.push_back(std::move(st));
  cd.parent = parent_idx;
  return cd;
}

// region-restricted copy of a chart whose innermost boundary face the other
// children cut away: it keeps covering that face, and stays off the center
Atlas::ChartData make_restricted(const Atlas::ChartData& pc,
                                 const CenterForm& cf, int center_id,
                                 int parent_idx) {
  Atlas::ChartData cd = pc;
  AffForm away;
  away.lin = zero_vec(pc.chart.dim());
  away.lin[cf.refit] = Rat(-1);
  away.c = cf.offset;
  cd.chart.region.conds.push_back({std::move(away), true});
  cd.chart.name += "/c" + std::to_string(center_id) + "res";
  cd.parent = parent_idx;
  return cd;
}

// dominant boundary coordinate of a step, or -1 for a sign chart
int dominant_boundary(const ChartStep& st, const OrthantChart& parent) {
  if (!st.dom.is_monomial()) return -1;
  const auto& [e, c] = *st.dom.terms.begin();
  if (c != 1) return -1;
  int idx = -1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (e[i] != 1 || idx >= 0) return -1;
    idx = static_cast<int>(i);
  }
  return idx >= 0 && idx < parent.b ? idx : -1;
}

std::optional<AffinePSub> full_preimage(const AffinePSub& q,
                                        const AffinePSub& cp,
                                        const OrthantChart& child,
                                        const ChartStep& st, int t_idx) {
  const std::size_t n = child.dim();
  std::vector<int> zh{t_idx};
  for (int u : q.zero_hyps)
    if (!std::binary_search(cp.zero_hyps.begin(), cp.zero_hyps.end(), u))
      zh.push_back(u);
  std::vector<LaurentPoly> tzero;
  for (std::size_t i = 0; i < n; ++i)
    tzero.push_back(i == static_cast<std::size_t>(t_idx) ? poly_zero(n)
                                                         : poly_coord(n, i));
  std::vector<AffForm> eqs;
  for (const auto& eta : q.eqs) {
    LaurentPoly pe =
        substitute(substitute(poly_from_affine(eta), st.down.comp), tzero);
    if (pe.is_zero()) continue;
    if (!pe.is_polynomial() || !pe.is_affine())
      throw LiftLeavesAffineClass("full preimage left the affine class");
    eqs.push_back(poly_to_affine(pe));
  }
  std::sort(zh.begin(), zh.end());
  return make_psub(child, std::move(zh), std::move(eqs));
}

std::optional<AffinePSub> proper_transform(const AffinePSub& q,
                                           const OrthantChart& child,
                                           const ChartStep& st, int t_idx,
                                           int s_star) {
  // a lift pinned to the dominant coordinate leaves this chart entirely
  if (s_star >= 0 &&
      std::binary_search(q.zero_hyps.begin(), q.zero_hyps.end(), s_star))
    return std::nullopt;
  std::vector<LaurentPoly> pulled;
  for (const auto& eta : q.eqs) {
    LaurentPoly pe = substitute(poly_from_affine(eta), st.down.comp);
    const int k = min_exponent(pe, static_cast<std::size_t>(t_idx));
    if (k > 0) pe = shift_var(pe, static_cast<std::size_t>(t_idx), k);
    if (pe.is_zero())
      throw DomainError("proper transform: equation pulled back to zero");
    // a nonzero constant remainder certifies the lift misses this chart,
    // regardless of how the other equations look here
    if (pe.is_constant()) return std::nullopt;
    pulled.push_back(std::move(pe));
  }
  std::vector<AffForm> eqs;
  for (const auto& pe : pulled) {
    if (!pe.is_polynomial() || !pe.is_affine())
      throw LiftLeavesAffineClass("proper transform left the affine class");
    eqs.push_back(poly_to_affine(pe));
  }
  auto part = make_psub(child, q.zero_hyps, std::move(eqs));
  if (!part) return std::nullopt;
  // forced onto the front face: the set off the face was empty
  if (std::binary_search(part->zero_hyps.begin(), part->zero_hyps.end(),
                         t_idx))
    return std::nullopt;
  return part;
}

}  // namespace

std::map<int, AffinePSub> lift_sub(const Atlas& src,
                                   const std::map<int, AffinePSub>& parts,
                                   int center_id, const Atlas& dst) {
  const auto itc = src.subs.find(center_id);
  if (itc == src.subs.end())
    throw PreconditionError("lift_sub: unknown center id");
  const auto& cparts = itc->second.parts;
  bool contained = !parts.empty();
  for (const auto& [idx, q] : parts) {
    const auto ic = cparts.find(idx);
    if (ic == cparts.end() || !psub_contains(ic->second, q)) {
      contained = false;
      break;
    }
  }
  std::map<int, AffinePSub> out;
  for (int ni = 0; ni < dst.chart_count(); ++ni) {
    const auto& nc = dst.charts[ni];
    if (nc.parent < 0)
      throw PreconditionError("lift_sub: destination lacks provenance");
    const auto iq = parts.find(nc.parent);
    if (iq == parts.end()) continue;
    const AffinePSub& q = iq->second;
    const auto& oc = src.charts[nc.parent];
    if (nc.chain.size() == oc.chain.size()) {
      AffinePSub p = q;  // untouched or region-restricted chart: re-bound
      p.chart = nc.chart;
      if (!feasible(psub_system(p))) continue;
      out.emplace(ni, std::move(p));
      continue;
    }
    const ChartStep& st = nc.chain.back();
    // a boundary slot with a non-monomial image was refit: its face is cut
    // away from this child, so a sub on that face lives only in the
    // restricted copy of the parent chart
    bool on_cut_face = false;
    for (int z : q.zero_hyps)
      if (z < oc.chart.b && !st.down.comp[z].is_monomial()) on_cut_face = true;
    if (on_cut_face) continue;
    const int s_star = dominant_boundary(st, oc.chart);
    const int t_idx = s_star >= 0 ? s_star : nc.chart.b - 1;
    std::optional<AffinePSub> lifted =
        contained
            ? full_preimage(q, cparts.at(nc.parent), nc.chart, st, t_idx)
            : proper_transform(q, nc.chart, st, t_idx, s_star);
    if (lifted) out.emplace(ni, std::move(*lifted));
  }
  return out;
}

Atlas blow_up(const Atlas& a, int center_id) {
  const auto itc = a.subs.find(center_id);
  if (itc == a.subs.end())
    throw PreconditionError("blow_up: unknown center id");
  const GlobalSub& center = itc->second;
  std::map<int, CenterForm> plans;
  int codim = -1;
  for (const auto& [idx, part] : center.parts) {
    CenterForm f = normalize_center(part);
    if (codim < 0)
      codim = part.codim();
    else if (codim != part.codim())
      throw DomainError("blow_up: center parts of mixed codimension");
    plans.emplace(idx, std::move(f));
  }
  Atlas out;
  out.base = a.base;
  out.base_transitions = a.base_transitions;
  out.registry = a.registry;
  out.next_id = a.next_id;
  const HypLabel ff = out.next_id++;
  out.registry.push_back(
      {ff, HypKind::Front, center_id, "ff" + std::to_string(center_id)});
  for (int idx = 0; idx < a.chart_count(); ++idx) {
    const auto ip = plans.find(idx);
    if (ip == plans.end()) {
      Atlas::ChartData cd = a.charts[idx];
      cd.parent = idx;
      out.charts.push_back(std::move(cd));
      continue;
    }
    const CenterForm& cf = ip->second;
    if (cf.refit >= 0) {
      out.charts.push_back(make_restricted(a.charts[idx], cf, center_id, idx));
      for (std::size_t as = 0; as < cf.eqs.size(); ++as)
        for (int sigma : {1, -1})
          out.charts.push_back(make_refit_child(a.charts[idx], cf, as, sigma,
                                                ff, center_id, idx));
      continue;
    }
    for (int s_star : cf.zeros)
      out.charts.push_back(
          make_bd_child(a.charts[idx], cf, s_star, ff, center_id, idx));
    for (std::size_t as = 0; as < cf.eqs.size(); ++as)
      for (int sigma : {1, -1})
        out.charts.push_back(
            make_sign_child(a.charts[idx], cf, as, sigma, ff, center_id, idx));
  }
  // relabeling bookkeeping: retire labels no chart carries any more
  std::set<HypLabel> used;
  for (const auto& cd : out.charts)
    for (HypLabel l : cd.chart.labels) used.insert(l);
  std::vector<HypEntry> keep;
  for (const auto& e : out.registry)
    if (used.count(e.label)) keep.push_back(e);
  out.registry = std::move(keep);
  for (const auto& [sid, sub] : a.subs) {
    if (sid == center_id) continue;
    GlobalSub g;
    g.id = sid;
    g.parts = lift_sub(a, sub.parts, center_id, out);
    out.subs.emplace(sid, std::move(g));
  }
  return out;
}

BlowupSequence resolve(const Atlas& base, const std::vector<int>& order) {
  BlowupSequence seq;
  seq.base = base;
  seq.centers = order;
  const std::set<int> distinct(order.begin(), order.end());
  if (distinct.size() != order.size())
    throw PreconditionError("resolve: repeated center");
  Atlas cur = base;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Atlas next;
    try {
      next = blow_up(cur, order[i]);
    } catch (const NotPPositioned&) {
      seq.failed_step = static_cast<int>(i);
      return seq;
    }
    const std::vector<int> remaining(order.begin() + i + 1, order.end());
    seq.step_results.push_back({order[i], next.chart_count(),
                                global_p_clean(next, remaining)});
    cur = std::move(next);
  }
  seq.result = std::move(cur);
  return seq;
}

bool global_p_positioned(const Atlas& a, int sub_id) {
  const auto it = a.subs.find(sub_id);
  if (it == a.subs.end())
    throw PreconditionError("global_p_positioned: unknown id");
  for (const auto& [idx, part] : it->second.parts)
    if (!is_p_positioned(part)) return false;
  return true;
}

bool global_p_clean(const Atlas& a, const std::vector<int>& sub_ids) {
  for (int idx = 0; idx < a.chart_count(); ++idx) {
    PCleanFamily fam;
    for (int sid : sub_ids) {
      const auto it = a.subs.find(sid);
      if (it == a.subs.end())
        throw PreconditionError("global_p_clean: unknown id");
      const auto ip = it->second.parts.find(idx);
      if (ip != it->second.parts.end()) fam.elements.push_back(ip->second);
    }
    if (!fam.elements.empty() && !is_p_clean(fam)) return false;
  }
  return true;
}

}  // namespace corner
