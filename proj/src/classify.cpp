#include "corner/classify.hpp"

#include <algorithm>

#include "corner/errors.hpp"

namespace corner {

MonomialAffineMap identity_chart_map(const OrthantChart& c) {
  MonomialAffineMap f;
  f.src = c;
  f.dst = c;
  for (int i = 0; i < c.dim(); ++i) f.comp.push_back(poly_coord(c.dim(), i));
  return f;
}

MonomialAffineMap compose_maps(const MonomialAffineMap& g,
                               const MonomialAffineMap& f) {
  if (f.dst.dim() != g.src.dim() || f.dst.b != g.src.b)
    throw DomainError("compose_maps: chart mismatch");
  MonomialAffineMap h;
  h.src = f.src;
  h.dst = g.dst;
  h.src_chart = f.src_chart;
  h.dst_chart = g.dst_chart;
  for (const auto& c : g.comp) h.comp.push_back(substitute(c, f.comp));
  h.validity = f.validity;
  Region pulled = pullback_region(g.validity, f);
  for (auto& cond : pulled.conds) h.validity.conds.push_back(cond);
  h.validity.exact = h.validity.exact && pulled.exact;
  return h;
}

std::vector<LinCon> pullback_condition(const LinCon& cond,
                                       const MonomialAffineMap& f,
                                       bool* exact) {
  std::vector<LinCon> out;
  LaurentPoly p = substitute(poly_from_affine(cond.f), f.comp);
  const std::size_t n = f.src.dim();
  if (p.is_zero()) {
    if (cond.strict) out.push_back({{zero_vec(n), Rat(-1)}, false});  // false
    return out;
  }
  if (p.is_affine()) {
    out.push_back({poly_to_affine(p), cond.strict});
    return out;
  }
  if (p.is_monomial()) {
    const auto& [e, c] = *p.terms.begin();
    bool boundary_only = true;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0 && !f.src.is_boundary(static_cast<int>(i)))
        boundary_only = false;
    if (boundary_only) {
      if (c > 0) {
        if (cond.strict) {
          for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) out.push_back({aff_coord(n, i), true});
        }
        // non-strict monomial >= 0 holds on the orthant
        return out;
      }
      if (cond.strict) {
        out.push_back({{zero_vec(n), Rat(-1)}, false});  // impossible
        return out;
      }
    }
  }
  if (exact) *exact = false;
  return out;
}

Region pullback_region(const Region& r, const MonomialAffineMap& f) {
  Region out;
  out.exact = r.exact;
  for (const auto& cond : r.conds) {
    bool ok = true;
    auto pulled = pullback_condition(cond, f, &ok);
    for (auto& c : pulled) out.conds.push_back(std::move(c));
    out.exact = out.exact && ok;
  }
  for (const auto& pc : r.pconds) {
    LaurentPoly q = substitute(pc.p, f.comp);
    if (q.is_zero())
      out.conds.push_back({{zero_vec(f.src.dim()), Rat(-1)}, false});
    else if (q.is_polynomial())
      out.pconds.push_back({std::move(q)});
    else
      out.exact = false;
  }
  return out;
}

bool maps_equal(const MonomialAffineMap& a, const MonomialAffineMap& b) {
  if (a.src_chart != b.src_chart || a.dst_chart != b.dst_chart) return false;
  if (a.comp.size() != b.comp.size()) return false;
  for (std::size_t i = 0; i < a.comp.size(); ++i)
    if (!(a.comp[i] == b.comp[i])) return false;
  return true;
}

namespace {

// rank of a Laurent-polynomial matrix over the fraction field, by
// fraction-free Bareiss elimination (divisions are exact)
std::size_t poly_matrix_rank(std::vector<std::vector<LaurentPoly>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t w = 0;
  for (auto& r : m)
    for (auto& p : r) w = std::max(w, p.width);
  LaurentPoly prev = poly_const(w, Rat(1));
  std::size_t rank = 0;
  std::size_t col = 0;
  for (; rank < rows && col < cols; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        LaurentPoly num = psub(pmul(m[i][j], m[rank][col]),
                               pmul(m[i][col], m[rank][j]));
        auto q = divide_exact(num, prev);
        if (!q) throw DomainError("bareiss division failed");
        m[i][j] = *q;
      }
      m[i][col] = poly_zero(w);
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace

Classification classify_map(const MonomialAffineMap& f) {
  Classification out;
  const int sb = f.src.b, sn = f.src.dim();
  const int tb = f.dst.b;

  bool zero_marker = false;
  std::vector<BoundaryComponentData> bdata;
  for (int j = 0; j < tb; ++j) {
    const LaurentPoly& p = f.comp[j];
    BoundaryComponentData d;
    if (p.is_zero()) {
      d.zero = true;
      zero_marker = true;
      bdata.push_back(std::move(d));
      continue;
    }
    if (!p.is_monomial()) return out;  // NotBMap
    const auto& [e, c] = *p.terms.begin();
    if (c <= 0) return out;
    d.alpha = c;
    d.exps.assign(sb, 0);
    for (int i = 0; i < sn; ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0 || i >= sb) return out;  // interior or negative: not a b-map
      d.exps[i] = e[i];
    }
    bdata.push_back(std::move(d));
  }
  for (int j = tb; j < f.dst.dim(); ++j) {
    if (!f.comp[j].is_polynomial()) return out;  // singular at the boundary
  }

  out.cls = zero_marker ? BMapClass::BoundaryBMap : BMapClass::InteriorBMap;
  out.boundary = std::move(bdata);

  // disjoint exponent supports: each source boundary coordinate feeds at
  // most one target boundary component
  out.flags.b_normal = true;
  for (int i = 0; i < sb && out.flags.b_normal; ++i) {
    int uses = 0;
    for (const auto& d : out.boundary)
      if (!d.zero && d.exps[i] != 0) ++uses;
    if (uses > 1) out.flags.b_normal = false;
  }

  // b-differential, rows = target coordinates, columns = source coordinates
  // in the basis (x d/dx, d/dy); full rank demanded on every nonempty face
  std::vector<std::vector<LaurentPoly>> jac(
      f.dst.dim(), std::vector<LaurentPoly>(sn, poly_zero(sn)));
  for (int j = 0; j < tb; ++j) {
    if (out.boundary[j].zero) continue;
    for (int i = 0; i < sb; ++i)
      jac[j][i] = poly_const(sn, Rat(out.boundary[j].exps[i]));
  }
  for (int j = tb; j < f.dst.dim(); ++j) {
    for (int i = 0; i < sn; ++i) {
      LaurentPoly d = pderiv(f.comp[j], i);
      if (i < sb) d = pmul(d, poly_coord(sn, i));
      jac[j][i] = std::move(d);
    }
  }

  out.flags.b_submersion = true;
  // enumerate feasible boundary faces of the source chart
  for (unsigned mask = 0; mask < (1u << sb) && out.flags.b_submersion;
       ++mask) {
    LinSystem sys = chart_system(f.src);
    for (const auto& cond : f.validity.conds) sys.ineqs.push_back(cond);
    for (int i = 0; i < sb; ++i)
      if (mask & (1u << i)) sys.eq(aff_coord(sn, i));
    if (!feasible(sys)) continue;
    auto m = jac;
    for (auto& row : m) {
      for (auto& p : row) {
        LaurentPoly q = poly_zero(sn);
        for (const auto& [e, c] : p.terms) {
          bool kill = false;
          for (int i = 0; i < sb; ++i)
            if ((mask & (1u << i)) && e[i] > 0) kill = true;
          if (!kill) q = padd(q, poly_term(sn, c, e));
        }
        p = std::move(q);
      }
    }
    if (poly_matrix_rank(m) != static_cast<std::size_t>(f.dst.dim()))
      out.flags.b_submersion = false;
  }

  out.flags.b_fibration = out.cls == BMapClass::InteriorBMap &&
                          out.flags.b_normal && out.flags.b_submersion;
  out.flags.simple = out.flags.b_fibration;
  for (const auto& d : out.boundary) {
    for (int e : d.exps)
      if (e != 0 && e != 1) out.flags.simple = false;
  }
  return out;
}

}  // namespace corner
