#include "corner/atlas.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "corner/errors.hpp"

namespace corner {

namespace {

void seed_registry(Atlas& a) {
  std::set<HypLabel> seen;
  int hi = -1;
  for (const auto& c : a.base) {
    for (HypLabel l : c.labels) {
      hi = std::max(hi, l);
      if (seen.insert(l).second)
        a.registry.push_back(
            {l, HypKind::Original, -1, "H" + std::to_string(l)});
    }
  }
  a.next_id = hi + 1;
}

}  // namespace

Atlas make_atlas(const OrthantChart& base_chart) {
  Atlas a;
  a.base.push_back(base_chart);
  a.charts.push_back({base_chart, 0, identity_chart_map(base_chart), {}});
  seed_registry(a);
  return a;
}

Atlas make_atlas_multi(
    std::vector<OrthantChart> bases,
    std::map<std::pair<int, int>, MonomialAffineMap> transitions) {
  if (bases.empty()) throw PreconditionError("make_atlas_multi: no charts");
  Atlas a;
  a.base = std::move(bases);
  a.base_transitions = std::move(transitions);
  for (std::size_t i = 0; i < a.base.size(); ++i)
    a.charts.push_back({a.base[i], static_cast<int>(i),
                        identity_chart_map(a.base[i]),
                        {}});
  for (const auto& [key, f] : a.base_transitions) {
    if (key.first < 0 || key.first >= static_cast<int>(a.base.size()) ||
        key.second < 0 || key.second >= static_cast<int>(a.base.size()))
      throw PreconditionError("make_atlas_multi: transition key out of range");
    if (f.src.dim() != a.base[key.first].dim() ||
        f.dst.dim() != a.base[key.second].dim())
      throw PreconditionError("make_atlas_multi: transition chart mismatch");
  }
  seed_registry(a);
  return a;
}

int add_sub(Atlas& a, std::map<int, AffinePSub> parts) {
  if (parts.empty()) throw PreconditionError("add_sub: no parts");
  for (const auto& [idx, part] : parts) {
    if (idx < 0 || idx >= a.chart_count())
      throw PreconditionError("add_sub: chart index out of range");
    const OrthantChart& c = a.chart(idx);
    if (part.chart.b != c.b || part.chart.m != c.m)
      throw PreconditionError("add_sub: part chart mismatch");
  }
  GlobalSub s;
  s.id = a.next_id++;
  s.parts = std::move(parts);
  a.subs.emplace(s.id, std::move(s));
  return a.next_id - 1;
}

int add_sub(Atlas& a, int chart_idx, const AffinePSub& part) {
  std::map<int, AffinePSub> parts;
  parts.emplace(chart_idx, part);
  return add_sub(a, std::move(parts));
}

const HypEntry& registry_entry(const Atlas& a, HypLabel l) {
  for (const auto& e : a.registry)
    if (e.label == l) return e;
  throw DomainError("registry_entry: unknown label " + std::to_string(l));
}

namespace {

// ---------------------------------------------------------------------------
// Exact rational expressions. A transition recovered by inverting a blow-down
// chain can leave the Laurent class (front-face charts of two resolutions may
// be anchored against different frames, which relates them by fractional
// maps). We track such components as a Laurent numerator over a product of
// primitive monic polynomial factors; every factor must later receive an
// affine sign certificate for the overlap to count.

constexpr std::size_t kTermCap = 256;   // numerator size guard
constexpr std::size_t kFactorCap = 8;   // distinct denominator factors
constexpr std::size_t kUnknownCap = 5;  // enumerated sign unknowns

// temporary diagnostics, enabled by CORNER_DEBUG_OVERLAP
bool debug_overlap() {
  static const bool on = std::getenv("CORNER_DEBUG_OVERLAP") != nullptr;
  return on;
}

struct RatExpr {
  LaurentPoly num;
  // primitive monic non-monomial factors with positive powers; monomial
  // content lives in the numerator as (possibly negative) exponents
  std::vector<std::pair<LaurentPoly, int>> den;
};

RatExpr rat_poly(LaurentPoly p) { return {std::move(p), {}}; }

// absorb 1/f^pow into r, normalizing f to a primitive monic factor
bool den_push(RatExpr& r, LaurentPoly f, int pow) {
  if (f.is_zero() || pow <= 0) return false;
  const std::size_t w = f.width;
  ExpVec content(w, 0);
  bool first = true;
  for (const auto& [e, c] : f.terms) {
    for (std::size_t i = 0; i < w; ++i)
      content[i] = first ? e[i] : std::min(content[i], e[i]);
    first = false;
  }
  if (std::any_of(content.begin(), content.end(), [](int k) { return k != 0; })) {
    ExpVec neg(w), shift(w);
    for (std::size_t i = 0; i < w; ++i) {
      neg[i] = -content[i];
      shift[i] = -content[i] * pow;
    }
    f = pmul(f, poly_term(w, Rat(1), neg));
    r.num = pmul(r.num, poly_term(w, Rat(1), shift));
  }
  if (f.is_constant()) {
    Rat mul(1);
    for (int i = 0; i < pow; ++i) mul /= f.constant_value();
    r.num = pscale(mul, r.num);
    return true;
  }
  const Rat lead = f.terms.begin()->second;
  if (lead != Rat(1)) {
    f = pscale(Rat(1) / lead, f);
    Rat mul(1);
    for (int i = 0; i < pow; ++i) mul /= lead;
    r.num = pscale(mul, r.num);
  }
  for (auto& [g, k] : r.den)
    if (g == f) {
      k += pow;
      return true;
    }
  r.den.push_back({std::move(f), pow});
  return r.den.size() <= kFactorCap;
}

void rat_reduce(RatExpr& r) {
  if (r.num.is_zero()) {
    r.den.clear();
    return;
  }
  for (auto& [f, k] : r.den)
    while (k > 0) {
      auto q = divide_exact(r.num, f);
      if (!q) break;
      r.num = std::move(*q);
      --k;
    }
  std::erase_if(r.den, [](const auto& fk) { return fk.second == 0; });
}

std::optional<RatExpr> rat_mul(const RatExpr& a, const RatExpr& b) {
  RatExpr r{pmul(a.num, b.num), a.den};
  if (r.num.terms.size() > kTermCap) return std::nullopt;
  for (const auto& [f, k] : b.den)
    if (!den_push(r, f, k)) return std::nullopt;
  rat_reduce(r);
  return r;
}

std::optional<RatExpr> rat_inv(const RatExpr& a) {
  if (a.num.is_zero()) return std::nullopt;
  const std::size_t w = a.num.width;
  RatExpr r{poly_const(w, Rat(1)), {}};
  for (const auto& [f, k] : a.den)
    for (int i = 0; i < k; ++i) {
      r.num = pmul(r.num, f);
      if (r.num.terms.size() > kTermCap) return std::nullopt;
    }
  if (a.num.is_monomial()) {
    const auto& [e, c] = *a.num.terms.begin();
    ExpVec ne(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
    r.num = pmul(r.num, poly_term(w, Rat(1) / c, ne));
  } else if (!den_push(r, a.num, 1)) {
    return std::nullopt;
  }
  rat_reduce(r);
  return r;
}

std::optional<RatExpr> rat_div(const RatExpr& a, const RatExpr& b) {
  auto i = rat_inv(b);
  if (!i) return std::nullopt;
  return rat_mul(a, *i);
}

std::optional<RatExpr> rat_add(const RatExpr& a, const RatExpr& b) {
  RatExpr r;
  r.den = a.den;
  for (const auto& [f, k] : b.den) {
    bool found = false;
    for (auto& [g, kg] : r.den)
      if (g == f) {
        kg = std::max(kg, k);
        found = true;
        break;
      }
    if (!found) r.den.push_back({f, k});
  }
  if (r.den.size() > kFactorCap) return std::nullopt;
  auto scale_up = [&r](const RatExpr& x) -> std::optional<LaurentPoly> {
    LaurentPoly n = x.num;
    for (const auto& [f, k] : r.den) {
      int have = 0;
      for (const auto& [g, kg] : x.den)
        if (g == f) {
          have = kg;
          break;
        }
      for (int i = have; i < k; ++i) {
        n = pmul(n, f);
        if (n.terms.size() > kTermCap) return std::nullopt;
      }
    }
    return n;
  };
  auto an = scale_up(a), bn = scale_up(b);
  if (!an || !bn) return std::nullopt;
  r.num = padd(*an, *bn);
  if (r.num.terms.size() > kTermCap) return std::nullopt;
  rat_reduce(r);
  return r;
}

std::optional<RatExpr> rat_pow(const RatExpr& a, int e) {
  RatExpr r = rat_poly(poly_const(a.num.width, Rat(1)));
  if (e == 0) return r;
  RatExpr base = a;
  if (e < 0) {
    auto i = rat_inv(a);
    if (!i) return std::nullopt;
    base = std::move(*i);
    e = -e;
  }
  for (int i = 0; i < e; ++i) {
    auto m = rat_mul(r, base);
    if (!m) return std::nullopt;
    r = std::move(*m);
  }
  return r;
}

// value of p with coordinate i replaced by vals[i]; w = width of the values
std::optional<RatExpr> subst_rat(const LaurentPoly& p,
                                 const std::vector<RatExpr>& vals,
                                 std::size_t w) {
  RatExpr acc = rat_poly(poly_zero(w));
  for (const auto& [e, c] : p.terms) {
    RatExpr t = rat_poly(poly_const(w, c));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto pw = rat_pow(vals[i], e[i]);
      if (!pw) return std::nullopt;
      auto m = rat_mul(t, *pw);
      if (!m) return std::nullopt;
      t = std::move(*m);
    }
    auto s = rat_add(acc, t);
    if (!s) return std::nullopt;
    acc = std::move(*s);
  }
  return acc;
}

// p = x^e * rest with rest a polynomial whose per-variable minimum exponent
// is zero; p must be nonzero
void strip_content(const LaurentPoly& p, ExpVec& e, LaurentPoly& rest) {
  const std::size_t w = p.width;
  e.assign(w, 0);
  bool first = true;
  for (const auto& [ev, c] : p.terms) {
    for (std::size_t i = 0; i < w; ++i)
      e[i] = first ? ev[i] : std::min(e[i], ev[i]);
    first = false;
  }
  ExpVec ne(w);
  for (std::size_t i = 0; i < w; ++i) ne[i] = -e[i];
  rest = pmul(p, poly_term(w, Rat(1), ne));
}

// every term of sgn*p is nonnegative on the sector cut out of the orthant by
// the interior sign pins; requires p polynomial in the pinned variables
bool termwise_nonneg(const LaurentPoly& p, int sgn, const OrthantChart& src,
                     const std::map<int, int>& pin) {
  for (const auto& [e, c] : p.terms) {
    int s = c > 0 ? 1 : -1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0) return false;
      if (src.is_boundary(static_cast<int>(i)) || e[i] % 2 == 0) continue;
      auto it = pin.find(static_cast<int>(i));
      if (it == pin.end()) return false;
      if (it->second < 0) s = -s;
    }
    if (s != sgn) return false;
  }
  return true;
}

// sgn*p is bounded below by a positive constant on the pinned sector
bool termwise_strict(const LaurentPoly& p, int sgn, const OrthantChart& src,
                     const std::map<int, int>& pin) {
  return termwise_nonneg(p, sgn, src, pin) &&
         p.terms.count(ExpVec(p.width, 0)) > 0;
}

// Certified overlap regions for a computed transition. Every piece is a
// conjunction of affine and open polynomial conditions on which all
// components are defined, the image lies in the target orthant and region,
// and each denominator factor keeps a strict sign: through a termwise
// certificate on the sign sector when one exists, through an explicit
// condition otherwise. Sign-ambiguous data is resolved by enumerating the
// unknown signs; each feasible assignment yields its own piece (one
// component of the overlap). Pieces are subsets of the true overlap: exact
// means the certificate holds everywhere on the piece, not that the piece
// is maximal.
std::vector<Region> overlap_pieces(const OrthantChart& src,
                                   const OrthantChart& dst,
                                   const std::vector<RatExpr>& comp,
                                   const Region& carried) {
  const std::size_t n = src.dim();
  std::vector<LaurentPoly> atoms;
  auto atom_find = [&atoms](const LaurentPoly& f) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i] == f) return static_cast<int>(i);
    return -1;
  };
  for (const auto& r : comp)
    for (const auto& [f, k] : r.den)
      if (atom_find(f) < 0) atoms.push_back(f);
  // pins required by boundary parity, and pins that merely sharpen termwise
  // certificates for non-affine data (kept only while the cap allows)
  std::set<int> unknown_vars;
  std::set<int> helper_vars;
  auto note_odd_vars = [&](const LaurentPoly& p, std::set<int>& into) {
    for (const auto& [e, c] : p.terms)
      for (std::size_t i = 0; i < n; ++i)
        if (e[i] % 2 != 0 && !src.is_boundary(static_cast<int>(i)))
          into.insert(static_cast<int>(i));
  };
  for (const auto& f : atoms)
    if (!f.is_affine()) note_odd_vars(f, helper_vars);
  std::set<int> need_nonzero;
  for (const auto& r : comp)
    for (const auto& [e, c] : r.num.terms)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0) need_nonzero.insert(static_cast<int>(i));
  // numerator shapes; boundary components need a sign certificate
  struct Shape {
    ExpVec e;
    LaurentPoly prim;
    std::vector<int> odd_vars;   // interior vars with odd exponent
    std::vector<int> odd_atoms;  // denominator atoms with odd power
  };
  const int db = dst.b;
  std::vector<Shape> shape(comp.size());
  for (std::size_t j = 0; j < comp.size(); ++j) {
    const RatExpr& r = comp[j];
    if (r.num.is_zero()) {
      if (static_cast<int>(j) < db) return {};  // image inside a face
      continue;
    }
    Shape& s = shape[j];
    strip_content(r.num, s.e, s.prim);
    for (std::size_t i = 0; i < n; ++i)
      if (!src.is_boundary(static_cast<int>(i)) && s.e[i] % 2 != 0)
        s.odd_vars.push_back(static_cast<int>(i));
    for (const auto& [f, k] : r.den)
      if (k % 2 != 0) s.odd_atoms.push_back(atom_find(f));
    if (static_cast<int>(j) < db) {
      for (int v : s.odd_vars) unknown_vars.insert(v);
      if (!s.prim.is_constant() && !s.prim.is_affine())
        note_odd_vars(s.prim, helper_vars);
    }
  }
  std::vector<int> uv(unknown_vars.begin(), unknown_vars.end());
  if (atoms.size() + uv.size() > kUnknownCap) {
    if (debug_overlap())
      std::fprintf(stderr, "[overlap] %zu sign unknowns exceed cap\n",
                   atoms.size() + uv.size());
    return {};
  }
  for (int v : helper_vars) {
    if (atoms.size() + uv.size() >= kUnknownCap) break;
    if (!unknown_vars.count(v)) uv.push_back(v);
  }
  std::sort(uv.begin(), uv.end());
  const std::size_t nu = atoms.size() + uv.size();
  std::vector<Region> pieces;
  for (std::uint32_t mask = 0; mask < (1u << nu); ++mask) {
    std::map<int, int> pin;
    for (std::size_t vi = 0; vi < uv.size(); ++vi)
      pin[uv[vi]] = (mask >> (atoms.size() + vi)) & 1u ? -1 : 1;
    Region v = carried;
    bool ok = true;
    // every atom carries its branch sign, realized by whatever certificate
    // is available: termwise on the sector (free), affine, or polynomial
    std::vector<int> asign(atoms.size(), 0);
    for (std::size_t a = 0; a < atoms.size() && ok; ++a) {
      const int sg = (mask >> a) & 1u ? -1 : 1;
      asign[a] = sg;
      if (termwise_strict(atoms[a], sg, src, pin)) continue;
      if (termwise_strict(atoms[a], -sg, src, pin))
        ok = false;  // sector already certifies the opposite sign
      else if (atoms[a].is_affine())
        v.conds.push_back(
            {aff_scale(Rat(sg), poly_to_affine(atoms[a])), true});
      else
        v.pconds.push_back({pscale(Rat(sg), atoms[a])});
    }
    if (!ok) continue;
    for (int j = 0; j < db && ok; ++j) {
      const Shape& s = shape[j];
      int req = 1;
      for (int var : s.odd_vars) req *= pin[var];
      for (int a : s.odd_atoms) req *= asign[static_cast<std::size_t>(a)];
      if (s.prim.is_constant()) {
        if (req * (s.prim.constant_value() > 0 ? 1 : -1) < 0) ok = false;
      } else if (s.prim.is_affine()) {
        v.conds.push_back({aff_scale(Rat(req), poly_to_affine(s.prim)), false});
      } else if (!termwise_nonneg(s.prim, req, src, pin)) {
        // open condition: sound, at the price of the prim-vanishing slice
        v.pconds.push_back({pscale(Rat(req), s.prim)});
      }
    }
    if (!ok) continue;
    for (const auto& [var, sgn] : pin)
      v.conds.push_back({aff_scale(Rat(sgn), aff_coord(n, var)),
                         need_nonzero.count(var) > 0});
    for (int var : need_nonzero)
      if (!pin.count(var)) v.conds.push_back({aff_coord(n, var), true});
    // the image must satisfy the target chart's extra constraints
    for (const auto& cond : dst.region.conds) {
      auto pulled = subst_rat(poly_from_affine(cond.f), comp, n);
      if (!pulled) {
        v.exact = false;  // cannot translate: keep a necessary-only region
        continue;
      }
      if (pulled->num.is_zero()) {
        if (cond.strict) ok = false;
        continue;
      }
      int dsign = 1;
      bool known = true;
      for (const auto& [f, k] : pulled->den) {
        if (k % 2 == 0) continue;
        const int a = atom_find(f);
        if (a < 0) {
          known = false;
          break;
        }
        dsign *= asign[static_cast<std::size_t>(a)];
      }
      if (!known) {
        v.exact = false;
        continue;
      }
      ExpVec pe;
      LaurentPoly pp;
      strip_content(pulled->num, pe, pp);
      int psign = dsign;
      bool expressible = true;
      std::vector<std::pair<int, int>> strict_vars;  // (var, sign)
      for (std::size_t i = 0; i < n && expressible; ++i) {
        if (pe[i] == 0) continue;
        if (src.is_boundary(static_cast<int>(i))) {
          if (cond.strict || pe[i] < 0)
            strict_vars.push_back({static_cast<int>(i), 1});
        } else if (pe[i] % 2 != 0 || cond.strict || pe[i] < 0) {
          auto it = pin.find(static_cast<int>(i));
          if (it == pin.end()) {
            expressible = false;
            break;
          }
          if (pe[i] % 2 != 0) psign *= it->second;
          if (cond.strict || pe[i] < 0)
            strict_vars.push_back({static_cast<int>(i), it->second});
        }
      }
      if (!expressible) {
        v.exact = false;
        continue;
      }
      if (pp.is_constant()) {
        if (psign * (pp.constant_value() > 0 ? 1 : -1) < 0) {
          ok = false;  // holds at most on a face slice, never on an overlap
          continue;
        }
      } else if (pp.is_affine()) {
        v.conds.push_back(
            {aff_scale(Rat(psign), poly_to_affine(pp)), cond.strict});
      } else if (cond.strict ? !termwise_strict(pp, psign, src, pin)
                             : !termwise_nonneg(pp, psign, src, pin)) {
        v.pconds.push_back({pscale(Rat(psign), pp)});
      }
      for (const auto& [var, sgn] : strict_vars)
        v.conds.push_back({aff_scale(Rat(sgn), aff_coord(n, var)), true});
    }
    if (!ok) continue;
    v.exact = v.exact && dst.region.exact;
    {
      std::vector<PolyCon> uniq;
      for (auto& pc : v.pconds) {
        bool seen = false;
        for (const auto& u : uniq)
          if (u.p == pc.p) {
            seen = true;
            break;
          }
        if (!seen) uniq.push_back(std::move(pc));
      }
      v.pconds = std::move(uniq);
    }
    // A genuine overlap of charts is open, so the affine part of the piece
    // must stay feasible with every boundary coordinate of the source chart
    // strictly positive. Open polynomial conditions stay out of the gate:
    // they hold on a neighbourhood of any piece point, so each piece point
    // is still a limit of certified interior points along a segment toward
    // a gate witness.
    LinSystem gate = chart_system(src);
    for (int i = 0; i < src.b; ++i) gate.gt(aff_coord(n, i));
    for (const auto& c : v.conds) {
      if (c.strict)
        gate.gt(c.f);
      else
        gate.ge(c.f);
    }
    if (!feasible(gate)) continue;
    pieces.push_back(std::move(v));
  }
  return pieces;
}

struct WalkOut {
  std::vector<RatExpr> comp;
  std::vector<Region> pieces;
  bool pure = false;  // every component is Laurent
};

std::optional<WalkOut> walk_transition(const Atlas& A, int from, const Atlas& B,
                                       int to) {
  if (from < 0 || from >= A.chart_count() || to < 0 || to >= B.chart_count())
    throw PreconditionError("transition: chart index out of range");
  const auto& cf = A.charts[from];
  const auto& ct = B.charts[to];
  MonomialAffineMap psi = cf.blowdown;  // from-chart -> its base chart
  if (cf.base_idx != ct.base_idx) {
    const std::pair<int, int> key{cf.base_idx, ct.base_idx};
    const MonomialAffineMap* bt = nullptr;
    if (auto it = A.base_transitions.find(key); it != A.base_transitions.end())
      bt = &it->second;
    else if (auto jt = B.base_transitions.find(key);
             jt != B.base_transitions.end())
      bt = &jt->second;
    if (!bt) return std::nullopt;  // base charts do not meet
    try {
      psi = compose_maps(*bt, psi);
    } catch (const UnsupportedComposition&) {
      return std::nullopt;
    }
  }
  const std::size_t n = cf.chart.dim();
  std::vector<RatExpr> comp;
  comp.reserve(psi.comp.size());
  for (const auto& c : psi.comp) comp.push_back(rat_poly(c));
  int step_no = 0;
  for (const ChartStep& st : ct.chain) {
    ++step_no;
    auto dval = subst_rat(st.dom, comp, n);
    if (!dval || dval->num.is_zero()) {
      if (debug_overlap())
        std::fprintf(stderr, "[walk %d->%d] step %d: dom %s\n", from, to,
                     step_no, dval ? "vanishes" : "too large");
      return std::nullopt;
    }
    std::vector<RatExpr> next(st.inv_num.size());
    for (std::size_t j = 0; j < st.inv_num.size(); ++j) {
      auto numv = subst_rat(st.inv_num[j], comp, n);
      if (!numv) return std::nullopt;
      if (st.inv_den[j] == 0) {
        next[j] = std::move(*numv);
      } else {
        auto dp = rat_pow(*dval, st.inv_den[j]);
        if (!dp) return std::nullopt;
        auto q = rat_div(*numv, *dp);
        if (!q) return std::nullopt;
        next[j] = std::move(*q);
      }
    }
    comp = std::move(next);
  }
  // construction invariant: the target blow-down applied to the computed
  // transition must return the source blow-down as a rational identity
  for (std::size_t l = 0; l < ct.blowdown.comp.size(); ++l) {
    auto back = subst_rat(ct.blowdown.comp[l], comp, n);
    if (!back) return std::nullopt;
    auto diff = rat_add(*back, rat_poly(pneg(psi.comp[l])));
    if (!diff) return std::nullopt;
    if (!diff->num.is_zero())
      throw DomainError(
          "transition: chain inversion does not return the blow-down");
  }
  WalkOut out;
  if (debug_overlap()) std::fprintf(stderr, "[walk %d->%d] ", from, to);
  out.pieces = overlap_pieces(cf.chart, ct.chart, comp, psi.validity);
  if (out.pieces.empty()) {
    if (debug_overlap()) {
      std::fprintf(stderr, "[walk %d->%d] no feasible piece; comps:\n", from,
                   to);
      for (const auto& r : comp) {
        std::fprintf(stderr, "    %s", r.num.str().c_str());
        for (const auto& [f, k] : r.den)
          std::fprintf(stderr, " / (%s)^%d", f.str().c_str(), k);
        std::fprintf(stderr, "\n");
      }
    }
    return std::nullopt;
  }
  if (debug_overlap()) std::fprintf(stderr, "[walk %d->%d] ok\n", from, to);
  out.pure = std::all_of(comp.begin(), comp.end(),
                         [](const RatExpr& r) { return r.den.empty(); });
  out.comp = std::move(comp);
  return out;
}

std::optional<MonomialAffineMap> transition_impl(const Atlas& A, int from,
                                                 const Atlas& B, int to) {
  auto w = walk_transition(A, from, B, to);
  // a single Laurent-class transition needs one unambiguous overlap piece
  // whose validity stays in the affine class
  if (!w || !w->pure || w->pieces.size() != 1 ||
      !w->pieces[0].pconds.empty())
    return std::nullopt;
  MonomialAffineMap out;
  out.src = A.charts[from].chart;
  out.dst = B.charts[to].chart;
  out.src_chart = from;
  out.dst_chart = to;
  out.comp.reserve(w->comp.size());
  for (auto& r : w->comp) out.comp.push_back(std::move(r.num));
  out.validity = std::move(w->pieces[0]);
  return out;
}

}  // namespace

std::optional<MonomialAffineMap> atlas_transition(const Atlas& a, int from,
                                                  int to) {
  if (from == to) {
    if (from < 0 || from >= a.chart_count())
      throw PreconditionError("transition: chart index out of range");
    MonomialAffineMap id = identity_chart_map(a.chart(from));
    id.src_chart = id.dst_chart = from;
    return id;
  }
  return transition_impl(a, from, a, to);
}

std::optional<MonomialAffineMap> cross_transition(const Atlas& A, int from,
                                                  const Atlas& B, int to) {
  return transition_impl(A, from, B, to);
}

std::vector<Region> cross_overlap(const Atlas& A, int from, const Atlas& B,
                                  int to) {
  auto w = walk_transition(A, from, B, to);
  if (!w) return {};
  return std::move(w->pieces);
}


namespace {

// polynomial restricted to the face x_i = 0
LaurentPoly poly_face(const LaurentPoly& p, std::size_t i) {
  LaurentPoly out = poly_const(p.width, Rat(0));
  for (const auto& [e, c] : p.terms)
    if (e[static_cast<std::size_t>(i)] == 0) out.terms.emplace(e, c);
  return out;
}

// Conservative feasibility of an affine system together with polynomial
// constraints p <= 0. Variables the affine part forces to zero are
// substituted away; constraints that become affine join the system,
// constant ones are decided, anything left unresolved counts as satisfiable
// (erring toward "a point escapes", never toward false coverage).
bool poly_feasible(LinSystem sys, std::vector<LaurentPoly> nonpos) {
  while (true) {
    if (!feasible(sys)) return false;
    if (nonpos.empty()) return true;
    std::vector<bool> zero(sys.n, false);
    for (std::size_t i = 0; i < sys.n; ++i) {
      bool used = false;
      for (const auto& p : nonpos)
        for (const auto& [e, c] : p.terms)
          if (e[i] != 0) used = true;
      if (!used) continue;
      LinSystem pos = sys;
      pos.gt(aff_coord(sys.n, i));
      if (feasible(pos)) continue;
      LinSystem neg = sys;
      neg.gt(aff_scale(Rat(-1), aff_coord(sys.n, i)));
      if (feasible(neg)) continue;
      zero[i] = true;
    }
    bool progress = false;
    std::vector<LaurentPoly> rest;
    for (auto& p : nonpos) {
      LaurentPoly q = p;
      for (std::size_t i = 0; i < sys.n; ++i)
        if (zero[i]) q = poly_face(q, i);
      if (q.is_zero()) {
        progress = true;
        continue;  // 0 <= 0 holds
      }
      if (q.is_constant()) {
        if (q.constant_value() > 0) return false;
        progress = true;
        continue;
      }
      if (q.is_affine()) {
        sys.ineqs.push_back({aff_scale(Rat(-1), poly_to_affine(q)), false});
        progress = true;
        continue;
      }
      if (!(q == p)) progress = true;
      rest.push_back(std::move(q));
    }
    nonpos = std::move(rest);
    if (!progress) return true;  // conservative: could not decide
  }
}

// a point escapes every piece iff for each piece some condition fails;
// search one violated condition per piece, abandoning infeasible branches
bool escape_point_exists(const LinSystem& sys,
                         std::vector<LaurentPoly>& nonpos,
                         const std::vector<const Region*>& usable,
                         std::size_t at) {
  if (!poly_feasible(sys, nonpos)) return false;
  if (at == usable.size()) return true;
  for (const LinCon& c : usable[at]->conds) {
    LinSystem next = sys;
    // negate: f > 0 fails iff -f >= 0; f >= 0 fails iff -f > 0
    next.ineqs.push_back({aff_scale(Rat(-1), c.f), !c.strict});
    if (escape_point_exists(next, nonpos, usable, at + 1)) return true;
  }
  for (const PolyCon& pc : usable[at]->pconds) {
    // negate: p > 0 fails iff p <= 0
    nonpos.push_back(pc.p);
    const bool esc = escape_point_exists(sys, nonpos, usable, at + 1);
    nonpos.pop_back();
    if (esc) return true;
  }
  return false;
}

}  // namespace

bool region_covered(const OrthantChart& src, const std::vector<Region>& pieces) {
  std::vector<const Region*> usable;
  for (const auto& r : pieces) {
    if (!r.exact) continue;  // cannot certify coverage with a lossy region
    if (r.conds.empty() && r.pconds.empty()) return true;
    usable.push_back(&r);
  }
  std::vector<LaurentPoly> nonpos;
  return !escape_point_exists(chart_system(src), nonpos, usable, 0);
}

bool charts_cover(const Atlas& a, int idx, const std::vector<int>& others) {
  std::vector<Region> pieces;
  for (int o : others) {
    if (o == idx) return true;
    for (Region& r : cross_overlap(a, idx, a, o)) pieces.push_back(std::move(r));
  }
  return region_covered(a.chart(idx), pieces);
}

void atlas_check(const Atlas& a) {
  std::set<HypLabel> labs;
  for (const auto& e : a.registry) {
    if (!labs.insert(e.label).second)
      throw DomainError("atlas_check: duplicate registry label");
    if (e.kind == HypKind::Front && e.center_id < 0)
      throw DomainError("atlas_check: front entry without center");
  }
  std::set<HypLabel> used;
  for (const auto& cd : a.charts) {
    for (HypLabel l : cd.chart.labels) {
      if (!labs.count(l))
        throw DomainError("atlas_check: unregistered label in chart");
      used.insert(l);
    }
    if (cd.base_idx < 0 || cd.base_idx >= static_cast<int>(a.base.size()))
      throw DomainError("atlas_check: base index out of range");
    if (cd.blowdown.src.dim() != cd.chart.dim() ||
        cd.blowdown.dst.dim() != a.base[cd.base_idx].dim())
      throw DomainError("atlas_check: blow-down chart mismatch");
    // the recorded chain must compose to the stored blow-down
    std::vector<LaurentPoly> acc;
    for (int i = 0; i < cd.chart.dim(); ++i)
      acc.push_back(poly_coord(cd.chart.dim(), i));
    for (auto it = cd.chain.rbegin(); it != cd.chain.rend(); ++it) {
      std::vector<LaurentPoly> next;
      next.reserve(it->down.comp.size());
      for (const auto& c : it->down.comp) next.push_back(substitute(c, acc));
      acc = std::move(next);
    }
    if (acc.size() != cd.blowdown.comp.size())
      throw DomainError("atlas_check: chain size mismatch");
    for (std::size_t j = 0; j < acc.size(); ++j)
      if (!(acc[j] == cd.blowdown.comp[j]))
        throw DomainError("atlas_check: chain does not compose to blow-down");
  }
  for (HypLabel l : labs)
    if (!used.count(l))
      throw DomainError("atlas_check: registry label absent from all charts");
  // cocycle: wherever transitions compose, they agree symbolically
  const int n = a.chart_count();
  std::vector<std::vector<std::optional<MonomialAffineMap>>> t(n);
  for (int i = 0; i < n; ++i) {
    t[i].resize(n);
    for (int j = 0; j < n; ++j) t[i][j] = atlas_transition(a, i, j);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !t[i][j]) continue;
      for (int k = 0; k < n; ++k) {
        if (k == j || !t[j][k] || !t[i][k]) continue;
        std::vector<LaurentPoly> comp;
        try {
          comp.reserve(t[j][k]->comp.size());
          for (const auto& c : t[j][k]->comp)
            comp.push_back(substitute(c, t[i][j]->comp));
        } catch (const UnsupportedComposition&) {
          continue;
        }
        for (std::size_t x = 0; x < comp.size(); ++x)
          if (!(comp[x] == t[i][k]->comp[x]))
            throw DomainError("atlas_check: cocycle violation");
      }
    }
}

Atlas radial_compactification(int m) {
  if (m < 0) throw PreconditionError("radial_compactification: negative dim");
  const OrthantChart interior = make_chart(0, m, {}, "int");
  if (m == 0) return make_atlas(interior);
  std::vector<OrthantChart> bases{interior};
  for (int i = 0; i < m; ++i)
    for (int s = 0; s < 2; ++s)
      bases.push_back(make_chart(
          1, m - 1, {0},
          std::string(s == 0 ? "inf+" : "inf-") + std::to_string(i)));
  auto cidx = [m](int i, int s) { return 1 + 2 * i + s; };
  std::map<std::pair<int, int>, MonomialAffineMap> tr;
  // boundary chart (i, s): t = sg/y_i, u_j = y_j/y_i for j != i
  for (int i = 0; i < m; ++i)
    for (int s = 0; s < 2; ++s) {
      const Rat sg(s == 0 ? 1 : -1);
      const int ci = cidx(i, s);
      MonomialAffineMap in2b;  // interior -> boundary chart
      in2b.src = bases[0];
      in2b.dst = bases[ci];
      {
        ExpVec e(static_cast<std::size_t>(m), 0);
        e[i] = -1;
        in2b.comp.push_back(poly_term(m, sg, e));
      }
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        ExpVec e(static_cast<std::size_t>(m), 0);
        e[j] = 1;
        e[i] = -1;
        in2b.comp.push_back(poly_term(m, sg, e));
      }
      in2b.validity.conds.push_back(
          {aff_scale(sg, aff_coord(m, i)), true});
      tr.emplace(std::pair{0, ci}, in2b);
      MonomialAffineMap b2in;  // boundary chart -> interior: y_i = sg/t
      b2in.src = bases[ci];
      b2in.dst = bases[0];
      std::vector<LaurentPoly> y(static_cast<std::size_t>(m));
      {
        ExpVec e(static_cast<std::size_t>(m), 0);
        e[0] = -1;
        y[i] = poly_term(m, sg, e);
      }
      for (int j = 0, u = 1; j < m; ++j) {
        if (j == i) continue;
        ExpVec e(static_cast<std::size_t>(m), 0);
        e[u] = 1;
        e[0] = -1;
        y[j] = poly_term(m, Rat(1), e);
        ++u;
      }
      for (auto& c : y) b2in.comp.push_back(std::move(c));
      b2in.validity.conds.push_back({aff_coord(m, 0), true});
      tr.emplace(std::pair{ci, 0}, b2in);
    }
  // boundary chart to boundary chart, composed through the interior formulas
  for (int i = 0; i < m; ++i)
    for (int s = 0; s < 2; ++s)
      for (int i2 = 0; i2 < m; ++i2)
        for (int s2 = 0; s2 < 2; ++s2) {
          if (i == i2) continue;  // same axis: opposite ends never meet
          const int ca = cidx(i, s), cb = cidx(i2, s2);
          const MonomialAffineMap& f = tr.at({ca, 0});
          const MonomialAffineMap& g = tr.at({0, cb});
          MonomialAffineMap h;
          h.src = bases[ca];
          h.dst = bases[cb];
          for (const auto& c : g.comp) h.comp.push_back(substitute(c, f.comp));
          // overlap: the target axis coordinate keeps the target sign
          const int uj = i2 < i ? 1 + i2 : i2;  // column of y_{i2} in chart ca
          const Rat sg2(s2 == 0 ? 1 : -1);
          h.validity.conds.push_back(
              {aff_scale(sg2, aff_coord(m, uj)), true});
          tr.emplace(std::pair{ca, cb}, std::move(h));
        }
  return make_atlas_multi(std::move(bases), std::move(tr));
}

}  // namespace corner
