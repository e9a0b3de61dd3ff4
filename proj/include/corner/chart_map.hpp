#pragma once

// Maps between orthant charts whose components are Laurent polynomials:
// boundary components are positive multiples of monomials (or identically
// zero) for honest b-maps, while transition data may also use negative
// exponents and positive affine forms. Validity regions are affine
// constraints on the source chart.

#include "corner/chart.hpp"
#include "corner/poly.hpp"

namespace corner {

struct MonomialAffineMap {
  OrthantChart src, dst;
  int src_chart = -1, dst_chart = -1;  // atlas ids when bound to an atlas
  std::vector<LaurentPoly> comp;       // size dst.dim(), in src coordinates
  Region validity;                     // beyond the source orthant

  const LaurentPoly& component(int j) const { return comp.at(j); }
};

MonomialAffineMap identity_chart_map(const OrthantChart& c);

// g . f; throws UnsupportedComposition when substitution leaves the class
MonomialAffineMap compose_maps(const MonomialAffineMap& g,
                               const MonomialAffineMap& f);

// pull a condition (affine in g's source = f's target) back through f.
// Returns conditions in f's source coordinates; sets *exact to false when a
// non-affine pullback had to be dropped (sign conditions of monomials in
// boundary coordinates are decomposed exactly).
std::vector<LinCon> pullback_condition(const LinCon& cond,
                                       const MonomialAffineMap& f,
                                       bool* exact);

Region pullback_region(const Region& r, const MonomialAffineMap& f);

bool maps_equal(const MonomialAffineMap& a, const MonomialAffineMap& b);

}  // namespace corner
