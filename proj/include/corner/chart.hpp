#pragma once

// Local models: orthant charts [0,inf)^b x R^m. Boundary coordinates come
// first; coordinate index i < b is the boundary coordinate x_i carrying a
// global hypersurface label, index b <= i < b+m the interior coordinate
// y_{i-b}. A chart may carry extra affine region constraints (interval ends,
// overlap windows); `exact` drops to false when a constraint had to be
// discarded because it left the affine class under a blow-up substitution.

#include <string>
#include <vector>

#include "corner/fourier_motzkin.hpp"
#include "corner/poly.hpp"

namespace corner {

using HypLabel = int;

// open polynomial side condition p > 0; p is a genuine polynomial. Chart
// domains never carry these: they appear only in validity regions of
// transition pieces, where overlaps are bounded by non-affine loci
struct PolyCon {
  LaurentPoly p;
};

struct Region {
  std::vector<LinCon> conds;
  std::vector<PolyCon> pconds;
  bool exact = true;
};

struct OrthantChart {
  int b = 0;
  int m = 0;
  std::vector<HypLabel> labels;  // size b
  Region region;
  std::string name;

  int dim() const { return b + m; }
  bool is_boundary(int i) const { return i < b; }
};

OrthantChart make_chart(int b, int m, std::vector<HypLabel> labels,
                        std::string name = "");

// orthant + region constraints as a linear system over the chart coordinates
LinSystem chart_system(const OrthantChart& c);

// coordinate names x0..,y0.. for printing
std::vector<std::string> coord_names(const OrthantChart& c);

}  // namespace corner
