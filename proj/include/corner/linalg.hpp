#pragma once

// Dense exact rational linear algebra, sized for symbolic geometry at desk
// scale (dimensions well under a hundred).

#include <optional>
#include <vector>

#include "corner/rational.hpp"

namespace corner {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // rows

inline Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vec vadd(const Vec& a, const Vec& b);
Vec vsub(const Vec& a, const Vec& b);
Vec vscale(const Rat& c, const Vec& a);
Rat dot(const Vec& a, const Vec& b);

std::size_t rank(Mat m);

// Reduced row echelon form in place. Pivot columns are searched in the order
// given by col_order (defaults to 0..n-1). Returns pivot columns per row.
std::vector<int> rref(Mat& m, const std::vector<int>& col_order = {});

// Solve A x = b; empty optional if inconsistent. Free variables are set to 0.
std::optional<Vec> solve(const Mat& a, const Vec& b);

// Basis of the null space of A (as rows).
Mat null_space(const Mat& a);

// True if v lies in the row span of m.
bool in_row_span(const Mat& m, const Vec& v);

// Basis (as rows) of the intersection of two row spans.
Mat span_intersection(const Mat& a, const Mat& b);

// Deduplicated, normalized spanning rows (rref, zero rows dropped).
Mat span_basis(Mat m);

}  // namespace corner
