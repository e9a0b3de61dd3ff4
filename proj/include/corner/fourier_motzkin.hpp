#pragma once

// Exact feasibility of affine systems over the rationals by Fourier-Motzkin
// elimination. Strict and non-strict inequalities are tracked separately so
// relative-interior questions (is x_j > 0 attainable on this set?) are exact.

#include <vector>

#include "corner/linalg.hpp"

namespace corner {

struct AffForm {
  Vec lin;  // coefficients
  Rat c;    // constant; value = lin.x + c
};

inline AffForm aff_zero(std::size_t n) { return {zero_vec(n), Rat(0)}; }

// coordinate function x_i
inline AffForm aff_coord(std::size_t n, std::size_t i) {
  AffForm f = aff_zero(n);
  f.lin[i] = 1;
  return f;
}

AffForm aff_add(const AffForm& a, const AffForm& b);
AffForm aff_sub(const AffForm& a, const AffForm& b);
AffForm aff_scale(const Rat& c, const AffForm& a);
bool aff_is_zero(const AffForm& a);
Rat aff_eval(const AffForm& a, const Vec& x);

struct LinCon {
  AffForm f;
  bool strict = false;  // f > 0 if strict else f >= 0
};

struct LinSystem {
  std::size_t n = 0;
  std::vector<AffForm> eqs;   // f == 0
  std::vector<LinCon> ineqs;  // f >= 0 / f > 0

  void eq(const AffForm& f) { eqs.push_back(f); }
  void ge(const AffForm& f) { ineqs.push_back({f, false}); }
  void gt(const AffForm& f) { ineqs.push_back({f, true}); }
};

bool feasible(const LinSystem& sys);

}  // namespace corner
