#pragma once

// Laurent polynomials with exact rational coefficients. These are the
// component functions of every map in the engine: blow-downs, chart
// transitions and structure-map lifts all live in this class, with negative
// exponents confined to transition data.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corner/fourier_motzkin.hpp"
#include "corner/rational.hpp"

namespace corner {

using ExpVec = std::vector<int>;

struct LaurentPoly {
  // canonical: no zero coefficients, exponent vectors all of equal width
  std::map<ExpVec, Rat> terms;
  std::size_t width = 0;

  bool operator==(const LaurentPoly& o) const = default;

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms.size() == 1; }
  // every exponent vector is zero or a unit vector
  bool is_affine() const;
  // no negative exponents
  bool is_polynomial() const;
  Rat constant_value() const;  // requires is_constant

  std::string str(const std::vector<std::string>& names = {}) const;
};

LaurentPoly poly_zero(std::size_t width);
LaurentPoly poly_const(std::size_t width, const Rat& c);
LaurentPoly poly_coord(std::size_t width, std::size_t i, int power = 1);
LaurentPoly poly_term(std::size_t width, const Rat& c, const ExpVec& e);
LaurentPoly poly_from_affine(const AffForm& f);

LaurentPoly padd(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly psub(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly pneg(const LaurentPoly& a);
LaurentPoly pmul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly pscale(const Rat& c, const LaurentPoly& a);
// negative n requires a single-term poly
LaurentPoly ppow(const LaurentPoly& a, int n);

// value of a with each coordinate replaced by vals[i] (all of equal width);
// negative exponents require the substituted value to be a single term
LaurentPoly substitute(const LaurentPoly& a, const std::vector<LaurentPoly>& vals);

// exact division; nullopt if b does not divide a
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly pderiv(const LaurentPoly& a, std::size_t var);

// least exponent of var across terms (0 for the zero poly)
int min_exponent(const LaurentPoly& a, std::size_t var);
// divide by var^k
LaurentPoly shift_var(const LaurentPoly& a, std::size_t var, int k);

// view as affine form (requires is_affine)
AffForm poly_to_affine(const LaurentPoly& a);

Rat peval(const LaurentPoly& a, const Vec& x);  // requires is_polynomial

}  // namespace corner
