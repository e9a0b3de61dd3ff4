#include "doctest.h"

#include "corner/fourier_motzkin.hpp"
#include "corner/linalg.hpp"
#include "corner/poly.hpp"

using namespace corner;

TEST_CASE("row reduction and rank") {
  Mat m = {{Rat(1), Rat(2), Rat(3)},
           {Rat(2), Rat(4), Rat(6)},
           {Rat(0), Rat(1), Rat(1)}};
  CHECK(rank(m) == 2);
  auto piv = rref(m);
  CHECK(piv == std::vector<int>{0, 1});
  CHECK(m.size() == 2);
  CHECK(m[0] == Vec{Rat(1), Rat(0), Rat(1)});
}

TEST_CASE("solve and null space") {
  Mat a = {{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
  auto x = solve(a, {Rat(3), Rat(1)});
  REQUIRE(x);
  CHECK(*x == Vec{Rat(2), Rat(1)});
  CHECK(!solve({{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}, {Rat(0), Rat(1)}));
  auto ns = null_space({{Rat(1), Rat(1), Rat(0)}});
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + v[1] == 0);
}

TEST_CASE("span membership and intersection") {
  Mat a = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}};
  Mat b = {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
  CHECK(in_row_span(a, {Rat(2), Rat(-3), Rat(0)}));
  CHECK(!in_row_span(a, {Rat(0), Rat(0), Rat(1)}));
  auto inter = span_intersection(a, b);
  REQUIRE(inter.size() == 1);
  CHECK(in_row_span({{Rat(0), Rat(1), Rat(0)}}, inter[0]));
}

TEST_CASE("feasibility honors strictness") {
  LinSystem sys;
  sys.n = 1;
  sys.ge(aff_coord(1, 0));
  AffForm neg = aff_scale(Rat(-1), aff_coord(1, 0));
  sys.ge(neg);
  CHECK(feasible(sys));  // x == 0 only
  sys.ineqs.clear();
  sys.gt(aff_coord(1, 0));
  sys.ge(neg);
  CHECK(!feasible(sys));
}

TEST_CASE("feasibility with eliminations and equalities") {
  // x + y = 1, x >= 0, y > 1  -> forces x < 0
  LinSystem sys;
  sys.n = 2;
  AffForm f = aff_zero(2);
  f.lin = {Rat(1), Rat(1)};
  f.c = Rat(-1);
  sys.eq(f);
  sys.ge(aff_coord(2, 0));
  AffForm g = aff_coord(2, 1);
  g.c = Rat(-1);
  sys.gt(g);
  CHECK(!feasible(sys));
  sys.ineqs.pop_back();
  g.c = Rat(-1, 2);
  sys.gt(g);  // y > 1/2 is fine
  CHECK(feasible(sys));
}

TEST_CASE("polynomial arithmetic stays canonical") {
  auto x = poly_coord(2, 0), y = poly_coord(2, 1);
  auto p = padd(pmul(x, y), pscale(Rat(2), x));
  CHECK(p.terms.size() == 2);
  CHECK(psub(p, p).is_zero());
  CHECK(pmul(p, poly_zero(2)).is_zero());
  CHECK(ppow(x, 0) == poly_const(2, Rat(1)));
  CHECK(ppow(padd(x, y), 2).terms.size() == 3);
  CHECK_THROWS(ppow(padd(x, y), -1));
  CHECK(ppow(x, -2).terms.begin()->first == ExpVec{-2, 0});
}

TEST_CASE("substitution composes polynomials") {
  auto x = poly_coord(2, 0), y = poly_coord(2, 1);
  auto p = padd(pmul(x, x), y);  // x^2 + y
  auto q = substitute(p, {padd(x, y), poly_const(2, Rat(1))});
  // (x+y)^2 + 1
  CHECK(q.terms.size() == 4);
  CHECK(peval(q, {Rat(1), Rat(2)}) == Rat(10));
}

TEST_CASE("exact division round-trips") {
  auto x = poly_coord(2, 0), y = poly_coord(2, 1);
  auto a = padd(x, y);
  auto b = psub(pmul(x, x), pmul(y, y));
  auto q = divide_exact(b, a);
  REQUIRE(q);
  CHECK(*q == psub(x, y));
  CHECK(!divide_exact(padd(b, poly_const(2, Rat(1))), a));
  // Laurent content: x^-1 (x + y) divides x + y
  auto c = pmul(ppow(x, -1), a);
  auto r = divide_exact(a, c);
  REQUIRE(r);
  CHECK(*r == x);
}

TEST_CASE("derivative and exponent utilities") {
  auto x = poly_coord(2, 0), y = poly_coord(2, 1);
  auto p = pmul(pmul(x, x), y);
  CHECK(pderiv(p, 0) == pscale(Rat(2), pmul(x, y)));
  CHECK(min_exponent(p, 0) == 2);
  CHECK(shift_var(p, 0, 2) == y);
  auto f = poly_to_affine(padd(x, poly_const(2, Rat(3))));
  CHECK(f.lin == Vec{Rat(1), Rat(0)});
  CHECK(f.c == Rat(3));
}
