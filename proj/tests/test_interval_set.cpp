#include <doctest.h>

#include "primeapprox/interval_set.hpp"

using namespace primeapprox;

TEST_CASE("wrap-around arcs split and measure correctly") {
  IntervalSet s;
  s.add_arc(Rat(0), Rat(1, 10));  // [-1/10, 1/10] mod 1
  CHECK(s.arcs().size() == 2);
  s.normalize();
  CHECK(s.measure() == Rat(1, 5));

  IntervalSet t;
  t.add_arc(Rat(19, 20), Rat(1, 10));  // [17/20, 1] u [0, 1/20]
  t.normalize();
  CHECK(t.measure() == Rat(1, 5));
}

TEST_CASE("radius >= 1/2 clamps to the full circle") {
  IntervalSet s;
  s.add_arc(Rat(1, 3), Rat(1, 2));
  CHECK(s.full());
  CHECK(s.clamped());
  s.normalize();
  CHECK(s.measure() == Rat(1));

  IntervalSet t;
  t.add_arc(Rat(1, 3), Rat(499, 1000));
  CHECK(!t.full());
  CHECK(!t.clamped());
}

TEST_CASE("invalid arcs throw") {
  IntervalSet s;
  CHECK_THROWS_AS(s.add_arc(Rat(0), Rat(-1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(s.add_arc(Rat(1), Rat(1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(s.add_arc(Rat(-1, 4), Rat(1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(s.add_interval(Rat(1, 2), Rat(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(s.add_interval(Rat(3, 4), Rat(1, 4)), std::invalid_argument);
}

TEST_CASE("normalize merges touching and overlapping arcs") {
  IntervalSet s;
  s.add_interval(Rat(0), Rat(1, 4));
  s.add_interval(Rat(1, 4), Rat(1, 2));  // touching
  s.add_interval(Rat(2, 5), Rat(3, 5));  // overlapping
  s.add_interval(Rat(7, 10), Rat(4, 5));
  CHECK(!s.interiors_disjoint());
  s.normalize();
  REQUIRE(s.arcs().size() == 2);
  CHECK(s.arcs()[0].lo == Rat(0));
  CHECK(s.arcs()[0].hi == Rat(3, 5));
  CHECK(s.measure() == Rat(3, 5) + Rat(1, 10));
}

TEST_CASE("interiors_disjoint tolerates shared endpoints") {
  IntervalSet s;
  s.add_interval(Rat(0), Rat(1, 3));
  s.add_interval(Rat(1, 3), Rat(1, 2));
  CHECK(s.interiors_disjoint());
  s.add_interval(Rat(1, 4), Rat(2, 5));
  CHECK(!s.interiors_disjoint());
}

TEST_CASE("measure before normalize is rejected; empty set is fine") {
  IntervalSet e;
  CHECK(e.measure() == Rat(0));
  IntervalSet s;
  s.add_interval(Rat(0), Rat(1, 2));
  CHECK_THROWS_AS((void)s.measure(), std::logic_error);
}

TEST_CASE("intersection") {
  IntervalSet a, b;
  a.add_interval(Rat(0), Rat(1, 2));
  a.add_interval(Rat(3, 5), Rat(9, 10));
  b.add_interval(Rat(1, 4), Rat(7, 10));
  a.normalize();
  b.normalize();
  IntervalSet c = IntervalSet::intersect(a, b);
  REQUIRE(c.arcs().size() == 2);
  CHECK(c.arcs()[0].lo == Rat(1, 4));
  CHECK(c.arcs()[0].hi == Rat(1, 2));
  CHECK(c.arcs()[1].lo == Rat(3, 5));
  CHECK(c.arcs()[1].hi == Rat(7, 10));
  CHECK(c.measure() == Rat(7, 20));

  // full set acts as the identity
  IntervalSet f;
  f.add_arc(Rat(0), Rat(1, 2));
  IntervalSet d = IntervalSet::intersect(f, a);
  d.normalize();
  CHECK(d.measure() == a.measure());
}

TEST_CASE("intersect requires normalized inputs") {
  IntervalSet a, b;
  a.add_interval(Rat(0), Rat(1, 2));
  b.add_interval(Rat(1, 4), Rat(3, 4));
  CHECK_THROWS_AS((void)IntervalSet::intersect(a, b), std::logic_error);
}

TEST_CASE("quadratic-scalar arc set mirrors the rational one") {
  // arcs centered at frac(n*sqrt(2)) of radius 1/20, n = 1..4 -- exact
  // endpoints in Q(sqrt 2)
  QuadVal r2(Rat(0), Rat(1), 2);
  QuadIntervalSet s;
  for (int n = 1; n <= 4; ++n)
    s.add_arc(quad_frac(quad_scale(r2, Rat(n))), QuadVal::rational(Rat(1, 20)));
  CHECK(s.interiors_disjoint());
  s.normalize();
  // 4 disjoint arcs of length 1/10 each
  CHECK(quad_cmp(s.measure(), QuadVal::rational(Rat(2, 5))) == 0);

  // point arcs are dropped
  QuadIntervalSet p;
  p.add_arc(quad_frac(r2), QuadVal::rational(Rat(0)));
  CHECK(p.arcs().empty());
}
