#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "vsep/matrix.hpp"
#include "vsep/roots.hpp"

using namespace vsep;

namespace {

IntPoly poly(std::initializer_list<long> ascending) {
  std::vector<Int> c;
  for (long v : ascending) c.push_back(Int(v));
  return IntPoly(std::move(c));
}

IntPoly random_poly(std::mt19937_64& rng, std::size_t max_deg, long max_coeff) {
  std::uniform_int_distribution<std::size_t> dd(0, max_deg);
  std::uniform_int_distribution<long> cd(-max_coeff, max_coeff);
  std::vector<Int> c(dd(rng) + 1);
  for (auto& v : c) v = cd(rng);
  return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("rational arithmetic and ordering") {
  CHECK(Rational(Int(1), Int(2)) + Rational(Int(1), Int(3)) == Rational(Int(5), Int(6)));
  CHECK(Rational(Int(3), Int(4)) * Rational(0) == Rational(0));
  CHECK(Rational(Int(-6), Int(-8)) == Rational(Int(3), Int(4)));  // canonical form
  CHECK(Rational(Int(2), Int(-4)).denominator() == 2);
  CHECK(Rational(Int(2), Int(-4)).numerator() == -1);
  CHECK_THROWS_AS(Rational(Int(1), Int(0)), Error);

  ExtRational ninf = ExtRational::neg_inf();
  Int big = 1;
  for (int i = 0; i < 100; ++i) big *= 10;
  CHECK(ninf < ExtRational(Rational(Int(-big))));
  CHECK(ExtRational(Rational(Int(-big))) < ExtRational::pos_inf());
  CHECK_THROWS_AS(ExtRational::pos_inf() + ExtRational::neg_inf(), Error);
  CHECK((ExtRational::pos_inf() + ExtRational(Rational(5))).kind() == ExtRational::Kind::PosInf);
}

TEST_CASE("rational parse/print round trip") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-10000, 10000);
  for (int i = 0; i < 500; ++i) {
    long num = d(rng), den = d(rng);
    if (den == 0) continue;
    Rational r{Int(num), Int(den)};
    CHECK(Rational::parse(r.str()) == r);
  }
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-4/6") == Rational(Int(-2), Int(3)));
}

TEST_CASE("polynomial evaluation") {
  IntPoly p = poly({-2, 0, 1});  // x^2 - 2
  CHECK(p.eval(Rational(1)) == Rational(-1));
  CHECK(p.eval(Rational(Int(3), Int(2))) == Rational(Int(1), Int(4)));
  CHECK(IntPoly().eval(Rational(Int(7), Int(3))) == Rational(0));
}

TEST_CASE("polynomial norms and conventions") {
  IntPoly p = poly({-2, 0, 1});
  CHECK(p.degree() == 2);
  CHECK(p.max_coeff() == 2);
  CHECK(p.l1_norm() == 3);
  IntPoly zero;
  CHECK(zero.degree() == 0);
  CHECK(zero.max_coeff() == 1);
  CHECK(zero.l1_norm() == 1);
  IntPoly q = poly({-1, 4, 0, 5});
  CHECK(q.degree() == 3);
  CHECK(q.max_coeff() == 5);
  CHECK(q.l1_norm() == 10);
}

TEST_CASE("determinants") {
  CHECK(det(PolyMatrix::identity(2)) == IntPoly::constant(1));
  PolyMatrix m(2, 2);
  m.at(0, 0) = IntPoly::x();
  m.at(0, 1) = IntPoly::constant(1);
  m.at(1, 0) = IntPoly::constant(2);
  m.at(1, 1) = IntPoly::x();
  CHECK(det(m) == poly({-2, 0, 1}));
  PolyMatrix eq(2, 2);
  eq.at(0, 0) = eq.at(0, 1) = eq.at(1, 0) = eq.at(1, 1) = IntPoly::x();
  CHECK(det(eq).is_zero());
  PolyMatrix rect(2, 3);
  CHECK_THROWS_AS(det(rect), Error);
}

TEST_CASE("determinant multiplicativity on constant matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> cd(-5, 5);
  std::uniform_int_distribution<std::size_t> nd(1, 4);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t n = nd(rng);
    PolyMatrix a(n, n), b(n, n), ab(n, n);
    std::vector<std::vector<Int>> av(n, std::vector<Int>(n)), bv(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        av[i][j] = cd(rng);
        bv[i][j] = cd(rng);
        a.at(i, j) = IntPoly::constant(av[i][j]);
        b.at(i, j) = IntPoly::constant(bv[i][j]);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Int acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += av[i][l] * bv[l][j];
        ab.at(i, j) = IntPoly::constant(acc);
      }
    CHECK(det(ab) == det(a) * det(b));
  }
}

TEST_CASE("bareiss path agrees with cofactor expansion") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> cd(-3, 3);
  for (int iter = 0; iter < 20; ++iter) {
    PolyMatrix m(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) m.at(i, j) = IntPoly::constant(cd(rng));
    IntPoly expect;
    for (std::size_t j = 0; j < 5; ++j) {
      IntPoly term = m.at(0, j) * det(m.minor_matrix(0, j));  // 4x4 goes cofactor
      expect = (j % 2 == 0) ? expect + term : expect - term;
    }
    CHECK(det(m) == expect);
  }
}

TEST_CASE("adjugate examples") {
  PolyMatrix c(2, 2);
  c.at(0, 0) = IntPoly::constant(1);
  c.at(0, 1) = IntPoly::constant(2);
  c.at(1, 0) = IntPoly::constant(3);
  c.at(1, 1) = IntPoly::constant(4);
  PolyMatrix adj = adjugate(c);
  CHECK(adj.at(0, 0) == IntPoly::constant(4));
  CHECK(adj.at(0, 1) == IntPoly::constant(-2));
  CHECK(adj.at(1, 0) == IntPoly::constant(-3));
  CHECK(adj.at(1, 1) == IntPoly::constant(1));

  PolyMatrix one(1, 1);
  one.at(0, 0) = IntPoly::x();
  CHECK(adjugate(one).at(0, 0) == IntPoly::constant(1));

  CHECK(adjugate(PolyMatrix::identity(3)) == PolyMatrix::identity(3));
}

TEST_CASE("adjugate identity on random polynomial matrices") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> nd(1, 4);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t n = nd(rng);
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_poly(rng, 2, 3);
    PolyMatrix adj = adjugate(m);
    IntPoly d = det(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        IntPoly acc;
        for (std::size_t l = 0; l < n; ++l) acc = acc + m.at(i, l) * adj.at(l, j);
        CHECK(acc == (i == j ? d : IntPoly()));
      }
  }
}

TEST_CASE("ring laws and evaluation homomorphism") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<long> td(-6, 6);
  std::uniform_int_distribution<long> sd(1, 4);
  for (int iter = 0; iter < 1000; ++iter) {
    IntPoly p = random_poly(rng, 3, 4), q = random_poly(rng, 3, 4), r = random_poly(rng, 3, 4);
    CHECK((p + q) * r == p * r + q * r);
    Rational t(Int(td(rng)), Int(sd(rng)));
    CHECK((p * q).eval(t) == p.eval(t) * q.eval(t));
  }
}

TEST_CASE("root isolation: sqrt2") {
  auto roots = isolate_real_roots(poly({-2, 0, 1}));
  REQUIRE(roots.size() == 2);
  CHECK(!roots[0].is_exact());
  CHECK(!roots[1].is_exact());
  auto lo = refine_root(roots[0], Rational(Int(1), Int(8)));
  auto hi = refine_root(roots[1], Rational(Int(1), Int(8)));
  CHECK(lo.lo >= Rational(-2));
  CHECK(lo.hi <= Rational(-1));
  CHECK(hi.lo >= Rational(1));
  CHECK(hi.hi <= Rational(2));
}

TEST_CASE("root isolation: no real roots and exact rationals") {
  CHECK(isolate_real_roots(poly({1, 0, 1})).empty());
  auto roots = isolate_real_roots(poly({-1, -1, 2}));  // (2x+1)(x-1)
  REQUIRE(roots.size() == 2);
  REQUIRE(roots[0].is_exact());
  REQUIRE(roots[1].is_exact());
  CHECK(*roots[0].exact == Rational(Int(-1), Int(2)));
  CHECK(*roots[1].exact == Rational(1));
  CHECK_THROWS_AS(isolate_real_roots(IntPoly()), Error);
}

TEST_CASE("refine_root keeps exact points and honors widths") {
  IsolatedRoot point{poly({-3, 1}), Rational(3), Rational(3), Rational(3)};
  auto same = refine_root(point, Rational(Int(1), Int(100)));
  CHECK(same.is_exact());
  CHECK(*same.exact == Rational(3));

  auto roots = isolate_real_roots(poly({-2, 0, 1}));
  auto fine = refine_root(roots[1], Rational(Int(1), Int(1024)));
  CHECK(fine.hi - fine.lo <= Rational(Int(1), Int(1024)));
  CHECK(fine.poly.eval(fine.lo).sign() * fine.poly.eval(fine.hi).sign() < 0);
}

TEST_CASE("isolation soundness on random polynomials") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 120; ++iter) {
    IntPoly p = random_poly(rng, 6, 9);
    if (p.is_zero() || p.degree() == 0) continue;
    auto roots = isolate_real_roots(p);
    IntPoly q = squarefree_part(p);
    if (q.degree() == 0) {
      CHECK(roots.empty());
      continue;
    }
    auto chain = sturm_chain(q);
    Rational bound(Int(Int(1) + p.l1_norm()));
    CHECK(static_cast<int>(roots.size()) == sturm_count(chain, -bound, bound));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!roots[i].is_exact()) {
        CHECK(sturm_count(chain, roots[i].lo, roots[i].hi) == 1);
      } else {
        CHECK(roots[i].poly.eval(*roots[i].exact).is_zero());
      }
      if (i + 1 < roots.size()) CHECK(roots[i].hi < roots[i + 1].lo);
    }
  }
}

TEST_CASE("simplest rational in interval") {
  CHECK(simplest_in_interval(Rational(Int(1), Int(3)), Rational(Int(2), Int(3))) ==
        Rational(Int(1), Int(2)));
  CHECK(simplest_in_interval(Rational(-1), Rational(1)) == Rational(0));
  CHECK(simplest_in_interval(Rational(Int(7), Int(2)), Rational(4)) == Rational(4));
  Rational target(Int(-13), Int(7));
  Rational eps(Int(1), Int(200));
  CHECK(simplest_in_interval(target - eps, target + eps) == target);
}

TEST_CASE("algebraic bound comparisons") {
  auto roots = isolate_real_roots(poly({-2, 0, 1}));
  RootBound sqrt2 = RootBound::algebraic(roots[1]);
  RootBound msqrt2 = RootBound::algebraic(roots[0]);
  RootBound one = RootBound::exact(Rational(1));
  CHECK(compare_bounds(msqrt2, sqrt2) < 0);
  CHECK(compare_bounds(one, sqrt2) < 0);
  CHECK(compare_rational_bound(Rational(Int(3), Int(2)), sqrt2) > 0);
  CHECK(compare_rational_bound(Rational(Int(7), Int(5)), sqrt2) < 0);

  // the same algebraic number presented through a different polynomial
  auto other = isolate_real_roots(poly({-4, 0, 2}));
  RootBound sqrt2b = RootBound::algebraic(other[1]);
  CHECK(compare_bounds(sqrt2, sqrt2b) == 0);

  IntPoly x2m3 = poly({-3, 0, 1});
  CHECK(sign_at_bound(x2m3, sqrt2) < 0);
  IntPoly x2m2 = poly({-2, 0, 1});
  CHECK(sign_at_bound(x2m2, sqrt2) == 0);
  IntPoly lin = poly({0, 1});
  CHECK(sign_at_bound(lin, sqrt2) > 0);
}

TEST_CASE("extended rational multiplication sign rules") {
  ExtRational two{Rational(2)}, mtwo{Rational(-2)};
  CHECK((ExtRational::pos_inf() * two).kind() == ExtRational::Kind::PosInf);
  CHECK((ExtRational::pos_inf() * mtwo).kind() == ExtRational::Kind::NegInf);
  CHECK((ExtRational::neg_inf() * mtwo).kind() == ExtRational::Kind::PosInf);
  CHECK_THROWS_AS(ExtRational::pos_inf() * ExtRational(Rational(0)), Error);
}
