#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmek/errors.hpp"
#include "cmek/hecke.hpp"

using namespace cmek;
using namespace cmek::hecke;
using quad::Elem;
using quad::Field;
using quad::Ideal;

static Field QI = Field::of(1);
static Field Q3 = Field::of(3);

static Elem gauss(long re, long im) { return Elem(QI, re + 2 * im, im); }

static double dist(const BigComplex& z, double re, double im) {
  return std::abs(z.re().to_double() - re) + std::abs(z.im().to_double() - im);
}

TEST_CASE("enumeration counts") {
  Ideal f8 = Ideal::principal(gauss(1, 1)).pow(3);
  CHECK(enumerate_characters(QI, f8, 4, 0).size() == 1);
  CHECK(enumerate_characters(QI, Ideal::principal(gauss(1, 1)), 3, 0).empty());
  CHECK(enumerate_characters(QI, Ideal::principal(gauss(1, 1)), 4, 0).size() == 1);
  CHECK_THROWS_AS(enumerate_characters(QI, Ideal::one(QI), 4, 0), error);
  // order-2 ray class group gives two characters
  CHECK(enumerate_characters(QI, Ideal::principal(Elem::integer(QI, 3)), 4, 0).size() == 2);
  // Q(sqrt-3): zeta3 = 1 mod sqrt(-3), so need 3 | a+b
  Ideal s3 = Ideal::principal(Elem(Q3, 3, 2));
  CHECK(enumerate_characters(Q3, s3, 6, 0).size() == 1);
  CHECK(enumerate_characters(Q3, s3, 4, 0).empty());
}

TEST_CASE("weights") {
  Ideal f8 = Ideal::principal(gauss(1, 1)).pow(3);
  CHECK(weight(enumerate_characters(QI, f8, 4, 0)[0]) == -4);
  CHECK(weight(enumerate_characters(QI, f8, 3, 1)[0]) == -2);
  CHECK(weight(enumerate_characters(QI, f8, 0, 0)[0]) == 0);
}

TEST_CASE("evaluation goldens") {
  Ideal f8 = Ideal::principal(gauss(1, 1)).pow(3);
  HeckeChar chi = enumerate_characters(QI, f8, 4, 0)[0];
  CHECK(dist(char_eval(chi, Ideal::one(QI), 128), 1.0, 0.0) < 1e-30);
  // principalize((3)) = (-3), so chi((3)) = (-3)^{-4} = 1/81
  CHECK(dist(char_eval(chi, Ideal::principal(Elem::integer(QI, 3)), 128), 1.0 / 81, 0.0) <
        1e-30);
  CHECK_THROWS_AS(char_eval(chi, Ideal::principal(gauss(1, 1)), 128), error);
}

TEST_CASE("generator relation consistency") {
  for (auto& chi : enumerate_characters(QI, Ideal::principal(Elem::integer(QI, 3)), 4, 0)) {
    auto gv = chi.gen_values(192);
    REQUIRE(gv.size() == 1);
    // chi(g)^2 = chi((-2)) = (-2)^{-4} = 1/16
    CHECK(dist(gv[0].pow_si(2), 1.0 / 16, 0.0) < 1e-50);
  }
  // the two characters differ by the nontrivial ray class character, a sign
  auto cs = enumerate_characters(QI, Ideal::principal(Elem::integer(QI, 3)), 4, 0);
  CHECK((cs[0].gen_values(192)[0] + cs[1].gen_values(192)[0]).abs().to_double() < 1e-50);
  CHECK(cs[0].twist_index() == 0);
  CHECK(cs[1].twist_index() == 1);
}

TEST_CASE("branch choice is stable on the negative real axis") {
  // (a,b) = (3,0) mod (3): chi(g)^2 = (-2)^{-3} = -1/8, target on the cut.
  // Principal branch takes arg = +pi, so chi(g) = i/sqrt(8).
  auto cs = enumerate_characters(QI, Ideal::principal(Elem::integer(QI, 3)), 3, 0);
  REQUIRE(cs.size() == 2);
  double r = 1.0 / std::sqrt(8.0);
  CHECK(dist(cs[0].gen_values(192)[0], 0.0, r) < 1e-15);
  CHECK(dist(cs[0].gen_values(384)[0], 0.0, r) < 1e-15);
  // same branch at both precisions, far beyond double agreement
  auto lo = cs[0].gen_values(192)[0], hi = cs[0].gen_values(384)[0];
  CHECK((lo - hi).abs() < Real::of(1L, 192).mul_2si(-180));
}

TEST_CASE("multiplicativity") {
  Ideal f3 = Ideal::principal(Elem::integer(QI, 3));
  HeckeChar chi = enumerate_characters(QI, f3, 4, 0)[1];
  auto pool = quad::ideals_up_to_norm(QI, 60, f3);
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  long p = 160;
  Real tol = Real::of(1L, p).mul_2si(-120);
  for (int t = 0; t < 200; t++) {
    const Ideal &I = pool[pick(rng)], &J = pool[pick(rng)];
    BigComplex lhs = char_eval(chi, I.mul(J), p);
    BigComplex rhs = char_eval(chi, I, p) * char_eval(chi, J, p);
    CHECK((lhs - rhs).abs() < tol * (rhs.abs() + Real::of(1L, p)));
  }
}

TEST_CASE("principal values do not depend on the principalization path") {
  Ideal f8 = Ideal::principal(gauss(1, 1)).pow(3);
  HeckeChar chi = enumerate_characters(QI, f8, 3, 1)[0];
  auto [g1, g2] = f8.gens();
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coef(-6, 6);
  long p = 160;
  Real tol = Real::of(1L, p).mul_2si(-120);
  int done = 0;
  while (done < 50) {
    Elem alpha = Elem::integer(QI, 1) + Elem::integer(QI, coef(rng)) * g1 +
                 Elem::integer(QI, coef(rng)) * g2;
    if (alpha == Elem::integer(QI, 0)) continue;
    done++;
    BigComplex z = alpha.embed(p);
    BigComplex expect = z.conj() * z.pow_si(-3);
    BigComplex got = char_eval(chi, Ideal::principal(alpha), p);
    CHECK((got - expect).abs() < tol * (expect.abs() + Real::of(1L, p)));
  }
}

TEST_CASE("absolute value is the norm to the half weight") {
  Ideal f3 = Ideal::principal(Elem::integer(QI, 3));
  for (auto& chi : enumerate_characters(QI, f3, 3, 1)) {
    CHECK(chi.weight() == -2);
    for (const Ideal& I : quad::ideals_up_to_norm(QI, 30, f3)) {
      Real got = char_eval(chi, I, 160).abs();
      Real expect = Real::of(I.norm(), 160).pow_si(-1);
      CHECK((got - expect).abs() < expect.mul_2si(-120));
    }
  }
}
