#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmek/eklattice.hpp"
#include "cmek/errors.hpp"
#include "cmek/lvalues.hpp"

using namespace cmek;
using namespace cmek::lv;
using quad::Elem;
using quad::Field;
using quad::Ideal;

static Field QI = Field::of(1);

static Elem gauss(long re, long im) { return Elem(QI, re + 2 * im, im); }

static hecke::HeckeChar only_char(const Ideal& f, long a, long b, size_t which = 0) {
  auto cs = hecke::enumerate_characters(QI, f, a, b);
  REQUIRE(cs.size() > which);
  return cs[which];
}

// trivial character with trivial modulus: legal for the direct series only
static hecke::HeckeChar free_char() {
  hecke::HeckeChar chi;
  chi.field = QI;
  chi.rcg = quad::ray_class_group(QI, Ideal::one(QI));
  chi.a = chi.b = 0;
  return chi;
}

TEST_CASE("direct series reproduces the classical zeta factorization") {
  long p = 192;
  // zeta_{Q(i)}(2) = zeta(2) * L(chi_{-4}, 2) = (pi^2/6) * Catalan
  hecke::HeckeChar chi = free_char();
  LValueReport r = dirichlet_L(chi, BigComplex::of(2, p), 200000, p);
  Real golden = Real::pi(p).sqr() / Real::of(6L, p);
  Real cat(p);
  mpfr_const_catalan(cat.raw(), MPFR_RNDN);
  golden *= cat;
  CHECK(r.method == "dirichlet");
  CHECK(r.partials.size() == 1);
  CHECK((r.total.re() - golden).abs() <= r.error_bound);
  CHECK(r.total.im().abs() <= r.error_bound);
  CHECK(r.error_bound.to_double() < 1e-3);
  CHECK(r.error_bound.to_double() > 0);
}

TEST_CASE("direct series at Nmax = 1 is the leading term") {
  long p = 128;
  hecke::HeckeChar chi = only_char(Ideal::principal(gauss(1, 1)).pow(3), 4, 0);
  LValueReport r = dirichlet_L(chi, BigComplex::of(3, p), 1, p);
  CHECK((r.total - BigComplex::of(1, p)).abs() < Real::of(1L, p).mul_2si(-100));
  CHECK(r.error_bound.sign() > 0);
}

TEST_CASE("lattice route matches direct summation") {
  long p = 192;
  hecke::HeckeChar chi = only_char(Ideal::principal(gauss(1, 1)).pow(3), 4, 0);
  BigComplex s3 = BigComplex::of(3, p);
  LValueReport lat = L_value(chi, s3, p);
  LValueReport dir = dirichlet_L(chi, s3, 100000, p);
  CHECK(lat.method == "eseries");
  CHECK(lat.partials.size() == 1);
  Real slack = Real::of(1L, p).mul_2si(-120);
  CHECK((lat.total - dir.total).abs() <= dir.error_bound + lat.error_bound + slack);
  // any coprime representative of the single class gives the same partial
  BigComplex via_rep = partial_L(chi, Ideal::principal(gauss(2, 1)), s3, p);
  CHECK((via_rep - lat.total).abs() < slack);
}

TEST_CASE("two-class decomposition matches bucketed direct summation") {
  long p = 192;
  Ideal f3 = Ideal::principal(Elem::integer(QI, 3));
  BigComplex s3 = BigComplex::of(3, p);
  for (size_t which : {0u, 1u}) {
    hecke::HeckeChar chi = only_char(f3, 4, 0, which);
    LValueReport lat = L_value(chi, s3, p);
    LValueReport dir = dirichlet_L(chi, s3, 60000, p);
    REQUIRE(lat.partials.size() == 2);
    REQUIRE(dir.partials.size() == 2);
    BigComplex resum(p);
    for (int j = 0; j < 2; j++) {
      CHECK(lat.partials[j].rep == dir.partials[j].rep);
      // per-class tail is bounded by the full tail
      CHECK((lat.partials[j].value - dir.partials[j].value).abs() <=
            dir.error_bound + lat.error_bound);
      resum += lat.partials[j].value;
    }
    CHECK((resum - lat.total).abs().is_zero());
  }
}

TEST_CASE("partial value only depends on the ray class") {
  long p = 192;
  Ideal f3 = Ideal::principal(Elem::integer(QI, 3));
  hecke::HeckeChar chi = only_char(f3, 4, 0);
  BigComplex s0(p);
  Real tol = Real::of(1L, p).mul_2si(-150);
  std::mt19937 rng(987123);
  std::uniform_int_distribution<long> box(-4, 4);
  for (const Ideal& b : chi.rcg.class_reps()) {
    BigComplex base = partial_L(chi, b, s0, p);
    for (int k = 0; k < 5; k++) {
      Elem y = Elem::integer(QI, 0);
      while (y == Elem::integer(QI, 0))
        y = Elem::integer(QI, 1) + Elem::integer(QI, 3) * gauss(box(rng), box(rng));
      BigComplex moved = partial_L(chi, b.mul(Ideal::principal(y)), s0, p);
      CAPTURE(y.str());
      CHECK((moved - base).abs() < tol);
    }
  }
}

TEST_CASE("smoothed class-sum identity") {
  long p = 192;
  Ideal f8 = Ideal::principal(gauss(1, 1)).pow(3);
  Ideal c3 = Ideal::principal(Elem::integer(QI, 3));
  hecke::HeckeChar chi = only_char(f8, 4, 0);
  BigComplex s0(p);
  Real tol = Real::parse("1e-25", p);
  for (const Ideal& b : {Ideal::one(QI), Ideal::principal(gauss(2, 1))}) {
    BigComplex lhs = partial_L(chi, b, s0, p) * Real::of(c3.norm(), p) -
                     chi.eval(c3, p).inv() * partial_L(chi, b.mul(c3), s0, p);
    ek::EKParams par;
    par.b_exp = chi.b;
    par.a_exp = chi.a;
    par.t_exact = Elem::integer(QI, 1);
    par.gamma_modulus = f8;
    par.gamma_order = 1;
    ek::Lattice2 L = ek::Lattice2::of_ideal(QI, f8.mul(b.inv()), p);
    BigComplex rhs = chi.eval(b, p) * ek::ek_smoothed(par, c3, L, p);
    CAPTURE(b.str());
    CHECK((lhs - rhs).abs() < (rhs.abs() + Real::of(1L, p)) * tol);
  }
}

TEST_CASE("lvalue error cases") {
  long p = 128;
  Ideal f8 = Ideal::principal(gauss(1, 1)).pow(3);
  hecke::HeckeChar chi = only_char(f8, 4, 0);
  // representative sharing a factor with the modulus
  bool threw = false;
  try {
    partial_L(chi, Ideal::principal(gauss(1, 1)), BigComplex(p), p);
  } catch (const error& e) {
    threw = e.code() == errc::not_coprime;
  }
  CHECK(threw);
  // lattice route refuses the trivial modulus
  bool threw2 = false;
  try {
    partial_L(free_char(), Ideal::one(QI), BigComplex(p), p);
  } catch (const error& e) {
    threw2 = e.code() == errc::trivial_modulus;
  }
  CHECK(threw2);
  // direct series outside its half-plane: weight -4 needs Re(s) > -1
  CHECK_THROWS_AS(dirichlet_L(chi, BigComplex::of(-1, p), 100, p), error);
  CHECK_THROWS_AS(dirichlet_L(free_char(), BigComplex::of(1, p), 100, p), error);
}
