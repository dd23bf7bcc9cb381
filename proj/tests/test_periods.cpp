#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmek/errors.hpp"
#include "cmek/periods.hpp"

using namespace cmek;
using namespace cmek::per;
using quad::Elem;
using quad::Field;
using quad::Ideal;

static Field QI = Field::of(1);

static Real lemniscate(long p) {
  Real q(p);
  mpfr_set_ui(q.raw(), 1, MPFR_RNDN);
  mpfr_div_ui(q.raw(), q.raw(), 4, MPFR_RNDN);
  mpfr_gamma(q.raw(), q.raw(), MPFR_RNDN);
  return q.sqr() / (Real::pi(p).mul_2si(3)).sqrt();
}

static Real tolbits(long p, long bits) { return Real::of(1L, p).mul_2si(-bits); }

static ek::Lattice2 ok_lattice(Field K, long p) {
  return ek::Lattice2::of_ideal(K, Ideal::one(K), p);
}

TEST_CASE("square lattice invariants") {
  long p = 192;
  LatticeInvariants inv = lattice_invariants(ok_lattice(QI, p), p);
  // four-fold symmetry kills g3; g2 = 4 varpi^4 in closed form
  Real g2golden = lemniscate(p).pow_si(4) * Real::of(4L, p);
  CHECK(inv.g3.abs() < g2golden * tolbits(p, p - 16));
  CHECK((inv.g2.re() - g2golden).abs() < g2golden * tolbits(p, p - 16));
  CHECK(inv.g2.im().abs() < g2golden * tolbits(p, p - 16));
  CHECK((inv.j.re() - Real::of(1728L, p)).abs() < tolbits(p, p - 32));
}

TEST_CASE("hexagonal lattice invariants") {
  long p = 192;
  LatticeInvariants inv = lattice_invariants(ok_lattice(Field::of(3), p), p);
  CHECK(inv.g2.abs() < (inv.g3.abs() + 1L) * tolbits(p, p - 16));
  CHECK(inv.j.abs() < tolbits(p, p - 32));
  // the j0 model scale is real and positive on this lattice
  CHECK(inv.g3.im().abs() < inv.g3.re() * tolbits(p, p - 16));
  CHECK(inv.g3.re().sign() > 0);
}

TEST_CASE("q-series route agrees with the direct lattice sum") {
  long p = 160;
  ek::Lattice2 zi = ok_lattice(QI, p);
  LatticeInvariants inv = lattice_invariants(zi, p);
  ek::EKParams par;
  par.b_exp = 0;
  par.a_exp = 4;
  par.s = BigComplex(p);
  auto [e, tail] = ek::ek_direct(par, zi, Real::of(2000L, p), p);
  // g2 = 60 sum' = 60 E
  CHECK((inv.g2 - e * Real::of(60L, p)).abs() <= tail * Real::of(61L, p));
}

TEST_CASE("homogeneity and scale invariance of j") {
  long p = 192;
  Real tol = Real::parse("1e-25", p);
  ek::Lattice2 base = ek::Lattice2::of_ideal(
      QI, Ideal::principal(Elem(QI, 3, 1)).pow(3), p);
  LatticeInvariants inv = lattice_invariants(base, p);
  std::mt19937 rng(55001);
  std::uniform_real_distribution<double> ang(0.0, 6.28), rad(0.5, 2.0);
  for (int k = 0; k < 6; k++) {
    BigComplex mu = BigComplex::cis(Real::of(ang(rng), p)) * Real::of(rad(rng), p);
    LatticeInvariants si = lattice_invariants(ek::scaled(base, mu), p);
    CHECK((si.g2 - inv.g2 * mu.pow_si(-4)).abs() < (inv.g2.abs() + 1L) * tol);
    CHECK((si.g3 - inv.g3 * mu.pow_si(-6)).abs() < (inv.g3.abs() + 1L) * tol);
    CHECK((si.j - inv.j).abs() < (inv.j.abs() + 1L) * tol);
  }
}

TEST_CASE("class number one j-invariants are the classical integers") {
  long p = 192;
  const std::pair<long, const char*> table[] = {
      {1, "1728"},          {2, "8000"},
      {3, "0"},             {7, "-3375"},
      {11, "-32768"},       {19, "-884736"},
      {43, "-884736000"},   {67, "-147197952000"},
      {163, "-262537412640768000"},
  };
  for (auto [d, js] : table) {
    LatticeInvariants inv = lattice_invariants(ok_lattice(Field::of(d), p), p);
    Real golden = Real::of(mpz_class(js), p);
    CAPTURE(d);
    CHECK((inv.j.re() - golden).abs() <= tolbits(p, p / 2));
    CHECK(inv.j.im().abs() <= tolbits(p, p / 2));
  }
}

// tanh-sinh quadrature of the real period 2 int_1^inf dx/sqrt(4x^3-4x),
// rewritten exactly as 2 int_0^1 du/sqrt(1-u^4); the substitution
// u = tanh((pi/2) sinh t) gives integrand (pi/2) cosh t / (cosh x sqrt(1+u^2))
// with x = (pi/2) sinh t, free of cancellation at the endpoint
static Real real_period_quadrature(long p) {
  Real h = Real::of(1L, p).mul_2si(-6);
  Real half_pi = Real::pi(p).mul_2si(-1);
  Real sum(p);
  mpfr_set_zero(sum.raw(), 1);
  for (long k = -460; k <= 460; k++) {
    Real t = h * Real::of(k, p);
    Real et = t.exp();
    Real sinh_t = (et - Real::of(1L, p) / et).mul_2si(-1);
    Real cosh_t = (et + Real::of(1L, p) / et).mul_2si(-1);
    Real x = half_pi * sinh_t;
    Real ex = x.exp();
    Real cosh_x = (ex + Real::of(1L, p) / ex).mul_2si(-1);
    Real u = (ex - Real::of(1L, p) / ex).mul_2si(-1) / cosh_x;
    sum += half_pi * cosh_t / (cosh_x * (Real::of(1L, p) + u.sqr()).sqrt());
  }
  // the node map covers (-1,1) and the integrand is even in u, so h*sum is
  // exactly the doubled half-range integral
  return sum * h;
}

TEST_CASE("period of the square model matches the period integral") {
  long p = 224;
  CMPeriod cp = cm_period(QI, p);
  CHECK(cp.normalization == "j1728");
  Real quad_oracle = real_period_quadrature(p);
  CHECK((cp.omega.re() - quad_oracle).abs() < Real::parse("1e-40", p));
  CHECK(cp.omega.im().abs() < Real::parse("1e-40", p));
  // the normalized lattice really carries the y^2 = 4x^3 - 4x invariants
  LatticeInvariants si = lattice_invariants(cp.scaled, p);
  CHECK((si.g2 - BigComplex::of(4, p)).abs() < Real::parse("1e-40", p));
  CHECK(si.g3.abs() < Real::parse("1e-40", p));
}

TEST_CASE("hexagonal period normalization") {
  long p = 192;
  CMPeriod cp = cm_period(Field::of(3), p);
  CHECK(cp.normalization == "j0");
  CHECK(cp.omega.re().sign() > 0);
  CHECK(cp.omega.im().abs() < cp.omega.re() * tolbits(p, p - 24));
  LatticeInvariants si = lattice_invariants(cp.scaled, p);
  CHECK(si.g2.abs() < Real::parse("1e-35", p));
  CHECK((si.g3 - BigComplex::of(4, p)).abs() < Real::parse("1e-35", p));
}

TEST_CASE("generic normalization lands on the rational invariants") {
  long p = 192;
  CMPeriod cp = cm_period(Field::of(7), p);
  CHECK(cp.normalization == "generic");
  // j = -3375 gives g2' = g3' = 27 j/(j - 1728) = 125/7
  Real target = Real::of(125L, p) / Real::of(7L, p);
  LatticeInvariants si = lattice_invariants(cp.scaled, p);
  CHECK((si.g2.re() - target).abs() < Real::parse("1e-35", p));
  CHECK((si.g3.re() - target).abs() < Real::parse("1e-35", p));
  CHECK(si.g2.im().abs() < Real::parse("1e-35", p));
  CHECK(si.g3.im().abs() < Real::parse("1e-35", p));
}

TEST_CASE("period output is stable under precision doubling") {
  for (long d : {1L, 3L, 7L}) {
    CMPeriod lo = cm_period(Field::of(d), 192);
    CMPeriod hi = cm_period(Field::of(d), 384);
    CAPTURE(d);
    CHECK(lo.normalization == hi.normalization);
    CHECK((lo.omega - hi.omega.at_prec(192)).abs() <
          lo.omega.abs() * tolbits(192, 170));
  }
}

TEST_CASE("period error cases") {
  // h = 2: the generic branch meets an irrational j
  bool threw = false;
  try {
    cm_period(Field::of(5), 128);
  } catch (const error& e) {
    threw = e.code() == errc::non_integral_j;
  }
  CHECK(threw);
  // h = 3 rejected up front
  bool threw2 = false;
  try {
    cm_period(Field::of(23), 128);
  } catch (const error& e) {
    threw2 = e.code() == errc::class_number_too_large;
  }
  CHECK(threw2);
}
