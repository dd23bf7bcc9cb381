#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmek/errors.hpp"
#include "cmek/verify.hpp"

using namespace cmek;
using namespace cmek::vf;
using quad::Elem;
using quad::Field;
using quad::Ideal;

static Field QI = Field::of(1);
static const mpz_class HCAP(100000000);

static hecke::HeckeChar charql(Field K, const Ideal& f, long a, long b) {
  auto cs = hecke::enumerate_characters(K, f, a, b);
  REQUIRE(!cs.empty());
  return cs[0];
}

static Ideal f8() { return Ideal::principal(Elem(QI, 3, 1)).pow(3); }

TEST_CASE("recognition: rationals") {
  long p = 192;
  Recognition r = recognize_algebraic(BigComplex(Real::of(0.75, p), Real::of(0L, p)),
                                      4, HCAP, p);
  REQUIRE(r.found());
  CHECK(r.poly == Poly{-3, 4});
  Recognition r2 = recognize_algebraic(
      BigComplex(Real::of(355L, p) / Real::of(113L, p), Real::of(0L, p)), 4, HCAP, p);
  REQUIRE(r2.found());
  CHECK(r2.poly == Poly{-355, 113});
  // an exact zero is the root of x
  Recognition r0 = recognize_algebraic(BigComplex(p), 4, HCAP, p);
  REQUIRE(r0.found());
  CHECK(r0.poly == Poly{0, 1});
}

TEST_CASE("recognition: quadratic irrationals, real and complex") {
  long p = 192;
  Recognition r = recognize_algebraic(
      BigComplex(Real::of(2L, p).sqrt(), Real::of(0L, p)), 4, HCAP, p);
  REQUIRE(r.found());
  CHECK(r.poly == Poly{-2, 0, 1});
  Recognition phi = recognize_algebraic(
      BigComplex((Real::of(5L, p).sqrt() + 1L) / 2L, Real::of(0L, p)), 4, HCAP, p);
  REQUIRE(phi.found());
  CHECK(phi.poly == Poly{-1, -1, 1});
  Recognition ri = recognize_algebraic(
      BigComplex(Real::of(0L, p), Real::of(1L, p)), 4, HCAP, p);
  REQUIRE(ri.found());
  CHECK(ri.poly == Poly{1, 0, 1});
  // primitive sixth root of unity: x^2 - x + 1
  Recognition rz = recognize_algebraic(
      BigComplex(Real::of(1L, p) / 2L, Real::of(3L, p).sqrt() / 2L), 4, HCAP, p);
  REQUIRE(rz.found());
  CHECK(rz.poly == Poly{1, -1, 1});
  CHECK(rz.residual <= Real::of(1L, p).mul_2si(-p / 2));
}

TEST_CASE("recognition: a transcendental is refused") {
  long p = 192;
  Recognition r =
      recognize_algebraic(BigComplex(Real::pi(p), Real::of(0L, p)), 4, HCAP, p);
  CHECK(!r.found());
  CHECK(r.residual.sign() > 0);
  CHECK_THROWS_AS(recognize_algebraic(BigComplex(p), 9, HCAP, p), error);
  CHECK_THROWS_AS(recognize_algebraic(BigComplex(p), 0, HCAP, p), error);
}

TEST_CASE("criticality gate") {
  long p = 128;
  hecke::HeckeChar bad = charql(QI, f8(), 0, 4);
  bool threw = false;
  try {
    deligne_ratio(bad, BigComplex::of(1, p), p);
  } catch (const error& e) {
    threw = e.code() == errc::not_critical;
  }
  CHECK(threw);
}

TEST_CASE("ratio pipeline recognizes the quartic character") {
  long p = 192;
  hecke::HeckeChar chi = charql(QI, f8(), 4, 0);
  VerifyReport rep = verify(chi, p);
  CHECK(rep.period.normalization == "j1728");
  REQUIRE(rep.recognized);
  CHECK(rep.stable);
  CHECK(rep.poly.size() <= 3);
  mpz_class h = 0;
  for (const auto& c : rep.poly)
    if (abs(c) > h) h = abs(c);
  CHECK(h <= HCAP);
  CHECK(rep.residual <= Real::of(1L, p).mul_2si(-p / 2));
  // the report's ratio agrees with the exported fold (deterministic, so
  // bit-identical)
  BigComplex re = deligne_ratio(chi, rep.period.omega, p);
  CHECK((re - rep.ratio).abs().is_zero());
  // the erased transcendental scale: the ratio is real here
  CHECK(rep.ratio.im().abs() < rep.ratio.abs() * Real::of(1L, p).mul_2si(-150));
}

TEST_CASE("ratio pipeline: continuation-backed character (3,1)") {
  long p = 192;
  hecke::HeckeChar chi = charql(QI, f8(), 3, 1);
  VerifyReport rep = verify(chi, p);
  REQUIRE(rep.recognized);
  // the value comes out i/8: purely imaginary with minimal polynomial
  // 64 x^2 + 1 (first verified run, frozen; the dual-leg normalization is
  // what makes this algebraic at all)
  CHECK(rep.poly == std::vector<mpz_class>({1, 0, 64}));
  CHECK(rep.ratio.re().abs() <
        rep.ratio.abs() * Real::of(1L, p).mul_2si(-150));
  // rescaling robustness on the b > 0 path: u = 2 scales the ratio by
  // u^{-a} * conj(u)^{-b} = 2^{-5}
  BigComplex r2 = deligne_ratio(chi, rep.period.omega * Real::of(2L, p), p);
  CHECK((r2 - rep.ratio.mul_2si(-(chi.a + chi.b))).abs() <
        (rep.ratio.abs() + 1L) * Real::of(1L, p).mul_2si(-150));
  Recognition rec = recognize_algebraic(r2, 4, HCAP, p);
  REQUIRE(rec.found());
  CHECK(rec.poly != rep.poly);
}

TEST_CASE("ratio pipeline: hexagonal field (6,0)") {
  long p = 192;
  VerifyReport rep = verify(charql(Field::of(3), Ideal::principal(Elem(Field::of(3), 3, 2)), 6, 0), p);
  CHECK(rep.period.normalization == "j0");
  REQUIRE(rep.recognized);
  CHECK(rep.poly.size() <= 3);
}

TEST_CASE("rescaling the period keeps the ratio algebraic") {
  long p = 192;
  hecke::HeckeChar chi = charql(QI, f8(), 4, 0);
  VerifyReport rep = verify(chi, p);
  REQUIRE(rep.recognized);
  BigComplex r2 = deligne_ratio(chi, rep.period.omega * Real::of(2L, p), p);
  // u = 2: ratio transforms by u^{-a} * conj(u)^{-b} = 1/16
  CHECK((r2 - rep.ratio.mul_2si(-(chi.a + chi.b))).abs() <
        (rep.ratio.abs() + 1L) * Real::of(1L, p).mul_2si(-150));
  Recognition rec = recognize_algebraic(r2, 4, HCAP, p);
  REQUIRE(rec.found());
  CHECK(rec.poly != rep.poly);  // transformed, not identical
}

TEST_CASE("verify is deterministic") {
  long p = 160;
  hecke::HeckeChar chi = charql(QI, f8(), 4, 0);
  VerifyReport a = verify(chi, p), b = verify(chi, p);
  CHECK(a.poly == b.poly);
  CHECK((a.ratio - b.ratio).abs().is_zero());
  CHECK((a.residual - b.residual).abs().is_zero());
}

TEST_CASE("starved precision degrades gracefully") {
  VerifyReport rep = verify(charql(QI, f8(), 4, 0), 32);
  // no crash; the report is internally coherent either way
  if (rep.recognized) {
    CHECK(!rep.poly.empty());
    CHECK(rep.stable);
  } else {
    CHECK(rep.poly.empty());
  }
  CHECK(rep.residual.sign() >= 0);
}
