#include "cmek/periods.hpp"

#include <utility>
#include <vector>

#include "cmek/errors.hpp"

namespace cmek::per {

namespace {

// Gauss/Lagrange reduction: same lattice, tau = v2/v1 in the fundamental
// domain (|Re tau| <= 1/2, |tau| >= 1, Im tau > 0)
std::pair<BigComplex, BigComplex> reduce_basis(BigComplex v1, BigComplex v2) {
  for (int iter = 0;; iter++) {
    if (iter > 10000)
      fail(errc::internal_inconsistency, "basis reduction failed to settle");
    Real t = (v2 * v1.conj()).re() / v1.abs2();
    mpz_class tz = t.round_to_mpz();
    if (tz != 0) v2 = v2 - v1 * Real::of(tz, v1.prec());
    if (v2.abs2() < v1.abs2())
      std::swap(v1, v2);
    else
      break;
  }
  // orient so Im(v2/v1) > 0; negating v2 keeps the lattice
  if ((v2 * v1.conj()).im().sign() < 0) v2 = -v2;
  return {v1, v2};
}

}  // namespace

LatticeInvariants lattice_invariants(const ek::Lattice2& L, long prec) {
  long wp = prec + 32;
  auto [v1, v2] = reduce_basis(L.w1.at_prec(wp), L.w2.at_prec(wp));
  BigComplex tau = v2 / v1;
  // |q| <= e^{-pi sqrt 3} after reduction; term n is below 600 n^5 |q|^n
  long nterms = static_cast<long>((wp + 60) * 0.6931 / 5.441) + 8;
  std::vector<long> s3(nterms + 1, 0), s5(nterms + 1, 0);
  for (long d = 1; d <= nterms; d++) {
    long d3 = d * d * d, d5 = d3 * d * d;
    for (long m = d; m <= nterms; m += d) {
      s3[m] += d3;
      s5[m] += d5;
    }
  }
  Real two_pi = Real::pi(wp).mul_2si(1);
  BigComplex q = BigComplex::cis(two_pi * tau.re());
  q = q * (-(two_pi * tau.im())).exp();
  BigComplex e4 = BigComplex::of(1, wp), e6 = e4, qn(wp);
  qn = q;
  for (long n = 1; n <= nterms; n++) {
    e4 += qn * Real::of(240 * s3[n], wp);
    e6 += qn * Real::of(-504 * s5[n], wp);
    qn = qn * q;
  }
  BigComplex w = BigComplex(two_pi, Real::of(0L, wp)) / v1;
  LatticeInvariants inv{BigComplex(prec), BigComplex(prec), BigComplex(prec), L};
  BigComplex g2 = w.pow_si(4) * e4 / Real::of(12L, wp);
  BigComplex g3 = w.pow_si(6) * e6 / Real::of(216L, wp);
  BigComplex disc = g2.pow_si(3) - g3.pow_si(2) * Real::of(27L, wp);
  if (disc.is_zero())
    fail(errc::internal_inconsistency, "vanishing discriminant on a nondegenerate lattice");
  inv.g2 = g2.at_prec(prec);
  inv.g3 = g3.at_prec(prec);
  inv.j = (g2.pow_si(3) * Real::of(1728L, wp) / disc).at_prec(prec);
  return inv;
}

CMPeriod cm_period(quad::Field K, long prec) {
  long h = quad::ray_class_group(K, quad::Ideal::one(K)).order;
  if (h > 2)
    fail(errc::class_number_too_large,
         "class number " + std::to_string(h) + " exceeds the supported bound 2");
  long wp = prec + 48;
  ek::Lattice2 L0 = ek::Lattice2::of_ideal(K, quad::Ideal::one(K), wp);
  LatticeInvariants inv = lattice_invariants(L0, wp);
  Real g2a = inv.g2.abs(), g3a = inv.g3.abs();
  Real eps = Real::of(1L, wp).mul_2si(-(prec / 2));
  // weight-matched vanishing tests: compare |g3| against |g2|^{3/2} and
  // |g2| against |g3|^{2/3}
  BigComplex mu(wp);
  std::string tag;
  if (g3a <= (g2a * g2a.sqrt() + 1L) * eps) {
    tag = "j1728";
    mu = (inv.g2 / Real::of(4L, wp)).rootn(4);
  } else if (g2a <= (g3a.sqr().rootn(3) + 1L) * eps) {
    tag = "j0";
    mu = (inv.g3 / Real::of(4L, wp)).rootn(6);
  } else {
    tag = "generic";
    mpz_class jz = inv.j.re().round_to_mpz();
    BigComplex resid = inv.j - BigComplex(Real::of(jz, wp), Real::of(0L, wp));
    if (resid.abs() > eps)
      fail(errc::non_integral_j,
           "j-invariant is not a rational integer (class number " +
               std::to_string(h) + ")");
    mu = (inv.g3 / inv.g2).rootn(2);
  }
  CMPeriod out{K, mu.at_prec(prec), tag,
               ek::Lattice2::of_basis((L0.w1 * mu).at_prec(prec),
                                      (L0.w2 * mu).at_prec(prec))};
  return out;
}

}  // namespace cmek::per
