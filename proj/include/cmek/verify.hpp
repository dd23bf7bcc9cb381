#pragma once

#include <vector>

#include "cmek/bigfloat.hpp"
#include "cmek/hecke.hpp"
#include "cmek/periods.hpp"

namespace cmek::vf {

// integer polynomial, ascending coefficients, content 1, leading > 0
using Poly = std::vector<mpz_class>;

struct Recognition {
  Poly poly;      // empty when nothing passed the gates
  Real residual;  // |P(z)| / (height * (deg+1) * max(1,|z|)^deg)
  bool found() const { return !poly.empty(); }
};

// Integer-relation search over 1, z, z^2, ..., z^d for d <= max_degree,
// through exact-arithmetic lattice reduction (delta = 3/4) on the coefficient
// lattice with two heavy columns carrying the real and imaginary parts (the
// imaginary column degenerates harmlessly for real z, and for complex z the
// d = 2 stage subsumes recognition over a quadratic integral basis).
// A candidate is accepted when height <= max_height and the scaled residual
// is <= 2^{-prec/2}; smallest degree wins.  "Not found" is a valid answer and
// carries the best rejected residual.
Recognition recognize_algebraic(const BigComplex& z, int max_degree,
                                const mpz_class& max_height, long prec);

struct VerifyReport {
  hecke::HeckeChar chi;
  long prec = 0;
  BigComplex lvalue;    // L_f(chi, 0) by the lattice-sum route
  per::CMPeriod period;
  BigComplex ratio;     // deligne_ratio(chi, period.omega, prec)
  Poly poly;            // stable recognized polynomial, or empty
  Real residual;        // at the base precision
  bool stable = false;  // same polynomial reappears at 3*prec/2
  bool recognized = false;
};

// The critical-value ratio that the theory asserts is algebraic: the L-value
// divided by Omega^a and by the dual-normalized conjugate period
// (2*pi*i/conj(Omega))^{-b} -- equivalently L * (2*pi*i)^b / (conj(Omega)^b *
// Omega^a).  The Legendre relation makes 2*pi*i/conj(Omega) the natural
// second period leg; with the plain conjugate the b > 0 ratios would retain a
// transcendental covolume/pi factor.  Criticality of the infinity type
// (a >= 1, b >= 0) is certified through the degree-1 combinatorial layer
// before any analytic work; errors: not_critical.
BigComplex deligne_ratio(const hecke::HeckeChar& chi, const BigComplex& omega,
                         long prec);

// Full pipeline: L-value, period, ratio, recognition at prec and 3*prec/2
// with the stability cross-check.  max_degree caps the recognition search.
VerifyReport verify(const hecke::HeckeChar& chi, long prec, int max_degree = 4);

}  // namespace cmek::vf
