#pragma once

#include <optional>

#include "cmek/bigfloat.hpp"
#include "cmek/quadarith.hpp"

namespace cmek::ek {

// Upper incomplete gamma Gamma(nu, x) for x > 0 and integer or half-integer
// order nu = two_nu / 2.  Integer orders >= 1 go upward from Gamma(1, x) =
// exp(-x), half-integer orders from Gamma(1/2, x) = sqrt(pi) * erfc(sqrt(x)).
// Order 0 is the exponential integral E_1 (power series below x = 1, Lentz
// continued fraction above).  Negative orders recurse downward with guard
// bits against the cancellation that recurrence incurs.
Real upper_gamma(long two_nu, const Real& x, long prec);

// Rank-2 lattice with positively oriented basis, optionally remembering the
// ideal whose embedding it is.  Bases built from an ideal use the normal form
// directly, so the same ideal always produces the same basis.
struct Lattice2 {
  BigComplex w1, w2;  // Im(w2/w1) > 0

  struct Provenance {
    quad::Field field;
    quad::Ideal ideal;
  };
  std::optional<Provenance> prov;

  Real covolume() const;  // Im(conj(w1) * w2) > 0

  // swaps the basis if it is negatively oriented; degenerate pairs rejected
  static Lattice2 of_basis(const BigComplex& w1, const BigComplex& w2);
  static Lattice2 of_ideal(quad::Field K, const quad::Ideal& I, long prec);
};

// both drop ideal provenance, which holds only for the unscaled embedding
Lattice2 scaled(const Lattice2& L, const BigComplex& mu);
Lattice2 conjugated(const Lattice2& L);

// Parameters of the series sum over nonzero lambda in Lambda + t of
//   conj(lambda)^b * lambda^(-a) * |lambda|^(-2s),
// divided by gamma_order.  The division implements the coset sum over
// Gamma\(Lambda + Gamma*t) for Gamma the units congruent to 1 mod f: those
// units fix Lambda + t as a set and the nonzero stabilizers are trivial, so
// every orbit is counted |Gamma| times by the plain sum.  That reduction
// needs t*f inside the ideal of the lattice; with gamma_order > 1 the exact
// data (t_exact, gamma_modulus, ideal provenance) is therefore required and
// checked, and numerical-only t is rejected rather than guessed.
struct EKParams {
  long b_exp = 0;
  long a_exp = 1;
  BigComplex t;                       // ignored when t_exact is present
  std::optional<quad::Elem> t_exact;  // exact torsion translate
  BigComplex s;                       // must hold an exact integer for ek()
  std::optional<quad::Ideal> gamma_modulus;  // f, when Gamma is nontrivial
  long gamma_order = 1;
};

struct DirectSum {
  BigComplex value;
  Real tail_bound;
};

// Truncated direct sum over |lambda| <= radius, with a tail estimate from
// comparing the omitted shells with an integral.  Only valid in the region
// of absolute convergence Re(s) + (a - b)/2 > 1.
DirectSum ek_direct(const EKParams& par, const Lattice2& L, const Real& radius,
                    long prec);

// Analytic continuation by incomplete-gamma splitting against the dual
// lattice; supports any exact integer s with s + a >= 1, in particular the
// target s = 0.  split_variant in {0, 1, 2} moves the internal splitting
// point (used to cross-check that the answer does not depend on it).
BigComplex ek(const EKParams& par, const Lattice2& L, long prec,
              int split_variant = 0);

// N(c) * ek(...; Lambda) - ek(...; c^{-1} Lambda); the smoothing combination
// of the distribution relation.  Needs ideal provenance.
BigComplex ek_smoothed(const EKParams& par, const quad::Ideal& c,
                       const Lattice2& L, long prec);

}  // namespace cmek::ek
