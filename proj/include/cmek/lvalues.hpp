#pragma once

#include <string>
#include <vector>

#include "cmek/bigfloat.hpp"
#include "cmek/hecke.hpp"
#include "cmek/quadarith.hpp"

namespace cmek::lv {

// One ray class' contribution to an L-value.
struct PartialTerm {
  quad::Ideal rep;   // the class representative the sum was grouped under
  BigComplex value;
};

struct LValueReport {
  hecke::HeckeChar chi;
  BigComplex s;
  std::vector<PartialTerm> partials;  // one per ray class, in rcg index order
  BigComplex total;
  std::string method;  // "eseries" or "dirichlet"
  long prec = 0;
  Real error_bound;    // rigorous bound on |reported - true|
};

// Partial L-function of chi at s, summed over the integral ideals coprime to
// the modulus f lying in the ray class of b.  Writing each such ideal as
// lambda * b with lambda in 1 + f b^{-1}, the sum collapses to
//
//   chi(b) N(b)^{-s} * E^{b_exp, a_exp}(1, s; f b^{-1})
//
// with the unit cosets handled by the lattice-sum layer, so this converges
// for every s where the continued lattice sum does (s + a >= 1, s integral).
// Throws trivial_modulus for f = (1) and not_coprime when b shares a factor
// with f.
BigComplex partial_L(const hecke::HeckeChar& chi, const quad::Ideal& b,
                     const BigComplex& s, long prec);

// Sum of partial_L over all ray classes, with the per-class values kept.
LValueReport L_value(const hecke::HeckeChar& chi, const BigComplex& s, long prec);

// Independent evaluation by direct summation of chi(I) N(I)^{-s} over all
// integral ideals of norm <= Nmax coprime to the modulus, grouped by ray
// class.  Requires Re(s) > weight/2 + 1 (absolute convergence); the error
// bound covers the discarded tail via the crude ideal count #\{N <= X\} <= 6X.
LValueReport dirichlet_L(const hecke::HeckeChar& chi, const BigComplex& s,
                         long Nmax, long prec);

}  // namespace cmek::lv
