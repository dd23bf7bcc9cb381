#pragma once

#include <string>

#include "cmek/bigfloat.hpp"
#include "cmek/eklattice.hpp"
#include "cmek/quadarith.hpp"

namespace cmek::per {

struct LatticeInvariants {
  BigComplex g2, g3, j;
  ek::Lattice2 source;
};

// Weierstrass invariants g2 = 60 sum' lambda^{-4}, g3 = 140 sum' lambda^{-6}
// and j = 1728 g2^3 / (g2^3 - 27 g3^2), computed through the Eisenstein
// q-expansion after Lagrange-reducing the basis (so |q| <= e^{-pi sqrt 3} and
// the series converges uniformly fast).
LatticeInvariants lattice_invariants(const ek::Lattice2& L, long prec);

// The transcendental scale of the ring of integers' lattice, pinned (up to
// the inherent algebraic ambiguity) by rescaling embed(O_K) until its
// invariants are rational:
//   g3 = 0  ->  "j1728": mu^4 = g2/4, model y^2 = 4x^3 - 4x
//   g2 = 0  ->  "j0":    mu^6 = g3/4, model y^2 = 4x^3 - 4
//   else    ->  "generic": mu^2 = g3/g2, forcing g2' = g3' = 27j/(j-1728),
//               rational only when j is a rational integer (true for class
//               number 1; checked, not assumed)
// Omega = mu, and `scaled` is the normalized lattice Omega * embed(O_K).
struct CMPeriod {
  quad::Field field;
  BigComplex omega;
  std::string normalization;  // "j0" | "j1728" | "generic"
  ek::Lattice2 scaled;
};

// errors: class_number_too_large for h > 2; non_integral_j when the generic
// branch meets an irrational j (h = 2)
CMPeriod cm_period(quad::Field K, long prec);

}  // namespace cmek::per
