#pragma once

#include <vector>

#include "cmek/bigfloat.hpp"
#include "cmek/quadarith.hpp"

namespace cmek::hecke {

// Algebraic Hecke character of an imaginary quadratic field, in ideal form.
// On a principal ideal prime to the modulus with generator alpha = 1 mod* f
// the value is conj(alpha)^b * alpha^(-a); the finite part extends this to
// all ideals prime to f along the ray class generators.  The set of
// extensions is a torsor under ray class characters: twist digit i
// multiplies the value at generator i by an n_i-th root of unity, where n_i
// is the relative order of that generator.  The base point (all digits zero)
// takes the principal branch, argument in (-pi, pi], of every root.
//
// A character is fully determined by (field, modulus, a, b, twist digits),
// all exact data; complex values are recomputed at whatever precision the
// caller asks for, so evaluation is pure and instances are shareable.
struct HeckeChar {
  quad::Field field;
  quad::RayClassGroup rcg;
  long a = 0, b = 0;
  std::vector<long> twist_digits;

  long weight() const { return b - a; }
  // mixed-radix recombination of twist_digits (first digit fastest)
  long twist_index() const;

  // value at each ray class generator, recomputed at the given precision
  std::vector<BigComplex> gen_values(long prec) const;
  // value on an integral ideal coprime to the modulus
  BigComplex eval(const quad::Ideal& I, long prec) const;
};

long weight(const HeckeChar& chi);

// All characters with infinity part conj(alpha)^b * alpha^(-a) and the given
// modulus.  Empty when some unit congruent to 1 mod f violates
// conj(u)^b * u^(-a) = 1; otherwise one character per ray class character.
std::vector<HeckeChar> enumerate_characters(quad::Field K, const quad::Ideal& f,
                                            long a, long b);

BigComplex char_eval(const HeckeChar& chi, const quad::Ideal& I, long prec);

}  // namespace cmek::hecke
