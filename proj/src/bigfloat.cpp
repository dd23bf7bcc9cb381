#include "cmek/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace cmek {

std::string Real::str(size_t digits) const {
  if (digits == 0) digits = (size_t)(prec() * 0.30103) + 3;
  std::vector<char> buf(digits + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", (int)(digits - 1), v_);
  return std::string(buf.data());
}

std::string BigComplex::str(size_t digits) const {
  std::string r = re_.str(digits);
  std::string i = im_.str(digits);
  if (i[0] != '-') return r + " + " + i + "*I";
  return r + " - " + i.substr(1) + "*I";
}

BigComplex BigComplex::pow_si(long e) const {
  long p = prec();
  if (e == 0) return BigComplex::of(1, p);
  bool neg = e < 0;
  unsigned long k = neg ? (unsigned long)(-e) : (unsigned long)e;
  BigComplex base = *this;
  BigComplex acc = BigComplex::of(1, p);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return neg ? acc.inv() : acc;
}

BigComplex BigComplex::rootn(unsigned long n) const {
  if (n == 1) return *this;
  Real r = abs().rootn(n);
  Real theta = arg() / (long)n;
  BigComplex u = cis(theta);
  return BigComplex(u.re() * r, u.im() * r);
}

}  // namespace cmek
