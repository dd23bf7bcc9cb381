#ifndef CMEK_BIGFLOAT_HPP
#define CMEK_BIGFLOAT_HPP

// Arbitrary-precision real and complex arithmetic on top of MPFR.
//
// Conventions:
//  * every value carries its own precision in bits;
//  * all operations round to nearest (MPFR_RNDN), so each step is correct to
//    0.5 ulp, well inside the 2^(2-p) contract;
//  * the precision of a binary operation is the minimum of the operand
//    precisions (a value never pretends to know more than its inputs).

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace cmek {

class Real {
public:
  explicit Real(long prec = 64) { mpfr_init2(v_, prec < 2 ? 2 : prec); }
  Real(const Real& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.prec());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(long x, long prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of(const mpz_class& x, long prec) {
    Real r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static Real of(const mpq_class& x, long prec) {
    Real r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static Real of(double x, long prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  // Decimal string, returns NaN-valued Real on garbage (caller checks).
  static Real parse(const std::string& s, long prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) mpfr_set_nan(r.v_);
    return r;
  }
  static Real pi(long prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Real euler(long prec) {
    Real r(prec);
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
  }
  static Real log2const(long prec) {
    Real r(prec);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
  }

  long prec() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  // Same value re-rounded at precision p (exact when p >= prec()).
  Real at_prec(long p) const {
    Real r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  mpz_class round_to_mpz() const {
    mpz_class z;
    mpfr_t t;
    mpfr_init2(t, prec());
    mpfr_round(t, v_);
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) { return a + Real::of(b, a.prec()); }
  friend Real operator-(const Real& a, long b) { return a - Real::of(b, a.prec()); }
  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  int cmp_si(long x) const { return mpfr_cmp_si(v_, x); }

  Real abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real sqr() const {
    Real r(prec());
    mpfr_sqr(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real sqrt() const {
    Real r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  // Principal real n-th root of a nonnegative value.
  Real rootn(unsigned long n) const {
    Real r(prec());
    mpfr_rootn_ui(r.v_, v_, n, MPFR_RNDN);
    return r;
  }
  Real exp() const {
    Real r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real log() const {
    Real r(prec());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real pow_si(long e) const {
    Real r(prec());
    mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
    return r;
  }
  Real pow(const Real& e) const {
    Real r(minp(*this, e));
    mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
    return r;
  }
  Real mul_2si(long k) const {
    Real r(prec());
    mpfr_mul_2si(r.v_, v_, k, MPFR_RNDN);
    return r;
  }
  Real erfc() const {
    Real r(prec());
    mpfr_erfc(r.v_, v_, MPFR_RNDN);
    return r;
  }
  static Real atan2(const Real& y, const Real& x) {
    Real r(minp(y, x));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  static void sin_cos(const Real& x, Real& s, Real& c) {
    s = Real(x.prec());
    c = Real(x.prec());
    mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
  }
  static Real hypot(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  // Scientific-notation decimal string; digits = 0 picks enough digits to
  // round-trip the current precision.
  std::string str(size_t digits = 0) const;

private:
  static long minp(const Real& a, const Real& b) {
    long pa = a.prec(), pb = b.prec();
    return pa < pb ? pa : pb;
  }
  mpfr_t v_;
};

class BigComplex {
public:
  explicit BigComplex(long prec = 64) : re_(prec), im_(prec) {
    mpfr_set_zero(re_.raw(), 1);
    mpfr_set_zero(im_.raw(), 1);
  }
  BigComplex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  static BigComplex of(long x, long prec) { return BigComplex(Real::of(x, prec), Real::of(0L, prec)); }
  static BigComplex of(const mpq_class& x, long prec) {
    return BigComplex(Real::of(x, prec), Real::of(0L, prec));
  }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  BigComplex at_prec(long p) const { return BigComplex(re_.at_prec(p), im_.at_prec(p)); }
  long prec() const { return re_.prec() < im_.prec() ? re_.prec() : im_.prec(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend BigComplex operator-(const BigComplex& a) { return BigComplex(-a.re_, -a.im_); }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend BigComplex operator*(const BigComplex& a, const Real& s) {
    return BigComplex(a.re_ * s, a.im_ * s);
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) { return a * b.inv(); }
  friend BigComplex operator/(const BigComplex& a, const Real& s) {
    return BigComplex(a.re_ / s, a.im_ / s);
  }
  BigComplex& operator+=(const BigComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }

  BigComplex conj() const { return BigComplex(re_, -im_); }
  Real abs2() const { return re_.sqr() + im_.sqr(); }
  Real abs() const { return Real::hypot(re_, im_); }
  // Argument in (-pi, pi]; used for principal roots.
  Real arg() const { return Real::atan2(im_, re_); }
  BigComplex inv() const {
    Real n = abs2();
    return BigComplex(re_ / n, -(im_ / n));
  }
  // Binary powering; negative exponents invert at the end.
  BigComplex pow_si(long e) const;
  // Principal n-th root: |z|^{1/n} * exp(i*arg(z)/n).
  BigComplex rootn(unsigned long n) const;
  BigComplex mul_2si(long k) const { return BigComplex(re_.mul_2si(k), im_.mul_2si(k)); }
  // exp(i*theta) at the precision of theta.
  static BigComplex cis(const Real& theta) {
    Real s(theta.prec()), c(theta.prec());
    Real::sin_cos(theta, s, c);
    return BigComplex(c, s);
  }

  std::string str(size_t digits = 0) const;

private:
  Real re_, im_;
};

}  // namespace cmek

#endif
