#include "cmek/eklattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "cmek/errors.hpp"

namespace cmek::ek {

namespace {

// ---- incomplete gamma ------------------------------------------------------

// E_1(x) = -euler - log x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!), for x < 1
Real e1_series(const Real& x, long wp) {
  Real sum = -Real::euler(wp) - x.log();
  Real term = Real::of(1L, wp);
  Real tiny = Real::of(1L, wp).mul_2si(-wp - 8);
  for (long k = 1; k < 8 * wp; k++) {
    term = term * x / k;
    Real contrib = term / k;
    if (k & 1)
      sum += contrib;
    else
      sum -= contrib;
    if (contrib.abs() < tiny) return sum;
  }
  fail(errc::internal_inconsistency, "exponential integral series did not settle");
}

// E_1(x) = e^{-x} / (x+1 - 1/(x+3 - 4/(x+5 - 9/(x+7 - ...)))), for x >= 1,
// evaluated by the modified Lentz scheme
Real e1_cf(const Real& x, long wp) {
  Real one = Real::of(1L, wp);
  Real tiny = one.mul_2si(-2 * wp);
  Real eps = one.mul_2si(-wp - 4);
  Real f = x + 1L;
  if (f.is_zero()) f = tiny;
  Real C = f, D = Real::of(0L, wp);
  for (long k = 1; k < 1000000; k++) {
    Real a = Real::of(-k * k, wp);
    Real b = x + (2 * k + 1);
    D = b + a * D;
    if (D.is_zero()) D = tiny;
    C = b + a / C;
    if (C.is_zero()) C = tiny;
    D = one / D;
    Real delta = C * D;
    f *= delta;
    if ((delta - one).abs() < eps) return (-x).exp() / f;
  }
  fail(errc::internal_inconsistency, "exponential integral fraction did not settle");
}

}  // namespace

Real upper_gamma(long two_nu, const Real& x, long prec) {
  if (x.sign() <= 0)
    fail(errc::unsupported_parameters, "incomplete gamma needs x > 0");
  long xe = mpfr_get_exp(x.raw());
  long guard = 32;
  // downward recurrence cancels roughly log2(x)+4 bits per step
  if (two_nu < 0) guard += ((-two_nu) / 2 + 1) * ((xe > 1 ? xe : 1) + 4);
  long wp = prec + guard;
  Real xw = x.at_prec(wp);
  Real ex = (-xw).exp();
  Real sx = xw.sqrt();  // x^{k/2} = sx^k keeps half-integer powers exact-ish
  Real g(wp);
  long base;  // twice the order currently held in g
  if (two_nu % 2 == 0) {
    if (two_nu >= 2) {
      g = ex;  // Gamma(1, x)
      base = 2;
    } else {
      g = (xw < Real::of(1L, wp)) ? e1_series(xw, wp) : e1_cf(xw, wp);
      base = 0;
    }
  } else {
    g = Real::pi(wp).sqrt() * sx.erfc();  // Gamma(1/2, x)
    base = 1;
  }
  while (base < two_nu) {
    // Gamma(nu+1, x) = nu*Gamma(nu, x) + x^nu e^{-x}
    g = (Real::of(base, wp) / 2L) * g + sx.pow_si(base) * ex;
    base += 2;
  }
  while (base > two_nu) {
    // Gamma(nu-1, x) = (Gamma(nu, x) - x^{nu-1} e^{-x}) / (nu-1)
    Real nu1 = Real::of(base - 2, wp) / 2L;
    g = (g - sx.pow_si(base - 2) * ex) / nu1;
    base -= 2;
  }
  return g.at_prec(prec);
}

// ---- lattices --------------------------------------------------------------

Real Lattice2::covolume() const { return (w1.conj() * w2).im(); }

Lattice2 Lattice2::of_basis(const BigComplex& a, const BigComplex& b) {
  Lattice2 L;
  Real A = (a.conj() * b).im();
  if (A.is_zero()) fail(errc::unsupported_parameters, "degenerate lattice basis");
  if (A.sign() > 0) {
    L.w1 = a;
    L.w2 = b;
  } else {
    L.w1 = b;
    L.w2 = a;
  }
  return L;
}

Lattice2 Lattice2::of_ideal(quad::Field K, const quad::Ideal& I, long prec) {
  auto [g1, g2] = I.gens();
  Lattice2 L = of_basis(g1.embed(prec), g2.embed(prec));
  L.prov = Provenance{K, I};
  return L;
}

Lattice2 scaled(const Lattice2& L, const BigComplex& mu) {
  return Lattice2::of_basis(L.w1 * mu, L.w2 * mu);
}

Lattice2 conjugated(const Lattice2& L) {
  return Lattice2::of_basis(L.w1.conj(), L.w2.conj());
}

namespace {

// ---- shared validation and enumeration -------------------------------------

void check_exponents(const EKParams& par) {
  if (par.a_exp < 1 || par.b_exp < 0)
    fail(errc::unsupported_parameters, "series needs a >= 1 and b >= 0");
}

// Gamma-reduction validity; see the comment on EKParams.
void check_gamma(const EKParams& par, const Lattice2& L) {
  if (par.gamma_order < 1)
    fail(errc::unsupported_parameters, "unit group order must be positive");
  if (par.gamma_order == 1) return;
  if (!L.prov || !par.t_exact || !par.gamma_modulus)
    fail(errc::invalid_torsion_point,
         "nontrivial unit group needs exact torsion, modulus and ideal data");
  const quad::Field& K = L.prov->field;
  if (par.t_exact->K.d != K.d || par.gamma_modulus->K.d != K.d)
    fail(errc::invalid_torsion_point, "torsion data from a different field");
  auto [f1, f2] = par.gamma_modulus->gens();
  if (!L.prov->ideal.contains(*par.t_exact * f1) ||
      !L.prov->ideal.contains(*par.t_exact * f2))
    fail(errc::invalid_torsion_point,
         "translate not in f^{-1} * lattice, coset reduction invalid");
  auto um = quad::units_mod(K, *par.gamma_modulus);
  if ((long)um.units.size() != par.gamma_order)
    fail(errc::internal_inconsistency, "unit group order mismatch");
  quad::Elem one = quad::Elem::integer(K, 1);
  for (const quad::Elem& u : um.units)
    if (!(quad::elem_pow(u.conj(), par.b_exp) * quad::elem_pow(u, -par.a_exp) == one))
      fail(errc::internal_inconsistency, "type not invariant under the unit group");
}

// exact torsion value at the working precision when available
BigComplex torsion_value(const EKParams& par, long wp) {
  if (par.t_exact) return par.t_exact->embed(wp);
  return par.t.at_prec(wp);
}

// lattice basis at the working precision, rebuilt from the ideal if possible
std::pair<BigComplex, BigComplex> basis_at(const Lattice2& L, long wp) {
  if (L.prov) {
    auto [g1, g2] = L.prov->ideal.gens();
    return {g1.embed(wp), g2.embed(wp)};
  }
  return {L.w1.at_prec(wp), L.w2.at_prec(wp)};
}

// When the translate itself lies in the lattice the corresponding point is
// lambda = 0 and must be skipped; rounding would otherwise leave a spurious
// near-zero point with an enormous summand.  Returns the (m, n) coordinates
// of -t in the basis of the ideal's generators, if t is in the lattice.
std::optional<std::pair<long, long>> zero_coords(const EKParams& par,
                                                const Lattice2& L) {
  if (!par.t_exact || !L.prov) return std::nullopt;
  const quad::Ideal& I = L.prov->ideal;
  if (!I.contains(*par.t_exact)) return std::nullopt;
  // t = m*(s*a) + n*(s*(b+omega)): solve in exact rationals
  mpq_class n = par.t_exact->y / I.scale;
  mpq_class m = (par.t_exact->x / I.scale - mpq_class(I.b) * n) / mpq_class(I.a);
  return std::make_pair(-mpz_class(m.get_num()).get_si(),
                        -mpz_class(n.get_num()).get_si());
}

struct NumPoint {
  double r2, ang;
  long mm, nn;
};

// integer pairs (mm, nn) with 0 < |t + mm*w1 + nn*w2|^2 <= X, sorted by
// increasing |lambda|, ties by angle then coordinates
std::vector<NumPoint> enum_points(const BigComplex& t, const BigComplex& w1,
                                  const BigComplex& w2, const Real& X,
                                  std::optional<std::pair<long, long>> skip) {
  double u1x = w1.re().to_double(), u1y = w1.im().to_double();
  double u2x = w2.re().to_double(), u2y = w2.im().to_double();
  double tx = t.re().to_double(), ty = t.im().to_double();
  double Xd = X.to_double();
  double R = std::sqrt(std::max(Xd, 0.0));
  double Ad = std::fabs(u1x * u2y - u1y * u2x);
  double n1 = std::hypot(u1x, u1y);
  if (!(Ad > 0) || !(R < 1e12))
    fail(errc::precision_unachievable, "truncation radius out of range");
  if (3.5 * (Xd / Ad) + 64 > 2e7)
    fail(errc::precision_unachievable, "too many lattice points at this precision");
  std::vector<NumPoint> pts;
  double crossT = u1x * ty - u1y * tx;
  double ne1 = (-crossT - R * n1) / (u1x * u2y - u1y * u2x);
  double ne2 = (-crossT + R * n1) / (u1x * u2y - u1y * u2x);
  long nlo = (long)std::floor(std::min(ne1, ne2)) - 2;
  long nhi = (long)std::ceil(std::max(ne1, ne2)) + 2;
  for (long nn = nlo; nn <= nhi; nn++) {
    double px = tx + nn * u2x, py = ty + nn * u2y;
    double perp = (u1x * py - u1y * px) / n1;
    double rest = R * R - perp * perp;
    if (rest < -n1 * n1) continue;
    double along = (px * u1x + py * u1y) / (n1 * n1);
    double half = std::sqrt(std::max(rest, 0.0)) / n1;
    long mlo = (long)std::floor(-along - half) - 2;
    long mhi = (long)std::ceil(-along + half) + 2;
    for (long mm = mlo; mm <= mhi; mm++) {
      if (skip && skip->first == mm && skip->second == nn) continue;
      BigComplex lam = t + w1 * Real::of(mm, t.prec()) + w2 * Real::of(nn, t.prec());
      Real r2 = lam.abs2();
      if (r2.is_zero() || r2 > X) continue;
      double lx = tx + mm * u1x + nn * u2x, ly = ty + mm * u1y + nn * u2y;
      pts.push_back(NumPoint{r2.to_double(), std::atan2(ly, lx), mm, nn});
    }
  }
  std::sort(pts.begin(), pts.end(), [](const NumPoint& a, const NumPoint& b) {
    return std::tie(a.r2, a.ang, a.mm, a.nn) < std::tie(b.r2, b.ang, b.mm, b.nn);
  });
  return pts;
}

long integer_s(const BigComplex& s) {
  if (!s.im().is_zero() || !mpfr_integer_p(s.re().raw()))
    fail(errc::unsupported_parameters,
         "continuation validated for exact integer s only");
  return s.re().to_long();
}

BigComplex mul_i_pow(const BigComplex& z, long k) {  // z * i^k
  switch (((k % 4) + 4) % 4) {
    case 0: return z;
    case 1: return BigComplex(-z.im(), z.re());
    case 2: return -z;
    default: return BigComplex(z.im(), -z.re());
  }
}

// ---- exact direct scan -----------------------------------------------------

// Integer coordinates of theta = q*lambda running over q*(t + I): row
// structure theta = th_t + mm*th1 + nn*th2 with th1 purely "rational" part.
struct ExactSetup {
  mpz_class q;
  mpz_class ttx, tty;  // q * t
  mpz_class x1;        // th1 = (x1, 0), from scale*a
  mpz_class x2, y2;    // th2, from scale*(b + omega)
  long D, N0;
  mpz_class K2;  // include the point iff 0 < N(theta) <= K2 = (q*radius)^2
};

// the same data narrowed to the integer type of one scan
template <typename ZZ>
struct RowSetup {
  ZZ ttx, tty, x1, x2, y2, K2;
  long D, N0;
};

long narrow(const mpz_class& z, long) { return mpz_get_si(z.get_mpz_t()); }
mpz_class narrow(const mpz_class& z, mpz_class) { return z; }

__int128 narrow(const mpz_class& z, __int128) {
  mpz_class a = abs(z), hi = a >> 64, lo = a - (hi << 64);
  unsigned __int128 u =
      (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) +
      mpz_get_ui(lo.get_mpz_t());
  return sgn(z) < 0 ? -static_cast<__int128>(u) : static_cast<__int128>(u);
}

mpz_class widen128(__int128 v) {
  unsigned __int128 u = v < 0 ? -static_cast<unsigned __int128>(v) : v;
  mpz_class r(static_cast<unsigned long>(u >> 64));
  r <<= 64;
  r += static_cast<unsigned long>(u & ~0UL);
  return v < 0 ? mpz_class(-r) : r;
}

template <typename ZZ>
RowSetup<ZZ> narrow_setup(const ExactSetup& st) {
  return RowSetup<ZZ>{narrow(st.ttx, ZZ()), narrow(st.tty, ZZ()),
                      narrow(st.x1, ZZ()),  narrow(st.x2, ZZ()),
                      narrow(st.y2, ZZ()),  narrow(st.K2, ZZ()),
                      st.D,                 st.N0};
}

template <typename ZZ>
std::pair<ZZ, ZZ> coord_mul(const std::pair<ZZ, ZZ>& u, const std::pair<ZZ, ZZ>& v,
                            long D, long N0) {
  return {u.first * v.first - N0 * (u.second * v.second),
          u.first * v.second + u.second * v.first + D * (u.second * v.second)};
}

template <typename ZZ>
std::pair<ZZ, ZZ> coord_pow(std::pair<ZZ, ZZ> z, long e, long D, long N0) {
  std::pair<ZZ, ZZ> r{ZZ(1), ZZ(0)};
  while (e) {
    if (e & 1) r = coord_mul(r, z, D, N0);
    z = coord_mul(z, z, D, N0);
    e >>= 1;
  }
  return r;
}

// One row sweep shared by the long and mpz scans.  The double-precision
// ranges over-cover by a margin of two basis steps; membership itself is the
// exact integer test 0 < N(theta) <= K2.
template <typename ZZ, typename Sink>
void scan_rows(const RowSetup<ZZ>& st, const BigComplex& t, const BigComplex& w1,
               const BigComplex& w2, double R, long m_exp, Sink&& sink) {
  double u1x = w1.re().to_double(), u1y = w1.im().to_double();
  double u2x = w2.re().to_double(), u2y = w2.im().to_double();
  double tx = t.re().to_double(), ty = t.im().to_double();
  double Ad = u1x * u2y - u1y * u2x;
  double n1 = std::hypot(u1x, u1y);
  double crossT = u1x * ty - u1y * tx;
  double ne1 = (-crossT - R * n1) / Ad, ne2 = (-crossT + R * n1) / Ad;
  long nlo = (long)std::floor(std::min(ne1, ne2)) - 2;
  long nhi = (long)std::ceil(std::max(ne1, ne2)) + 2;
  for (long nn = nlo; nn <= nhi; nn++) {
    double px = tx + nn * u2x, py = ty + nn * u2y;
    double perp = (u1x * py - u1y * px) / n1;
    double rest = R * R - perp * perp;
    if (rest < -n1 * n1) continue;
    double along = (px * u1x + py * u1y) / (n1 * n1);
    double half = std::sqrt(std::max(rest, 0.0)) / n1;
    long mlo = (long)std::floor(-along - half) - 2;
    long mhi = (long)std::ceil(-along + half) + 2;
    ZZ y = st.tty + ZZ(nn) * st.y2;
    ZZ xrow = st.ttx + ZZ(nn) * st.x2 + ZZ(mlo) * st.x1;
    ZZ dy = ZZ(st.D) * y, n0yy = ZZ(st.N0) * y * y;
    for (long mm = mlo; mm <= mhi; mm++, xrow += st.x1) {
      ZZ k = xrow * xrow + dy * xrow + n0yy;
      if (k <= ZZ(0) || k > st.K2) continue;
      // conj(theta) = (x + D*y, -y) in the (1, omega) basis
      auto p = coord_pow<ZZ>({xrow + dy, ZZ(0) - y}, m_exp, st.D, st.N0);
      sink(k, p.first, p.second);
    }
  }
}

}  // namespace

// ---- direct sum ------------------------------------------------------------

DirectSum ek_direct(const EKParams& par, const Lattice2& L, const Real& radius,
                    long prec) {
  check_exponents(par);
  check_gamma(par, L);
  long m_exp = par.a_exp + par.b_exp;
  // absolute convergence: Re(s) + (a - b)/2 > 1
  Real margin = par.s.re() + Real::of(par.a_exp - par.b_exp, 128) / 2L;
  if (!(margin > Real::of(1L, 128)))
    fail(errc::outside_convergence_region,
         "direct sum needs Re(s) + (a-b)/2 > 1");
  if (radius < Real::of(10L, 64))
    fail(errc::unsupported_parameters, "truncation radius must be >= 10");
  long wp = prec + 40;
  auto [w1, w2] = basis_at(L, wp);
  BigComplex t = torsion_value(par, wp);
  Real X = radius.at_prec(wp).sqr();

  BigComplex sum(wp);
  bool s_int = par.s.im().is_zero() && mpfr_integer_p(par.s.re().raw()) != 0;
  bool exact_ok = L.prov && (par.t_exact || par.t.is_zero()) && s_int;
  if (exact_ok) {
    // exact integer coordinates q*lambda, bucketed by the integer norm key
    const quad::Ideal& I = L.prov->ideal;
    quad::Elem te = par.t_exact ? *par.t_exact
                                : quad::Elem::integer(L.prov->field, 0);
    ExactSetup st;
    mpz_class ds = I.scale.get_den();
    st.q = lcm(lcm(te.x.get_den(), te.y.get_den()), ds);
    st.ttx = st.q * te.x.get_num() / te.x.get_den();
    st.tty = st.q * te.y.get_num() / te.y.get_den();
    mpq_class sa = I.scale * mpq_class(I.a), sb = I.scale * mpq_class(I.b);
    st.x1 = st.q * sa.get_num() / sa.get_den();
    st.x2 = st.q * sb.get_num() / sb.get_den();
    mpq_class sq = I.scale;
    st.y2 = st.q * sq.get_num() / sq.get_den();
    st.D = L.prov->field.D;
    st.N0 = mpz_get_si(L.prov->field.omega_norm().get_mpz_t());
    Real qR = Real::of(st.q, wp) * radius.at_prec(wp);
    mpfr_t fl;
    mpfr_init2(fl, wp);
    mpfr_sqr(fl, qR.raw(), MPFR_RNDN);
    mpfr_floor(fl, fl);
    mpfr_get_z(st.K2.get_mpz_t(), fl, MPFR_RNDN);
    mpfr_clear(fl);

    double Rd = radius.to_double();
    // int64 is safe when every coordinate, norm key and bucketed power sum
    // stays far below 2^63
    double qRd = mpz_get_d(st.q.get_mpz_t()) * Rd;
    double coordb = qRd * (2.0 + std::sqrt((double)-st.D));
    double powbits = m_exp * std::log2(std::max(coordb, 2.0)) + 20;
    double keybits = 2 * std::log2(std::max(coordb, 2.0)) + 4;
    bool key_small = mpz_fits_slong_p(st.K2.get_mpz_t());
    bool fits = key_small && powbits < 62 && keybits < 62;
    bool fits128 = key_small && powbits < 124 && keybits < 124;
    BigComplex omega = L.prov->field.omega_embedded(wp);
    long w_pow = par.s.re().to_long() + par.a_exp;
    // per-bucket scalar: q^{2w-m} / k^w
    Real qpow = Real::of(st.q, wp).pow_si(2 * w_pow - m_exp);
    auto flush = [&](const mpz_class& k, const mpz_class& sx, const mpz_class& sy) {
      if (sx == 0 && sy == 0) return;
      mpz_class kw;
      mpz_pow_ui(kw.get_mpz_t(), k.get_mpz_t(), (unsigned long)w_pow);
      Real c = qpow / Real::of(kw, wp);
      BigComplex z(Real::of(sx, wp), Real::of(0L, wp));
      z = z + omega * Real::of(sy, wp);
      sum += z * c;
    };
    if (fits) {
      long K2l = mpz_get_si(st.K2.get_mpz_t());
      auto rs = narrow_setup<long>(st);
      if (K2l <= 8000000) {
        std::vector<std::pair<long, long>> acc((size_t)K2l + 1, {0, 0});
        std::vector<char> used((size_t)K2l + 1, 0);
        scan_rows<long>(rs, t, w1, w2, Rd, m_exp,
                        [&](long k, long px, long py) {
                          acc[(size_t)k].first += px;
                          acc[(size_t)k].second += py;
                          used[(size_t)k] = 1;
                        });
        for (long k = 1; k <= K2l; k++)
          if (used[(size_t)k]) flush(k, acc[(size_t)k].first, acc[(size_t)k].second);
      } else {
        std::map<long, std::pair<long, long>> acc;
        scan_rows<long>(rs, t, w1, w2, Rd, m_exp,
                        [&](long k, long px, long py) {
                          auto& c = acc[k];
                          c.first += px;
                          c.second += py;
                        });
        for (auto& [k, c] : acc) flush(k, c.first, c.second);
      }
    } else if (fits128) {
      long K2l = mpz_get_si(st.K2.get_mpz_t());
      auto rs = narrow_setup<__int128>(st);
      // tighter bucket-array cap than the int64 tier: entries are twice as wide
      if (K2l <= 4500000) {
        std::vector<std::pair<__int128, __int128>> acc((size_t)K2l + 1, {0, 0});
        std::vector<char> used((size_t)K2l + 1, 0);
        scan_rows<__int128>(rs, t, w1, w2, Rd, m_exp,
                            [&](__int128 k, __int128 px, __int128 py) {
                              acc[(size_t)k].first += px;
                              acc[(size_t)k].second += py;
                              used[(size_t)k] = 1;
                            });
        for (long k = 1; k <= K2l; k++)
          if (used[(size_t)k])
            flush(k, widen128(acc[(size_t)k].first), widen128(acc[(size_t)k].second));
      } else {
        std::map<long, std::pair<__int128, __int128>> acc;
        scan_rows<__int128>(rs, t, w1, w2, Rd, m_exp,
                            [&](__int128 k, __int128 px, __int128 py) {
                              auto& c = acc[(long)k];
                              c.first += px;
                              c.second += py;
                            });
        for (auto& [k, c] : acc) flush(k, widen128(c.first), widen128(c.second));
      }
    } else {
      auto rs = narrow_setup<mpz_class>(st);
      std::map<mpz_class, std::pair<mpz_class, mpz_class>> acc;
      scan_rows<mpz_class>(rs, t, w1, w2, Rd, m_exp,
                           [&](const mpz_class& k, const mpz_class& px,
                               const mpz_class& py) {
                             auto& c = acc[k];
                             c.first += px;
                             c.second += py;
                           });
      for (auto& [k, c] : acc) flush(k, c.first, c.second);
    }
  } else {
    auto pts = enum_points(t, w1, w2, X, zero_coords(par, L));
    Real w_r = par.s.re().at_prec(wp) + Real::of(par.a_exp, wp);
    Real ims = par.s.im().at_prec(wp);
    for (const NumPoint& p : pts) {
      BigComplex lam =
          t + w1 * Real::of(p.mm, wp) + w2 * Real::of(p.nn, wp);
      Real r2 = lam.abs2();
      BigComplex term = lam.conj().pow_si(m_exp) * r2.pow(-w_r);
      // complex s contributes |lambda|^{-2 i Im(s)} = cis(-Im(s) log r2)
      if (!ims.is_zero()) term = term * BigComplex::cis(-(ims * r2.log()));
      sum += term;
    }
  }
  sum = sum / Real::of(par.gamma_order, wp);

  // integral estimate for the omitted shells; the shifted radius absorbs the
  // covering radius of the lattice, the leading 2 is slack
  Real kdec = par.s.re() * 2L + Real::of(par.a_exp - par.b_exp, wp);
  Real Rw = radius.at_prec(wp);
  Real shift = (w1.abs() + w2.abs()) / 2L;
  Real Rp = Rw - shift;
  if (Rp < Rw / 2L) Rp = Rw / 2L;
  Real A2 = (w1.conj() * w2).im().abs();
  Real tail = Real::pi(wp) * 4L / (A2 * Real::of(par.gamma_order, wp)) *
              Rp.pow(Real::of(2L, wp) - kdec) / (kdec - 2L);
  return DirectSum{sum.at_prec(prec), tail.at_prec(prec)};
}

// ---- analytic continuation -------------------------------------------------

BigComplex ek(const EKParams& par, const Lattice2& L, long prec, int split_variant) {
  check_exponents(par);
  check_gamma(par, L);
  long si = integer_s(par.s);
  long m_exp = par.a_exp + par.b_exp;
  long w = si + par.a_exp;
  if (w < 1)
    fail(errc::unsupported_parameters, "continuation needs s + a >= 1");
  long wp = prec + 40;
  auto [w1, w2] = basis_at(L, wp);
  // the dual lattice (i/A)*Lambda and the splitting point only see |A|, so
  // the basis can stay in generator order whatever its orientation
  Real A = (w1.conj() * w2).im().abs();
  BigComplex t = torsion_value(par, wp);

  Real pi = Real::pi(wp);
  Real T = pi / A.sqrt();
  if (split_variant == 1) T = T * 13L / 10L;
  if (split_variant == 2) T = T * 10L / 13L;
  Real cut = Real::of(prec + 20, wp) * Real::log2const(wp);

  // far part: sum of conj(lambda)^m Gamma(w, T |lambda|^2) / |lambda|^{2w}
  BigComplex far(wp);
  {
    Real X = cut / T;
    for (const NumPoint& p : enum_points(t, w1, w2, X, zero_coords(par, L))) {
      BigComplex lam = t + w1 * Real::of(p.mm, wp) + w2 * Real::of(p.nn, wp);
      Real r2 = lam.abs2();
      Real g = upper_gamma(2 * w, T * r2, wp);
      far += lam.conj().pow_si(m_exp) * (g / r2.pow_si(w));
    }
  }

  // dual part over the lattice with Re(lambda * conj(mu)) integral:
  //   (pi^{m+1} (-i)^m / A) * sum of conj(mu)^m e^{2 pi i Re(t conj(mu))}
  //     * (pi^2 |mu|^2)^{w-m-1} * Gamma(m+1-w, pi^2 |mu|^2 / T)
  BigComplex dual(wp);
  {
    BigComplex v1 = mul_i_pow(w2, -1) / A;
    BigComplex v2 = mul_i_pow(w1, 1) / A;
    Real pi2 = pi.sqr();
    Real X = cut * T / pi2;
    BigComplex zero(wp);
    for (const NumPoint& p : enum_points(zero, v1, v2, X, std::nullopt)) {
      BigComplex mu = v1 * Real::of(p.mm, wp) + v2 * Real::of(p.nn, wp);
      Real r2 = mu.abs2();
      Real x = pi2 * r2 / T;
      Real g = upper_gamma(2 * (m_exp + 1 - w), x, wp);
      Real phase = (t.re() * mu.re() + t.im() * mu.im()) * pi.mul_2si(1);
      BigComplex term = mu.conj().pow_si(m_exp) * BigComplex::cis(phase);
      dual += term * ((pi2 * r2).pow_si(w - m_exp - 1) * g);
    }
    dual = mul_i_pow(dual, -m_exp) * (pi.pow_si(m_exp + 1) / A);
  }

  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), (unsigned long)(w - 1));
  Real denom = Real::of(fact, wp) * Real::of(par.gamma_order, wp);
  return ((far + dual) / denom).at_prec(prec);
}

BigComplex ek_smoothed(const EKParams& par, const quad::Ideal& c,
                       const Lattice2& L, long prec) {
  if (!L.prov)
    fail(errc::unsupported_parameters, "smoothing needs an ideal-provenant lattice");
  if (!c.is_integral()) fail(errc::not_integral, "smoothing ideal must be integral");
  if (par.gamma_modulus && !c.coprime_to(*par.gamma_modulus))
    fail(errc::not_coprime, "smoothing ideal must be coprime to the modulus");
  long wq = prec + 10;
  Lattice2 Lc = Lattice2::of_ideal(L.prov->field, c.inv().mul(L.prov->ideal), wq);
  BigComplex e1 = ek(par, L, wq);
  BigComplex e2 = ek(par, Lc, wq);
  Real nc = Real::of(c.norm(), wq);
  return (e1 * nc - e2).at_prec(prec);
}

}  // namespace cmek::ek
