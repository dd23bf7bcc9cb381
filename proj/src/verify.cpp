#include "cmek/verify.hpp"

#include <algorithm>
#include <numeric>

#include "cmek/errors.hpp"
#include "cmek/galois.hpp"
#include "cmek/lvalues.hpp"

namespace cmek::vf {

namespace {

mpz_class ediv(const mpz_class& a, const mpz_class& b) {
  if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    fail(errc::internal_inconsistency, "non-exact division in lattice reduction");
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class round_div(const mpz_class& a, const mpz_class& b) {  // b > 0
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mpz_class(2 * a + b).get_mpz_t(),
             mpz_class(2 * b).get_mpz_t());
  return q;
}

// Exact integer LLL (delta = 3/4) on the rows of b, all-integer variant with
// the d_i / lambda_{i,j} bookkeeping; rows come out size-reduced and ordered.
class LLL {
public:
  explicit LLL(std::vector<std::vector<mpz_class>> rows)
      : n((int)rows.size()), b(std::move(rows)) {
    d.assign(n + 1, 0);
    lam.assign(n + 1, std::vector<mpz_class>(n + 1, 0));
    d[0] = 1;
    for (int i = 1; i <= n; i++)
      for (int j = 1; j <= i; j++) {
        mpz_class u = dot(i, j);
        for (int k = 1; k < j; k++)
          u = ediv(d[k] * u - lam[i][k] * lam[j][k], d[k - 1]);
        if (j < i)
          lam[i][j] = u;
        else
          d[i] = u;
      }
    run();
  }

  const std::vector<std::vector<mpz_class>>& rows() const { return b; }

private:
  int n;
  std::vector<std::vector<mpz_class>> b;
  std::vector<mpz_class> d;
  std::vector<std::vector<mpz_class>> lam;

  mpz_class dot(int i, int j) const {
    mpz_class s = 0;
    for (size_t c = 0; c < b[i - 1].size(); c++) s += b[i - 1][c] * b[j - 1][c];
    return s;
  }

  void red(int k, int l) {
    if (2 * abs(lam[k][l]) <= d[l]) return;
    mpz_class q = round_div(lam[k][l], d[l]);
    for (size_t c = 0; c < b[k - 1].size(); c++) b[k - 1][c] -= q * b[l - 1][c];
    lam[k][l] -= q * d[l];
    for (int i = 1; i < l; i++) lam[k][i] -= q * lam[l][i];
  }

  void swap_step(int k) {
    std::swap(b[k - 1], b[k - 2]);
    for (int j = 1; j <= k - 2; j++) std::swap(lam[k][j], lam[k - 1][j]);
    mpz_class lm = lam[k][k - 1];
    mpz_class nb = ediv(d[k - 2] * d[k] + lm * lm, d[k - 1]);
    for (int i = k + 1; i <= n; i++) {
      mpz_class t = lam[i][k];
      lam[i][k] = ediv(d[k] * lam[i][k - 1] - lm * t, d[k - 1]);
      lam[i][k - 1] = ediv(nb * t + lm * lam[i][k], d[k]);
    }
    d[k - 1] = nb;
  }

  void run() {
    int k = 2;
    long guard = 0;
    while (k <= n) {
      if (++guard > 100000)
        fail(errc::internal_inconsistency, "lattice reduction failed to settle");
      red(k, k - 1);
      if (4 * (d[k] * d[k - 2] + lam[k][k - 1] * lam[k][k - 1]) <
          3 * d[k - 1] * d[k - 1]) {
        swap_step(k);
        k = std::max(k - 1, 2);
      } else {
        for (int l = k - 2; l >= 1; l--) red(k, l);
        k++;
      }
    }
  }
};

mpz_class round_real(const Real& x) { return x.round_to_mpz(); }

void require_critical(const hecke::HeckeChar& chi) {
  galois::CMSetting S = galois::setting_c2();
  galois::InfinityType mu;
  mu.field = "L";
  if (chi.a) mu.coeffs[0] = -chi.a;
  if (chi.b) mu.coeffs[1] = chi.b;
  if (!galois::critical_decompose(S, mu))
    fail(errc::not_critical, "infinity type (" + std::to_string(chi.a) + "," +
                                 std::to_string(chi.b) +
                                 ") admits no critical decomposition");
}

}  // namespace

Recognition recognize_algebraic(const BigComplex& z, int max_degree,
                                const mpz_class& max_height, long prec) {
  if (max_degree < 1 || max_degree > 8)
    fail(errc::unsupported_parameters, "recognition degree must be in [1, 8]");
  long wp = prec + 64;
  BigComplex zz = z.at_prec(wp);
  std::vector<BigComplex> pw(max_degree + 1, BigComplex::of(1, wp));
  for (int i = 1; i <= max_degree; i++) pw[i] = pw[i - 1] * zz;
  long cbits = prec + 32;
  Real gate = Real::of(1L, wp).mul_2si(-prec / 2);
  Real one = Real::of(1L, wp);
  Real zscale = zz.abs();
  if (zscale < one) zscale = one;
  Recognition out;
  out.residual = Real::of(1L, prec);
  for (int dgr = 1; dgr <= max_degree; dgr++) {
    int n = dgr + 1;
    std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n + 2, 0));
    for (int i = 0; i < n; i++) {
      rows[i][i] = 1;
      rows[i][n] = round_real(pw[i].re().mul_2si(cbits));
      rows[i][n + 1] = round_real(pw[i].im().mul_2si(cbits));
    }
    LLL red(std::move(rows));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<mpz_class> norms(n);
    for (int i = 0; i < n; i++) {
      mpz_class s = 0;
      for (const mpz_class& c : red.rows()[i]) s += c * c;
      norms[i] = s;
    }
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return norms[x] < norms[y]; });
    for (int oi : order) {
      std::vector<mpz_class> a(red.rows()[oi].begin(), red.rows()[oi].begin() + n);
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.size() < 2) continue;  // constant or empty: not a relation
      mpz_class content = 0;
      for (const mpz_class& c : a) content = gcd(content, c);
      for (mpz_class& c : a) c = ediv(c, content);
      if (a.back() < 0)
        for (mpz_class& c : a) c = -c;
      mpz_class height = 0;
      for (const mpz_class& c : a)
        if (abs(c) > height) height = abs(c);
      int pd = (int)a.size() - 1;
      BigComplex pv(wp);
      for (int i = pd; i >= 0; i--)
        pv = pv * zz + BigComplex(Real::of(a[i], wp), Real::of(0L, wp));
      Real scale = Real::of(mpz_class(height * (pd + 1)), wp) * zscale.pow_si(pd);
      Real resid = pv.abs() / scale;
      if (resid < out.residual) out.residual = resid.at_prec(prec);
      if (height <= max_height && resid <= gate) {
        out.poly = a;
        out.residual = resid.at_prec(prec);
        return out;
      }
    }
  }
  return out;
}

// Folds the L-value against the period pair.  The holomorphic leg divides by
// Omega^a; the conjugate leg is taken in its dual (quasi-period) normalization
// 2*pi*i / conj(Omega), which the Legendre relation pairs with the lattice.
// Using the plain conjugate instead leaves a stray covolume/pi factor in every
// b > 0 ratio (e.g. (3,1) would come out as a rational multiple of
// Omega^2/pi, transcendental by Chowla--Selberg); the dual leg cancels it and
// the ratio lands back in the character's value field.
static BigComplex fold_ratio(const BigComplex& L, const BigComplex& omega,
                             const hecke::HeckeChar& chi, long prec) {
  BigComplex r = L * omega.pow_si(-chi.a) * omega.conj().pow_si(-chi.b);
  if (chi.b != 0)
    r = r * BigComplex(Real::of(0L, prec), Real::pi(prec).mul_2si(1))
                .pow_si(chi.b);
  return r;
}

BigComplex deligne_ratio(const hecke::HeckeChar& chi, const BigComplex& omega,
                         long prec) {
  require_critical(chi);
  BigComplex L = lv::L_value(chi, BigComplex(prec), prec).total;
  return fold_ratio(L, omega, chi, prec);
}

VerifyReport verify(const hecke::HeckeChar& chi, long prec, int max_degree) {
  require_critical(chi);
  const mpz_class height_cap(100000000);
  VerifyReport rep;
  rep.chi = chi;
  rep.prec = prec;
  rep.period = per::cm_period(chi.field, prec);
  rep.lvalue = lv::L_value(chi, BigComplex(prec), prec).total;
  rep.ratio = fold_ratio(rep.lvalue, rep.period.omega, chi, prec);
  Recognition lo = recognize_algebraic(rep.ratio, max_degree, height_cap, prec);
  rep.residual = lo.residual;

  long hp = (3 * prec) / 2;
  per::CMPeriod phi = per::cm_period(chi.field, hp);
  BigComplex lhi = lv::L_value(chi, BigComplex(hp), hp).total;
  BigComplex rhi = fold_ratio(lhi, phi.omega, chi, hp);
  Recognition hi = recognize_algebraic(rhi, max_degree, height_cap, hp);

  rep.stable = lo.found() && hi.found() && lo.poly == hi.poly;
  rep.recognized = rep.stable;
  if (rep.recognized) rep.poly = lo.poly;
  return rep;
}

}  // namespace cmek::vf
