#include "cmek/lvalues.hpp"

#include <mpfr.h>

#include "cmek/eklattice.hpp"
#include "cmek/errors.hpp"

namespace cmek::lv {

using quad::Elem;
using quad::Ideal;

namespace {

bool coprime(const Ideal& a, const Ideal& b) {
  auto [g1, g2] = a.gens();
  auto [h1, h2] = b.gens();
  return Ideal::from_gens(a.K, {g1, g2, h1, h2}).is_one();
}

// N^{-s} for an integral norm N > 0
BigComplex norm_pow(const mpq_class& N, const BigComplex& s, long wp) {
  if (s.is_zero()) return BigComplex::of(1, wp);
  Real nn = Real::of(N, wp);
  if (s.im().is_zero() && mpfr_integer_p(s.re().raw()))
    return BigComplex(nn.pow_si(-s.re().to_long()), Real::of(0L, wp));
  Real ln = nn.log();
  Real mag = (-(s.re() * ln)).exp();
  if (s.im().is_zero()) return BigComplex(mag, Real::of(0L, wp));
  return BigComplex::cis(-(s.im() * ln)) * mag;
}

// conj(alpha)^b alpha^{-a} at working precision
BigComplex infinity_part(const Elem& alpha, long a, long b, long wp) {
  BigComplex z = alpha.embed(wp);
  return z.conj().pow_si(b) * z.pow_si(-a);
}

// recombine mixed-radix exponents (e_1 fastest) into the ray class index
long class_index(const std::vector<long>& e, const std::vector<long>& orders) {
  long idx = 0;
  for (size_t i = e.size(); i-- > 0;) idx = idx * orders[i] + e[i];
  return idx;
}

}  // namespace

BigComplex partial_L(const hecke::HeckeChar& chi, const quad::Ideal& b,
                     const BigComplex& s, long prec) {
  const Ideal& f = chi.rcg.modulus;
  if (f.is_one())
    fail(errc::trivial_modulus, "lattice-sum route needs a nontrivial modulus");
  if (!coprime(b, f))
    fail(errc::not_coprime, "class representative " + b.str() +
                                " shares a factor with the modulus");
  quad::UnitsMod um = quad::units_mod(chi.field, f);
  ek::EKParams par;
  par.b_exp = chi.b;
  par.a_exp = chi.a;
  par.t_exact = Elem::integer(chi.field, 1);
  par.s = s.at_prec(prec);
  par.gamma_modulus = f;
  par.gamma_order = static_cast<long>(um.units.size());
  ek::Lattice2 L = ek::Lattice2::of_ideal(chi.field, f.mul(b.inv()), prec);
  BigComplex E = ek::ek(par, L, prec);
  return chi.eval(b, prec) * norm_pow(b.norm(), s, prec) * E;
}

LValueReport L_value(const hecke::HeckeChar& chi, const BigComplex& s, long prec) {
  LValueReport rep;
  rep.chi = chi;
  rep.s = s.at_prec(prec);
  rep.method = "eseries";
  rep.prec = prec;
  rep.total = BigComplex(prec);
  Real absum = Real::of(0L, prec);
  for (const Ideal& b : chi.rcg.class_reps()) {
    BigComplex v = partial_L(chi, b, s, prec);
    rep.partials.push_back({b, v});
    rep.total += v;
    absum += v.abs();
  }
  rep.error_bound = (absum + 1L).mul_2si(-(prec - 8));
  return rep;
}

LValueReport dirichlet_L(const hecke::HeckeChar& chi, const BigComplex& s,
                         long Nmax, long prec) {
  long wp = prec + 32;
  Real sigma_gap = s.re().at_prec(wp) - Real::of(chi.weight(), wp) / 2L - 1L;
  if (sigma_gap.sign() <= 0)
    fail(errc::outside_convergence_region,
         "direct summation needs Re(s) > weight/2 + 1");
  if (Nmax < 1) fail(errc::unsupported_parameters, "Nmax must be positive");

  const quad::RayClassGroup& rcg = chi.rcg;
  std::vector<BigComplex> gv = chi.gen_values(wp);
  std::vector<BigComplex> buckets(rcg.order, BigComplex(wp));
  long nterms = 0;
  quad::for_each_ideal_up_to_norm(chi.field, Nmax, rcg.modulus, [&](const Ideal& I) {
    auto [e, alpha] = quad::principalize(rcg, I);
    BigComplex val = infinity_part(alpha, chi.a, chi.b, wp);
    for (size_t i = 0; i < e.size(); i++)
      if (e[i]) val = val * gv[i].pow_si(e[i]);
    buckets[class_index(e, rcg.rel_orders)] += val * norm_pow(I.norm(), s, wp);
    nterms++;
  });

  LValueReport rep;
  rep.chi = chi;
  rep.s = s.at_prec(prec);
  rep.method = "dirichlet";
  rep.prec = prec;
  rep.total = BigComplex(prec);
  for (long i = 0; i < rcg.order; i++) {
    BigComplex v = buckets[i].at_prec(prec);
    rep.partials.push_back({rcg.rep(i), v});
    rep.total += v;
  }
  // |tail| <= sum_{n > Nmax} c(n) n^{-sigma'} with c summing to <= 6X by the
  // crude count, so Abel summation gives 6 sigma'/(sigma'-1) Nmax^{1-sigma'}
  // with sigma' = Re(s) - weight/2 > 1
  Real sp = sigma_gap + 1L;
  Real tail = Real::of(6L, wp) * sp / sigma_gap *
              Real::of(Nmax, wp).pow(-sigma_gap);
  rep.error_bound = (tail + Real::of(nterms + 1, wp).mul_2si(-(prec + 8))).at_prec(prec);
  return rep;
}

}  // namespace cmek::lv
