#include "cmek/hecke.hpp"

#include "cmek/errors.hpp"

namespace cmek::hecke {

namespace {

using quad::elem_pow;

// conj(alpha)^b * alpha^(-a)
BigComplex infinity_part(const quad::Elem& alpha, long a, long b, long prec) {
  BigComplex z = alpha.embed(prec);
  return z.conj().pow_si(b) * z.pow_si(-a);
}

// Root targets with an exactly real value can land on the negative real
// axis, where rounding noise in the imaginary part would flip the branch
// between precisions.  Clear an imaginary part that is negligible against
// the modulus so atan2 sees +0 and the branch is deterministic.
BigComplex snap_to_real(const BigComplex& z, long prec) {
  Real tol = z.abs().mul_2si(-(prec / 2));
  // <= so that an exact (or negative) zero is rewritten to +0 as well
  if (z.im().abs() <= tol) return BigComplex(z.re(), Real::of(0L, prec));
  return z;
}

}  // namespace

long HeckeChar::twist_index() const {
  long idx = 0;
  for (long i = (long)twist_digits.size() - 1; i >= 0; i--)
    idx = idx * rcg.rel_orders[i] + twist_digits[i];
  return idx;
}

std::vector<BigComplex> HeckeChar::gen_values(long prec) const {
  std::vector<BigComplex> vals;
  for (size_t i = 0; i < rcg.gens.size(); i++) {
    long n = rcg.rel_orders[i];
    // chi(g_i)^n = prod_{j<i} chi(g_j)^{e_ij} * chi((alpha_i))
    BigComplex target = infinity_part(rcg.rel_alphas[i], a, b, prec);
    for (size_t j = 0; j < i; j++)
      if (rcg.rel_exps[i][j]) target = target * vals[j].pow_si(rcg.rel_exps[i][j]);
    BigComplex v = snap_to_real(target, prec).rootn((unsigned long)n);
    if (twist_digits[i]) {
      Real ang = Real::pi(prec).mul_2si(1) * Real::of(twist_digits[i], prec) /
                 Real::of(n, prec);
      v = v * BigComplex::cis(ang);
    }
    vals.push_back(v);
  }
  return vals;
}

BigComplex HeckeChar::eval(const quad::Ideal& I, long prec) const {
  auto [e, alpha] = quad::principalize(rcg, I);
  BigComplex v = infinity_part(alpha, a, b, prec);
  auto gv = gen_values(prec);
  for (size_t i = 0; i < gv.size(); i++)
    if (e[i]) v = v * gv[i].pow_si(e[i]);
  return v;
}

long weight(const HeckeChar& chi) { return chi.weight(); }

std::vector<HeckeChar> enumerate_characters(quad::Field K, const quad::Ideal& f,
                                            long a, long b) {
  if (f.is_one())
    fail(errc::trivial_modulus, "character enumeration needs a modulus != (1)");
  quad::RayClassGroup rcg = quad::ray_class_group(K, f);
  quad::Elem one = quad::Elem::integer(K, 1);
  for (const quad::Elem& u : quad::units_mod(K, f).units)
    if (!(elem_pow(u.conj(), b) * elem_pow(u, -a) == one)) return {};
  std::vector<HeckeChar> out;
  for (long t = 0; t < rcg.order; t++)
    out.push_back(HeckeChar{K, rcg, a, b, rcg.exponents(t)});
  return out;
}

BigComplex char_eval(const HeckeChar& chi, const quad::Ideal& I, long prec) {
  return chi.eval(I, prec);
}

}  // namespace cmek::hecke
