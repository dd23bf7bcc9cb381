#pragma once
// Exact arithmetic in an imaginary quadratic field K = Q(sqrt(-d)).
//
// Conventions fixed here and relied on everywhere else:
//   - D is the field discriminant (-d or -4d by d mod 4) and the maximal
//     order is Z + Z*omega with omega = (D + sqrt(D))/2, so Tr(omega) = D
//     and N(omega) = (D^2 - D)/4.
//   - the complex embedding sends sqrt(-d) to +i*sqrt(d), hence omega to
//     (D + i*sqrt(|D|))/2 (positive imaginary part).
//   - every fractional ideal is kept in the unique normal form
//     scale*(aZ + (b+omega)Z) with scale a positive rational, a a positive
//     integer, 0 <= b < a and a | N(b+omega); norm = scale^2 * a.

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmek/bigfloat.hpp"

namespace cmek::quad {

struct Field {
  long d = 1;   // squarefree positive, the field is Q(sqrt(-d))
  long D = -4;  // discriminant

  static Field of(long d);
  mpz_class omega_norm() const;  // (D^2 - D)/4
  long omega_trace() const { return D; }
  int unit_count() const { return d == 1 ? 4 : d == 3 ? 6 : 2; }
  std::string name() const;
  BigComplex omega_embedded(long prec) const;
  bool operator==(const Field& o) const { return d == o.d; }
  bool operator!=(const Field& o) const { return d != o.d; }
};

struct Elem {
  Field K;
  mpq_class x, y;  // the element x + y*omega

  Elem() = default;
  Elem(Field k, mpq_class xx, mpq_class yy) : K(k), x(std::move(xx)), y(std::move(yy)) {}
  static Elem integer(Field k, long v) { return {k, mpq_class(v), mpq_class(0)}; }

  bool is_zero() const { return x == 0 && y == 0; }
  bool is_integral() const;
  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator-() const { return {K, -x, -y}; }
  Elem operator*(const Elem& o) const;
  Elem conj() const { return {K, x + y * K.omega_trace(), -y}; }
  Elem inv() const;
  mpq_class norm() const;   // x^2 + D*x*y + N(omega)*y^2
  mpq_class trace() const { return 2 * x + mpq_class(K.omega_trace()) * y; }
  BigComplex embed(long prec) const;
  std::string str() const;
  bool operator==(const Elem& o) const { return K == o.K && x == o.x && y == o.y; }
  bool operator!=(const Elem& o) const { return !(*this == o); }
};

struct Ideal {
  Field K;
  mpq_class scale;  // positive
  mpz_class a, b;   // inner module aZ + (b+omega)Z

  Ideal() : scale(1), a(1), b(0) {}
  Ideal(Field k, mpq_class s, mpz_class aa, mpz_class bb)
      : K(k), scale(std::move(s)), a(std::move(aa)), b(std::move(bb)) {}
  static Ideal one(Field k) { return {k, 1, 1, 0}; }
  static Ideal principal(const Elem& g);
  static Ideal from_gens(Field k, const std::vector<Elem>& gens);

  mpq_class norm() const { return scale * scale * mpq_class(a); }
  bool is_integral() const;
  bool is_one() const { return scale == 1 && a == 1; }
  std::pair<Elem, Elem> gens() const;  // (scale*a, scale*(b+omega))
  bool contains(const Elem& z) const;
  Ideal mul(const Ideal& o) const;
  Ideal conj() const;
  Ideal inv() const;
  Ideal pow(long e) const;
  bool coprime_to(const Ideal& o) const;  // both integral
  std::string str() const;  // "scale*[a, b+w]"
  bool operator==(const Ideal& o) const {
    return K == o.K && scale == o.scale && a == o.a && b == o.b;
  }
  bool operator!=(const Ideal& o) const { return !(*this == o); }
  bool operator<(const Ideal& o) const;
};

inline Ideal ideal_mul(const Ideal& i, const Ideal& j) { return i.mul(j); }
inline mpq_class ideal_norm(const Ideal& i) { return i.norm(); }
inline Ideal ideal_conj(const Ideal& i) { return i.conj(); }
inline Ideal ideal_inv(const Ideal& i) { return i.inv(); }
inline Ideal ideal_from_gens(Field k, const std::vector<Elem>& g) {
  return Ideal::from_gens(k, g);
}

std::optional<Elem> is_principal(const Ideal& I);

// All integral ideals of norm <= X coprime to the given ideal, sorted by
// (norm, a, b, scale).  The callback variant streams them unsorted (prime
// factorization order) without materializing the list.
std::vector<Ideal> ideals_up_to_norm(Field k, long X, const Ideal& coprime_to);
void for_each_ideal_up_to_norm(Field k, long X, const Ideal& coprime_to,
                               const std::function<void(const Ideal&)>& fn);

std::vector<Elem> roots_of_unity(Field k);

// binary powering; negative exponents go through inv()
Elem elem_pow(Elem z, long e);

// prime ideals dividing I with exponents, by trial division over N(I)
std::vector<std::pair<Ideal, int>> factor_ideal(const Ideal& I);
long ideal_valuation(const Ideal& I, const Ideal& P);  // I integral

// canonical residue of an integral element modulo an integral ideal
std::pair<mpz_class, mpz_class> reduce_mod(const Elem& z, const Ideal& f);

// multiplicative congruence z = 1 mod* f (valuation >= v_P(f) at every P | f)
bool congruent_1_mod(const Elem& z, const Ideal& f,
                     const std::vector<std::pair<Ideal, int>>& f_factors);

// alpha with I = J*(alpha) and alpha = 1 mod* f, if the ray classes agree;
// with f = (1) this degenerates to plain ideal-class equivalence
std::optional<Elem> ray_equivalent(const Ideal& f,
                                   const std::vector<std::pair<Ideal, int>>& f_factors,
                                   const Ideal& I, const Ideal& J);

long class_number(Field k);

struct UnitsMod {
  Field K;
  Ideal modulus;
  std::vector<Elem> units;  // the roots of unity congruent to 1 mod f
};

UnitsMod units_mod(Field k, const Ideal& f);

struct RayClassGroup {
  Field K;
  Ideal modulus;
  std::vector<std::pair<Ideal, int>> modulus_factors;
  std::vector<Ideal> gens;
  std::vector<long> rel_orders;               // n_i, relative orders
  std::vector<std::vector<long>> rel_exps;    // g_i^{n_i} = prod_j g_j^{e_ij} * (alpha_i)
  std::vector<Elem> rel_alphas;               // alpha_i = 1 mod* f
  long order = 1;
  mpz_class phi;        // |(O/f)^x|
  long unit_image = 1;  // size of the image of the roots of unity in (O/f)^x
  long h = 1;           // class number

  std::vector<long> exponents(long index) const;  // mixed radix, e_1 fastest
  const Ideal& rep(long index) const { return reps_[index]; }
  const std::vector<Ideal>& class_reps() const { return reps_; }

  std::vector<Ideal> reps_;  // filled by ray_class_group, index order
};

RayClassGroup ray_class_group(Field k, const Ideal& f);

// I = prod g_i^{e_i} * (alpha) with alpha = 1 mod* f
std::pair<std::vector<long>, Elem> principalize(const RayClassGroup& rcg, const Ideal& I);

// coset representatives of J/I for nested fractional ideals I c J,
// as elements i*u1 + j*u2 over the HNF box of the inclusion matrix
std::vector<Elem> coset_representatives(const Ideal& J, const Ideal& I);

}  // namespace cmek::quad
