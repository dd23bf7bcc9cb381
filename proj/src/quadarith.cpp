#include "cmek/quadarith.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cmek/errors.hpp"

namespace cmek::quad {

namespace {

mpq_class make_q(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpz_class fdiv_q(const mpz_class& x, const mpz_class& y) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

mpz_class fdiv_r(const mpz_class& x, const mpz_class& y) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

mpz_class powm(const mpz_class& base, const mpz_class& e, const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

// square root of a modulo an odd prime p (a assumed a quadratic residue)
mpz_class sqrt_mod(const mpz_class& a0, const mpz_class& p) {
  mpz_class a = fdiv_r(a0, p);
  if (a == 0) return 0;
  if (fdiv_r(p, 4) == 3) return powm(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  mpz_class Q = p - 1;
  long S = 0;
  while (fdiv_r(Q, 2) == 0) { Q /= 2; S++; }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) z++;
  long M = S;
  mpz_class c = powm(z, Q, p), t = powm(a, Q, p), r = powm(a, (Q + 1) / 2, p);
  while (t != 1) {
    long i = 0;
    mpz_class tt = t;
    while (tt != 1) { tt = tt * tt % p; i++; }
    mpz_class b = c;
    for (long j = 0; j < M - i - 1; j++) b = b * b % p;
    M = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

std::vector<char> prime_sieve(long X) {
  std::vector<char> is_prime(X + 1, 1);
  if (X >= 0) is_prime[0] = 0;
  if (X >= 1) is_prime[1] = 0;
  for (long p = 2; p * p <= X; p++)
    if (is_prime[p])
      for (long q = p * p; q <= X; q += p) is_prime[q] = 0;
  return is_prime;
}

// prime ideals above the rational prime p, sorted by (norm, b)
std::vector<Ideal> primes_above(Field k, const mpz_class& p) {
  mpz_class D(k.D), N0 = k.omega_norm();
  auto f_of = [&](const mpz_class& b) { return fdiv_r(b * b + D * b + N0, p); };
  if (p == 2) {
    std::vector<mpz_class> roots;
    for (long b = 0; b < 2; b++)
      if (f_of(b) == 0) roots.push_back(b);
    if (roots.empty()) return {Ideal(k, mpq_class(p), 1, 0)};  // inert
    std::vector<Ideal> out;
    for (auto& b : roots) out.push_back(Ideal(k, 1, p, b));
    return out;
  }
  int leg = mpz_legendre(D.get_mpz_t(), p.get_mpz_t());
  if (leg == -1) return {Ideal(k, mpq_class(p), 1, 0)};  // inert
  mpz_class inv2 = powm(2, p - 2, p);
  if (leg == 0) {  // ramified: double root -D/2
    mpz_class b = fdiv_r(-D * inv2, p);
    if (f_of(b) != 0) fail(errc::internal_inconsistency, "bad ramified root");
    return {Ideal(k, 1, p, b)};
  }
  mpz_class x = sqrt_mod(D, p);  // split: b = (x - D)/2 and (-x - D)/2 mod p
  mpz_class b1 = fdiv_r((x - D) * inv2, p), b2 = fdiv_r((-x - D) * inv2, p);
  if (f_of(b1) != 0 || f_of(b2) != 0 || b1 == b2)
    fail(errc::internal_inconsistency, "bad split roots");
  if (b1 > b2) std::swap(b1, b2);
  return {Ideal(k, 1, p, b1), Ideal(k, 1, p, b2)};
}

}  // namespace

// ---- Field -----------------------------------------------------------------

Field Field::of(long d) {
  if (d < 1) fail(errc::unsupported_parameters, "need a positive squarefree d");
  for (long p = 2; p * p <= d; p++)
    if (d % (p * p) == 0)
      fail(errc::unsupported_parameters, "d must be squarefree");
  Field k;
  k.d = d;
  k.D = (d % 4 == 3) ? -d : -4 * d;
  return k;
}

mpz_class Field::omega_norm() const {
  mpz_class Dz(D);
  return (Dz * Dz - Dz) / 4;
}

std::string Field::name() const {
  if (d == 1) return "Q(i)";
  return "Q(sqrt-" + std::to_string(d) + ")";
}

BigComplex Field::omega_embedded(long prec) const {
  Real re = Real::of(D, prec) / Real::of(2L, prec);
  Real im = Real::of(-D, prec).sqrt() / Real::of(2L, prec);
  return BigComplex(re, im);
}

// ---- Elem ------------------------------------------------------------------

bool Elem::is_integral() const { return x.get_den() == 1 && y.get_den() == 1; }

Elem Elem::operator+(const Elem& o) const {
  if (K != o.K) fail(errc::internal_inconsistency, "mixed fields");
  return {K, x + o.x, y + o.y};
}

Elem Elem::operator-(const Elem& o) const {
  if (K != o.K) fail(errc::internal_inconsistency, "mixed fields");
  return {K, x - o.x, y - o.y};
}

Elem Elem::operator*(const Elem& o) const {
  if (K != o.K) fail(errc::internal_inconsistency, "mixed fields");
  // omega^2 = D*omega - N(omega)
  mpq_class N0(K.omega_norm()), D(K.omega_trace());
  mpq_class yy = y * o.y;
  return {K, x * o.x - N0 * yy, x * o.y + y * o.x + D * yy};
}

mpq_class Elem::norm() const {
  mpq_class D(K.omega_trace()), N0(K.omega_norm());
  return x * x + D * x * y + N0 * y * y;
}

Elem Elem::inv() const {
  mpq_class n = norm();
  if (n == 0) fail(errc::zero_ideal, "inverse of zero");
  Elem c = conj();
  return {K, c.x / n, c.y / n};
}

Elem elem_pow(Elem z, long e) {
  if (e < 0) {
    z = z.inv();
    e = -e;
  }
  Elem r = Elem::integer(z.K, 1);
  while (e) {
    if (e & 1) r = r * z;
    z = z * z;
    e >>= 1;
  }
  return r;
}

BigComplex Elem::embed(long prec) const {
  BigComplex w = K.omega_embedded(prec);
  Real xr = Real::of(x, prec), yr = Real::of(y, prec);
  return BigComplex(xr + yr * w.re(), yr * w.im());
}

std::string Elem::str() const {
  if (y == 0) return x.get_str();
  std::string ypart = (y < 0 ? "-" : "") + mpq_class(abs(y)).get_str() + "*w";
  if (x == 0) return ypart;
  return x.get_str() + (y < 0 ? "-" : "+") + mpq_class(abs(y)).get_str() + "*w";
}

// ---- Ideal normal form -----------------------------------------------------

Ideal Ideal::from_gens(Field k, const std::vector<Elem>& gens0) {
  mpq_class D(k.omega_trace()), N0(k.omega_norm());
  std::vector<std::pair<mpq_class, mpq_class>> vecs;
  for (const Elem& g : gens0) {
    if (g.K != k) fail(errc::internal_inconsistency, "mixed fields");
    if (g.is_zero()) continue;
    vecs.push_back({g.x, g.y});
    vecs.push_back({-N0 * g.y, g.x + D * g.y});  // omega * g
  }
  if (vecs.empty()) fail(errc::zero_ideal, "no nonzero generators");

  mpz_class T = 1;
  for (auto& [u, v] : vecs) {
    T = lcm(T, u.get_den());
    T = lcm(T, v.get_den());
  }
  std::vector<std::pair<mpz_class, mpz_class>> ivecs;
  for (auto& [u, v] : vecs) {
    mpq_class uu = u * T, vv = v * T;
    ivecs.push_back({uu.get_num(), vv.get_num()});
  }

  // gcd of the omega coordinates, with a witness combination (bx, by)
  mpz_class bx = 0, by = 0;
  for (auto& [u, v] : ivecs) {
    if (v == 0) continue;
    if (by == 0) { bx = u; by = v; continue; }
    mpz_class g, e, f;
    mpz_gcdext(g.get_mpz_t(), e.get_mpz_t(), f.get_mpz_t(), by.get_mpz_t(),
               v.get_mpz_t());
    bx = e * bx + f * u;
    by = g;
  }
  if (by == 0) fail(errc::internal_inconsistency, "rank-1 module");
  if (by < 0) { bx = -bx; by = -by; }

  // the omega-free sublattice
  mpz_class a0 = 0;
  for (auto& [u, v] : ivecs) a0 = gcd(a0, u - (v / by) * bx);
  a0 = abs(a0);
  if (a0 == 0 || fdiv_r(a0, by) != 0 || fdiv_r(bx, by) != 0)
    fail(errc::internal_inconsistency, "module is not an ideal");

  mpz_class a = a0 / by, b = fdiv_r(bx / by, a);
  if (fdiv_r(b * b + mpz_class(k.D) * b + k.omega_norm(), a) != 0)
    fail(errc::internal_inconsistency, "normal form fails a | N(b+omega)");
  return Ideal(k, make_q(by, T), a, b);
}

Ideal Ideal::principal(const Elem& g) { return from_gens(g.K, {g}); }

bool Ideal::is_integral() const { return scale.get_den() == 1; }

std::pair<Elem, Elem> Ideal::gens() const {
  return {Elem(K, scale * mpq_class(a), 0), Elem(K, scale * mpq_class(b), scale)};
}

bool Ideal::contains(const Elem& z) const {
  if (z.K != K) fail(errc::internal_inconsistency, "mixed fields");
  mpq_class n = z.y / scale;
  if (n.get_den() != 1) return false;
  mpq_class m = (z.x / scale - mpq_class(b) * n) / mpq_class(a);
  return m.get_den() == 1;
}

Ideal Ideal::mul(const Ideal& o) const {
  if (K != o.K) fail(errc::internal_inconsistency, "mixed fields");
  auto [g1, g2] = gens();
  auto [h1, h2] = o.gens();
  return from_gens(K, {g1 * h1, g1 * h2, g2 * h1, g2 * h2});
}

Ideal Ideal::conj() const {
  return Ideal(K, scale, a, fdiv_r(-b - K.omega_trace(), a));
}

Ideal Ideal::inv() const {
  Ideal c = conj();
  c.scale = 1 / (scale * mpq_class(a));
  return c;
}

Ideal Ideal::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Ideal acc = one(K), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc.mul(base);
    base = e > 1 ? base.mul(base) : base;
    e >>= 1;
  }
  return acc;
}

bool Ideal::coprime_to(const Ideal& o) const {
  if (!is_integral() || !o.is_integral())
    fail(errc::not_integral, "coprimality needs integral ideals");
  if (gcd(norm().get_num(), o.norm().get_num()) == 1) return true;
  auto [g1, g2] = gens();
  auto [h1, h2] = o.gens();
  return from_gens(K, {g1, g2, h1, h2}).is_one();
}

std::string Ideal::str() const {
  return scale.get_str() + "*[" + a.get_str() + ", " + b.get_str() + "+w]";
}

bool Ideal::operator<(const Ideal& o) const {
  if (K.d != o.K.d) return K.d < o.K.d;
  int c = cmp(norm(), o.norm());
  if (c != 0) return c < 0;
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return cmp(scale, o.scale) < 0;
}

// ---- principality by reduction of the norm form ----------------------------

std::optional<Elem> is_principal(const Ideal& I) {
  // Norm of m*v1 + n*v2 over the basis v1 = s*a, v2 = s*(b+omega) is
  // N(I) * (A m^2 + B mn + C n^2) with the integer form below (disc = D),
  // so I is principal iff the reduced form represents 1.
  mpz_class A = I.a, B = 2 * I.b + I.K.omega_trace();
  mpz_class C = (I.b * I.b + mpz_class(I.K.D) * I.b + I.K.omega_norm()) / I.a;
  mpz_class u11 = 1, u12 = 0, u21 = 0, u22 = 1;
  while (true) {
    if (B > A || B <= -A) {  // shear: (m,n) -> (m + k n, n)
      mpz_class kk = fdiv_q(A - B, 2 * A);
      C += A * kk * kk + B * kk;
      B += 2 * A * kk;
      u12 += u11 * kk;
      u22 += u21 * kk;
    } else if (A > C) {  // swap: (m,n) -> (-n, m)
      std::swap(A, C);
      B = -B;
      mpz_class t1 = u11, t2 = u21;
      u11 = u12; u21 = u22;
      u12 = -t1; u22 = -t2;
    } else {
      break;
    }
  }
  if (A != 1) return std::nullopt;
  // representation of 1: the image of (1,0)
  mpz_class m = u11, n = u21;
  Elem g(I.K, I.scale * mpq_class(I.a * m + I.b * n), I.scale * mpq_class(n));
  if (g.norm() != I.norm())
    fail(errc::internal_inconsistency, "principal generator norm mismatch");
  return g;
}

// ---- enumeration -----------------------------------------------------------

void for_each_ideal_up_to_norm(Field k, long X, const Ideal& coprime_to,
                               const std::function<void(const Ideal&)>& fn) {
  if (X < 1) return;
  std::vector<std::pair<Ideal, long>> ps;  // prime ideal, norm
  auto sieve = prime_sieve(X);
  auto divides_modulus = [&](const Ideal& P) {
    auto [g1, g2] = coprime_to.gens();
    return P.contains(g1) && P.contains(g2);
  };
  for (long p = 2; p <= X; p++) {
    if (!sieve[p]) continue;
    for (Ideal& P : primes_above(k, p)) {
      long np = P.a == 1 ? p * p : p;  // inert primes have a = 1, scale = p
      if (np > X) continue;
      if (divides_modulus(P)) continue;
      ps.push_back({P, np});
    }
  }
  std::sort(ps.begin(), ps.end(), [](auto& l, auto& r) {
    if (l.second != r.second) return l.second < r.second;
    return l.first < r.first;
  });
  // depth-first over non-decreasing prime indices: each ideal exactly once
  std::function<void(size_t, const Ideal&, long)> walk = [&](size_t idx,
                                                             const Ideal& cur,
                                                             long nrm) {
    fn(cur);
    for (size_t i = idx; i < ps.size(); i++) {
      if (nrm > X / ps[i].second) break;
      walk(i, cur.mul(ps[i].first), nrm * ps[i].second);
    }
  };
  walk(0, Ideal::one(k), 1);
}

std::vector<Ideal> ideals_up_to_norm(Field k, long X, const Ideal& coprime_to) {
  std::vector<Ideal> out;
  for_each_ideal_up_to_norm(k, X, coprime_to, [&](const Ideal& I) { out.push_back(I); });
  std::sort(out.begin(), out.end());
  return out;
}

// ---- roots of unity --------------------------------------------------------

std::vector<Elem> roots_of_unity(Field k) {
  if (k.d == 1) {
    Elem i(k, 2, 1);  // i = 2 + omega
    std::vector<Elem> out{Elem::integer(k, 1)};
    for (int j = 0; j < 3; j++) out.push_back(out.back() * i);
    return out;
  }
  if (k.d == 3) {
    Elem z6(k, 2, 1);  // (1 + sqrt(-3))/2 = 2 + omega
    std::vector<Elem> out{Elem::integer(k, 1)};
    for (int j = 0; j < 5; j++) out.push_back(out.back() * z6);
    return out;
  }
  return {Elem::integer(k, 1), Elem::integer(k, -1)};
}

// ---- valuations and factorization ------------------------------------------

long ideal_valuation(const Ideal& I, const Ideal& P) {
  Ideal Pi = P.inv(), X = I;
  long v = 0;
  while (true) {
    Ideal Y = X.mul(Pi);
    if (!Y.is_integral()) return v;
    v++;
    X = Y;
  }
}

std::vector<std::pair<Ideal, int>> factor_ideal(const Ideal& I) {
  if (!I.is_integral()) fail(errc::not_integral, "factoring a fractional ideal");
  std::vector<std::pair<Ideal, int>> out;
  mpz_class N = I.norm().get_num();
  auto handle_p = [&](const mpz_class& p) {
    for (Ideal& P : primes_above(I.K, p)) {
      long v = ideal_valuation(I, P);
      if (v > 0) out.push_back({P, (int)v});
    }
  };
  for (mpz_class p = 2; p * p <= N && p <= 1000000; p++) {
    if (fdiv_r(N, p) != 0) continue;
    handle_p(p);
    while (fdiv_r(N, p) == 0) N /= p;
  }
  if (N > 1) {
    if (mpz_probab_prime_p(N.get_mpz_t(), 30)) {
      handle_p(N);
    } else {
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), N.get_mpz_t());
      if (r * r == N && mpz_probab_prime_p(r.get_mpz_t(), 30))
        handle_p(r);
      else
        fail(errc::unsupported_parameters, "cannot factor the ideal norm");
    }
  }
  return out;
}

// ---- congruences -----------------------------------------------------------

std::pair<mpz_class, mpz_class> reduce_mod(const Elem& z, const Ideal& f) {
  if (!z.is_integral() || !f.is_integral())
    fail(errc::not_integral, "residue reduction needs integral data");
  mpz_class s = f.scale.get_num();
  mpz_class kq = fdiv_q(z.y.get_num(), s);
  mpz_class y = z.y.get_num() - kq * s;
  mpz_class x = fdiv_r(z.x.get_num() - kq * s * f.b, s * f.a);
  return {x, y};
}

bool congruent_1_mod(const Elem& z, const Ideal& f,
                     const std::vector<std::pair<Ideal, int>>& f_factors) {
  Elem w = z - Elem::integer(z.K, 1);
  if (w.is_zero()) return true;
  mpz_class t = lcm(w.x.get_den(), w.y.get_den());
  Elem beta(z.K, w.x * t, w.y * t);
  if (gcd(t, f.norm().get_num()) == 1) return f.contains(beta);
  Ideal num = Ideal::principal(beta), den(z.K, mpq_class(t), 1, 0);
  for (auto& [P, e] : f_factors)
    if (ideal_valuation(num, P) - ideal_valuation(den, P) < e) return false;
  return true;
}

std::optional<Elem> ray_equivalent(const Ideal& f,
                                   const std::vector<std::pair<Ideal, int>>& f_factors,
                                   const Ideal& I, const Ideal& J) {
  auto g = is_principal(I.mul(J.inv()));
  if (!g) return std::nullopt;
  for (const Elem& u : roots_of_unity(I.K)) {
    Elem zu = u * *g;
    if (congruent_1_mod(zu, f, f_factors)) return zu;
  }
  return std::nullopt;
}

// ---- class number ----------------------------------------------------------

long class_number(Field k) {
  long D = k.D, h = 0;
  for (long A = 1; 3 * A * A <= -D; A++)
    for (long B = -A + 1; B <= A; B++) {
      if (((B - D) % 2 + 2) % 2 != 0) continue;
      long num = B * B - D;
      if (num % (4 * A) != 0) continue;
      long C = num / (4 * A);
      if (C < A) continue;
      if (A == C && B < 0) continue;
      long g = std::gcd(std::gcd(std::abs(A), std::abs(B)), std::abs(C));
      if (g != 1) continue;
      h++;
    }
  return h;
}

// ---- unit groups mod f -----------------------------------------------------

UnitsMod units_mod(Field k, const Ideal& f) {
  if (!f.is_integral()) fail(errc::not_integral, "units_mod needs an integral modulus");
  UnitsMod out{k, f, {}};
  for (const Elem& u : roots_of_unity(k)) {
    Elem diff = u - Elem::integer(k, 1);
    if (diff.is_zero() || f.contains(diff)) out.units.push_back(u);
  }
  return out;
}

// ---- ray class group -------------------------------------------------------

std::vector<long> RayClassGroup::exponents(long index) const {
  std::vector<long> e(gens.size(), 0);
  for (size_t i = 0; i < gens.size(); i++) {
    e[i] = index % rel_orders[i];
    index /= rel_orders[i];
  }
  return e;
}

RayClassGroup ray_class_group(Field k, const Ideal& f) {
  if (!f.is_integral()) fail(errc::not_integral, "modulus must be integral");
  RayClassGroup rcg;
  rcg.K = k;
  rcg.modulus = f;
  rcg.modulus_factors = factor_ideal(f);

  rcg.phi = 1;
  for (auto& [P, e] : rcg.modulus_factors) {
    mpz_class np = P.norm().get_num(), q;
    mpz_pow_ui(q.get_mpz_t(), np.get_mpz_t(), e - 1);
    rcg.phi *= q * (np - 1);
  }
  if (rcg.phi > 1000000) fail(errc::modulus_too_large, "|(O/f)^x| exceeds 10^6");

  std::set<std::pair<mpz_class, mpz_class>> unit_residues;
  for (const Elem& u : roots_of_unity(k)) unit_residues.insert(reduce_mod(u, f));
  rcg.unit_image = (long)unit_residues.size();
  rcg.h = class_number(k);

  mpz_class order_z = mpz_class(rcg.h) * rcg.phi;
  if (fdiv_r(order_z, mpz_class(rcg.unit_image)) != 0)
    fail(errc::internal_inconsistency, "group order formula not integral");
  order_z /= rcg.unit_image;
  if (order_z > 4096)
    fail(errc::modulus_too_large, "ray class group too large for the table");
  rcg.order = order_z.get_si();

  // closure = list of (representative ideal, exponent vector), grown greedily
  std::vector<std::pair<Ideal, std::vector<long>>> closure{{Ideal::one(k), {}}};
  auto locate = [&](const Ideal& I) -> std::optional<std::pair<std::vector<long>, Elem>> {
    for (auto& [R, e] : closure) {
      auto alpha = ray_equivalent(f, rcg.modulus_factors, I, R);
      if (alpha) return std::make_pair(e, *alpha);
    }
    return std::nullopt;
  };

  long bound = 64;
  while ((long)closure.size() < rcg.order) {
    for (const Ideal& C : ideals_up_to_norm(k, bound, f)) {
      if ((long)closure.size() >= rcg.order) break;
      if (C.is_one() || locate(C)) continue;
      for (auto& entry : closure) entry.second.push_back(0);
      rcg.gens.push_back(C);
      size_t slot = rcg.gens.size() - 1;

      long m = 1;
      Ideal P = C;
      std::optional<std::pair<std::vector<long>, Elem>> match;
      while (!(match = locate(P))) {
        m++;
        P = P.mul(C);
        if (m > rcg.order) fail(errc::internal_inconsistency, "runaway generator order");
      }
      rcg.rel_orders.push_back(m);
      rcg.rel_exps.push_back(match->first);
      rcg.rel_alphas.push_back(match->second);

      auto prev = closure;
      Ideal Ppow = Ideal::one(k);
      for (long j = 1; j < m; j++) {
        Ppow = Ppow.mul(C);
        for (auto& [R, e] : prev) {
          auto e2 = e;
          e2[slot] = j;
          closure.push_back({R.mul(Ppow), e2});
        }
      }
    }
    if ((long)closure.size() < rcg.order) {
      bound *= 2;
      if (bound > 2000000)
        fail(errc::internal_inconsistency, "could not exhaust the ray class group");
    }
  }

  long check = 1;
  for (long n : rcg.rel_orders) check *= n;
  if (check != rcg.order)
    fail(errc::internal_inconsistency, "polycyclic orders do not multiply to the order");

  for (long idx = 0; idx < rcg.order; idx++) {
    auto e = rcg.exponents(idx);
    Ideal R = Ideal::one(k);
    for (size_t i = 0; i < rcg.gens.size(); i++)
      if (e[i]) R = R.mul(rcg.gens[i].pow(e[i]));
    rcg.reps_.push_back(R);
  }
  return rcg;
}

std::pair<std::vector<long>, Elem> principalize(const RayClassGroup& rcg,
                                                const Ideal& I) {
  if (!I.is_integral()) fail(errc::not_integral, "principalize needs an integral ideal");
  if (!I.coprime_to(rcg.modulus))
    fail(errc::not_coprime, "ideal shares a factor with the modulus");
  for (long idx = 0; idx < rcg.order; idx++) {
    auto alpha = ray_equivalent(rcg.modulus, rcg.modulus_factors, I, rcg.reps_[idx]);
    if (alpha) return {rcg.exponents(idx), *alpha};
  }
  fail(errc::internal_inconsistency, "ideal matched no ray class");
}

// ---- quotient representatives ----------------------------------------------

std::vector<Elem> coset_representatives(const Ideal& J, const Ideal& I) {
  if (J.K != I.K) fail(errc::internal_inconsistency, "mixed fields");
  // coordinates of I's basis in J's basis; must be integral (I inside J)
  auto coords = [&](const Elem& z) -> std::pair<mpz_class, mpz_class> {
    mpq_class n = z.y / J.scale;
    mpq_class m = (z.x / J.scale - mpq_class(J.b) * n) / mpq_class(J.a);
    if (n.get_den() != 1 || m.get_den() != 1)
      fail(errc::not_integral, "ideal is not contained in the reference ideal");
    return {m.get_num(), n.get_num()};
  };
  auto [v1, v2] = I.gens();
  auto [m1, n1] = coords(v1);
  auto [m2, n2] = coords(v2);
  if (n1 != 0) fail(errc::internal_inconsistency, "unexpected basis shape");
  mpz_class alpha = abs(m1), delta = abs(n2);
  mpq_class index = I.norm() / J.norm();
  if (mpq_class(alpha * delta) != index)
    fail(errc::internal_inconsistency, "quotient index mismatch");
  std::vector<Elem> out;
  for (mpz_class i = 0; i < alpha; i++)
    for (mpz_class j = 0; j < delta; j++)
      out.push_back(Elem(J.K, J.scale * mpq_class(i * J.a + j * J.b),
                         J.scale * mpq_class(j)));
  return out;
}

}  // namespace cmek::quad
