#include "cmek/textio.hpp"

#include <cctype>

#include "cmek/errors.hpp"

namespace cmek::io {

using quad::Elem;
using quad::Field;
using quad::Ideal;

namespace {

// Cursor over a single-line input; all errors carry the 1-based column.
struct Cur {
  const std::string& s;
  size_t p = 0;

  [[noreturn]] void die(const std::string& msg) const {
    fail(errc::parse_error, "col " + std::to_string(p + 1) + ": " + msg);
  }
  void ws() {
    while (p < s.size() && std::isspace((unsigned char)s[p])) p++;
  }
  char peek() const { return p < s.size() ? s[p] : '\0'; }
  bool eat(char c) {
    if (peek() != c) return false;
    p++;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) die(std::string("expected '") + c + "'");
  }
  bool at_digit() const { return std::isdigit((unsigned char)peek()); }

  mpz_class integer() {
    bool neg = eat('-');
    if (!neg) eat('+');
    if (!at_digit()) die("expected a number");
    size_t start = p;
    while (at_digit()) p++;
    mpz_class v(s.substr(start, p - start));
    return neg ? mpz_class(-v) : v;
  }
  long small_integer(const char* what) {
    mpz_class v = integer();
    if (!v.fits_slong_p()) die(std::string(what) + " out of range");
    return v.get_si();
  }
};

// The square root of the discriminant-free radicand: sqrt(-d) as an element
// of Q(sqrt(-d)).  From w = (D + sqrt(D))/2: for D = -d (d = 3 mod 4)
// sqrt(-d) = d + 2w, otherwise D = -4d and sqrt(-d) = 2d + w.
Elem sqrt_minus_d(Field K) {
  if (K.D == -K.d) return Elem(K, K.d, 2);
  return Elem(K, 2 * K.d, 1);
}

// element := ('+'|'-')? term (('+'|'-') term)*
// term    := rational ['*'? symbol] | symbol
Elem elem_at(Cur& c, Field K) {
  Elem acc(K, 0, 0);
  bool first = true;
  for (;;) {
    c.ws();
    int sign = 1;
    if (c.eat('-')) sign = -1;
    else if (!c.eat('+') && !first) break;
    c.ws();
    mpq_class coef(1);
    bool have_coef = false;
    if (c.at_digit()) {
      mpz_class num = c.integer();
      mpz_class den(1);
      if (c.eat('/')) {
        den = c.integer();
        if (den <= 0) c.die("denominator must be positive");
      }
      coef = mpq_class(num) / mpq_class(den);
      have_coef = true;
      c.eat('*');
    }
    Elem base = Elem::integer(K, 1);
    bool have_sym = true;
    if (c.eat('i')) {
      if (K.d != 1) c.die("the symbol i needs the field Q(i)");
      base = Elem(K, 2, 1);
    } else if (c.eat('w')) {
      base = Elem(K, 0, 1);
    } else if (c.peek() == 's') {
      size_t at = c.p;
      if (c.s.compare(c.p, 5, "sqrt-") != 0) c.die("unknown symbol");
      c.p += 5;
      long n = c.small_integer("radicand");
      if (n != K.d) {
        c.p = at;
        c.die("sqrt-" + std::to_string(n) + " does not lie in " +
              print_field(K));
      }
      base = sqrt_minus_d(K);
    } else {
      have_sym = false;
    }
    if (!have_coef && !have_sym) c.die("expected a term");
    Elem term = base * Elem(K, coef * sign, 0);
    acc = first ? term : acc + term;
    first = false;
  }
  if (first) c.die("empty element");
  return acc;
}

// factor := '(' element (',' element)* ')' ['^' int]
Ideal factor_at(Cur& c, Field K) {
  c.expect('(');
  std::vector<Elem> gens;
  do {
    gens.push_back(elem_at(c, K));
    c.ws();
  } while (c.eat(','));
  c.expect(')');
  Ideal I = Ideal::from_gens(K, gens);
  if (c.eat('^')) I = I.pow(c.small_integer("exponent"));
  return I;
}

}  // namespace

Field parse_field(const std::string& s) {
  Cur c{s};
  c.ws();
  if (c.s.compare(c.p, 4, "Q(i)") == 0) {
    c.p += 4;
  } else if (c.s.compare(c.p, 7, "Q(sqrt-") == 0) {
    c.p += 7;
    long d = c.small_integer("field radicand");
    c.expect(')');
    c.ws();
    if (c.p != s.size()) c.die("trailing input after field");
    return Field::of(d);
  } else {
    c.die("expected Q(i) or Q(sqrt-<d>)");
  }
  c.ws();
  if (c.p != s.size()) c.die("trailing input after field");
  return Field::of(1);
}

std::string print_field(const Field& K) {
  if (K.d == 1) return "Q(i)";
  return "Q(sqrt-" + std::to_string(K.d) + ")";
}

Elem parse_elem(const std::string& s, const Field& K) {
  Cur c{s};
  Elem z = elem_at(c, K);
  c.ws();
  if (c.p != s.size()) c.die("trailing input after element");
  return z;
}

std::string print_elem(const Elem& z) { return z.str(); }

Ideal parse_ideal_at(const std::string& s, size_t& pos, const Field& K) {
  Cur c{s, pos};
  c.ws();
  Ideal I = factor_at(c, K);
  for (;;) {
    size_t before = c.p;
    c.ws();
    c.eat('*');
    c.ws();
    if (c.peek() != '(') {
      c.p = before;
      break;
    }
    I = I.mul(factor_at(c, K));
  }
  pos = c.p;
  return I;
}

Ideal parse_ideal(const std::string& s, const Field& K) {
  size_t pos = 0;
  Ideal I = parse_ideal_at(s, pos, K);
  Cur c{s, pos};
  c.ws();
  if (c.p != s.size()) c.die("trailing input after ideal");
  return I;
}

std::string print_ideal(const Ideal& I) {
  std::string out;
  mpz_class num = I.scale.get_num(), den = I.scale.get_den();
  if (num != 1) out += "(" + num.get_str() + ")";
  if (den != 1) out += "(" + den.get_str() + ")^-1";
  if (I.a != 1 || I.b != 0) {
    out += "(" + I.a.get_str() + ", ";
    if (I.b != 0) out += I.b.get_str() + "+";
    out += "w)";
  }
  return out.empty() ? "(1)" : out;
}

hecke::HeckeChar parse_char_spec(const std::string& s) {
  Cur c{s};
  c.ws();
  if (c.s.compare(c.p, 5, "hecke") != 0 ||
      (c.p + 5 < s.size() && !std::isspace((unsigned char)s[c.p + 5])))
    c.die("character spec starts with 'hecke'");
  c.p += 5;

  std::optional<Field> K;
  std::optional<Ideal> f;
  std::optional<long> a, b;
  long twist = 0;
  for (;;) {
    c.ws();
    if (c.p == s.size()) break;
    size_t key_at = c.p;
    size_t eq = s.find('=', c.p);
    if (eq == std::string::npos) c.die("expected key=value");
    std::string key = s.substr(c.p, eq - c.p);
    c.p = eq + 1;
    if (key == "field") {
      size_t end = s.find_first_of(" \t", c.p);
      if (end == std::string::npos) end = s.size();
      K = parse_field(s.substr(c.p, end - c.p));
      c.p = end;
    } else if (key == "f") {
      if (!K) c.die("f= must come after field=");
      f = parse_ideal_at(s, c.p, *K);
    } else if (key == "a") {
      a = c.small_integer("a");
    } else if (key == "b") {
      b = c.small_integer("b");
    } else if (key == "twist") {
      twist = c.small_integer("twist");
    } else {
      c.p = key_at;
      c.die("unknown key '" + key + "'");
    }
  }
  if (!K || !f || !a || !b) {
    Cur e{s, s.size()};
    e.die("character spec needs field=, f=, a= and b=");
  }

  auto chars = hecke::enumerate_characters(*K, *f, *a, *b);
  if (chars.empty())
    fail(errc::unsupported_parameters,
         "no character with infinity type (" + std::to_string(*a) + "," +
             std::to_string(*b) + ") exists for this modulus (unit obstruction)");
  for (auto& chi : chars)
    if (chi.twist_index() == twist) return chi;
  fail(errc::parse_error, "twist " + std::to_string(twist) + " out of range (" +
                              std::to_string(chars.size()) + " characters)");
}

std::string print_char_spec(const hecke::HeckeChar& chi) {
  return "hecke field=" + print_field(chi.field) +
         " f=" + print_ideal(chi.rcg.modulus) + " a=" + std::to_string(chi.a) +
         " b=" + std::to_string(chi.b) +
         " twist=" + std::to_string(chi.twist_index());
}

namespace {

// A label is e<k> (1-based embedding index) or a setting element name; the
// value is the canonical coset representative of the named embedding.
int label_rep(const galois::CMSetting& S,
              const std::vector<galois::Embedding>& emb, Cur& c) {
  size_t start = c.p;
  while (std::isalnum((unsigned char)c.peek())) c.p++;
  std::string name = c.s.substr(start, c.p - start);
  if (name.empty()) c.die("expected an embedding label");
  if (name[0] == 'e' && name.size() > 1 &&
      std::isdigit((unsigned char)name[1])) {
    long k = std::stol(name.substr(1));
    if (k < 1 || k > (long)emb.size()) {
      c.p = start;
      c.die("embedding index out of range (field has " +
            std::to_string(emb.size()) + ")");
    }
    return emb[k - 1].rep;
  }
  int g;
  try {
    g = S.element_by_name(name);
  } catch (const error&) {
    c.p = start;
    c.die("unknown label '" + name + "'");
  }
  const galois::Subgroup& H = S.subgroup(emb[0].field);
  return S.coset_rep(g, H);
}

// 1-based embedding index of a coset representative, for printing.
size_t emb_index(const std::vector<galois::Embedding>& emb, int rep) {
  for (size_t k = 0; k < emb.size(); k++)
    if (emb[k].rep == rep) return k + 1;
  fail(errc::internal_inconsistency, "coset representative is not canonical");
}

}  // namespace

galois::CMType parse_cm_type(const galois::CMSetting& S,
                             const std::string& field, const std::string& s) {
  auto emb = galois::embeddings(S, field);
  galois::CMType phi;
  phi.field = field;
  Cur c{s};
  do {
    c.ws();
    phi.members.insert(label_rep(S, emb, c));
    c.ws();
  } while (c.eat(','));
  if (c.p != s.size()) c.die("trailing input after CM-type");
  return phi;
}

std::string print_cm_type(const galois::CMSetting& S,
                          const galois::CMType& phi) {
  auto emb = galois::embeddings(S, phi.field);
  std::string out;
  for (int rep : phi.members) {
    if (!out.empty()) out += ",";
    out += "e" + std::to_string(emb_index(emb, rep));
  }
  return out;
}

galois::InfinityType parse_infinity_type(const galois::CMSetting& S,
                                         const std::string& field,
                                         const std::string& s) {
  auto emb = galois::embeddings(S, field);
  galois::InfinityType mu;
  mu.field = field;
  Cur c{s};
  bool first = true;
  for (;;) {
    c.ws();
    if (c.p == s.size()) break;
    int sign = 1;
    if (c.eat('-')) sign = -1;
    else if (!c.eat('+') && !first) c.die("expected '+' or '-'");
    c.ws();
    long coef = 1;
    if (c.at_digit()) {
      coef = c.small_integer("coefficient");
      c.eat('*');
    }
    int rep = std::isalpha((unsigned char)c.peek())
                  ? label_rep(S, emb, c)
                  // bare integer: the identity embedding
                  : S.coset_rep(S.G.id, S.subgroup(field));
    mu.coeffs[rep] += sign * coef;
    first = false;
  }
  if (first) c.die("empty infinity type");
  std::erase_if(mu.coeffs, [](const auto& kv) { return kv.second == 0; });
  return mu;
}

std::string print_infinity_type(const galois::CMSetting& S,
                                const galois::InfinityType& mu) {
  auto emb = galois::embeddings(S, mu.field);
  if (mu.coeffs.empty()) return "0";
  std::string out;
  for (size_t k = 0; k < emb.size(); k++) {
    int v = mu.at(emb[k].rep);
    if (v == 0) continue;
    if (v > 0 && !out.empty()) out += "+";
    if (v == -1) out += "-";
    else if (v != 1) out += std::to_string(v);
    out += "e" + std::to_string(k + 1);
  }
  return out;
}

}  // namespace cmek::io
