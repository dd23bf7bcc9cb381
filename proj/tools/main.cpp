// Command-line front end: degree-1 CM combinatorics, continued lattice sums,
// Hecke L-values, CM periods, algebraicity verification and the selftest
// battery.  Every numeric answer is printed as decimal strings at the
// requested working precision; --json mirrors the result to a file.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmek/bigfloat.hpp"
#include "cmek/eklattice.hpp"
#include "cmek/errors.hpp"
#include "cmek/galois.hpp"
#include "cmek/hecke.hpp"
#include "cmek/lvalues.hpp"
#include "cmek/periods.hpp"
#include "cmek/quadarith.hpp"
#include "cmek/selftest.hpp"
#include "cmek/textio.hpp"
#include "cmek/verify.hpp"

using namespace cmek;
using nlohmann::json;
using quad::Field;
using quad::Ideal;

namespace {

long g_prec = 192;
std::string g_json_path;
json g_report;

long digits() { return std::max(8L, (long)(g_prec * 0.30103) - 2); }

std::string rstr(const Real& x) { return x.str(digits()); }

std::string cstr(const BigComplex& v) {
  return rstr(v.re()) + (v.im().sign() < 0 ? " - " : " + ") +
         v.im().abs().str(digits()) + "*i";
}

void put_complex(json& j, const std::string& key, const BigComplex& v) {
  j[key + "_re"] = rstr(v.re());
  j[key + "_im"] = rstr(v.im());
}

void flush_report() {
  if (g_json_path.empty()) return;
  std::ofstream out(g_json_path);
  if (!out) fail(errc::parse_error, "cannot write " + g_json_path);
  out << g_report.dump(1) << "\n";
}

// --setting accepts a built-in name or a path to a setting file
galois::CMSetting load_setting(const std::string& s) {
  std::ifstream f(s);
  if (f) {
    std::stringstream ss;
    ss << f.rdbuf();
    return galois::load_setting_text(ss.str());
  }
  return galois::setting_by_name(s);
}

std::string pick_field(const galois::CMSetting& S, const std::string& field) {
  if (!field.empty()) return field;
  if (S.fields.count("L")) return "L";
  if (S.fields.count("Q(zeta5)")) return "Q(zeta5)";
  fail(errc::unknown_field,
       "this setting has no default field; pass --field explicitly");
}

json poly_json(const std::vector<mpz_class>& p) {
  json a = json::array();
  for (auto& c : p) a.push_back(c.get_str());
  return a;
}

std::string poly_str(const std::vector<mpz_class>& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); i++) s += (i ? ", " : "") + p[i].get_str();
  return s + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Critical Hecke L-values over imaginary quadratic fields: reflex "
      "combinatorics, continued Eisenstein lattice sums, CM periods and "
      "algebraic recognition of the period ratios"};
  app.require_subcommand(1);
  app.add_option("--prec", g_prec, "working precision in bits")
      ->check(CLI::Range(64L, 4096L))
      ->capture_default_str();
  app.add_option("--json", g_json_path, "also write the result to this file");

  // ---- galois ---------------------------------------------------------------
  auto* ga = app.add_subcommand(
      "galois", "CM-types, reflex, criticality and the sign epsilon");
  ga->require_subcommand(1);
  struct {
    std::string setting, field, type, mu, tau, eta = "1";
  } go;

  auto* reflex = ga->add_subcommand("reflex", "reflex field and reflex type");
  reflex->add_option("--setting", go.setting, "built-in name or setting file")
      ->required();
  reflex->add_option("--field", go.field, "field carrying the type");
  reflex->add_option("--type", go.type, "CM-type, e.g. e1,e2")->required();
  reflex->callback([&] {
    galois::CMSetting S = load_setting(go.setting);
    std::string fld = pick_field(S, go.field);
    auto [E, ps] = galois::reflex(S, io::parse_cm_type(S, fld, go.type));
    printf("E = %s\nPhi* = %s\n", E.c_str(), io::print_cm_type(S, ps).c_str());
    g_report = {{"command", "galois reflex"}, {"reflex_field", E},
                {"reflex_type", io::print_cm_type(S, ps)}};
  });

  auto* sign = ga->add_subcommand("sign", "the sign epsilon(Phi, eta, tau)");
  sign->add_option("--setting", go.setting)->required();
  sign->add_option("--field", go.field);
  sign->add_option("--type", go.type)->required();
  sign->add_option("--tau", go.tau, "group element")->required();
  sign->add_option("--eta", go.eta, "group element")->capture_default_str();
  sign->callback([&] {
    galois::CMSetting S = load_setting(go.setting);
    std::string fld = pick_field(S, go.field);
    int s = galois::epsilon_sign(S, io::parse_cm_type(S, fld, go.type),
                                 S.element_by_name(go.eta),
                                 S.element_by_name(go.tau));
    printf("%d\n", s);
    g_report = {{"command", "galois sign"}, {"sign", s}};
  });

  auto* crit = ga->add_subcommand(
      "critical", "critical decomposition and the reflex-character type");
  crit->add_option("--setting", go.setting)->required();
  crit->add_option("--field", go.field);
  crit->add_option("--mu", go.mu, "infinity type, e.g. 2c-3 or -e1-e2")
      ->required();
  crit->callback([&] {
    galois::CMSetting S = load_setting(go.setting);
    std::string fld = pick_field(S, go.field);
    galois::InfinityType mu = io::parse_infinity_type(S, fld, go.mu);
    auto dec = galois::critical_decompose(S, mu);
    g_report = {{"command", "galois critical"}};
    if (!dec) {
      printf("critical = no\n");
      g_report["critical"] = false;
    } else {
      galois::InfinityType xi = galois::xi_infinity_type(S, *dec);
      printf("critical = yes\nphi = %s\nalpha = %s\nbeta = %s\nweight = %d\n"
             "Xi = %s  (type of the reflex character, on %s)\n",
             io::print_cm_type(S, dec->phi).c_str(),
             io::print_infinity_type(S, dec->alpha).c_str(),
             io::print_infinity_type(S, dec->beta).c_str(), dec->weight,
             io::print_infinity_type(S, xi).c_str(), xi.field.c_str());
      g_report["critical"] = true;
      g_report["phi"] = io::print_cm_type(S, dec->phi);
      g_report["alpha"] = io::print_infinity_type(S, dec->alpha);
      g_report["beta"] = io::print_infinity_type(S, dec->beta);
      g_report["weight"] = dec->weight;
      g_report["xi"] = io::print_infinity_type(S, xi);
      g_report["xi_field"] = xi.field;
    }
  });

  // ---- ek -------------------------------------------------------------------
  auto* ekc = app.add_subcommand(
      "ek", "continued lattice sum sum' conj(l)^b l^-a |l|^-2s over L + t");
  struct {
    long b = 0, a = 1, s = 0, gamma = 1;
    int variant = 0;
    double radius = 0;
    std::string field = "Q(i)", lattice = "(1)", t = "0",
                gamma_modulus = "(1)";
  } eo;
  ekc->add_option("--b", eo.b, "conjugate exponent")->capture_default_str();
  ekc->add_option("--a", eo.a, "holomorphic exponent")->capture_default_str();
  ekc->add_option("--s", eo.s, "integer evaluation point")
      ->capture_default_str();
  ekc->add_option("--field", eo.field)->capture_default_str();
  ekc->add_option("--lattice", eo.lattice,
                  "ideal expression; Z[i] and Z[w] pick the ring of integers")
      ->capture_default_str();
  ekc->add_option("--t", eo.t, "exact translation point")
      ->capture_default_str();
  ekc->add_option("--gamma", eo.gamma,
                  "order of the unit group acting on the coset")
      ->capture_default_str();
  ekc->add_option("--gamma-modulus", eo.gamma_modulus,
                  "modulus cutting out that unit group")
      ->capture_default_str();
  ekc->add_option("--radius", eo.radius,
                  "truncated direct scan instead of the continuation");
  ekc->add_option("--variant", eo.variant, "internal split point (0, 1, 2)")
      ->check(CLI::Range(0, 2));
  ekc->callback([&] {
    std::string lat = eo.lattice, fld = eo.field;
    if (lat == "Z[i]") fld = "Q(i)", lat = "(1)";
    if (lat == "Z[w]") fld = "Q(sqrt-3)", lat = "(1)";
    Field K = io::parse_field(fld);
    ek::EKParams par;
    par.b_exp = eo.b;
    par.a_exp = eo.a;
    par.s = BigComplex(Real::of(eo.s, g_prec), Real::of(0L, g_prec));
    par.t_exact = io::parse_elem(eo.t, K);
    par.gamma_order = eo.gamma;
    if (eo.gamma > 1) par.gamma_modulus = io::parse_ideal(eo.gamma_modulus, K);
    ek::Lattice2 L =
        ek::Lattice2::of_ideal(K, io::parse_ideal(lat, K), g_prec);
    g_report = {{"command", "ek"}, {"b", eo.b}, {"a", eo.a}, {"s", eo.s},
                {"field", io::print_field(K)},
                {"lattice", io::print_ideal(L.prov->ideal)}};
    if (eo.radius > 0) {
      ek::DirectSum d =
          ek::ek_direct(par, L, Real::of(eo.radius, g_prec), g_prec);
      printf("value = %s\ntail <= %s  (direct scan, radius %g)\n",
             cstr(d.value).c_str(), d.tail_bound.str(3).c_str(), eo.radius);
      put_complex(g_report, "value", d.value);
      g_report["tail_bound"] = d.tail_bound.str(6);
      g_report["method"] = "direct";
    } else {
      BigComplex v = ek::ek(par, L, g_prec, eo.variant);
      printf("value = %s\n", cstr(v).c_str());
      put_complex(g_report, "value", v);
      g_report["method"] = "continuation";
    }
  });

  // ---- lvalue ---------------------------------------------------------------
  auto* lvc = app.add_subcommand("lvalue", "Hecke L-value L_f(chi, s)");
  struct {
    std::string spec;
    long s = 0, nmax = 100000;
    bool dirichlet = false;
  } lo;
  lvc->add_option("--char", lo.spec, "character spec, e.g. "
                  "\"hecke field=Q(i) f=(2)(2, 1+w) a=4 b=0 twist=0\"")
      ->required();
  lvc->add_option("--s", lo.s, "integer evaluation point")
      ->capture_default_str();
  lvc->add_flag("--dirichlet", lo.dirichlet,
                "sum the Dirichlet series directly instead");
  lvc->add_option("--nmax", lo.nmax, "norm bound for --dirichlet")
      ->capture_default_str();
  lvc->callback([&] {
    hecke::HeckeChar chi = io::parse_char_spec(lo.spec);
    BigComplex s(Real::of(lo.s, g_prec), Real::of(0L, g_prec));
    lv::LValueReport rep = lo.dirichlet
                               ? lv::dirichlet_L(chi, s, lo.nmax, g_prec)
                               : lv::L_value(chi, s, g_prec);
    for (auto& part : rep.partials)
      printf("class [%s]: %s\n", part.rep.str().c_str(),
             cstr(part.value).c_str());
    printf("L = %s\nmethod = %s, error <= %s\n", cstr(rep.total).c_str(),
           rep.method.c_str(), rep.error_bound.str(3).c_str());
    g_report = {{"command", "lvalue"}, {"char", io::print_char_spec(chi)},
                {"s", lo.s}, {"method", rep.method},
                {"error_bound", rep.error_bound.str(6)}};
    put_complex(g_report, "L", rep.total);
    json parts = json::array();
    for (auto& part : rep.partials) {
      json pj = {{"class", part.rep.str()}};
      put_complex(pj, "value", part.value);
      parts.push_back(pj);
    }
    g_report["partials"] = parts;
  });

  // ---- period ---------------------------------------------------------------
  auto* pc = app.add_subcommand("period", "normalized CM period of a field");
  std::string period_field;
  pc->add_option("--field", period_field, "e.g. Q(i) or Q(sqrt-7)")
      ->required();
  pc->callback([&] {
    Field K = io::parse_field(period_field);
    per::CMPeriod P = per::cm_period(K, g_prec);
    per::LatticeInvariants inv = per::lattice_invariants(P.scaled, g_prec);
    printf("Omega = %s\nnormalization = %s\nj = %s\ng2 = %s\ng3 = %s\n",
           cstr(P.omega).c_str(), P.normalization.c_str(),
           cstr(inv.j).c_str(), cstr(inv.g2).c_str(), cstr(inv.g3).c_str());
    g_report = {{"command", "period"}, {"field", io::print_field(K)},
                {"normalization", P.normalization}};
    put_complex(g_report, "omega", P.omega);
    put_complex(g_report, "j", inv.j);
    put_complex(g_report, "g2", inv.g2);
    put_complex(g_report, "g3", inv.g3);
  });

  // ---- verify ---------------------------------------------------------------
  auto* vc = app.add_subcommand(
      "verify", "recognize L(chi,0) * (2 pi i)^b / (conj(Omega)^b Omega^a) "
                "as an algebraic number");
  struct {
    std::string spec;
    int maxdeg = 4;
  } vo;
  vc->add_option("--char", vo.spec, "character spec")->required();
  vc->add_option("--maxdeg", vo.maxdeg, "recognition degree cap")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  vc->callback([&] {
    hecke::HeckeChar chi = io::parse_char_spec(vo.spec);
    vf::VerifyReport rep = vf::verify(chi, g_prec, vo.maxdeg);
    printf("L(chi, 0) = %s\nOmega = %s\nratio = %s\n",
           cstr(rep.lvalue).c_str(), cstr(rep.period.omega).c_str(),
           cstr(rep.ratio).c_str());
    if (rep.recognized)
      printf("recognized: %s  residual %s  stable at %ld bits: %s\n",
             poly_str(rep.poly).c_str(), rep.residual.str(3).c_str(),
             3 * g_prec / 2, rep.stable ? "yes" : "no");
    else
      printf("not recognized (best residual %s)\n",
             rep.residual.str(3).c_str());
    g_report = {{"command", "verify"}, {"char", io::print_char_spec(chi)},
                {"recognized", rep.recognized}, {"stable", rep.stable},
                {"residual", rep.residual.str(6)},
                {"poly", poly_json(rep.poly)}};
    put_complex(g_report, "L", rep.lvalue);
    put_complex(g_report, "omega", rep.period.omega);
    put_complex(g_report, "ratio", rep.ratio);
  });

  // ---- selftest -------------------------------------------------------------
  auto* sc = app.add_subcommand("selftest",
                                "acceptance battery against golden/");
  struct {
    std::string filter, golden = CMEK_GOLDEN_DIR;
  } so;
  sc->add_option("--filter", so.filter,
                 "run only checks whose name contains this substring");
  sc->add_option("--golden", so.golden, "reference directory")
      ->capture_default_str();
  // global --prec/--json may appear after the subcommand name
  for (CLI::App* s : {ga, reflex, sign, crit, ekc, lvc, pc, vc, sc})
    s->fallthrough();

  sc->callback([&] {
    st::SelftestReport rep = st::run_selftest(so.golden, so.filter);
    for (auto& c : rep.checks)
      printf("%-32s %s  %6.2fs  %s\n", c.name.c_str(),
             c.pass ? "pass" : "FAIL", c.seconds, c.detail.c_str());
    printf("%s (%zu checks, %.1fs)\n", rep.all_pass() ? "PASS" : "FAIL",
           rep.checks.size(), rep.seconds);
    g_report = {{"command", "selftest"}, {"all_pass", rep.all_pass()},
                {"seconds", rep.seconds}};
    json rows = json::array();
    for (auto& c : rep.checks)
      rows.push_back({{"name", c.name}, {"pass", c.pass},
                      {"seconds", c.seconds}, {"detail", c.detail}});
    g_report["checks"] = rows;
    flush_report();
    exit(rep.all_pass() ? 0 : 1);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const error& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  try {
    flush_report();
  } catch (const error& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
