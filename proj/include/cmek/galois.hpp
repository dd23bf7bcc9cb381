#ifndef CMEK_GALOIS_HPP
#define CMEK_GALOIS_HPP

// CM-type combinatorics over a fixed finite Galois group.
//
// Everything here is exact finite group theory: a number field is a subgroup
// H of the group G of a chosen Galois closure, its embeddings are the left
// cosets gH, and complex conjugation is a distinguished involution c in G.
// An embedding gH is real iff g^{-1}cg lies in H; CM-ness, CM-types, reflex
// types, criticality and the sign epsilon_Phi are all computed by exhaustive
// loops (group orders stay <= 64, so nothing clever is required).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cmek::galois {

struct FiniteGroup {
  int n = 0;               // order
  std::vector<int> table;  // table[i*n+j] = index of g_i g_j
  std::vector<int> inv;    // inverses
  int id = 0;              // identity index

  int mul(int i, int j) const { return table[(size_t)i * n + j]; }
  int invert(int i) const { return inv[i]; }
};

// Sorted element indices; always contains the identity.
using Subgroup = std::vector<int>;

struct CMSetting {
  FiniteGroup G;
  int conj = 0;                          // the involution c
  std::map<std::string, Subgroup> fields;
  std::vector<std::string> elem_names;   // optional; empty means "use indices"

  const Subgroup& subgroup(const std::string& tag) const;
  // Canonical (minimal-index) representative of the coset gH.
  int coset_rep(int g, const Subgroup& H) const;
  // Tag of a registered field with exactly this subgroup, if any.
  std::optional<std::string> find_field(const Subgroup& H) const;
  // Reuses an existing tag when the subgroup is already registered,
  // otherwise registers it under a fresh generated name.
  std::string register_subgroup(const Subgroup& H, const std::string& hint);
  // Element index by name or decimal index string.
  int element_by_name(const std::string& s) const;
  std::string element_name(int i) const;
};

// An embedding of the field `field`, stored as the canonical representative
// of its coset.  Two embeddings are equal iff the representatives coincide.
struct Embedding {
  std::string field;
  int rep = 0;
  auto operator<=>(const Embedding&) const = default;
};

struct InfinityType {
  std::string field;
  std::map<int, int> coeffs;  // canonical coset rep -> integer, zero entries dropped

  int at(int rep) const {
    auto it = coeffs.find(rep);
    return it == coeffs.end() ? 0 : it->second;
  }
  int degree() const {
    int d = 0;
    for (auto& [k, v] : coeffs) d += v;
    return d;
  }
};

struct CMType {
  std::string field;
  std::set<int> members;  // canonical coset reps
};

struct CriticalDecomposition {
  CMType phi;
  InfinityType alpha;  // supported on phi, all coefficients >= 1
  InfinityType beta;   // supported on conj(phi), all coefficients >= 0
  int weight = 0;      // beta(conj sigma) - alpha(sigma), constant over phi
};

// ---- construction ----------------------------------------------------------

// Validates the multiplication table (exhaustive group axioms), the
// involution and the subgroup list.  A tag for the trivial subgroup is added
// as "Lprime" when the caller did not provide one.
CMSetting make_setting(int n, const std::vector<int>& table, int conj,
                       const std::map<std::string, Subgroup>& fields,
                       std::vector<std::string> elem_names = {});

// Built-in settings (see README for the element labelling):
CMSetting setting_c2();      // imaginary quadratic over Q
CMSetting setting_zeta5();   // Gal(Q(zeta_5)/Q) = C4, conj = squaring twice
CMSetting setting_biquad();  // C2 x C2, biquadratic CM field
CMSetting setting_s3();      // Gal(Q(zeta_3, cbrt 2)/Q) = S3, non-CM top field
CMSetting setting_by_name(const std::string& name);

// ---- operations ------------------------------------------------------------

std::vector<Embedding> embeddings(const CMSetting& S, const std::string& field);

// (tau mu)(sigma) = mu(tau^{-1} sigma); degree is preserved.
InfinityType act(const CMSetting& S, int tau, const InfinityType& mu);

// N*_{L/K}: coefficient at gH_L is mu's coefficient at gH_K; degree
// multiplies by [L:K].
InfinityType lift_type(const CMSetting& S, const InfinityType& mu_on_K,
                       const std::string& L);

bool is_totally_imaginary(const CMSetting& S, const std::string& field);
bool is_cm_field(const CMSetting& S, const std::string& field);

std::string maximal_cm_subfield(CMSetting& S, const std::string& field);

bool is_cm_type(const CMSetting& S, const CMType& phi);

// All CM-types of the field, in a deterministic order.
std::vector<CMType> cm_types(const CMSetting& S, const std::string& field);

std::string stabilizer_field(CMSetting& S, const InfinityType& mu);

// Reflex pair (E, Phi*): E is the fixed field of the stabilizer of Phi and
// Phi* is read off from (Phi')^{-1}, which is constant on left H_E-cosets.
std::pair<std::string, CMType> reflex(CMSetting& S, const CMType& phi);

// Weil's criterion: mu comes from a Hecke character iff it is induced from a
// totally real or CM subfield and sigma -> mu(sigma) + mu(conj sigma) is
// constant; returns that constant w.
std::optional<int> is_hecke_character_type(const CMSetting& S, const InfinityType& mu);

std::optional<CriticalDecomposition> critical_decompose(const CMSetting& S,
                                                        const InfinityType& mu);

// Sign of the permutation  <c>\J_L -> eta Phi -> tau eta Phi -> <c>\J_L
// on conjugation pairs (pairs ordered by minimal representative).
int epsilon_sign(const CMSetting& S, const CMType& phi, int eta, int tau);

// Infinity type of the reflex character Xi: Xi_a = (Phi*)^alpha (conj Phi*)^beta,
// computed by group-ring convolution and pushed down to I_E.
InfinityType xi_infinity_type(CMSetting& S, const CriticalDecomposition& dec);

// Setting file: "order=<n> conj=<i>", n table rows, then "field <name> = i,j,..."
CMSetting load_setting_text(const std::string& text);

}  // namespace cmek::galois

#endif
