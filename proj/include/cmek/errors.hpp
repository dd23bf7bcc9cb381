#ifndef CMEK_ERRORS_HPP
#define CMEK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmek {

// Stable error codes shared by the library and the CLI. Names follow the
// failure they describe; the CLI prints code() verbatim so scripts can match
// on it.
enum class errc {
  not_a_group,
  conj_not_involution,
  subgroup_not_closed,
  unknown_field,
  not_a_subfield,
  no_cm_subfield,
  not_a_cm_type,
  not_hecke_character_type,
  not_critical,
  internal_inconsistency,
  zero_ideal,
  modulus_too_large,
  not_coprime,
  not_integral,
  trivial_modulus,
  outside_convergence_region,
  precision_unachievable,
  unsupported_parameters,
  invalid_torsion_point,
  class_number_too_large,
  non_integral_j,
  parse_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace cmek

#endif
