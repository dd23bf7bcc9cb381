#include "cmek/errors.hpp"

namespace cmek {

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_a_group: return "NotAGroup";
    case errc::conj_not_involution: return "ConjNotInvolution";
    case errc::subgroup_not_closed: return "SubgroupNotClosed";
    case errc::unknown_field: return "UnknownField";
    case errc::not_a_subfield: return "NotASubfield";
    case errc::no_cm_subfield: return "NoCMSubfield";
    case errc::not_a_cm_type: return "NotACMType";
    case errc::not_hecke_character_type: return "NotHeckeCharacterType";
    case errc::not_critical: return "NotCritical";
    case errc::internal_inconsistency: return "InternalInconsistency";
    case errc::zero_ideal: return "ZeroIdeal";
    case errc::modulus_too_large: return "ModulusTooLarge";
    case errc::not_coprime: return "NotCoprime";
    case errc::not_integral: return "NotIntegral";
    case errc::trivial_modulus: return "TrivialModulus";
    case errc::outside_convergence_region: return "OutsideConvergenceRegion";
    case errc::precision_unachievable: return "PrecisionUnachievable";
    case errc::unsupported_parameters: return "UnsupportedParameters";
    case errc::invalid_torsion_point: return "InvalidTorsionPoint";
    case errc::class_number_too_large: return "ClassNumberTooLarge";
    case errc::non_integral_j: return "NonIntegralJ";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace cmek
