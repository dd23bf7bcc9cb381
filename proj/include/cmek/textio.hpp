#pragma once

#include <string>

#include "cmek/galois.hpp"
#include "cmek/hecke.hpp"
#include "cmek/quadarith.hpp"

// Input grammars shared by the CLI and the test batteries, with canonical
// printers chosen so that parse(print(x)) == x.
//
//   field      := "Q(i)" | "Q(sqrt-<d>)"
//   element    := signed sum of terms; a term is a rational coefficient
//                 (p or p/q), optionally times one of the symbols
//                 i, w, sqrt-<d>.  w is the canonical integral generator
//                 (D + sqrt(D))/2 of the maximal order; i and sqrt-<d> are
//                 only accepted in the field that contains them.
//   ideal expr := one or more factors "(" element ("," element)* ")" with an
//                 optional "^" integer exponent each; factors multiply.
//                 Examples: (1+i)^3   (3)   (2, 1+sqrt-5)
//   char spec  := "hecke field=<field> f=<ideal expr> a=<int> b=<int>
//                 [twist=<int>]"; twist is the mixed-radix index of the
//                 finite-part twist (default 0).
//   cm type    := comma list of embedding labels, e.g. "e1,e2"
//   inf. type  := signed integer combination such as "2c-3" or "2e1+e2+e3";
//                 a label is either e<k> (the k-th embedding of the field,
//                 1-based, in the embeddings() order) or an element name of
//                 the setting; a bare integer rides on the identity
//                 embedding.
//
// Every parser throws errc::parse_error carrying a 1-based column number on
// malformed input.

namespace cmek::io {

quad::Field parse_field(const std::string& s);
std::string print_field(const quad::Field& K);

quad::Elem parse_elem(const std::string& s, const quad::Field& K);
std::string print_elem(const quad::Elem& z);  // Elem::str, reparseable

// Parses a whole string as an ideal expression.
quad::Ideal parse_ideal(const std::string& s, const quad::Field& K);
// In-place variant used when the expression is embedded in a larger string:
// consumes factors starting at pos and leaves pos after the last one.
quad::Ideal parse_ideal_at(const std::string& s, size_t& pos,
                           const quad::Field& K);
// Canonical factor form read off the ideal's normal form; an integral ideal
// prints as "(n)(a, b+w)" (either factor dropped when trivial, "(1)" for the
// unit ideal) and a fractional scale adds a "(q)^-1" factor.
std::string print_ideal(const quad::Ideal& I);

hecke::HeckeChar parse_char_spec(const std::string& s);
std::string print_char_spec(const hecke::HeckeChar& chi);

galois::CMType parse_cm_type(const galois::CMSetting& S,
                             const std::string& field, const std::string& s);
std::string print_cm_type(const galois::CMSetting& S, const galois::CMType& phi);

galois::InfinityType parse_infinity_type(const galois::CMSetting& S,
                                         const std::string& field,
                                         const std::string& s);
std::string print_infinity_type(const galois::CMSetting& S,
                                const galois::InfinityType& mu);

}  // namespace cmek::io
