#pragma once

// Textual form descriptors used by the command line:
//
//   delta, e4, e6, e<k>, j          named forms
//   dj:k:m                          Duke–Jenkins basis element f_{k,m}
//   eigen:k:i[:s]                   i-th eigenform orbit of S_k; s = 1 takes
//                                   the Galois conjugate
//   theta:NAME|FILE                 theta series of a built-in or JSON Gram matrix
//   file:PATH                       JSON {"weight", "valuation", "coeffs"}
//   scale:c:SPEC, neg:SPEC          scalar multiples
//   A*B                             products (weights add)

#include <string>

#include "modform/ratioset.hpp"

namespace modform {

struct ResolvedForm {
  std::string spec;
  FormSeries form;
};

/// Resolves `spec` to a q-expansion known at least through q^prec.
ResolvedForm resolve_form(const std::string& spec, long prec);

/// Weight of a descriptor without computing it (files and theta specs are
/// read, but no series is expanded).
long spec_weight(const std::string& spec);

}  // namespace modform
