#ifndef SRKHS_DSL_HPP
#define SRKHS_DSL_HPP

#include <string>

#include "srkhs/basis.hpp"
#include "srkhs/membership.hpp"
#include "srkhs/scaling.hpp"

namespace srkhs {

// Textual family specs shared by the CLI and config files.
//
//   basis:    ibb:s=S | gauss:ell=L | pow:szego | pow:exp | pow:counter
//             (power-series/gauss domains may append ,lo=A,hi=B)
//   scaling:  id | hyp:RHO | geo:TAU | itlog:P,Q,RHO | logpow:C
//   coeff:    const:C | hyp:RHO | ind:pow2 | ind:odd | mono:p=P,ell=L
//
// Scaling index origins follow the basis they pair with; parse_scaling takes
// the origin explicitly. Throws ParseError on malformed input.

BasisFamily parse_basis(const std::string& spec);
ScalingFamily parse_scaling(const std::string& spec, std::int64_t origin);
CoefficientFamily parse_coefficients(const std::string& spec);

}  // namespace srkhs

#endif
