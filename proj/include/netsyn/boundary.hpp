#pragma once

#include <string>

#include "netsyn/network.hpp"
#include "netsyn/pr.hpp"
#include "netsyn/synth.hpp"

namespace netsyn {

// Split of an impedance with a conjugate pole pair at +/- j*omega1:
//   Z(s) = 2*K1*s/(s^2 + omega1^2) + remainder,
// remainder = (c1r*s + c0r)/(e1*s + e0) with e1 = d3 and e0 = d0/omega1^2.
struct ImagAxisDecomposition {
  double K1 = 0.0;
  double omega1 = 0.0;
  RatFun remainder;
};

// Requires the denominator to factor as (s^2 + omega1^2)(d3*s + d0/omega1^2).
// K1 is the residue at j*omega1 (real for a positive-real function).
// Throws std::invalid_argument when the denominator does not vanish at
// j*omega1, std::domain_error when the numerator vanishes there too (common
// factor; input not reduced) or when K1 or a remainder coefficient comes out
// negative ("not positive-real at boundary").
ImagAxisDecomposition decompose_imag_pole(const Bicubic& z, double omega1,
                                          double tau_cond = kTauCond,
                                          double tau_verify = kTauVerify);

// Realizes a first-order positive-real r = (c1*s + c0)/(e1*s + e0) with one
// storage element and at most two dampers. The form is chosen by the sign of
// c1*e0 - c0*e1: zero gives a lone damper, positive a spring form, negative
// an inerter form. Throws std::domain_error on non-positive-real input and
// VerificationError if the assembled net fails the impedance oracle.
Netlist realize_first_order(const RatFun& r, double tau_verify = kTauVerify);

struct BoundaryRealization {
  bool handled = false;
  Netlist netlist;    // empty unless handled
  std::string route;  // degeneracy and transform chain taken
  std::string note;   // why the case was passed over, when !handled
};

// Synthesis for impedances with a pole or zero on the imaginary axis or at
// infinity. Finite-jR pole: spring-parallel-inerter block in series with the
// realized first-order remainder; finite-jR zero: the same route on 1/Z,
// mapped back through the dual network transform. Origin/infinity cases
// reduce through inv/dual/gdu to the zero-at-origin class, which is outside
// this library's five-element catalog and is reported unhandled (Bott-Duffin
// remains available). Throws std::invalid_argument for interior input.
BoundaryRealization realize_boundary(const Bicubic& z, const BoundaryClass& cls,
                                     const SynthOptions& opt = {});

}  // namespace netsyn
