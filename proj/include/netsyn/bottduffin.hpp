#pragma once

#include <array>
#include <string>
#include <vector>

#include "netsyn/network.hpp"
#include "netsyn/synth.hpp"

namespace netsyn {

enum class StepKind {
  jr_pole_removal,
  jr_zero_removal,
  min_resistance_shift,
  richards_cycle,
};

const char* step_kind_name(StepKind k);

struct SynthesisStep {
  StepKind kind;
  Netlist extracted;  // the fragment taken out at this step
  RatFun remainder;   // what was left afterwards
};

struct FosterResult {
  // Pole removals are series fragments, zero removals shunt fragments;
  // folding them back around the remainder in reverse order rebuilds the
  // input.
  std::vector<SynthesisStep> steps;
  RatFun remainder;  // minimum-reactive: no poles or zeros on jR, 0, infinity
};

// Strips every pole and zero on the imaginary axis (origin and infinity
// included) as lossless fragments. A non-positive residue means the input
// was not positive-real: std::domain_error.
FosterResult foster_extract(const RatFun& r, double tau_gcd = 1e-7);

struct RichardsBranch {
  Netlist reactance;     // lone spring (rising branch) or inerter (falling)
  Netlist resonant;      // two-element extraction at the minimum frequency
  bool resonant_series;  // placement relative to the branch remainder
  RatFun remainder;      // positive-real, degree strictly below the input's
};

// One cycle on a minimum-reactive function: series damper for the minimum
// resistance, then the input splits into two parallel branches, each a
// reactance in series with a resonant extraction and a lower-degree
// remainder. When the resistance minimum falls at omega = 0 or infinity the
// cycle degenerates to the damper shift alone (cycled = false) and the
// shifted remainder carries a boundary zero for foster_extract to take.
struct RichardsResult {
  double R = 0.0;       // min over omega of Re r(j*omega)
  double omega0 = 0.0;  // where the minimum is attained (0 when at an endpoint)
  double X = 0.0;       // Im r(j*omega0) after the shift
  double k = 0.0;       // positive parameter making the transform lose degree
  bool cycled = false;
  Netlist shift;   // series damper; empty when R is negligible
  RatFun shifted;  // r - R
  std::array<RichardsBranch, 2> branch;  // meaningful when cycled
};

// pre: r positive-real, minimum-reactive, degree >= 1. Throws
// std::runtime_error with diagnostics when the resistance minimum or the
// transform parameter cannot be located, std::domain_error when the scan
// finds negative resistance (not positive-real).
RichardsResult richards_cycle(const RatFun& r, const SynthOptions& opt = {});

// Full recursive synthesis: foster preamble, first-order forms for degree
// <= 1, one cycle plus recursion otherwise. The result is oracle-verified;
// for bicubic input it holds at most 13 elements. Appends the step log to
// *trace when given.
Netlist bott_duffin(const RatFun& r, const SynthOptions& opt = {},
                    std::vector<SynthesisStep>* trace = nullptr);

}  // namespace netsyn
