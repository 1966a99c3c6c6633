#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netsyn/network.hpp"
#include "netsyn/pr.hpp"

namespace netsyn {

enum class CoeffTransform { identity, dual, inv, gdu };

const char* coeff_transform_name(CoeffTransform t);

// identity; dual: a<->d; inv: reverse both arrays; gdu: a_k <-> d_{3-k}.
Bicubic coeff_transform(const Bicubic& z, CoeffTransform t);

struct SynthOptions {
  double tau_cond = kTauCond;      // equality/inequality margins on conditions
  double tau_verify = kTauVerify;  // oracle round-trip tolerance
  double tau_gcd = 1e-7;
};

struct Realization {
  Netlist netlist;
  ConfigId config;
  CoeffTransform transform_used;
  std::map<std::string, double> condition_slacks;  // raw residuals by name
  std::map<std::string, double> aux;               // accepted auxiliary scalars
};

// A branch accepted its conditions but the assembled network failed the
// impedance oracle: a tolerance pathology rather than a clean miss.
struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Each family test runs over its quartet members (identity/dual/inv/gdu as
// cataloged), evaluates the member's conditions on the transformed and
// d3-normalized tuple, and assembles element values through the member's
// value map. Empty result means the conditions do not hold at tau_cond.
std::vector<Realization> realize_N1(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N2(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N3(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N4(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N5(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N6(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N7(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N8(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N9(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N10(const Bicubic& z, const SynthOptions& opt = {});
std::vector<Realization> realize_N11(const Bicubic& z, const SynthOptions& opt = {});

// Auxiliary-scalar candidates, labeled by branch. Indices 1..4 follow the
// coefficient conversions (identity, a<->d, reversal, both).
std::vector<std::pair<std::string, double>> zeta_candidates(const Bicubic& z);
std::vector<std::pair<std::string, double>> lambda_candidates(const Bicubic& z);

struct GammaBranch {
  std::string label;        // "gamma1+", "gamma2-", ...
  double gamma;
  std::vector<double> phi;  // real roots of the Phi quadratic at this gamma
  std::vector<double> psi;  // real Psi candidates at this gamma
};
std::vector<GammaBranch> gamma_phi_psi(const Bicubic& z);

// Runs all eleven family tests and returns every verified realization,
// ordered by config id. Empty means not realizable with five elements.
// Throws std::invalid_argument for non-interior impedances, which belong
// to the boundary synthesis path. Family branches that accept marginally
// but fail oracle verification are dropped rather than propagated.
std::vector<Realization> synthesize_five(const Bicubic& z, const SynthOptions& opt = {});

}  // namespace netsyn
