#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netsyn/poly.hpp"

namespace netsyn {

// Default tolerances. Equality conditions compare |value| against
// tol * scale, where scale is the sum of absolute monomial magnitudes.
inline constexpr double kTauCond = 1e-8;
inline constexpr double kTauVerify = 1e-6;

// Value paired with the magnitude scale of the expression that produced it.
// The scale accumulates |monomial| through +,-,* so equality tests can be
// made relative to the size of the cancelling terms.
struct Sc {
  double v = 0.0;
  double m = 0.0;

  Sc() = default;
  Sc(double value, double mag) : v(value), m(mag) {}
  explicit Sc(double value) : v(value), m(value < 0 ? -value : value) {}

  bool is_zero(double tol = kTauCond) const { return std::abs(v) <= tol * m; }
  bool is_pos(double tol = kTauCond) const { return v > tol * m; }
  bool is_nonneg(double tol = kTauCond) const { return v >= -tol * m; }
};

inline Sc operator+(Sc x, Sc y) { return {x.v + y.v, x.m + y.m}; }
inline Sc operator-(Sc x, Sc y) { return {x.v - y.v, x.m + y.m}; }
inline Sc operator*(Sc x, Sc y) { return {x.v * y.v, x.m * y.m}; }
inline Sc operator-(Sc x) { return {-x.v, x.m}; }

// Degree-3 rational impedance a(s)/d(s); index = power of s.
struct Bicubic {
  std::array<double, 4> a{};  // a[k] multiplies s^k
  std::array<double, 4> d{};
  bool normalized = false;
};

// Scales both coefficient arrays so the leading nonzero d entry is 1.
Bicubic bicubic_normalize(Bicubic z);

RatFun bicubic_ratfun(const Bicubic& z);

// Bezoutian entries, the two discriminant-like products, sum-side companions,
// and the quartic-resultant coefficients used by the positive-real test.
template <typename T>
struct DerivedT {
  T B11, B12, B13, B22, B23, B33;
  T D1, D2;
  T M11, M12, M13, M23, M33;
  T f0, f1, f2, f3;
};
using DerivedQuantities = DerivedT<double>;
using DerivedSc = DerivedT<Sc>;

DerivedSc derived_sc(const Bicubic& z);
DerivedQuantities derived_quantities(const Bicubic& z);

struct PrCertificate {
  bool is_pr = false;
  // "a", "b1", or "b2" for the sufficient case that fired; "none" otherwise.
  std::string branch = "none";
  std::map<std::string, double> margins;
};

// Necessary-and-sufficient test for a reduced bicubic with nonnegative
// coefficients. Throws std::invalid_argument("not bicubic") when the reduced
// function has degree below 3.
PrCertificate positive_real_check(const Bicubic& z, double tau_cond = kTauCond,
                                  double tau_gcd = 1e-7);

enum class BoundaryKind {
  interior,
  zero_at_origin,
  pole_at_origin,
  zero_at_infinity,
  pole_at_infinity,
  zero_on_jR,
  pole_on_jR,
};

const char* boundary_kind_name(BoundaryKind k);

struct BoundaryClass {
  BoundaryKind kind = BoundaryKind::interior;
  std::optional<double> omega1;  // finite-jR cases only
  // Every degeneracy that fired, in priority order; empty for interior.
  std::vector<BoundaryKind> degeneracies;
};

// Routes origin/infinity coefficient degeneracies before the finite-jR
// discriminant tests; collects simultaneous hits rather than erroring.
BoundaryClass classify_boundary(const Bicubic& z, double tau_cond = kTauCond);

// max(deg num, deg den) after exact-as-possible cancellation.
int mcmillan_degree(const RatFun& r, double tau_gcd = 1e-7);

}  // namespace netsyn
