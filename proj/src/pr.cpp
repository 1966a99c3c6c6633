#include "netsyn/pr.hpp"

#include <cmath>
#include <stdexcept>

namespace netsyn {

namespace {

template <typename T>
DerivedT<T> derive(const std::array<T, 4>& a, const std::array<T, 4>& d) {
  DerivedT<T> q;
  q.B11 = a[1] * d[0] - a[0] * d[1];
  q.B12 = a[2] * d[0] - a[0] * d[2];
  q.B13 = a[3] * d[0] - a[0] * d[3];
  q.B23 = a[3] * d[1] - a[1] * d[3];
  q.B33 = a[3] * d[2] - a[2] * d[3];
  q.B22 = q.B13 + (a[2] * d[1] - a[1] * d[2]);
  q.D1 = a[1] * a[2] - a[0] * a[3];
  q.D2 = d[1] * d[2] - d[0] * d[3];
  q.M11 = a[1] * d[0] + a[0] * d[1];
  q.M12 = a[2] * d[0] + a[0] * d[2];
  q.M13 = a[3] * d[0] + a[0] * d[3];
  q.M23 = a[3] * d[1] + a[1] * d[3];
  q.M33 = a[3] * d[2] + a[2] * d[3];
  q.f0 = a[0] * d[0];
  q.f1 = a[1] * d[1] - a[0] * d[2] - a[2] * d[0];
  q.f2 = a[2] * d[2] - a[1] * d[3] - a[3] * d[1];
  q.f3 = a[3] * d[3];
  return q;
}

// A bare coefficient is its own monomial scale, so the relative zero test
// degenerates to exact equality; stiff tuples legitimately span ten orders
// of magnitude, which rules out comparing against the largest coefficient.
bool coeff_zero(double x) { return x == 0.0; }

// Inequality slacks are compared against the achievable floating-point
// accuracy of the expression, not the condition tolerance: the monomial scale
// grows multiplicatively, and a tau_cond-wide band would accept tuples whose
// real part dips far below zero.
constexpr double kIneqGuard = 64.0 * 2.220446049250313e-16;

bool sc_nonneg_fp(const Sc& x) { return x.v >= -kIneqGuard * x.m; }
bool sc_pos_fp(const Sc& x) { return x.v > kIneqGuard * x.m; }

}  // namespace

Bicubic bicubic_normalize(Bicubic z) {
  double pivot = 0.0;
  for (int k = 3; k >= 0; --k)
    if (z.d[k] != 0.0) {
      pivot = z.d[k];
      break;
    }
  if (pivot == 0.0) throw std::invalid_argument("bicubic: zero denominator");
  for (auto& x : z.a) x /= pivot;
  for (auto& x : z.d) x /= pivot;
  z.normalized = true;
  return z;
}

RatFun bicubic_ratfun(const Bicubic& z) {
  return RatFun(poly_trim(Poly({z.a[0], z.a[1], z.a[2], z.a[3]})),
                poly_trim(Poly({z.d[0], z.d[1], z.d[2], z.d[3]})));
}

DerivedSc derived_sc(const Bicubic& zin) {
  const Bicubic z = zin.normalized ? zin : bicubic_normalize(zin);
  std::array<Sc, 4> a, d;
  for (int k = 0; k < 4; ++k) {
    a[k] = Sc(z.a[k]);
    d[k] = Sc(z.d[k]);
  }
  return derive<Sc>(a, d);
}

DerivedQuantities derived_quantities(const Bicubic& z) {
  return derive<double>(z.a, z.d);
}

PrCertificate positive_real_check(const Bicubic& zin, double tau_cond, double tau_gcd) {
  (void)tau_cond;  // verdicts use exact splits plus floating-point guards
  {
    RatFun r = ratfun_reduce(bicubic_ratfun(zin), tau_gcd);
    if (std::max(r.num.degree(), r.den.degree()) < 3)
      throw std::invalid_argument("not bicubic");
  }
  const Bicubic z = zin.normalized ? zin : bicubic_normalize(zin);
  std::array<Sc, 4> a, d;
  for (int k = 0; k < 4; ++k) {
    a[k] = Sc(z.a[k]);
    d[k] = Sc(z.d[k]);
  }
  const DerivedSc q = derive<Sc>(a, d);

  PrCertificate cert;
  const Sc gate = (a[1] + d[1]) * (a[2] + d[2]) - (a[0] + d[0]) * (a[3] + d[3]);
  cert.margins["gate"] = gate.v;
  cert.margins["f0"] = q.f0.v;
  cert.margins["f1"] = q.f1.v;
  cert.margins["f2"] = q.f2.v;
  cert.margins["f3"] = q.f3.v;

  const bool gate_ok = sc_nonneg_fp(gate);

  // f3 = a3*d3 with nonnegative inputs, so zero-vs-positive is the only split.
  const bool f3_zero = coeff_zero(z.a[3]) || coeff_zero(z.d[3]);
  if (f3_zero) {
    const double root = std::sqrt(std::max(q.f0.v, 0.0) * std::max(q.f2.v, 0.0));
    const Sc slack_a = Sc(2.0 * root, 2.0 * std::sqrt(q.f0.m * q.f2.m)) + q.f1;
    cert.margins["case_a"] = slack_a.v;
    if (gate_ok && sc_nonneg_fp(q.f2) && sc_nonneg_fp(q.f0) && sc_nonneg_fp(slack_a)) {
      cert.is_pr = true;
      cert.branch = "a";
    }
    return cert;
  }

  if (!sc_nonneg_fp(q.f0)) return cert;

  const Sc f1f3 = q.f1 * q.f3;
  if (sc_nonneg_fp(q.f1)) {
    const double root = std::sqrt(3.0 * std::max(f1f3.v, 0.0));
    const Sc slack_b1 = Sc(root, std::sqrt(3.0 * f1f3.m)) + q.f2;
    cert.margins["case_b1"] = slack_b1.v;
    if (gate_ok && sc_nonneg_fp(slack_b1)) {
      cert.is_pr = true;
      cert.branch = "b1";
      return cert;
    }
  }

  const Sc disc = q.f2 * q.f2 - Sc(3.0) * f1f3;
  cert.margins["case_b2_disc"] = disc.v;
  if (sc_pos_fp(disc)) {
    const Sc lhs = Sc(2.0) * q.f2 * q.f2 * q.f2 - Sc(9.0) * q.f1 * q.f2 * q.f3 +
                   Sc(27.0) * q.f0 * q.f3 * q.f3;
    const Sc rhs(2.0 * std::pow(disc.v, 1.5), 2.0 * std::pow(disc.m, 1.5));
    const Sc slack_b2 = lhs - rhs;
    cert.margins["case_b2"] = slack_b2.v;
    if (gate_ok && sc_nonneg_fp(slack_b2)) {
      cert.is_pr = true;
      cert.branch = "b2";
    }
  }
  return cert;
}

const char* boundary_kind_name(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::interior: return "interior";
    case BoundaryKind::zero_at_origin: return "zero_at_origin";
    case BoundaryKind::pole_at_origin: return "pole_at_origin";
    case BoundaryKind::zero_at_infinity: return "zero_at_infinity";
    case BoundaryKind::pole_at_infinity: return "pole_at_infinity";
    case BoundaryKind::zero_on_jR: return "zero_on_jR";
    case BoundaryKind::pole_on_jR: return "pole_on_jR";
  }
  return "interior";
}

BoundaryClass classify_boundary(const Bicubic& zin, double tau_cond) {
  const Bicubic z = zin.normalized ? zin : bicubic_normalize(zin);

  BoundaryClass out;
  if (coeff_zero(z.a[0]))
    out.degeneracies.push_back(BoundaryKind::zero_at_origin);
  if (coeff_zero(z.d[0]))
    out.degeneracies.push_back(BoundaryKind::pole_at_origin);
  if (coeff_zero(z.a[3]))
    out.degeneracies.push_back(BoundaryKind::zero_at_infinity);
  if (coeff_zero(z.d[3]))
    out.degeneracies.push_back(BoundaryKind::pole_at_infinity);

  // The discriminant tests assume strictly positive coefficients; a tuple
  // already routed above never reaches them with a spurious zero.
  bool all_pos = true;
  for (int k = 0; k < 4; ++k)
    if (coeff_zero(z.a[k]) || coeff_zero(z.d[k]))
      all_pos = false;
  if (all_pos) {
    const DerivedSc q = derived_sc(z);
    double w_zero = 0.0, w_pole = 0.0;
    if (q.D1.is_zero(tau_cond)) {
      out.degeneracies.push_back(BoundaryKind::zero_on_jR);
      w_zero = std::sqrt(z.a[1] / z.a[3]);
    }
    if (q.D2.is_zero(tau_cond)) {
      out.degeneracies.push_back(BoundaryKind::pole_on_jR);
      w_pole = std::sqrt(z.d[1] / z.d[3]);
    }
    if (!out.degeneracies.empty()) {
      out.kind = out.degeneracies.front();
      if (out.kind == BoundaryKind::zero_on_jR) out.omega1 = w_zero;
      if (out.kind == BoundaryKind::pole_on_jR) out.omega1 = w_pole;
      return out;
    }
  }
  if (!out.degeneracies.empty()) out.kind = out.degeneracies.front();
  return out;
}

int mcmillan_degree(const RatFun& r, double tau_gcd) {
  RatFun red = ratfun_reduce(r, tau_gcd);
  return std::max(std::max(red.num.degree(), red.den.degree()), 0);
}

}  // namespace netsyn
