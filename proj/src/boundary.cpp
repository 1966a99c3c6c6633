#include "netsyn/boundary.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace netsyn {

namespace {

// Magnitude scale of p evaluated at j*w: sum of |c_k| w^k.
double eval_scale(const Poly& p, double w) {
  double m = 0.0, wk = 1.0;
  for (double c : p.c) {
    m += std::abs(c) * wk;
    wk *= w;
  }
  return m;
}

// Appends sub between node 2 and terminal 1, keeping its interior private.
void splice_series(Netlist& base, const Netlist& sub) {
  int next = base.node_count();
  if (next < 3) next = 3;
  for (Element e : sub.elements) {
    auto remap = [&](int v) { return v == 0 ? 2 : (v == 1 ? 1 : next + v - 2); };
    e.i = remap(e.i);
    e.j = remap(e.j);
    base.elements.push_back(e);
  }
}

// Positive conjugate-pair frequency of a cubic-or-lower denominator in the
// factored shape (s^2 + w^2)(e1*s + e0), or 0 when it has none.
double jr_pair_frequency(const std::array<double, 4>& d, double tau_cond) {
  if (d[3] > 0.0) {
    if (!(d[1] > 0.0)) return 0.0;
    const double w2 = d[1] / d[3];
    // Remaining factor match: d2 = e0 and d0 = w^2 * e0.
    if (!(Sc(d[0]) - Sc(w2) * Sc(d[2])).is_zero(tau_cond)) return 0.0;
    return std::sqrt(w2);
  }
  if (d[2] > 0.0 && d[0] > 0.0) {
    const double w = std::sqrt(d[0] / d[2]);
    if (Sc(d[1] * w, 2.0 * d[0] + std::abs(d[1]) * w).is_zero(tau_cond)) return w;
  }
  return 0.0;
}

}  // namespace

ImagAxisDecomposition decompose_imag_pole(const Bicubic& z, double omega1,
                                          double tau_cond, double tau_verify) {
  if (!(omega1 > 0.0)) throw std::invalid_argument("omega1 must be positive");
  const RatFun Z = bicubic_ratfun(z);
  const cplx jw(0.0, omega1);

  const cplx dv = poly_eval(Z.den, jw);
  if (std::abs(dv) > tau_cond * eval_scale(Z.den, omega1))
    throw std::invalid_argument("denominator does not vanish at j*omega1");
  const cplx av = poly_eval(Z.num, jw);
  if (std::abs(av) <= tau_cond * eval_scale(Z.num, omega1))
    throw std::domain_error(
        "numerator and denominator share the imaginary-axis root; reduce first");

  const cplx res = av / poly_eval(poly_derivative(Z.den), jw);
  if (std::abs(res.imag()) > tau_verify * std::abs(res))
    throw std::domain_error("not positive-real at boundary: residue not real");
  const double K1 = res.real();
  if (!(K1 > 0.0))
    throw std::domain_error("not positive-real at boundary: residue not positive");

  const double w2 = omega1 * omega1;
  const double c1r = z.a[3];
  const double c0r = z.a[0] / w2;
  if (c1r < 0.0 || c0r < 0.0)
    throw std::domain_error("not positive-real at boundary: remainder coefficient negative");
  ImagAxisDecomposition out;
  out.K1 = K1;
  out.omega1 = omega1;
  out.remainder =
      RatFun(poly_trim(Poly({c0r, c1r})), poly_trim(Poly({z.d[0] / w2, z.d[3]})));

  const RatFun pole_part(Poly({0.0, 2.0 * K1}), Poly({w2, 0.0, 1.0}));
  if (!ratfun_close(ratfun_add(pole_part, out.remainder), Z, tau_verify))
    throw VerificationError("imaginary-axis split does not reconstruct the impedance");
  return out;
}

Netlist realize_first_order(const RatFun& r, double tau_verify) {
  if (r.num.degree() > 1 || r.den.degree() > 1)
    throw std::domain_error("not a first-order function");
  double c1 = r.num.degree() >= 1 ? r.num.c[1] : 0.0;
  double c0 = r.num.degree() >= 0 ? r.num.c[0] : 0.0;
  double e1 = r.den.degree() >= 1 ? r.den.c[1] : 0.0;
  double e0 = r.den.degree() >= 0 ? r.den.c[0] : 0.0;
  const double mag = std::max(std::max(std::abs(c1), std::abs(c0)),
                              std::max(std::abs(e1), std::abs(e0)));
  if (std::abs(e1) >= std::abs(e0) ? e1 < 0.0 : e0 < 0.0) {
    c1 = -c1; c0 = -c0; e1 = -e1; e0 = -e0;
  }
  for (double* p : {&c1, &c0, &e1, &e0}) {
    if (*p < 0.0 && *p >= -1e-13 * mag) *p = 0.0;
    if (*p < 0.0) throw std::domain_error("not positive-real: mixed coefficient signs");
  }
  if (c1 == 0.0 && c0 == 0.0) throw std::domain_error("zero impedance has no realization");

  Netlist net;
  const Sc D = Sc(c1) * Sc(e0) - Sc(c0) * Sc(e1);
  if (D.is_zero(1e-12)) {
    const double c = e0 > 0.0 ? e0 / c0 : e1 / c1;
    net.elements.push_back({ElementKind::damper, c, 0, 1});
  } else if (D.v > 0.0) {
    if (e1 == 0.0) {
      const int mid = c0 > 0.0 ? 2 : 1;
      net.elements.push_back({ElementKind::spring, e0 / c1, 0, mid});
      if (c0 > 0.0) net.elements.push_back({ElementKind::damper, e0 / c0, 2, 1});
    } else if (c0 == 0.0) {
      net.elements.push_back({ElementKind::damper, e1 / c1, 0, 1});
      net.elements.push_back({ElementKind::spring, e0 / c1, 0, 1});
    } else {
      net.elements.push_back({ElementKind::damper, e0 / c0, 0, 2});
      net.elements.push_back({ElementKind::damper, e0 * e1 / D.v, 2, 1});
      net.elements.push_back({ElementKind::spring, e0 * e0 / D.v, 2, 1});
    }
  } else {
    if (c1 == 0.0) {
      if (e0 > 0.0) net.elements.push_back({ElementKind::damper, e0 / c0, 0, 1});
      net.elements.push_back({ElementKind::inerter, e1 / c0, 0, 1});
    } else if (e0 == 0.0) {
      net.elements.push_back({ElementKind::damper, e1 / c1, 0, 2});
      net.elements.push_back({ElementKind::inerter, e1 / c0, 2, 1});
    } else {
      net.elements.push_back({ElementKind::damper, e1 / c1, 0, 2});
      net.elements.push_back({ElementKind::damper, e1 * e0 / -D.v, 2, 1});
      net.elements.push_back({ElementKind::inerter, e1 * e1 / -D.v, 2, 1});
    }
  }
  if (!ratfun_close(impedance_of(net), r, tau_verify))
    throw VerificationError("first-order realization failed the impedance oracle");
  return net;
}

namespace {

// Spring-parallel-inerter block for the pole pair, in series with the
// realized first-order remainder.
Netlist jr_pole_net(const Bicubic& z, double omega1, const SynthOptions& opt) {
  const ImagAxisDecomposition dec =
      decompose_imag_pole(z, omega1, opt.tau_cond, opt.tau_verify);
  Netlist net;
  net.elements.push_back(
      {ElementKind::spring, dec.omega1 * dec.omega1 / (2.0 * dec.K1), 0, 2});
  net.elements.push_back({ElementKind::inerter, 1.0 / (2.0 * dec.K1), 0, 2});
  splice_series(net, realize_first_order(dec.remainder, opt.tau_verify));
  return net;
}

}  // namespace

BoundaryRealization realize_boundary(const Bicubic& zin, const BoundaryClass& cls,
                                     const SynthOptions& opt) {
  if (cls.kind == BoundaryKind::interior)
    throw std::invalid_argument("interior impedance; use the five-element catalog");
  const Bicubic z = zin.normalized ? zin : bicubic_normalize(zin);

  BoundaryRealization out;
  // Origin/infinity coefficient zeros take classification priority, so a
  // coexisting conjugate pair is re-detected here from the factored shape.
  double w_pole = cls.kind == BoundaryKind::pole_on_jR && cls.omega1
                      ? *cls.omega1
                      : jr_pair_frequency(z.d, opt.tau_cond);
  double w_zero = cls.kind == BoundaryKind::zero_on_jR && cls.omega1
                      ? *cls.omega1
                      : jr_pair_frequency(z.a, opt.tau_cond);
  if (cls.kind == BoundaryKind::zero_on_jR) w_pole = 0.0;  // prefer the stated kind

  if (w_pole > 0.0) {
    out.handled = true;
    out.route = "pole_on_jR";
    out.netlist = jr_pole_net(z, w_pole, opt);
  } else if (w_zero > 0.0) {
    // The reciprocal has the pole pair; dualizing the network inverts back.
    out.handled = true;
    out.route = "zero_on_jR via dual";
    out.netlist = transform(jr_pole_net(coeff_transform(z, CoeffTransform::dual),
                                        w_zero, opt),
                            TransformKind::dual);
  } else {
    // All origin/infinity cases reduce to a vanishing constant numerator
    // coefficient, whose five-element catalog this library does not carry.
    switch (cls.kind) {
      case BoundaryKind::zero_at_origin: out.route = "zero_at_origin"; break;
      case BoundaryKind::pole_at_origin:
        out.route = "pole_at_origin -> dual -> zero_at_origin";
        break;
      case BoundaryKind::zero_at_infinity:
        out.route = "zero_at_infinity -> inv -> zero_at_origin";
        break;
      case BoundaryKind::pole_at_infinity:
        out.route = "pole_at_infinity -> gdu -> zero_at_origin";
        break;
      default: out.route = boundary_kind_name(cls.kind); break;
    }
    out.note =
        "reduces to the zero-at-origin class, outside this library's "
        "five-element catalog; realize the transformed function there and map "
        "the network back, or fall back to bott_duffin";
    return out;
  }

  if (!ratfun_close(impedance_of(out.netlist), bicubic_ratfun(z), opt.tau_verify))
    throw VerificationError("boundary realization failed the impedance oracle");
  return out;
}

}  // namespace netsyn
