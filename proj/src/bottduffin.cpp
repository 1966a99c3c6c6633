#include "netsyn/bottduffin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "netsyn/boundary.hpp"
#include "netsyn/pr.hpp"

namespace netsyn {

namespace {

// A root counts as on-axis only well below the spacing of genuinely interior
// fixtures, whose poles can sit at 1e-9 relative from the axis.
constexpr double kAxisRel = 1e-12;
constexpr double kCoeffRel = 1e-12;

int max_node(const Netlist& n) {
  int m = 1;
  for (const auto& e : n.elements) m = std::max({m, e.i, e.j});
  return m;
}

// Empty operands mean "absent": a short when chained, an open when shunted.
Netlist series_join(const Netlist& a, const Netlist& b) {
  if (a.elements.empty()) return b;
  if (b.elements.empty()) return a;
  Netlist out = a;
  const int j = max_node(a) + 1;
  for (auto& e : out.elements) {
    if (e.i == 1) e.i = j;
    if (e.j == 1) e.j = j;
  }
  for (Element e : b.elements) {
    auto remap = [&](int v) { return v == 0 ? j : (v == 1 ? 1 : j + v - 1); };
    e.i = remap(e.i);
    e.j = remap(e.j);
    out.elements.push_back(e);
  }
  return out;
}

Netlist parallel_join(const Netlist& a, const Netlist& b) {
  if (a.elements.empty()) return b;
  if (b.elements.empty()) return a;
  Netlist out = a;
  const int base = max_node(a);
  for (Element e : b.elements) {
    auto remap = [&](int v) { return v <= 1 ? v : base + v - 1; };
    e.i = remap(e.i);
    e.j = remap(e.j);
    out.elements.push_back(e);
  }
  return out;
}

RatFun tidy(RatFun r, double tau_gcd) {
  r.num = poly_trim(std::move(r.num));
  r.den = poly_trim(std::move(r.den));
  if (r.num.is_zero()) return RatFun(Poly(), Poly({1.0}));
  return ratfun_normalize(ratfun_reduce(std::move(r), tau_gcd));
}

// Drops the constant term (known to be negligible) and shifts down: p / s.
Poly shift_down(const Poly& p) {
  Poly q;
  if (p.c.size() > 1) q.c.assign(p.c.begin() + 1, p.c.end());
  return q;
}

double on_axis_pair(const Poly& p) {
  if (p.degree() < 2) return 0.0;
  for (const cplx& root : poly_roots(p))
    if (root.imag() > 0.0 && std::abs(root.real()) <= kAxisRel * std::abs(root))
      return std::abs(root);
  return 0.0;
}

// Real residue of num/den at a simple pole pair +/- j*w.
double pair_residue(const Poly& num, const Poly& den, double w, const char* what) {
  const cplx res = poly_eval(num, cplx(0.0, w)) / poly_eval(poly_derivative(den), cplx(0.0, w));
  if (!(std::abs(res.imag()) <= 1e-6 * std::abs(res)) || !(res.real() > 0.0)) {
    std::ostringstream msg;
    msg << "not positive-real: residue of " << what << " at omega=" << w
        << " is " << res.real() << (res.imag() < 0 ? "" : "+") << res.imag() << "j";
    throw std::domain_error(msg.str());
  }
  return res.real();
}

// f = 2K s/(s^2+w^2) + remainder; fragment is the series resonant pair.
std::pair<Netlist, RatFun> series_pair_extract(const RatFun& f, double w, double tau_gcd) {
  const double K = pair_residue(f.num, f.den, w, "impedance pole pair");
  Netlist block;
  block.elements.push_back({ElementKind::spring, w * w / (2.0 * K), 0, 1});
  block.elements.push_back({ElementKind::inerter, 1.0 / (2.0 * K), 0, 1});
  const Poly denr = poly_deflate_pair(f.den, 0.0, w);
  const Poly numr = poly_deflate_pair(
      poly_trim(poly_sub(f.num, poly_mul(Poly({0.0, 2.0 * K}), denr))), 0.0, w);
  return {std::move(block), tidy(RatFun(numr, denr), tau_gcd)};
}

// 1/f = 2K s/(s^2+w^2) + rest; fragment is the chain shunted across the rest.
std::pair<Netlist, RatFun> shunt_pair_extract(const RatFun& f, double w, double tau_gcd) {
  const double K = pair_residue(f.den, f.num, w, "admittance pole pair");
  Netlist chain;
  chain.elements.push_back({ElementKind::spring, 2.0 * K, 0, 2});
  chain.elements.push_back({ElementKind::inerter, 2.0 * K / (w * w), 2, 1});
  const Poly numr = poly_deflate_pair(f.num, 0.0, w);
  const Poly denr = poly_deflate_pair(
      poly_trim(poly_sub(f.den, poly_mul(Poly({0.0, 2.0 * K}), numr))), 0.0, w);
  return {std::move(chain), tidy(RatFun(numr, denr), tau_gcd)};
}

}  // namespace

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::jr_pole_removal: return "jr_pole_removal";
    case StepKind::jr_zero_removal: return "jr_zero_removal";
    case StepKind::min_resistance_shift: return "min_resistance_shift";
    case StepKind::richards_cycle: return "richards_cycle";
  }
  return "jr_pole_removal";
}

FosterResult foster_extract(const RatFun& rin, double tau_gcd) {
  FosterResult out;
  RatFun r = tidy(rin, tau_gcd);
  for (int guard = 0;; ++guard) {
    if (guard > 16) throw std::runtime_error("foster extraction did not converge");
    if (r.num.is_zero()) break;
    const int dn = r.num.degree(), dd = r.den.degree();
    if (dn > dd + 1 || dd > dn + 1)
      throw std::domain_error("not positive-real: degree gap above one");

    if (dn == dd + 1) {  // pole at infinity: series element with impedance H*s
      const double H = r.num.leading() / r.den.leading();
      if (!(H > 0.0)) throw std::domain_error("not positive-real: slope at infinity");
      Netlist frag;
      frag.elements.push_back({ElementKind::spring, 1.0 / H, 0, 1});
      r = tidy(RatFun(poly_sub(r.num, poly_mul(Poly({0.0, H}), r.den)), r.den), tau_gcd);
      out.steps.push_back({StepKind::jr_pole_removal, std::move(frag), r});
      continue;
    }
    if (dd == dn + 1) {  // zero at infinity: shunt element with admittance H*s
      const double H = r.den.leading() / r.num.leading();
      if (!(H > 0.0)) throw std::domain_error("not positive-real: slope at infinity");
      Netlist frag;
      frag.elements.push_back({ElementKind::inerter, H, 0, 1});
      r = tidy(RatFun(r.num, poly_sub(r.den, poly_mul(Poly({0.0, H}), r.num))), tau_gcd);
      out.steps.push_back({StepKind::jr_zero_removal, std::move(frag), r});
      continue;
    }
    const bool num0 = std::abs(r.num.c[0]) <= kCoeffRel * r.num.max_abs();
    const bool den0 = std::abs(r.den.c[0]) <= kCoeffRel * r.den.max_abs();
    if (num0 && den0) throw std::domain_error("not reduced: common factor at the origin");
    if (den0) {  // pole at the origin: series element with impedance A/s
      const Poly denq = shift_down(r.den);
      const double A = poly_eval(r.num, 0.0) / poly_eval(denq, 0.0);
      if (!(A > 0.0)) throw std::domain_error("not positive-real: residue at origin");
      Netlist frag;
      frag.elements.push_back({ElementKind::inerter, 1.0 / A, 0, 1});
      r = tidy(RatFun(shift_down(poly_trim(poly_sub(r.num, poly_scale(denq, A)))), denq),
               tau_gcd);
      out.steps.push_back({StepKind::jr_pole_removal, std::move(frag), r});
      continue;
    }
    if (num0) {  // zero at the origin: shunt element with admittance A/s
      const Poly numq = shift_down(r.num);
      const double A = poly_eval(r.den, 0.0) / poly_eval(numq, 0.0);
      if (!(A > 0.0)) throw std::domain_error("not positive-real: residue at origin");
      Netlist frag;
      frag.elements.push_back({ElementKind::spring, A, 0, 1});
      r = tidy(RatFun(numq, shift_down(poly_trim(poly_sub(r.den, poly_scale(numq, A))))),
               tau_gcd);
      out.steps.push_back({StepKind::jr_zero_removal, std::move(frag), r});
      continue;
    }
    if (const double w = on_axis_pair(r.den); w > 0.0) {
      auto [frag, rest] = series_pair_extract(r, w, tau_gcd);
      r = std::move(rest);
      out.steps.push_back({StepKind::jr_pole_removal, std::move(frag), r});
      continue;
    }
    if (const double w = on_axis_pair(r.num); w > 0.0) {
      auto [frag, rest] = shunt_pair_extract(r, w, tau_gcd);
      r = std::move(rest);
      out.steps.push_back({StepKind::jr_zero_removal, std::move(frag), r});
      continue;
    }
    break;
  }
  out.remainder = std::move(r);
  return out;
}

namespace {

struct ScanResult {
  double R = 0.0;
  double omega0 = 0.0;
  bool interior = false;
};

double re_at(const RatFun& r, double w) { return r.eval(cplx(0.0, w)).real(); }

// Coarse log-spaced scan over the pole/zero window, golden-section refined.
ScanResult min_re_scan(const RatFun& r) {
  const double r0 = poly_eval(r.num, 0.0) / poly_eval(r.den, 0.0);
  const double rinf = r.num.leading() / r.den.leading();
  double lo = 1e300, hi = 0.0;
  for (const Poly* p : {&r.num, &r.den}) {
    if (p->degree() < 1) continue;
    for (const cplx& root : poly_roots(*p)) {
      const double m = std::abs(root);
      if (m > 0.0) {
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
    }
  }
  if (!(hi > 0.0)) return {std::min(r0, rinf), 0.0, false};
  lo /= 100.0;
  hi *= 100.0;

  const int n = 10000;
  const double step = std::log(hi / lo) / (n - 1);
  int best = 0;
  double bre = 1e300;
  for (int i = 0; i < n; ++i) {
    const double re = re_at(r, lo * std::exp(i * step));
    if (re < bre) {
      bre = re;
      best = i;
    }
  }
  const double emin = std::min(r0, rinf);
  if (best == 0 || best == n - 1) return {std::min(emin, bre), 0.0, false};

  double t0 = std::log(lo) + (best - 1) * step, t3 = t0 + 2.0 * step;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double t1 = t3 - gr * (t3 - t0), t2 = t0 + gr * (t3 - t0);
  double f1 = re_at(r, std::exp(t1)), f2 = re_at(r, std::exp(t2));
  while (t3 - t0 > 1e-12) {
    if (f1 < f2) {
      t3 = t2; t2 = t1; f2 = f1;
      t1 = t3 - gr * (t3 - t0);
      f1 = re_at(r, std::exp(t1));
    } else {
      t0 = t1; t1 = t2; f1 = f2;
      t2 = t0 + gr * (t3 - t0);
      f2 = re_at(r, std::exp(t2));
    }
  }
  const double wmin = std::exp(0.5 * (t0 + t3));
  const double rmin = re_at(r, wmin);
  if (emin <= rmin * (1.0 + 1e-9)) return {emin, 0.0, false};
  return {rmin, wmin, true};
}

// Positive k solving m(k) = target(k) by bracketing and log-space bisection.
template <class F>
double solve_k(const RatFun& m, double omega0, F target, bool rising) {
  auto g = [&](double k) {
    return poly_eval(m.num, k) / poly_eval(m.den, k) - target(k);
  };
  // rising: g > 0 near 0 and eventually negative; falling: the reverse.
  double lo = omega0, hi = omega0;
  const double want_lo = rising ? 1.0 : -1.0;
  for (int i = 0; i < 600 && g(lo) * want_lo <= 0.0; ++i) lo /= 2.0;
  for (int i = 0; i < 600 && g(hi) * want_lo >= 0.0; ++i) hi *= 2.0;
  if (!(g(lo) * want_lo > 0.0) || !(g(hi) * want_lo < 0.0)) {
    std::ostringstream msg;
    msg << "transform parameter not bracketed near omega0=" << omega0;
    throw std::runtime_error(msg.str());
  }
  double tl = std::log(lo), th = std::log(hi);
  for (int i = 0; i < 200; ++i) {
    const double tm = 0.5 * (tl + th);
    (g(std::exp(tm)) * want_lo > 0.0 ? tl : th) = tm;
  }
  return std::exp(0.5 * (tl + th));
}

}  // namespace

RichardsResult richards_cycle(const RatFun& rin, const SynthOptions& opt) {
  RatFun r = tidy(rin, opt.tau_gcd);
  const int n = std::max(r.num.degree(), r.den.degree());
  if (n < 1) throw std::invalid_argument("degree must be at least one");

  RichardsResult out;
  const ScanResult scan = min_re_scan(r);
  const double scale = std::max(std::abs(poly_eval(r.num, 0.0) / poly_eval(r.den, 0.0)),
                                std::abs(r.num.leading() / r.den.leading()));
  if (scan.R < -1e-9 * scale)
    throw std::domain_error("not positive-real: negative resistance minimum");
  out.R = std::max(scan.R, 0.0);
  out.omega0 = scan.omega0;
  if (out.R > 1e-11 * scale) {
    out.shift.elements.push_back({ElementKind::damper, 1.0 / out.R, 0, 1});
    out.shifted = tidy(
        RatFun(poly_sub(r.num, poly_scale(r.den, out.R)), r.den), opt.tau_gcd);
  } else {
    out.R = 0.0;
    out.shifted = r;
  }
  if (!scan.interior) return out;  // endpoint minimum: shift alone, no cycle

  const RatFun& m = out.shifted;
  const cplx mw = m.eval(cplx(0.0, scan.omega0));
  out.X = mw.imag();
  // Compare against the local magnitude: the shift put Re near zero here, so
  // a relatively tiny imaginary part means the zero landed on the axis.
  if (std::abs(out.X) <= 1e-9 * (std::abs(mw) + out.R)) return out;

  // Pick k so the transformed function gains a zero pair (X > 0) or a pole
  // pair (X < 0) at omega0, then lose it again to drop the degree.
  const double X = out.X, w0 = scan.omega0;
  out.k = X > 0.0
              ? solve_k(m, w0, [&](double k) { return k * X / w0; }, true)
              : solve_k(m, w0, [&](double k) { return -w0 * X / k; }, false);
  const double k = out.k;
  const double mk = poly_eval(m.num, k) / poly_eval(m.den, k);

  const RatFun W =
      tidy(RatFun(poly_sub(poly_scale(m.num, k), poly_mul(Poly({0.0, mk}), m.den)),
                  poly_sub(poly_scale(m.den, k * mk), poly_mul(Poly({0.0, 1.0}), m.num))),
           opt.tau_gcd);
  const RatFun W1 = ratfun_scale(W, mk);
  const RatFun W2 = tidy(ratfun_scale(ratfun_inv(W), mk), opt.tau_gcd);

  out.branch[0].reactance.elements.push_back({ElementKind::spring, k / mk, 0, 1});
  out.branch[1].reactance.elements.push_back({ElementKind::inerter, 1.0 / (k * mk), 0, 1});
  if (X > 0.0) {
    auto [fragA, remA] = shunt_pair_extract(W1, w0, opt.tau_gcd);
    out.branch[0].resonant = std::move(fragA);
    out.branch[0].resonant_series = false;
    out.branch[0].remainder = std::move(remA);
    auto [fragB, remB] = series_pair_extract(W2, w0, opt.tau_gcd);
    out.branch[1].resonant = std::move(fragB);
    out.branch[1].resonant_series = true;
    out.branch[1].remainder = std::move(remB);
  } else {
    auto [fragA, remA] = series_pair_extract(W1, w0, opt.tau_gcd);
    out.branch[0].resonant = std::move(fragA);
    out.branch[0].resonant_series = true;
    out.branch[0].remainder = std::move(remA);
    auto [fragB, remB] = shunt_pair_extract(W2, w0, opt.tau_gcd);
    out.branch[1].resonant = std::move(fragB);
    out.branch[1].resonant_series = false;
    out.branch[1].remainder = std::move(remB);
  }
  for (const auto& b : out.branch) {
    const int nb = std::max(b.remainder.num.degree(), b.remainder.den.degree());
    if (nb >= n) {
      std::ostringstream msg;
      msg << "cycle did not reduce the degree (" << n << " -> " << nb
          << ") at omega0=" << w0 << ", k=" << k;
      throw std::runtime_error(msg.str());
    }
  }
  out.cycled = true;
  return out;
}

namespace {

Netlist bott_duffin_impl(const RatFun& rin, const SynthOptions& opt,
                         std::vector<SynthesisStep>* trace, int depth) {
  if (depth > 8) throw std::runtime_error("recursion exceeded depth 8");
  const RatFun r = tidy(rin, opt.tau_gcd);
  if (r.num.is_zero()) return {};

  FosterResult fr = foster_extract(r, opt.tau_gcd);
  const RatFun& m = fr.remainder;
  if (trace)
    for (const auto& st : fr.steps) trace->push_back(st);

  Netlist core;
  const int n = std::max(m.num.degree(), m.den.degree());
  if (m.num.is_zero()) {
    // lossless input, fully consumed by the preamble
  } else if (n == 0) {
    const double v = m.num.c[0] / m.den.c[0];
    if (!(v > 0.0)) throw std::domain_error("not positive-real: negative constant");
    core.elements.push_back({ElementKind::damper, 1.0 / v, 0, 1});
  } else if (n == 1) {
    core = realize_first_order(m, opt.tau_verify);
  } else {
    const RichardsResult rc = richards_cycle(m, opt);
    if (trace && !rc.shift.elements.empty())
      trace->push_back({StepKind::min_resistance_shift, rc.shift, rc.shifted});
    if (!rc.cycled) {
      // The shift planted a boundary zero; the recursion's preamble takes it.
      const int ns = std::max(rc.shifted.num.degree(), rc.shifted.den.degree());
      if (rc.shift.elements.empty() && ns >= n)
        throw std::runtime_error("minimum shift made no progress");
      core = series_join(rc.shift, bott_duffin_impl(rc.shifted, opt, trace, depth + 1));
    } else {
      Netlist sides[2];
      for (int i = 0; i < 2; ++i) {
        const RichardsBranch& b = rc.branch[i];
        if (trace)
          trace->push_back({StepKind::richards_cycle,
                            series_join(b.reactance, b.resonant), b.remainder});
        const Netlist rem = bott_duffin_impl(b.remainder, opt, trace, depth + 1);
        const Netlist sub = b.resonant_series ? series_join(b.resonant, rem)
                                              : parallel_join(b.resonant, rem);
        sides[i] = series_join(b.reactance, sub);
      }
      core = series_join(rc.shift, parallel_join(sides[0], sides[1]));
    }
  }

  Netlist net = std::move(core);
  for (auto it = fr.steps.rbegin(); it != fr.steps.rend(); ++it)
    net = it->kind == StepKind::jr_pole_removal ? series_join(it->extracted, net)
                                                : parallel_join(it->extracted, net);
  if (net.elements.empty()) throw std::runtime_error("empty composition");
  for (const auto& e : net.elements)
    if (!(e.value > 0.0) || !std::isfinite(e.value))
      throw VerificationError("element value not positive and finite");
  if (!ratfun_close(impedance_of(net, opt.tau_gcd), r, opt.tau_verify))
    throw VerificationError("composition failed the impedance oracle");
  return net;
}

}  // namespace

Netlist bott_duffin(const RatFun& r, const SynthOptions& opt,
                    std::vector<SynthesisStep>* trace) {
  return bott_duffin_impl(r, opt, trace, 0);
}

}  // namespace netsyn
