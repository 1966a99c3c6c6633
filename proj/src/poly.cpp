#include "netsyn/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace netsyn {

namespace {

constexpr double kTiny = 1e-300;

double root_scale(const Poly& p, cplx r) {
  double s = 0.0, pw = 1.0, m = std::abs(r);
  for (double ck : p.c) {
    s += std::abs(ck) * pw;
    pw *= m;
  }
  return std::max(s, kTiny);
}

// One or two Newton steps; keeps the refinement only when it helps.
cplx polish_root(const Poly& p, const Poly& dp, cplx r) {
  for (int it = 0; it < 2; ++it) {
    cplx f = poly_eval(p, r);
    cplx g = poly_eval(dp, r);
    if (std::abs(g) < kTiny) break;
    cplx rn = r - f / g;
    if (std::abs(poly_eval(p, rn)) < std::abs(f))
      r = rn;
    else
      break;
  }
  // Suppress roundoff-sized imaginary parts so real roots stay real.
  if (std::abs(r.imag()) <= 1e-11 * (1.0 + std::abs(r.real()))) r = cplx(r.real(), 0.0);
  return r;
}

std::vector<cplx> companion_roots(const Poly& p) {
  const int n = p.degree();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -p.c[i] / p.c[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()[i];
  return out;
}

double max_residual(const Poly& p, const std::vector<cplx>& roots) {
  double worst = 0.0;
  for (cplx r : roots) worst = std::max(worst, std::abs(poly_eval(p, r)) / root_scale(p, r));
  return worst;
}

std::vector<cplx> cubic_roots_closed(const Poly& p) {
  // Depressed form t^3 + q1 t + q0 with s = t - b/(3a).
  const double a = p.c[3], b = p.c[2], cc = p.c[1], d = p.c[0];
  const double shift = b / (3.0 * a);
  const double q1 = cc / a - shift * shift * 3.0;
  const double q0 = 2.0 * shift * shift * shift - (cc / a) * shift + d / a;
  std::vector<cplx> t(3);
  const double disc = -4.0 * q1 * q1 * q1 - 27.0 * q0 * q0;
  if (disc >= 0.0 && q1 < 0.0) {
    const double m = 2.0 * std::sqrt(-q1 / 3.0);
    double arg = 3.0 * q0 / (q1 * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      t[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
  } else {
    const cplx rad = std::sqrt(cplx(q0 * q0 / 4.0 + q1 * q1 * q1 / 27.0));
    cplx u3 = -q0 / 2.0 + rad;
    if (std::abs(u3) < std::abs(-q0 / 2.0 - rad)) u3 = -q0 / 2.0 - rad;
    const cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx w(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
      const cplx uk = u * std::pow(w, k);
      t[k] = (std::abs(uk) < kTiny) ? cplx(0.0) : uk - q1 / (3.0 * uk);
    }
  }
  for (auto& r : t) r -= shift;
  return t;
}

}  // namespace

double Poly::max_abs() const {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  return m;
}

Poly poly_trim(Poly p, double rel_eps) {
  const double m = p.max_abs();
  const double cut = (m == 0.0) ? 0.0 : rel_eps * m;
  while (!p.c.empty() && std::abs(p.c.back()) <= cut) p.c.pop_back();
  return p;
}

Poly poly_add(const Poly& p, const Poly& q) {
  Poly r;
  r.c.resize(std::max(p.c.size(), q.c.size()), 0.0);
  for (size_t i = 0; i < p.c.size(); ++i) r.c[i] += p.c[i];
  for (size_t i = 0; i < q.c.size(); ++i) r.c[i] += q.c[i];
  return poly_trim(std::move(r));
}

Poly poly_sub(const Poly& p, const Poly& q) { return poly_add(p, poly_scale(q, -1.0)); }

Poly poly_mul(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return Poly{};
  Poly r;
  r.c.assign(p.c.size() + q.c.size() - 1, 0.0);
  for (size_t i = 0; i < p.c.size(); ++i)
    for (size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
  return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& p, double s) {
  if (s == 0.0) return Poly{};
  Poly r = p;
  for (double& x : r.c) x *= s;
  return r;
}

Poly poly_derivative(const Poly& p) {
  Poly r;
  for (size_t k = 1; k < p.c.size(); ++k) r.c.push_back(p.c[k] * static_cast<double>(k));
  return r;
}

cplx poly_eval(const Poly& p, cplx s) {
  cplx acc(0.0);
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double poly_eval(const Poly& p, double s) {
  double acc = 0.0;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Poly poly_deflate_real(const Poly& p, double r) {
  const int n = p.degree();
  if (n < 1) return Poly{};
  Poly q;
  q.c.assign(n, 0.0);
  double carry = p.c[n];
  for (int k = n - 1; k >= 0; --k) {
    q.c[k] = carry;
    carry = p.c[k] + carry * r;
  }
  return poly_trim(std::move(q));
}

Poly poly_deflate_pair(const Poly& p, double re, double im) {
  const double b1 = -2.0 * re, b0 = re * re + im * im;
  const int n = p.degree();
  if (n < 2) return Poly{};
  Poly q;
  q.c.assign(n - 1, 0.0);
  std::vector<double> work = p.c;
  for (int k = n - 2; k >= 0; --k) {
    q.c[k] = work[k + 2];
    work[k + 1] -= b1 * q.c[k];
    work[k] -= b0 * q.c[k];
  }
  return poly_trim(std::move(q));
}

std::vector<cplx> poly_roots(const Poly& p_in, double tau_root) {
  Poly p = poly_trim(p_in);
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("poly_roots: constant polynomial");
  std::vector<cplx> roots;
  if (n == 1) {
    roots = {cplx(-p.c[0] / p.c[1], 0.0)};
  } else if (n == 2) {
    const double a = p.c[2], b = p.c[1], cc = p.c[0];
    const cplx rad = std::sqrt(cplx(b * b - 4.0 * a * cc));
    // Evaluate the large root first to avoid cancellation.
    const cplx q = (b >= 0.0) ? (-b - rad) * 0.5 : (-b + rad) * 0.5;
    if (std::abs(q) > kTiny)
      roots = {q / a, cc / q};
    else
      roots = {cplx(0.0), cplx(0.0)};
  } else if (n == 3) {
    roots = cubic_roots_closed(p);
  } else {
    roots = companion_roots(p);
  }
  const Poly dp = poly_derivative(p);
  for (auto& r : roots) r = polish_root(p, dp, r);
  if (n <= 3 && max_residual(p, roots) > tau_root) {
    auto alt = companion_roots(p);
    for (auto& r : alt) r = polish_root(p, dp, r);
    if (max_residual(p, alt) < max_residual(p, roots)) roots = alt;
  }
  return roots;
}

RatFun ratfun_normalize(RatFun r) {
  r.num = poly_trim(std::move(r.num));
  r.den = poly_trim(std::move(r.den));
  if (r.den.is_zero()) throw std::invalid_argument("ratfun: zero denominator");
  double pivot = 0.0;
  for (double x : r.den.c)
    if (std::abs(x) > std::abs(pivot)) pivot = x;
  const double inv = 1.0 / pivot;
  for (double& x : r.num.c) x *= inv;
  for (double& x : r.den.c) x *= inv;
  return r;
}

double ratfun_distance(const RatFun& x, const RatFun& y) {
  const Poly p = poly_mul(x.num, y.den);
  const Poly q = poly_mul(y.num, x.den);
  const Poly diff = poly_sub(p, q);
  const double scale = std::max(p.max_abs(), q.max_abs());
  if (scale == 0.0) return diff.max_abs() == 0.0 ? 0.0 : 1.0;
  return diff.max_abs() / scale;
}

bool ratfun_close(const RatFun& x, const RatFun& y, double rtol) {
  return ratfun_distance(x, y) <= rtol;
}

RatFun ratfun_reduce(RatFun r, double tau_gcd) {
  r.num = poly_trim(std::move(r.num));
  r.den = poly_trim(std::move(r.den));
  if (r.den.is_zero()) throw std::invalid_argument("ratfun: zero denominator");
  if (r.num.is_zero()) return RatFun(Poly{}, Poly({1.0}));

  // Shared factors of s with exactly-zero coefficients are structural
  // (e.g. nodal determinants); cancel them before root matching, where a
  // multiple root at the origin would be resolved too poorly to pair.
  size_t val = 0;
  while (val < r.num.c.size() && val < r.den.c.size() && r.num.c[val] == 0.0 &&
         r.den.c[val] == 0.0 && val + 1 < r.num.c.size() && val + 1 < r.den.c.size())
    ++val;
  if (val > 0) {
    r.num.c.erase(r.num.c.begin(), r.num.c.begin() + static_cast<long>(val));
    r.den.c.erase(r.den.c.begin(), r.den.c.begin() + static_cast<long>(val));
  }
  if (r.num.degree() < 1 || r.den.degree() < 1) return ratfun_normalize(std::move(r));

  auto rn = poly_roots(r.num);
  auto rd = poly_roots(r.den);
  std::vector<bool> used_d(rd.size(), false), used_n(rn.size(), false);
  Poly num = r.num, den = r.den;
  bool any = false;
  for (size_t i = 0; i < rn.size(); ++i) {
    if (used_n[i]) continue;
    int best = -1;
    double best_dist = 0.0;
    for (size_t j = 0; j < rd.size(); ++j) {
      if (used_d[j]) continue;
      const double dist = std::abs(rn[i] - rd[j]);
      if (best < 0 || dist < best_dist) {
        best = static_cast<int>(j);
        best_dist = dist;
      }
    }
    if (best < 0) continue;
    const cplx mid = (rn[i] + rd[best]) * 0.5;
    if (best_dist > tau_gcd * std::max(1.0, std::abs(mid))) continue;
    used_n[i] = true;
    used_d[best] = true;
    if (std::abs(mid.imag()) <= 1e-9 * (1.0 + std::abs(mid.real()))) {
      num = poly_deflate_real(num, mid.real());
      den = poly_deflate_real(den, mid.real());
    } else {
      // Consume the conjugate partners so one real quadratic removes the pair.
      for (size_t i2 = 0; i2 < rn.size(); ++i2)
        if (!used_n[i2] && std::abs(rn[i2] - std::conj(rn[i])) <=
                               tau_gcd * std::max(1.0, std::abs(mid)) * 2.0) {
          used_n[i2] = true;
          break;
        }
      for (size_t j2 = 0; j2 < rd.size(); ++j2)
        if (!used_d[j2] && std::abs(rd[j2] - std::conj(rd[best])) <=
                               tau_gcd * std::max(1.0, std::abs(mid)) * 2.0) {
          used_d[j2] = true;
          break;
        }
      num = poly_deflate_pair(num, mid.real(), mid.imag());
      den = poly_deflate_pair(den, mid.real(), mid.imag());
    }
    any = true;
  }
  if (!any) return ratfun_normalize(std::move(r));
  RatFun reduced(std::move(num), std::move(den));
  if (reduced.den.is_zero()) return ratfun_normalize(std::move(r));
  // Commit the cancellation only if the reduced function still matches.
  if (ratfun_distance(reduced, r) > 1e-6) return ratfun_normalize(std::move(r));
  return ratfun_normalize(std::move(reduced));
}

RatFun ratfun_add(const RatFun& x, const RatFun& y, double tau_gcd) {
  Poly n = poly_add(poly_mul(x.num, y.den), poly_mul(y.num, x.den));
  Poly d = poly_mul(x.den, y.den);
  return ratfun_reduce(RatFun(std::move(n), std::move(d)), tau_gcd);
}

RatFun ratfun_sub(const RatFun& x, const RatFun& y, double tau_gcd) {
  return ratfun_add(x, ratfun_scale(y, -1.0), tau_gcd);
}

RatFun ratfun_mul(const RatFun& x, const RatFun& y, double tau_gcd) {
  return ratfun_reduce(RatFun(poly_mul(x.num, y.num), poly_mul(x.den, y.den)), tau_gcd);
}

RatFun ratfun_inv(const RatFun& x) {
  if (x.num.is_zero()) throw std::invalid_argument("ratfun_inv: zero function");
  return ratfun_normalize(RatFun(x.den, x.num));
}

RatFun ratfun_scale(const RatFun& x, double s) { return RatFun(poly_scale(x.num, s), x.den); }

}  // namespace netsyn
