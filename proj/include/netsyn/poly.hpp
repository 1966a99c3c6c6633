#pragma once

#include <complex>
#include <vector>

namespace netsyn {

using cplx = std::complex<double>;

// Coefficients ascending: c[k] multiplies s^k. Empty vector = zero polynomial.
struct Poly {
  std::vector<double> c;

  Poly() = default;
  explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  double leading() const { return c.empty() ? 0.0 : c.back(); }
  double max_abs() const;
};

// Drops trailing coefficients that are negligible relative to the largest one.
Poly poly_trim(Poly p, double rel_eps = 1e-13);

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_scale(const Poly& p, double s);
Poly poly_derivative(const Poly& p);

cplx poly_eval(const Poly& p, cplx s);
double poly_eval(const Poly& p, double s);

// Quotient of p by (s - r); remainder discarded (caller ensures r is a root).
Poly poly_deflate_real(const Poly& p, double r);
// Quotient of p by (s^2 - 2*re*s + re^2 + im^2) for a conjugate root pair.
Poly poly_deflate_pair(const Poly& p, double re, double im);

// All complex roots. Closed-form through degree 3 (with companion-matrix
// fallback when ill-conditioned), companion matrix beyond. Each root is
// Newton-polished; |p(r)| <= tau_root * sum_k |c_k||r|^k on return.
// Throws std::invalid_argument for constant or zero input.
std::vector<cplx> poly_roots(const Poly& p, double tau_root = 1e-9);

// num/den with den not identically zero. Equality is cross-multiplied, so the
// representation is invariant under joint scaling of num and den.
struct RatFun {
  Poly num;
  Poly den;

  RatFun() : den(Poly({1.0})) {}
  RatFun(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {}

  bool is_zero() const { return num.is_zero(); }
  cplx eval(cplx s) const { return poly_eval(num, s) / poly_eval(den, s); }
};

// Scales num and den jointly so the largest-magnitude den coefficient is +1.
RatFun ratfun_normalize(RatFun r);

// Cancels num/den root pairs that agree within tau_gcd (relative), verifying
// the cross-multiplied identity at sample points before committing.
RatFun ratfun_reduce(RatFun r, double tau_gcd = 1e-7);

RatFun ratfun_add(const RatFun& x, const RatFun& y, double tau_gcd = 1e-7);
RatFun ratfun_sub(const RatFun& x, const RatFun& y, double tau_gcd = 1e-7);
RatFun ratfun_mul(const RatFun& x, const RatFun& y, double tau_gcd = 1e-7);
RatFun ratfun_inv(const RatFun& x);  // throws on the zero function
RatFun ratfun_scale(const RatFun& x, double s);

// Cross-multiplied coefficientwise comparison: max|n_x d_y - n_y d_x| against
// rtol * max coefficient magnitude of the two products.
bool ratfun_close(const RatFun& x, const RatFun& y, double rtol);
// The relative defect used by ratfun_close (0 = identical).
double ratfun_distance(const RatFun& x, const RatFun& y);

}  // namespace netsyn
