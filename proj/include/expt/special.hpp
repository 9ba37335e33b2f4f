#pragma once

#include <utility>
#include <vector>

#include "expt/common.hpp"

namespace expt {

/// Gamma function by the Lanczos approximation (g = 7, nine terms) with
/// reflection below 1/2. Throws Error at the poles 0, -1, -2, ...
double gamma_fn(double x);
/// log Gamma(x) for x > 0.
double lgamma_fn(double x);
/// Rising factorial (a)_k = a (a+1) ... (a+k-1).
double pochhammer(double a, int k);
/// Gamma(a + x) / Gamma(a) for a, a + x > 0.
double pochhammer_ratio(double a, double x);

/// Nodes and weights for the integral of g(u) u^(p-1) (1-u)^(q-1) over
/// [0, 1], by Golub-Welsch on the Jacobi recurrence. Weights sum to B(p, q).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_jacobi01(int n, double p, double q);

struct F2Params {
  double a = 1.0, b = 1.0, bp = 1.0, c = 1.5, cp = 1.5;
  cplx x, y;
};

/// Double series of F2 summed over anti-diagonals k + m = const with
/// compensated summation. Requires |x| + |y| < 0.98.
cplx appell_f2_series(const F2Params& P, double tol = 1e-15);

/// Euler-type double integral with prefactor
/// Gamma(c)Gamma(c') / (Gamma(b)Gamma(b')Gamma(c-b)Gamma(c'-b')), evaluated by
/// tensor Gauss-Jacobi rules of increasing size. Requires b, b', c-b, c'-b' > 0
/// and 1 - xu - yv off the closed negative real axis on the unit square.
cplx appell_f2_integral(const F2Params& P, double tol = 1e-13);

struct F2Transformed {
  F2Params params;
  cplx prefactor;
};

/// F2(a;b,b';c,c';x,y) = (1-x-y)^(-a) F2(a;c-b,c'-b';c,c';x/(x+y-1),y/(x+y-1)).
F2Transformed f2_transform(const F2Params& P);

/// Series when the arguments are well inside the convergence domain, the
/// integral otherwise.
cplx appell_f2(const F2Params& P, double tol = 1e-14);

/// H(s,t) = integral over [0,s]x[0,t] of 1/(1+x^2+y^2), reduced to one
/// dimension with the inner antiderivative atan(t/r)/r, r = sqrt(1+x^2).
double hubbell_integral(double s, double t, double tol = 1e-14);

/// -1/2 log(1 - 1/((z^2-1)(conj(w)^2-1))).
cplx bernoulli_s_odd(cplx z, cplx w);
/// Sum of M_{2k+1,2m+1} z^(-2k-2) conj(w)^(-2m-2) over shells k+m < shells.
cplx bernoulli_s_odd_series(cplx z, cplx w, int shells);

enum class SEvenMethod { f2, hubbell, series };

/// Sum of M_{2k,2m} z^(-2k-1) conj(w)^(-2m-1). The Hubbell route needs real
/// z, w; the series route sums 400 shells unless stopped earlier by tol.
cplx bernoulli_s_even(cplx z, cplx w, SEvenMethod method = SEvenMethod::f2);
cplx bernoulli_s_even_series(cplx z, cplx w, int shells);

/// The Hubbell arguments s, t for given z, w.
std::pair<cplx, cplx> bernoulli_hubbell_args(cplx z, cplx w);

/// sqrt(1 - 1/((z^2-1)(conj(w)^2-1))) exp(-S_even) on |z|, |w| > sqrt(2).
cplx bernoulli_exp_transform(cplx z, cplx w, SEvenMethod method = SEvenMethod::f2);

/// 2 asin(1/z) / (pi sqrt(1 - 1/z^2)).
cplx bernoulli_cauchy(cplx z);
/// Sum of M_{2k,0} / z^(2k+1) for k < terms.
cplx bernoulli_cauchy_series(cplx z, int terms);

enum class RoseRoute { series, transformed, substituted };

/// S_lambda(x, y) for the rose |z^n - 1| < 1 with lambda_n = (1+lambda)/n:
/// Gamma(2 l)/Gamma(1+l)^2 F2(2l; 1,1; l+1,l+1; x,y). The transformed route
/// applies the fractional linear transformation and integrates by
/// Gauss-Jacobi; the substituted route integrates the form after
/// u = xi^(1/l), v = eta^(1/l) by Gauss-Legendre.
cplx rose_s_lambda(int n, int lambda, cplx x, cplx y, RoseRoute route = RoseRoute::series);

}  // namespace expt
