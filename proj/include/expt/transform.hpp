#pragma once

#include <string>
#include <vector>

#include "expt/domain.hpp"
#include "expt/herm.hpp"
#include "expt/moments.hpp"
#include "expt/quadrature.hpp"

namespace expt {

enum class Method { quadrature, moments, closed_form, pushforward };

std::string method_name(Method m);

struct TransformSample {
  cplx z;
  cplx w;
  cplx value;
  Method method = Method::quadrature;
  /// Heuristic: the adaptive quadrature estimate, the last moment shell, or
  /// zero for closed forms.
  double est_error = 0.0;
};

struct Estimate {
  cplx value;
  double est_error = 0.0;
};

/// exp of -(1/pi) * integral over D of dx dy / ((zeta - z)(conj(zeta) - conj(w))).
/// Both points must lie outside the closure of D.
TransformSample exp_transform_quadrature(const DomainSpec& d, cplx z, cplx w, const QuadOptions& opts = {});

/// All pairs (zs[i], ws[j]) from a single vector-valued quadrature.
/// Entry [i][j] holds the pair (zs[i], ws[j]).
std::vector<std::vector<TransformSample>> exp_transform_quadrature_grid(const DomainSpec& d,
                                                                        const std::vector<cplx>& zs,
                                                                        const std::vector<cplx>& ws,
                                                                        const QuadOptions& opts = {});

/// -(1/pi) * integral over D of dx dy / (zeta - z) for z outside the closure.
Estimate cauchy_transform(const DomainSpec& d, cplx z, const QuadOptions& opts = {});

/// Closed-form Cauchy transform of disks, circular domains and the
/// Bernoulli lemniscate in the unbounded complement component.
cplx cauchy_closed(const DomainSpec& d, cplx z);

/// exp(-sum M_pq / (z^(p+1) conj(w)^(q+1))) over shells p + q <= N.
/// shells = 0 sums until three consecutive shells fall below tol / 10 or the
/// table is exhausted; otherwise exactly that many shells (at most maxdeg+1).
/// Throws RegionError("outside convergence region") when |z| or |w| does not
/// exceed the table radius or when the shells keep growing.
TransformSample exp_transform_moments(const MomentTable& t, cplx z, cplx w, int shells = 0, double tol = 1e-14);

/// The four branches of the disk transform, by membership of z and w.
/// Throws RegionError("pole of closed form") at a vanishing denominator and
/// RegionError for points on the circle.
cplx disk_transform(cplx a, double R, cplx z, cplx w);

/// E_D0 / prod E_Di. Factors (z - w) and conj(z - w) from the interior
/// branches are counted and cancelled exactly, so z = w inside a hole works.
cplx circular_domain_transform(const CircularDomain& d, cplx z, cplx w);
cplx annulus_transform(double r, double R, cplx z, cplx w);

/// Four-branch ellipse transform written with the Schwarz functions S+-.
cplx ellipse_transform(double a, double b, cplx z, cplx w);

/// Closed form for any domain that has one (circles, ellipses, the
/// Bernoulli sublevel set in its unbounded complement component). Throws
/// RegionError when there is none at (z, w).
cplx exp_transform_closed(const DomainSpec& d, cplx z, cplx w);

/// E(z, w) = num(z, w) / den(z, w) on one component of the complement.
struct HermitianRational {
  HermPoly2 num;
  HermPoly2 den;
  std::string region = "unbounded";

  cplx operator()(cplx z, cplx w) const;
};

/// The rational exterior transform of a disk, annulus or circular domain in
/// the unbounded complement component.
HermitianRational exterior_rational(const DomainSpec& d);

/// E_2(z, w)^n = Res*_xi(f(xi) - z, Res*_u(conj(f)(u) - conj(w), E1(xi, .)))
/// where u stands for conj(eta) and n = deg f. Throws Error when either
/// meromorphic resultant is undefined.
cplx pushforward_transform(const HermitianRational& E1, const RationalFn& f, cplx z, cplx w);

/// The n-th root of pushforward_transform continued from E = 1 along the
/// rays s*z, s*w as s decreases from a large value to 1.
cplx pushforward_root(const HermitianRational& E1, const RationalFn& f, cplx z, cplx w, int steps = 200);

/// The same identity with polynomial resultants of numerator and
/// denominator, as a quotient of Hermitian polynomials in (z, conj(w)).
HermitianRational pushforward_symbolic(const HermitianRational& E1, const RationalFn& f);

}  // namespace expt
