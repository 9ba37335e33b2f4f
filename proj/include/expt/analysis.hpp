#pragma once

#include <optional>
#include <vector>

#include "expt/herm.hpp"
#include "expt/transform.hpp"

namespace expt {

struct RegularityWitness {
  cplx z0;
  /// Index of the highest coefficient polynomial of phi (resp. psi) that does
  /// not vanish at z0; -1 when all of them vanish.
  int k = -1;
  int j = -1;
  bool pass = false;
};

struct RegularityReport {
  int deg_z_phi = -1, deg_w_phi = -1, deg_z_psi = -1, deg_w_psi = -1;
  bool degrees_match = false;
  bool leading_match = false;
  std::vector<RegularityWitness> witnesses;
  bool verdict = false;
};

/// Degree, leading-coefficient and degeneracy-matching conditions of a
/// regular rational function. The probes should lie in the component U the
/// function is meant to represent; the degeneracy condition is only checked
/// there.
RegularityReport regular_rational_check(const HermitianRational& E, const std::vector<cplx>& probes,
                                        double tol = 1e-9);

struct SeparabilityResult {
  bool separable = false;
  /// Monic chi with den = scale * chi(z) conj(chi(w)) when separable.
  std::optional<Poly> chi;
  double scale = 0.0;
  /// sigma_2 / sigma_1 of the denominator matrix.
  double rank_gap = 0.0;
};

/// Rank-one test on the denominator coefficient matrix.
SeparabilityResult separability_test(const HermitianRational& E, double tol = 1e-9);

/// f_z(zeta) = A(zeta) - z B(zeta).
Poly fz_polynomial(const RationalFn& f, cplx z);

/// Res_xi(f_z(xi), a(xi)) as a polynomial in z, of degree at most deg a.
Poly fz_resultant(const RationalFn& f, const Poly& a);

/// Res_xi(f_z(xi), Res_u(conj(f_w)(u), phi(xi, u))) as a Hermitian
/// polynomial in (z, conj(w)), u standing for conj(eta). Both resultants use
/// the generic degrees n = deg f and n deg phi, and the result is recovered
/// by discrete Fourier interpolation on roots of unity. Coefficients below
/// 1e-12 of the largest are dropped. Throws NumericError when the result is
/// not Hermitian to 1e-9.
HermPoly2 nested_resultant(const RationalFn& f, const HermPoly2& phi);

struct FitReport {
  int d = 0;
  /// RMS of |phi - E psi| over the samples, with z, w scaled by the sample
  /// radius and the common border monic.
  double residual = 0.0;
  Eigen::MatrixXcd phi;
  Eigen::MatrixXcd psi;
  int unknowns = 0;
};

/// Least-squares fits E ~ phi / psi of bidegree d = 1..dmax in the form
/// (chi chi* + alpha) / (chi chi* + beta): the top row and column are shared
/// and the z^d conj(w)^d coefficient is 1. Throws NumericError("degenerate
/// sample set") when the samples cannot separate the monomials z^i conj(w)^j,
/// i, j <= dmax, or are fewer than the unknowns.
std::vector<FitReport> rationality_probe(const std::vector<TransformSample>& samples, int dmax);

/// m x m exterior pairs on the circle |z| = |w| = radius_factor * outer radius,
/// m = round(sqrt(count)), evaluated by one batched quadrature.
std::vector<TransformSample> probe_samples(const DomainSpec& d, int count = 900, double radius_factor = 1.5,
                                           const QuadOptions& opts = {});

}  // namespace expt
