#pragma once

#include <Eigen/Dense>

#include "expt/poly.hpp"

namespace expt {

/// Hermitian polynomial phi(z, w) = sum_{i,j} c_ij z^i conj(w)^j with
/// c_ji = conj(c_ij).
///
/// Construction symmetrizes the input as (M + M^H)/2 and rejects inputs
/// whose relative asymmetry exceeds the given tolerance. Trailing all-zero
/// rows/columns are trimmed so that degree() is the true bidegree.
class HermPoly2 {
 public:
  HermPoly2() = default;
  explicit HermPoly2(const Eigen::MatrixXcd& coeff, double asym_tol = 1e-9);

  static HermPoly2 constant(double c);
  /// a(z) * conj(a(w)).
  static HermPoly2 outer(const Poly& a);

  /// Bidegree d; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.rows()) - 1; }
  bool is_zero() const { return c_.size() == 0; }
  const Eigen::MatrixXcd& coeff() const { return c_; }
  /// Relative asymmetry of the matrix that was passed to the constructor.
  double asymmetry() const { return asym_; }

  cplx operator()(cplx z, cplx w) const;
  /// phi_j(z): the coefficient polynomial of conj(w)^j.
  Poly column(int j) const;
  /// phi(z, .) as a polynomial in v = conj(w).
  Poly at_z(cplx z) const;

  HermPoly2 operator+(const HermPoly2& o) const;
  HermPoly2 operator-(const HermPoly2& o) const;
  HermPoly2 operator*(const HermPoly2& o) const;
  HermPoly2 operator*(double s) const;

 private:
  Eigen::MatrixXcd c_;
  double asym_ = 0.0;
};

/// Max entrywise difference relative to max(1, max entry).
double herm_distance(const HermPoly2& a, const HermPoly2& b);

/// Monic gcd in z of the coefficient polynomials phi_d(z), ..., phi_0(z).
Poly principal_divisor(const HermPoly2& phi, double gcd_tol = 1e-10);

struct PrincipalFactorization {
  Poly divisor;          // a(z), monic
  HermPoly2 primitive;   // phi0
};

/// phi = a(z) conj(a(w)) phi0 with phi0 primitive. Throws NumericError
/// ("factorization failed") when the exact divisions leave a residual above
/// recon_tol.
PrincipalFactorization principal_factorization(const HermPoly2& phi, double gcd_tol = 1e-10,
                                               double recon_tol = 1e-9);

bool is_primitive(const HermPoly2& phi, double gcd_tol = 1e-10);

}  // namespace expt
