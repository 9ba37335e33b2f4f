#include "expt/herm.hpp"

#include <algorithm>
#include <cmath>

namespace expt {

namespace {

Eigen::MatrixXcd trimmed(const Eigen::MatrixXcd& m) {
  Eigen::Index n = m.rows();
  while (n > 0) {
    const bool zero_row = (m.row(n - 1).head(n).array() == cplx{}).all();
    const bool zero_col = (m.col(n - 1).head(n).array() == cplx{}).all();
    if (!(zero_row && zero_col)) break;
    --n;
  }
  return m.topLeftCorner(n, n);
}

}  // namespace

HermPoly2::HermPoly2(const Eigen::MatrixXcd& coeff, double asym_tol) {
  if (coeff.rows() != coeff.cols()) throw Error("Hermitian polynomial needs a square coefficient matrix");
  if (coeff.size() == 0) return;
  const double scale = coeff.cwiseAbs().maxCoeff();
  const double diff = (coeff - coeff.adjoint()).cwiseAbs().maxCoeff();
  asym_ = scale > 0.0 ? diff / scale : 0.0;
  if (asym_ > asym_tol) throw NumericError("coefficient matrix is not Hermitian");
  c_ = trimmed(0.5 * (coeff + coeff.adjoint()));
}

HermPoly2 HermPoly2::constant(double c) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = c;
  return HermPoly2(m);
}

HermPoly2 HermPoly2::outer(const Poly& a) {
  const int n = a.degree();
  if (n < 0) return {};
  Eigen::MatrixXcd m(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) m(i, j) = a[i] * std::conj(a[j]);
  return HermPoly2(m);
}

cplx HermPoly2::operator()(cplx z, cplx w) const {
  const cplx v = std::conj(w);
  cplx acc{};
  for (Eigen::Index i = c_.rows() - 1; i >= 0; --i) {
    cplx row{};
    for (Eigen::Index j = c_.cols() - 1; j >= 0; --j) row = row * v + c_(i, j);
    acc = acc * z + row;
  }
  return acc;
}

Poly HermPoly2::column(int j) const {
  if (j < 0 || j >= c_.cols()) return {};
  std::vector<cplx> v(static_cast<std::size_t>(c_.rows()));
  for (Eigen::Index i = 0; i < c_.rows(); ++i) v[static_cast<std::size_t>(i)] = c_(i, j);
  return Poly(std::move(v));
}

Poly HermPoly2::at_z(cplx z) const {
  std::vector<cplx> v(static_cast<std::size_t>(c_.cols()), cplx{});
  for (Eigen::Index j = 0; j < c_.cols(); ++j) {
    cplx acc{};
    for (Eigen::Index i = c_.rows() - 1; i >= 0; --i) acc = acc * z + c_(i, j);
    v[static_cast<std::size_t>(j)] = acc;
  }
  return Poly(std::move(v));
}

HermPoly2 HermPoly2::operator+(const HermPoly2& o) const {
  const Eigen::Index n = std::max(c_.rows(), o.c_.rows());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m.topLeftCorner(c_.rows(), c_.cols()) += c_;
  m.topLeftCorner(o.c_.rows(), o.c_.cols()) += o.c_;
  return HermPoly2(m);
}

HermPoly2 HermPoly2::operator-(const HermPoly2& o) const { return *this + o * -1.0; }

HermPoly2 HermPoly2::operator*(const HermPoly2& o) const {
  if (is_zero() || o.is_zero()) return {};
  const Eigen::Index n = c_.rows() + o.c_.rows() - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < c_.rows(); ++i)
    for (Eigen::Index j = 0; j < c_.cols(); ++j) {
      if (c_(i, j) == cplx{}) continue;
      m.block(i, j, o.c_.rows(), o.c_.cols()) += c_(i, j) * o.c_;
    }
  return HermPoly2(m);
}

HermPoly2 HermPoly2::operator*(double s) const {
  if (is_zero()) return {};
  return HermPoly2(Eigen::MatrixXcd(c_ * s));
}

double herm_distance(const HermPoly2& a, const HermPoly2& b) {
  const Eigen::Index n = std::max(a.coeff().rows(), b.coeff().rows());
  Eigen::MatrixXcd ma = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd mb = Eigen::MatrixXcd::Zero(n, n);
  ma.topLeftCorner(a.coeff().rows(), a.coeff().cols()) = a.coeff();
  mb.topLeftCorner(b.coeff().rows(), b.coeff().cols()) = b.coeff();
  if (n == 0) return 0.0;
  const double scale = std::max({1.0, ma.cwiseAbs().maxCoeff(), mb.cwiseAbs().maxCoeff()});
  return (ma - mb).cwiseAbs().maxCoeff() / scale;
}

Poly principal_divisor(const HermPoly2& phi, double gcd_tol) {
  if (phi.is_zero()) throw Error("principal divisor of the zero polynomial");
  Poly g;
  for (int j = phi.degree(); j >= 0; --j) {
    const Poly col = phi.column(j);
    if (col.is_zero()) continue;
    g = g.is_zero() ? col.monic() : poly_gcd(g, col, gcd_tol);
    if (g.degree() == 0) break;
  }
  return g.degree() <= 0 ? Poly::constant(1.0) : g;
}

PrincipalFactorization principal_factorization(const HermPoly2& phi, double gcd_tol, double recon_tol) {
  const Poly a = principal_divisor(phi, gcd_tol);
  const int k = a.degree();
  if (k == 0) return {a, phi};

  const int d = phi.degree();
  const int r = d - k;
  // Divide every column polynomial by a(z), then every row (as a polynomial
  // in conj(w)) by conj-coefficient a.
  Eigen::MatrixXcd q1 = Eigen::MatrixXcd::Zero(r + 1, d + 1);
  for (int j = 0; j <= d; ++j) {
    const Poly q = divmod(phi.column(j), a).quotient;
    for (int i = 0; i <= std::min(r, q.degree()); ++i) q1(i, j) = q[i];
  }
  const Poly abar = a.conj_coeffs();
  Eigen::MatrixXcd q0 = Eigen::MatrixXcd::Zero(r + 1, r + 1);
  for (int i = 0; i <= r; ++i) {
    std::vector<cplx> row(static_cast<std::size_t>(d + 1));
    for (int j = 0; j <= d; ++j) row[static_cast<std::size_t>(j)] = q1(i, j);
    const Poly q = divmod(Poly(std::move(row)), abar).quotient;
    for (int j = 0; j <= std::min(r, q.degree()); ++j) q0(i, j) = q[j];
  }

  HermPoly2 phi0;
  try {
    phi0 = HermPoly2(q0, 1e-6);
  } catch (const NumericError&) {
    throw NumericError("factorization failed: quotient is not Hermitian");
  }
  if (herm_distance(HermPoly2::outer(a) * phi0, phi) > recon_tol)
    throw NumericError("factorization failed: inexact division");
  return {a, phi0};
}

bool is_primitive(const HermPoly2& phi, double gcd_tol) {
  return principal_divisor(phi, gcd_tol).degree() == 0;
}

}  // namespace expt
