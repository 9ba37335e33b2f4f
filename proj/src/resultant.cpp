#include "expt/resultant.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace expt {

cplx sylvester_resultant_formal(std::span<const cplx> a, std::span<const cplx> b) {
  const int n = static_cast<int>(a.size()) - 1;
  const int m = static_cast<int>(b.size()) - 1;
  if (n < 0 || m < 0) throw Error("resultant of an empty coefficient list");
  const int size = n + m;
  if (size == 0) return 1.0;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(r, r + k) = a[static_cast<std::size_t>(n - k)];
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(m + r, r + k) = b[static_cast<std::size_t>(m - k)];
  return s.partialPivLu().determinant();
}

cplx sylvester_resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) throw Error("resultant with the zero polynomial");
  return sylvester_resultant_formal(a.coeffs(), b.coeffs());
}

cplx poisson_resultant(const Poly& a, const Poly& b, const RootOptions& opts) {
  if (a.is_zero() || b.is_zero()) throw Error("resultant with the zero polynomial");
  const int n = a.degree();
  const int m = b.degree();
  cplx r = std::pow(a.leading(), m);
  if (n == 0) return r;
  for (const Root& root : poly_roots(a, opts)) r *= std::pow(b(root.value), root.multiplicity);
  return r;
}

bool resultant_vanishes(const Poly& a, const Poly& b, double tol) {
  const double scale = std::pow(a.norm(), b.degree()) * std::pow(b.norm(), a.degree());
  return std::abs(sylvester_resultant(a, b)) <= tol * scale;
}

Divisor divisor_of(const RationalFn& f, const RootOptions& opts) {
  if (f.is_constant()) throw Error("divisor of a constant function");
  Divisor div;
  if (f.num().degree() > 0)
    for (const Root& r : poly_roots(f.num(), opts)) div.push_back({SpherePoint::at(r.value), r.multiplicity});
  if (f.den().degree() > 0)
    for (const Root& r : poly_roots(f.den(), opts)) div.push_back({SpherePoint::at(r.value), -r.multiplicity});
  if (const int k = f.order_at_infinity(); k != 0) div.push_back({SpherePoint::infinity(), k});
  return div;
}

namespace {

int multiplicity_at(const Poly& p, cplx a, double rel_tol) {
  if (p.degree() <= 0) return 0;
  const double radius = rel_tol * std::max(1.0, std::abs(a));
  int k = 0;
  for (const Root& r : poly_roots(p))
    if (std::abs(r.value - a) <= radius) k += r.multiplicity;
  return k;
}

}  // namespace

int ord_at(const RationalFn& f, SpherePoint a, double rel_tol) {
  if (a.infinite) return f.order_at_infinity();
  if (f.num().is_zero()) throw Error("order of the zero function");
  return multiplicity_at(f.num(), a.value, rel_tol) - multiplicity_at(f.den(), a.value, rel_tol);
}

cplx divisor_product(const Divisor& div, const std::function<cplx(SpherePoint)>& g) {
  cplx r = 1.0;
  for (const DivisorEntry& e : div) r *= std::pow(g(e.point), e.order);
  return r;
}

cplx meromorphic_resultant(const RationalFn& f, const RationalFn& g, double tol) {
  if (f.num().is_zero() || g.num().is_zero()) throw Error("meromorphic resultant with the zero function");
  const Poly& a1 = f.num();
  const Poly& a2 = f.den();
  const Poly& b1 = g.num();
  const Poly& b2 = g.den();
  const int of = f.order_at_infinity();
  const int og = g.order_at_infinity();
  if ((of != 0 && og != 0) || resultant_vanishes(a1, b1, tol) || resultant_vanishes(a1, b2, tol) ||
      resultant_vanishes(a2, b1, tol) || resultant_vanishes(a2, b2, tol))
    throw Error("resultant undefined (common divisor point)");

  cplx r = sylvester_resultant(a1, b1) * sylvester_resultant(a2, b2) /
           (sylvester_resultant(a1, b2) * sylvester_resultant(a2, b1));
  // A zero order makes the factor 1 whatever the base is.
  if (og != 0) r *= std::pow(f.leading_ratio(), og);
  if (of != 0) r *= std::pow(g.leading_ratio(), of);
  return r;
}

}  // namespace expt
