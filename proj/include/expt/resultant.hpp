#pragma once

#include <functional>
#include <span>
#include <vector>

#include "expt/poly.hpp"

namespace expt {

/// Res(A, B) as the determinant of the Sylvester matrix built from the
/// trimmed degrees. Rows hold descending coefficients, so that the value
/// equals A_n^m prod B(a_i). Two constants give 1.
cplx sylvester_resultant(const Poly& a, const Poly& b);

/// Same determinant for coefficient lists of a fixed formal length
/// (ascending, leading entries may vanish). Used when the coefficients are
/// samples of polynomials in further variables.
cplx sylvester_resultant_formal(std::span<const cplx> a, std::span<const cplx> b);

/// A_n^m prod_i B(a_i) over the roots of A with multiplicity.
cplx poisson_resultant(const Poly& a, const Poly& b, const RootOptions& opts = {});

/// |Res(A, B)| <= tol * |A|^m |B|^n, i.e. A and B share a root numerically.
bool resultant_vanishes(const Poly& a, const Poly& b, double tol = 1e-9);

struct DivisorEntry {
  SpherePoint point;
  int order = 0;
};
using Divisor = std::vector<DivisorEntry>;

/// Zeros of num, poles at zeros of den, and infinity with order
/// deg den - deg num (omitted when that is zero). Throws Error for constant f.
Divisor divisor_of(const RationalFn& f, const RootOptions& opts = {});

/// Order of f at a: positive for zeros, negative for poles. Finite points are
/// matched against roots within rel_tol * max(1, |a|).
int ord_at(const RationalFn& f, SpherePoint a, double rel_tol = 1e-7);

/// prod g(p)^order over the divisor entries.
cplx divisor_product(const Divisor& div, const std::function<cplx(SpherePoint)>& g);

/// Res*(f, g) = prod g(a_i)^{n_i} over the divisor of f, evaluated from the
/// polynomial resultants of the numerators and denominators together with
/// the leading-coefficient factors at infinity. Throws Error with
/// "resultant undefined (common divisor point)" when the divisors meet.
cplx meromorphic_resultant(const RationalFn& f, const RationalFn& g, double tol = 1e-9);

}  // namespace expt
