#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "expt/common.hpp"

namespace expt {

/// Dense univariate polynomial over the complex numbers.
///
/// Coefficients are stored in ascending degree. Exact trailing zeros are
/// trimmed on construction, so the zero polynomial has an empty coefficient
/// list and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs);
  Poly(std::initializer_list<cplx> coeffs);

  static Poly constant(cplx c);
  static Poly monomial(int k, cplx c = 1.0);
  /// Leading coefficient times the product of (z - r) over `roots`.
  static Poly from_roots(std::span<const cplx> roots, cplx leading = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::span<const cplx> coeffs() const { return c_; }
  /// Coefficient of z^i; zero outside the stored range.
  cplx operator[](int i) const;
  cplx leading() const;

  cplx operator()(cplx z) const;
  Poly derivative() const;
  /// The polynomial whose coefficients are the conjugates of these, i.e.
  /// conj(p(conj(z))).
  Poly conj_coeffs() const;
  /// Divides by the leading coefficient. The zero polynomial stays zero.
  Poly monic() const;
  /// Euclidean norm of the coefficient vector.
  double norm() const;
  /// Drops trailing coefficients whose modulus is at most rel_tol * norm().
  Poly chopped(double rel_tol) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(cplx s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, cplx s) { return a *= s; }
  friend Poly operator*(cplx s, Poly a) { return a *= s; }
  Poly operator-() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<cplx> c_;
};

enum class ArithOp { add, sub, mul };

Poly poly_arith(const Poly& p, const Poly& q, ArithOp op);

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Polynomial long division. Throws NumericError on division by zero.
DivMod divmod(const Poly& p, const Poly& q);

/// Coefficientwise comparison: max |p_i - q_i| <= tol * max(1, |p|, |q|).
bool approx_equal(const Poly& p, const Poly& q, double tol);

struct Root {
  cplx value;
  int multiplicity = 1;
};

struct RootOptions {
  int max_iterations = 500;
  /// Distinct roots closer than this (relative to the root scale) are always
  /// merged into one multiple root.
  double merge_tol = 1e-8;
  /// Clusters linked at this looser radius are merged when their spread is
  /// consistent with the perturbation of a root of that multiplicity.
  double cluster_tol = 1e-4;
};

/// Roots with multiplicities by Aberth-Ehrlich iteration followed by
/// clustering. Sorted lexicographically by (re, im).
std::vector<Root> poly_roots(const Poly& p, const RootOptions& opts = {});

/// Every root repeated according to its multiplicity.
std::vector<cplx> poly_roots_flat(const Poly& p, const RootOptions& opts = {});

/// Monic approximate gcd by a normalized Euclidean remainder sequence. A
/// remainder whose norm drops below rel_tol times the current divisor norm
/// ends the sequence. gcd(p, 0) = monic(p).
Poly poly_gcd(const Poly& p, const Poly& q, double rel_tol = 1e-10);

/// Rational function num/den with den monic and num, den coprime.
///
/// The constructor cancels any common factor found by poly_gcd. No degree
/// relation is imposed; lemniscate maps (deg num > deg den) are checked by
/// is_lemniscate_map() / require_lemniscate_map().
class RationalFn {
 public:
  RationalFn() : num_(Poly::constant(1.0)), den_(Poly::constant(1.0)) {}
  explicit RationalFn(Poly num, Poly den = Poly::constant(1.0),
                      double gcd_tol = 1e-10);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int degree() const;
  bool is_constant() const;

  /// Value at z. Returns an infinite complex value at a pole.
  cplx operator()(cplx z) const;
  /// deg den - deg num: the order of the function at infinity.
  int order_at_infinity() const;
  /// Ratio of leading coefficients; the value at infinity when the order
  /// there is zero.
  cplx leading_ratio() const;

  bool is_lemniscate_map() const;
  /// Throws Error unless deg num > deg den (the map fixes infinity).
  const RationalFn& require_lemniscate_map() const;

 private:
  Poly num_;
  Poly den_;
};

}  // namespace expt
