#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

using namespace expt;
using testing::random_herm;
using testing::random_poly;

TEST_CASE("poly_arith examples") {
  const Poly a{1.0, 1.0}, b{-1.0, 1.0};
  CHECK(poly_arith(a, b, ArithOp::mul) == Poly{-1.0, 0.0, 1.0});
  CHECK(poly_arith(a, Poly(), ArithOp::add) == a);
  CHECK(poly_arith(Poly{-1.0, 0.0, 1.0}, Poly{-4.0, 0.0, 1.0}, ArithOp::mul) == Poly{4.0, 0.0, -5.0, 0.0, 1.0});
  CHECK(poly_arith(a, a, ArithOp::sub).is_zero());
  CHECK(Poly().degree() == -1);
}

TEST_CASE("poly_roots examples") {
  auto r = poly_roots(Poly{-1.0, 0.0, 1.0});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].value + 1.0) < 1e-12);
  CHECK(std::abs(r[1].value - 1.0) < 1e-12);
  CHECK(r[0].multiplicity == 1);

  const cplx i{0.0, 1.0};
  r = poly_roots(Poly{-1.0, -2.0 * i, 1.0});  // (z - i)^2
  REQUIRE(r.size() == 1);
  CHECK(r[0].multiplicity == 2);
  CHECK(std::abs(r[0].value - i) < 1e-12);

  r = poly_roots(Poly{-1.0, 0.0, 0.0, 1.0});
  REQUIRE(r.size() == 3);
  for (const Root& x : r) CHECK(std::abs(std::pow(x.value, 3) - 1.0) < 1e-12);

  CHECK_THROWS_AS(poly_roots(Poly()), Error);
}

TEST_CASE("roots reproduce the polynomial") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 40; ++k) {
    const Poly p = random_poly(rng, 1 + k % 8);
    const auto flat = poly_roots_flat(p);
    CHECK(static_cast<int>(flat.size()) == p.degree());
    const Poly q = Poly::from_roots(flat, p.leading());
    CHECK(approx_equal(p, q, 1e-9));
  }
}

TEST_CASE("multiplicities sum to the degree") {
  const std::vector<cplx> rts{1.0, 1.0, 1.0, {0.0, 2.0}, -3.0};
  const Poly p = Poly::from_roots(rts, 2.0);
  int sum = 0;
  for (const Root& r : poly_roots(p)) sum += r.multiplicity;
  CHECK(sum == 5);
  CHECK(poly_roots(p).size() == 3);
}

TEST_CASE("poly_gcd examples") {
  CHECK(approx_equal(poly_gcd(Poly{-1.0, 0.0, 1.0}, Poly{-1.0, 1.0}), Poly{-1.0, 1.0}, 1e-12));
  CHECK(approx_equal(poly_gcd(Poly{1.0, 0.0, 1.0}, Poly{0.0, 1.0, 1.0}), Poly{1.0}, 1e-12));
  const Poly p{2.0, 3.0, 4.0};
  CHECK(approx_equal(poly_gcd(p, p), p.monic(), 1e-12));
  CHECK(approx_equal(poly_gcd(p, Poly()), p.monic(), 1e-12));
}

TEST_CASE("rational functions cancel common factors and keep the denominator monic") {
  const RationalFn f(Poly{-1.0, 0.0, 1.0}, Poly{2.0, 2.0});  // (z^2-1)/(2z+2)
  CHECK(f.den().degree() == 0);
  CHECK(std::abs(f(3.0) - 1.0) < 1e-12);
  CHECK(f.order_at_infinity() == -1);
  CHECK_THROWS(RationalFn(Poly{1.0}, Poly{0.0, 1.0}).require_lemniscate_map());
}

TEST_CASE("principal_divisor examples") {
  const double R2 = 2.25;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);  // z w* (z w* - R^2)
  m(2, 2) = 1.0;
  m(1, 1) = -R2;
  CHECK(approx_equal(principal_divisor(HermPoly2(m)), Poly{0.0, 1.0}, 1e-12));

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(1, 1) = 1.0;
  d(0, 0) = -R2;
  CHECK(approx_equal(principal_divisor(HermPoly2(d)), Poly{1.0}, 1e-12));
  CHECK(approx_equal(principal_divisor(HermPoly2::constant(5.0)), Poly{1.0}, 1e-12));
}

TEST_CASE("principal_factorization examples") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(2, 2) = 1.0;
  m(1, 1) = -2.25;
  auto pf = principal_factorization(HermPoly2(m));
  CHECK(approx_equal(pf.divisor, Poly{0.0, 1.0}, 1e-12));
  REQUIRE(pf.primitive.degree() == 1);
  CHECK(std::abs(pf.primitive.coeff()(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(pf.primitive.coeff()(0, 0) + 2.25) < 1e-12);

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(1, 1) = 1.0;
  d(0, 0) = -1.0;
  pf = principal_factorization(HermPoly2(d));
  CHECK(approx_equal(pf.divisor, Poly{1.0}, 1e-12));
  CHECK(herm_distance(pf.primitive, HermPoly2(d)) < 1e-12);

  // z^2 conj(w)^2 (1 + z conj(w))
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(4, 4);
  e(2, 2) = 1.0;
  e(3, 3) = 1.0;
  pf = principal_factorization(HermPoly2(e));
  CHECK(approx_equal(pf.divisor, Poly{0.0, 0.0, 1.0}, 1e-12));
  CHECK(std::abs(pf.primitive.coeff()(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(pf.primitive.coeff()(1, 1) - 1.0) < 1e-12);
}

TEST_CASE("is_primitive examples") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(1, 1) = 1.0;
  d(0, 0) = -1.0;
  CHECK(is_primitive(HermPoly2(d)));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(2, 2) = 1.0;
  m(1, 1) = -1.0;
  CHECK_FALSE(is_primitive(HermPoly2(m)));
  CHECK(is_primitive(HermPoly2::constant(5.0)));
}

TEST_CASE("Hermitian closure of sums and products") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const HermPoly2 a = random_herm(rng, 1 + k % 3), b = random_herm(rng, 1 + (k + 1) % 3);
    for (const HermPoly2& c : {a * b, a + b, a - b}) {
      const Eigen::MatrixXcd& m = c.coeff();
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    }
    const cplx z{0.3, 1.1}, w{-0.7, 0.4};
    CHECK(std::abs((a * b)(z, w) - a(z, w) * b(z, w)) < 1e-10);
    CHECK(std::abs(a(w, z) - std::conj(a(z, w))) < 1e-12);
  }
}

TEST_CASE("constructor rejects non-Hermitian input") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermPoly2{m}, NumericError);
}

TEST_CASE("factorization round trip and recovery of the divisor") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const HermPoly2 phi0 = random_herm(rng, 1 + k % 2);
    const Poly a = random_poly(rng, 1 + k % 3);
    const HermPoly2 phi = HermPoly2::outer(a) * phi0;
    const PrincipalFactorization pf = principal_factorization(phi);
    CHECK(herm_distance(HermPoly2::outer(pf.divisor) * pf.primitive, phi) <= 1e-10);
    CHECK(approx_equal(pf.divisor, a.monic(), 1e-7));
    CHECK(is_primitive(pf.primitive));
    CHECK_FALSE(is_primitive(phi));
  }
}
