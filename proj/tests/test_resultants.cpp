#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include "expt/resultant.hpp"

using namespace expt;
using testing::random_poly;
using testing::rel;

namespace {

RationalFn random_rational(std::mt19937_64& rng, int dn, int dd) {
  return RationalFn(random_poly(rng, dn), random_poly(rng, dd));
}

bool has_entry(const Divisor& div, SpherePoint p, int order) {
  for (const auto& e : div) {
    if (e.point.infinite != p.infinite) continue;
    if (!p.infinite && std::abs(e.point.value - p.value) > 1e-10) continue;
    return e.order == order;
  }
  return false;
}

}  // namespace

TEST_CASE("sylvester_resultant examples") {
  const cplx a{0.5, 2.0}, b{-1.0, 0.25};
  CHECK(std::abs(sylvester_resultant(Poly{-a, 1.0}, Poly{-b, 1.0}) - (a - b)) < 1e-14);
  CHECK(std::abs(sylvester_resultant(Poly{-1.0, 0.0, 1.0}, Poly{-4.0, 0.0, 1.0}) - 9.0) < 1e-12);
  CHECK(std::abs(sylvester_resultant(Poly{-1.0, 1.0}, Poly{-1.0, 0.0, 1.0})) < 1e-14);
  CHECK(sylvester_resultant(Poly{3.0}, Poly{5.0}) == cplx(1.0));
  CHECK(resultant_vanishes(Poly{-1.0, 1.0}, Poly{-1.0, 0.0, 1.0}));
  CHECK_FALSE(resultant_vanishes(Poly{-1.0, 0.0, 1.0}, Poly{-4.0, 0.0, 1.0}));
}

TEST_CASE("poisson_resultant examples") {
  CHECK(std::abs(poisson_resultant(Poly{-2.0, 2.0}, Poly{1.0, 1.0}) - 4.0) < 1e-13);
  CHECK(std::abs(poisson_resultant(Poly{-1.0, 0.0, 1.0}, Poly{-4.0, 0.0, 1.0}) - 9.0) < 1e-12);
  const Poly A{1.0, 2.0, 3.0}, B{cplx(0, 1), 1.0, 0.0, 2.0};
  CHECK(rel(sylvester_resultant(A, B), std::pow(-1.0, 2 * 3) * sylvester_resultant(B, A)) < 1e-12);
  const Poly C{1.0, 2.0}, D{cplx(0, 1), 1.0};
  CHECK(rel(sylvester_resultant(C, D), -sylvester_resultant(D, C)) < 1e-12);
}

TEST_CASE("Sylvester and Poisson agree on random pairs") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 60; ++k) {
    const Poly a = random_poly(rng, 1 + k % 8), b = random_poly(rng, 1 + (k / 8) % 8);
    CHECK(rel(poisson_resultant(a, b), sylvester_resultant(a, b)) <= 1e-8);
  }
}

TEST_CASE("multiplicativity, skew symmetry and conjugation") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 40; ++k) {
    const int n1 = 1 + k % 4, n2 = 1 + (k / 4) % 4, m = 1 + (k / 16) % 4;
    const Poly a1 = random_poly(rng, n1), a2 = random_poly(rng, n2), b = random_poly(rng, m);
    CHECK(rel(sylvester_resultant(a1 * a2, b), sylvester_resultant(a1, b) * sylvester_resultant(a2, b)) <= 1e-8);
    const double sign = ((n1 * m) % 2 == 0) ? 1.0 : -1.0;
    CHECK(rel(sylvester_resultant(a1, b), sign * sylvester_resultant(b, a1)) <= 1e-8);
    CHECK(rel(sylvester_resultant(a1.conj_coeffs(), b.conj_coeffs()), std::conj(sylvester_resultant(a1, b))) <= 1e-8);
  }
}

TEST_CASE("formal Sylvester with vanishing leading entries") {
  // A = z - 2 stored with formal degree 2 against B = z + 1: ordinary value is
  // -3, and the extra leading zero contributes a factor of B's leading entry.
  const std::vector<cplx> a{-2.0, 1.0, 0.0}, b{1.0, 1.0};
  const cplx formal = sylvester_resultant_formal(a, b);
  CHECK(std::abs(std::abs(formal) - 3.0) < 1e-12);
}

TEST_CASE("divisor_of examples") {
  Divisor d = divisor_of(RationalFn(Poly{0.0, 1.0}));
  CHECK(d.size() == 2);
  CHECK(has_entry(d, SpherePoint::at(0.0), 1));
  CHECK(has_entry(d, SpherePoint::infinity(), -1));

  d = divisor_of(RationalFn(Poly{-1.0, 1.0}, Poly{1.0, 1.0}));
  CHECK(d.size() == 2);
  CHECK(has_entry(d, SpherePoint::at(1.0), 1));
  CHECK(has_entry(d, SpherePoint::at(-1.0), -1));

  d = divisor_of(RationalFn(Poly{-1.0, 0.0, 1.0}));
  CHECK(d.size() == 3);
  CHECK(has_entry(d, SpherePoint::at(1.0), 1));
  CHECK(has_entry(d, SpherePoint::at(-1.0), 1));
  CHECK(has_entry(d, SpherePoint::infinity(), -2));

  CHECK_THROWS_AS(divisor_of(RationalFn(Poly{2.0})), Error);
}

TEST_CASE("divisor orders sum to zero") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 30; ++k) {
    const Divisor d = divisor_of(random_rational(rng, k % 5, 1 + k % 3));
    int sum = 0;
    for (const auto& e : d) sum += e.order;
    CHECK(sum == 0);
  }
}

TEST_CASE("ord_at examples") {
  CHECK(ord_at(RationalFn(Poly{0.0, 0.0, 1.0}), SpherePoint::at(0.0)) == 2);
  CHECK(ord_at(RationalFn(Poly{1.0}, Poly{0.0, 1.0}), SpherePoint::infinity()) == 1);
  CHECK(ord_at(RationalFn(Poly{-1.0, 0.0, 1.0}, Poly{0.0, 1.0}), SpherePoint::infinity()) == -1);
  CHECK(ord_at(RationalFn(Poly{-1.0, 0.0, 1.0}, Poly{0.0, 1.0}), SpherePoint::at(0.0)) == -1);
  CHECK(ord_at(RationalFn(Poly{-1.0, 0.0, 1.0}), SpherePoint::at(5.0)) == 0);
}

TEST_CASE("meromorphic_resultant examples") {
  const RationalFn f(Poly{0.0, 1.0}), g(Poly{-1.0, 1.0}, Poly{1.0, 1.0});
  CHECK(std::abs(meromorphic_resultant(f, g) + 1.0) < 1e-12);
  CHECK(std::abs(meromorphic_resultant(g, f) + 1.0) < 1e-12);
  const RationalFn f2(Poly{0.0, 0.0, 1.0});
  CHECK(std::abs(meromorphic_resultant(f2, RationalFn(Poly{3.0})) - 1.0) < 1e-14);
  CHECK_THROWS_WITH_AS(meromorphic_resultant(f, RationalFn(Poly{0.0, 2.0}, Poly{1.0, 1.0})),
                       doctest::Contains("common divisor point"), Error);
}

TEST_CASE("meromorphic resultant matches the divisor product") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 30; ++k) {
    const RationalFn f = random_rational(rng, 1 + k % 3, k % 3);
    // g is finite and nonzero at infinity, so the divisors never meet there.
    const int dg = 1 + (k / 3) % 3;
    const RationalFn g = random_rational(rng, dg, dg);
    const cplx direct =
        divisor_product(divisor_of(f), [&](SpherePoint p) { return p.infinite ? g.leading_ratio() : g(p.value); });
    CHECK(rel(meromorphic_resultant(f, g), direct) <= 1e-7);
  }
}

TEST_CASE("meromorphic symmetry and multiplicativity") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    // deg num = deg den keeps infinity out of the divisor of f.
    const int df = 1 + k % 3;
    const RationalFn f = random_rational(rng, df, df);
    const RationalFn g1 = random_rational(rng, 1 + (k / 2) % 3, 1 + (k / 3) % 2);
    const RationalFn g2 = random_rational(rng, 1 + (k / 5) % 2, 1 + (k / 4) % 2);
    CHECK(rel(meromorphic_resultant(f, g1), meromorphic_resultant(g1, f)) <= 1e-7);
    const RationalFn g12(g1.num() * g2.num(), g1.den() * g2.den());
    CHECK(rel(meromorphic_resultant(f, g12), meromorphic_resultant(f, g1) * meromorphic_resultant(f, g2)) <= 1e-7);
  }
}
