#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include "expt/moments.hpp"
#include "expt/special.hpp"

using namespace expt;

namespace {

const RationalFn kBernoulli(Poly{-1.0, 0.0, 1.0});
const RationalFn kRose3(Poly{-1.0, 0.0, 0.0, 1.0});

double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace

TEST_CASE("moment_quadrature examples") {
  const DomainSpec disk = make_disk(0.0, 1.0);
  CHECK(std::abs(moment_quadrature(disk, 0, 0) - 1.0) < 1e-10);
  CHECK(std::abs(moment_quadrature(disk, 1, 1) - 0.5) < 1e-10);
  CHECK(std::abs(moment_quadrature(disk, 1, 0)) < 1e-10);
  CHECK(std::abs(moment_quadrature(make_lemniscate(kBernoulli), 0, 0) - 2.0 / kPi) < 1e-9);
  const cplx a{0.4, -0.3};
  const DomainSpec shifted = make_disk(a, 0.7);
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) CHECK(std::abs(moment_quadrature(shifted, p, q) - disk_moment(a, 0.7, p, q)) < 1e-7);
  CHECK_THROWS_AS(moment_quadrature(disk, -1, 0), Error);
}

TEST_CASE("bernoulli_moment examples") {
  CHECK(std::abs(bernoulli_moment(1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(bernoulli_moment(0, 0) - 2.0 / kPi) < 1e-15);
  CHECK(std::abs(bernoulli_moment(2, 0) - 4.0 / (3.0 * kPi)) < 1e-15);
  CHECK(bernoulli_moment(1, 2) == 0.0);
  // Odd-odd entries in binomial form.
  for (int k = 0; k < 6; ++k)
    for (int m = 0; m < 6; ++m) {
      const double binom = factorial(k + m + 2) / (factorial(k + 1) * factorial(m + 1));
      CHECK(std::abs(bernoulli_moment(2 * k + 1, 2 * m + 1) - binom / (2.0 * (k + m + 2))) < 1e-12 * binom);
    }
}

TEST_CASE("even moments reproduce the closed form") {
  for (int k = 0; k <= 6; ++k) {
    const double ref = std::pow(2.0, 2 * k + 1) * factorial(k) * factorial(k) / (kPi * factorial(2 * k + 1));
    CHECK(std::abs(bernoulli_moment(2 * k, 0) - ref) <= 1e-12 * ref);
    CHECK(std::abs(bernoulli_even_moment(k) - ref) <= 1e-12 * ref);
  }
}

TEST_CASE("rose_moment examples") {
  CHECK(std::abs(rose_moment(2, 0, 0, 1) - 0.5) < 1e-14);
  CHECK(std::abs(rose_moment(2, 0, 0, 0) - 2.0 / kPi) < 1e-14);
  const double ref3 = std::tgamma(2.0 / 3.0) / (3.0 * std::pow(std::tgamma(4.0 / 3.0), 2));
  CHECK(std::abs(rose_moment(3, 0, 0, 0) - ref3) < 1e-14);
  QuadOptions opts;
  opts.resolution = 800;
  CHECK(std::abs(moment_quadrature(make_lemniscate(kRose3), 0, 0, opts) - ref3) < 1e-5);
  CHECK_THROWS_AS(rose_moment(3, 0, 0, 3), Error);
  CHECK_THROWS_AS(rose_moment(3, 0, 0, -1), Error);
  for (int p = 0; p < 8; ++p)
    for (int q = 0; q < 8; ++q) CHECK(std::abs(rose_moment_ij(2, p, q) - bernoulli_moment(p, q)) < 1e-13);
}

TEST_CASE("rose tables match quadrature") {
  QuadOptions opts;
  opts.resolution = 800;
  const MomentTable quad = moment_table_quadrature(make_lemniscate(kRose3), 8, opts);
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) {
      if ((i - j) % 3 != 0)
        CHECK(std::abs(quad.M(i, j)) <= 1e-6);
      else
        CHECK(std::abs(quad.M(i, j) - rose_moment_ij(3, i, j)) <= 1e-5);
    }
  CHECK(quad.asymmetry <= 1e-9);
}

TEST_CASE("Bernoulli quadrature matches the Gamma formula") {
  QuadOptions opts;
  opts.resolution = 800;
  const MomentTable quad = moment_table_quadrature(make_lemniscate(kBernoulli), 12, opts);
  CHECK(quad.source == MomentSource::quadrature);
  CHECK(quad.asymmetry <= 1e-9);
  for (int p = 0; p <= 12; ++p)
    for (int q = 0; p + q <= 12; ++q) CHECK(std::abs(quad.M(p, q) - bernoulli_moment(p, q)) <= 1e-7);
}

TEST_CASE("moment_table examples") {
  const double R = 1.3;
  const MomentTable disk = moment_table(make_disk(0.0, R), 6);
  CHECK(disk.source == MomentSource::closed_form);
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; q <= 6; ++q) {
      const double ref = p == q ? std::pow(R, 2 * p + 2) / (p + 1) : 0.0;
      CHECK(std::abs(disk.M(p, q) - ref) < 1e-13);
    }
  const MomentTable bern = moment_table(make_lemniscate(kBernoulli), 6);
  CHECK(bern.source == MomentSource::closed_form);
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; q <= 6; ++q) {
      CHECK(bern.M(p, q) == cplx(bernoulli_moment(p, q)));
      if ((p + q) % 2 == 1) CHECK(bern.M(p, q) == cplx(0.0));
    }
  const MomentTable empty = moment_table(make_annulus(1.0, 1.0), 5);
  CHECK(empty.M.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(moment_table(make_disk(0.0, 1.0), -1), Error);
}

TEST_CASE("tables are Hermitian with positive mass") {
  const std::vector<DomainSpec> stock{make_disk(cplx(0.3, -0.2), 1.3), make_annulus(1.0, 1.5),
                                      make_circular({0.0, 3.0}, {{cplx(1.2, 0.0), 0.6}}), make_ellipse(2.0, 1.0),
                                      make_lemniscate_component(kBernoulli, 1.0)};
  for (const DomainSpec& d : stock) {
    for (bool closed : {true, false}) {
      const MomentTable t = moment_table(d, 6, {}, closed);
      CHECK((t.M - t.M.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(t.M(0, 0).real() > 0.0);
      const bool polygonal = std::holds_alternative<LemniscateComponent>(d);
      CHECK(std::abs(t.M(0, 0).real() - area(d) / kPi) < (polygonal ? 1e-7 : 1e-10));
      CHECK(t.asymmetry <= 1e-9);
    }
  }
}

TEST_CASE("quadrature identity") {
  const cplx a{0.3, -0.2};
  const double R = 1.3;
  const QuadratureData disk_q{{{a, {kPi * R * R}}}};
  CHECK(disk_q.order() == 1);
  CHECK(quadrature_identity_check(make_disk(a, R), disk_q, 10) < 1e-6);

  // For h = 1 alone the residual is the area defect.
  const QuadratureData off{{{a, {2.0}}}};
  CHECK(std::abs(quadrature_identity_check(make_disk(a, R), off, 0) - std::abs(kPi * R * R - 2.0)) < 1e-9);

  // A petal is not a one-point quadrature domain. The node at the centroid
  // with weight equal to the area is exact for 1 and z; z^2 already fails.
  const DomainSpec petal = make_lemniscate_component(kBernoulli, 1.0);
  const cplx mass = kPi * moment_quadrature(petal, 0, 0), first = kPi * moment_quadrature(petal, 1, 0);
  const cplx centroid = first / mass;
  for (const QuadratureData& q : {QuadratureData{{{centroid, {mass}}}}, QuadratureData{{{1.0, {1.0}}}},
                                   QuadratureData{{{cplx(0.9, 0.0), {mass, 0.1}}}}})
    CHECK(quadrature_identity_check(petal, q, 4) > 1e-2);
  CHECK(quadrature_identity_check(petal, QuadratureData{{{centroid, {mass}}}}, 1) < 1e-8);
  CHECK(std::abs(mass - 1.0) < 1e-9);
}
