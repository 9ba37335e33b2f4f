#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include "expt/special.hpp"
#include "expt/transform.hpp"

using namespace expt;
using testing::rel;

namespace {

const RationalFn kBernoulli(Poly{-1.0, 0.0, 1.0});

std::vector<DomainSpec> stock_domains() {
  return {make_disk(cplx(0.3, -0.2), 1.3),
          make_annulus(1.0, 1.5),
          make_circular({0.0, 3.0}, {{cplx(1.2, 0.0), 0.6}, {cplx(-1.0, 0.5), 0.8}}),
          make_ellipse(2.0, 1.0),
          make_lemniscate(kBernoulli),
          make_lemniscate(RationalFn(Poly{-1.0, 0.0, 0.0, 1.0}))};
}

// Exterior points on a circle of the given radius, away from the real axis.
std::vector<cplx> ring(double radius, int count, double phase) {
  std::vector<cplx> out;
  for (int k = 0; k < count; ++k) out.push_back(std::polar(radius, phase + 2.0 * kPi * k / count));
  return out;
}

cplx disk_squared_ref(cplx z, cplx w) {
  const cplx t = z * std::conj(w);
  return std::pow((t - 1.0) / t, 2);
}

}  // namespace

TEST_CASE("method names") {
  CHECK(method_name(Method::closed_form) == "closed");
  CHECK(method_name(Method::pushforward) == "pushforward");
}

TEST_CASE("quadrature examples") {
  const TransformSample s = exp_transform_quadrature(make_disk(0.0, 1.0), 2.0, 2.0);
  CHECK(std::abs(s.value - 0.75) < 1e-10);
  CHECK(s.method == Method::quadrature);
  CHECK(s.est_error >= 0.0);
  CHECK(std::abs(exp_transform_quadrature(make_annulus(1.0, 1.5), 2.0, 2.0).value - 1.75 / 3.0) < 1e-10);
  CHECK(std::abs(exp_transform_quadrature(make_ellipse(2.0, 1.0), 1e6, cplx(0.0, 1e6)).value - 1.0) < 1e-6);
  CHECK_THROWS_WITH_AS(exp_transform_quadrature(make_disk(0.0, 1.0), 0.5, 2.0),
                       doctest::Contains("evaluation point in domain"), RegionError);
}

TEST_CASE("quadrature grid agrees with single evaluations") {
  const DomainSpec d = make_ellipse(2.0, 1.0);
  const std::vector<cplx> zs{3.0, cplx(0.0, 2.0)}, ws{cplx(-2.5, 1.0), 4.0, cplx(1.0, -1.5)};
  const auto grid = exp_transform_quadrature_grid(d, zs, ws);
  REQUIRE(grid.size() == 2);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    REQUIRE(grid[i].size() == 3);
    for (std::size_t j = 0; j < ws.size(); ++j) {
      CHECK(grid[i][j].z == zs[i]);
      CHECK(grid[i][j].w == ws[j]);
      CHECK(rel(grid[i][j].value, exp_transform_quadrature(d, zs[i], ws[j]).value) < 1e-10);
    }
  }
}

TEST_CASE("Cauchy transform examples") {
  CHECK(std::abs(cauchy_transform(make_disk(0.0, 1.0), 2.0).value - 0.5) < 1e-10);
  CHECK(std::abs(cauchy_closed(make_disk(0.0, 1.0), 2.0) - 0.5) < 1e-15);
  const DomainSpec bern = make_lemniscate(kBernoulli);
  CHECK(std::abs(cauchy_closed(bern, 2.0) - 2.0 / (3.0 * std::sqrt(3.0))) < 1e-14);
  CHECK(std::abs(cauchy_transform(bern, 2.0).value - 2.0 / (3.0 * std::sqrt(3.0))) < 1e-8);
  const cplx far{3e4, -4e4};
  const DomainSpec e = make_ellipse(2.0, 1.0);
  CHECK(rel(cauchy_transform(e, far).value, area(e) / (kPi * far)) < 1e-4);
  CHECK_THROWS_AS(cauchy_transform(make_disk(0.0, 1.0), 0.2), RegionError);
}

TEST_CASE("moment series examples") {
  const MomentTable disk = moment_table(make_disk(0.0, 1.0), 40);
  const TransformSample s = exp_transform_moments(disk, 3.0, 3.0, 40);
  CHECK(std::abs(s.value - (1.0 - 1.0 / 9.0)) < 1e-10);
  CHECK(s.method == Method::moments);
  CHECK(s.est_error >= 0.0);

  MomentTable empty;
  empty.maxdeg = 5;
  empty.M = Eigen::MatrixXcd::Zero(6, 6);
  empty.radius = 1.0;
  CHECK(exp_transform_moments(empty, 2.0, cplx(0.0, 3.0)).value == cplx(1.0));

  const MomentTable bern = moment_table(make_lemniscate(kBernoulli), 60);
  CHECK(rel(exp_transform_moments(bern, 3.0, 3.0).value, bernoulli_exp_transform(3.0, 3.0)) < 1e-6);

  CHECK_THROWS_WITH_AS(exp_transform_moments(disk, 0.9, 3.0), doctest::Contains("outside convergence region"),
                       RegionError);
  CHECK_THROWS_AS(exp_transform_moments(disk, 3.0, 3.0, 42), Error);
}

TEST_CASE("disk branches") {
  CHECK(std::abs(disk_transform(0.0, 1.0, 2.0, 2.0) - 0.75) < 1e-15);
  CHECK(std::abs(disk_transform(0.0, 1.0, 0.0, 2.0) - 1.0) < 1e-15);
  CHECK(std::abs(disk_transform(0.0, 1.0, cplx(0.2, 0.1), cplx(0.2, 0.1))) < 1e-15);
  // The mixed branches are the conjugates of each other.
  const cplx a{0.3, -0.2}, zi{0.5, 0.1}, wo{2.0, 1.0};
  CHECK(std::abs(disk_transform(a, 1.3, zi, wo) - std::conj(disk_transform(a, 1.3, wo, zi))) < 1e-14);
  CHECK_THROWS_AS(disk_transform(0.0, 1.0, 1.0, 2.0), RegionError);
}

TEST_CASE("annulus branches") {
  const double r = 1.0, R = 1.5;
  const cplx z{0.3, 0.4}, w{-0.2, 0.5};
  const cplx t = z * std::conj(w);
  CHECK(rel(annulus_transform(r, R, z, w), 1.0 / ((t - R * R) / (t - r * r))) < 1e-13);
  CHECK(std::abs(annulus_transform(r, R, 2.0, cplx(0.2, 0.1)) - 1.0) < 1e-14);
  CHECK(std::abs(annulus_transform(r, R, cplx(0.2, 0.3), cplx(0.2, 0.3)) - (r * r - 0.13) / (R * R - 0.13)) < 1e-14);
  CHECK(annulus_transform(1.0, 1.0, 2.0, 3.0) == cplx(1.0));
  CHECK_THROWS_AS(annulus_transform(r, R, 1.5, 2.0), RegionError);
}

TEST_CASE("circular domain with two holes matches quadrature") {
  const DomainSpec d = make_circular({0.0, 3.0}, {{cplx(1.2, 0.0), 0.6}, {cplx(-1.0, 0.5), 0.8}});
  const auto& c = std::get<CircularDomain>(d);
  for (cplx z : ring(3.5, 4, 0.3))
    for (cplx w : ring(4.2, 3, 1.1)) {
      CHECK(rel(circular_domain_transform(c, z, w), exp_transform_quadrature(d, z, w).value) < 1e-6);
    }
  // Inside a hole both points see only that hole's interior branch.
  CHECK(std::abs(circular_domain_transform(c, 1.2, 1.2)) > 0.0);
}

TEST_CASE("ellipse closed form") {
  const double sq6 = std::sqrt(6.0);
  const double sm = 5.0 - 4.0 / 3.0 * sq6, sp = 5.0 + 4.0 / 3.0 * sq6;
  CHECK(std::abs(ellipse_transform(2.0, 1.0, 3.0, 3.0) - (-3.0 * (3.0 - sm) / (3.0 - sp))) < 1e-13);
  CHECK(std::abs(ellipse_transform(2.0, 1.0, cplx(0.5, 0.2), cplx(0.5, 0.2))) < 1e-14);
  double prev = 1.0;
  for (double off : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double v = ellipse_transform(2.0, 1.0, 2.0 + off, 2.0 + off).real();
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 0.05);
}

// E is continuous on C^2, so each branch must meet its neighbours on the ellipse.
TEST_CASE("ellipse branches join continuously across the boundary") {
  const double a = 2.0, b = 1.0, eps = 1e-7;
  for (double t : {0.3, 1.2, 2.5, 4.0}) {
    const cplx p(a * std::cos(t), b * std::sin(t));
    cplx nrm(std::cos(t) / a, std::sin(t) / b);
    nrm /= std::abs(nrm);
    for (cplx z : {cplx(3.0, 1.0), cplx(0.3, 0.2), cplx(-2.5, -1.5)}) {
      CHECK(std::abs(ellipse_transform(a, b, z, p + eps * nrm) - ellipse_transform(a, b, z, p - eps * nrm)) < 1e-5);
      CHECK(std::abs(ellipse_transform(a, b, p + eps * nrm, z) - ellipse_transform(a, b, p - eps * nrm, z)) < 1e-5);
    }
  }
}

TEST_CASE("closed-form dispatch") {
  CHECK(std::abs(exp_transform_closed(make_disk(0.0, 1.0), 2.0, 2.0) - 0.75) < 1e-15);
  CHECK(rel(exp_transform_closed(make_lemniscate(kBernoulli), 2.0, 2.0), bernoulli_exp_transform(2.0, 2.0)) < 1e-14);
  CHECK_THROWS_AS(exp_transform_closed(make_lemniscate(kBernoulli), 1.2, 2.0), RegionError);
  CHECK_THROWS_AS(exp_transform_closed(make_lemniscate(RationalFn(Poly{-1.0, 0.0, 0.0, 1.0})), 3.0, 3.0), RegionError);
}

TEST_CASE("Hermitian symmetry for every method") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi), rad(1.3, 2.0);
  for (const DomainSpec& d : stock_domains()) {
    const double R0 = outer_radius(d);
    const MomentTable t = moment_table(d, 50);
    for (int k = 0; k < 3; ++k) {
      const cplx z = std::polar(R0 * rad(rng), ang(rng)), w = std::polar(R0 * rad(rng), ang(rng));
      INFO(kind_name(d));
      const cplx q1 = exp_transform_quadrature(d, z, w).value, q2 = exp_transform_quadrature(d, w, z).value;
      CHECK(std::abs(q2 - std::conj(q1)) <= 1e-9);
      const cplx m1 = exp_transform_moments(t, z, w).value, m2 = exp_transform_moments(t, w, z).value;
      CHECK(std::abs(m2 - std::conj(m1)) <= 1e-9);
      if (rose_order(d) == 3) continue;
      const cplx c1 = exp_transform_closed(d, z, w), c2 = exp_transform_closed(d, w, z);
      CHECK(std::abs(c2 - std::conj(c1)) <= 1e-9);
    }
  }
  const HermitianRational E1 = exterior_rational(make_disk(0.0, 1.0));
  const RationalFn sq(Poly{0.0, 0.0, 1.0});
  const cplx z{1.5, 0.7}, w{-0.4, 2.0};
  CHECK(std::abs(pushforward_transform(E1, sq, w, z) - std::conj(pushforward_transform(E1, sq, z, w))) <= 1e-9);
}

TEST_CASE("diagonal values are positive") {
  for (const DomainSpec& d : stock_domains()) {
    const double R0 = outer_radius(d);
    for (cplx z : ring(1.2 * R0, 5, 0.4)) {
      INFO(kind_name(d));
      const cplx v = exp_transform_quadrature(d, z, z).value;
      CHECK(std::abs(v.imag()) < 1e-12);
      CHECK(v.real() > 0.0);
      CHECK(v.real() < 1.0);
    }
  }
}

TEST_CASE("large-w expansion recovers the Cauchy transform") {
  // conj(w) (1 - E(z, w)) = C(z) + O(1/|w|); combining |w| = 1e3 and 1e4 on
  // one ray cancels the first correction.
  for (const DomainSpec& d : stock_domains()) {
    const double R0 = outer_radius(d);
    const cplx z = std::polar(1.4 * R0, 0.7);
    const cplx dir = std::polar(1.0, 2.1);
    auto g = [&](double s) {
      const cplx w = s * dir;
      return std::conj(w) * (1.0 - exp_transform_quadrature(d, z, w).value);
    };
    const cplx extrapolated = (10.0 * g(1e4) - g(1e3)) / 9.0;
    const cplx c = cauchy_transform(d, z).value;
    INFO(kind_name(d));
    CHECK(std::abs(extrapolated - c) <= 1e-4);
    CHECK(std::abs(g(1e4) - c) <= 1e-3);
  }
}

TEST_CASE("quadrature, closed forms and moments agree") {
  const std::vector<DomainSpec> domains{make_disk(cplx(0.3, -0.2), 1.3), make_annulus(1.0, 1.5), make_ellipse(2.0, 1.0)};
  for (const DomainSpec& d : domains) {
    const double R0 = outer_radius(d);
    const MomentTable t = moment_table(d, 60);
    for (cplx z : ring(2.0 * R0, 3, 0.2))
      for (cplx w : ring(2.3 * R0, 2, 1.0)) {
        INFO(kind_name(d));
        const TransformSample q = exp_transform_quadrature(d, z, w);
        const TransformSample m = exp_transform_moments(t, z, w);
        const cplx c = exp_transform_closed(d, z, w);
        CHECK(std::abs(q.value - c) <= std::max(1e-9, 10.0 * q.est_error));
        CHECK(std::abs(m.value - c) <= std::max(1e-9, 10.0 * m.est_error));
      }
  }
}

TEST_CASE("exterior rational transforms") {
  const DomainSpec d = make_circular({0.0, 3.0}, {{cplx(1.2, 0.0), 0.6}, {cplx(-1.0, 0.5), 0.8}});
  const HermitianRational E = exterior_rational(d);
  CHECK(E.region == "unbounded");
  for (cplx z : ring(3.3, 3, 0.1))
    for (cplx w : ring(5.0, 3, 0.9)) CHECK(rel(E(z, w), exp_transform_closed(d, z, w)) < 1e-12);
  CHECK_THROWS_AS(exterior_rational(make_ellipse(2.0, 1.0)), Error);
}

TEST_CASE("pushforward examples") {
  const HermitianRational E1 = exterior_rational(make_disk(0.0, 1.0));
  const RationalFn sq(Poly{0.0, 0.0, 1.0});
  CHECK(std::abs(pushforward_transform(E1, sq, 2.0, 2.0) - 0.5625) < 1e-12);
  CHECK(std::abs(pushforward_root(E1, sq, 2.0, 2.0) - 0.75) < 1e-12);

  const cplx z{1.3, -0.8}, w{0.2, 1.9};
  const HermitianRational one{HermPoly2::constant(1.0), HermPoly2::constant(1.0)};
  CHECK(std::abs(pushforward_transform(one, sq, z, w) - 1.0) < 1e-12);
  CHECK(std::abs(pushforward_transform(one, RationalFn(Poly{1.0, 2.0, 0.5}, Poly{3.0, 1.0}), z, w) - 1.0) < 1e-12);

  const HermitianRational Ea = exterior_rational(make_annulus(0.5, 1.0));
  const RationalFn id(Poly{0.0, 1.0});
  CHECK(rel(pushforward_transform(Ea, id, z, w), Ea(z, w)) < 1e-12);
  CHECK(rel(pushforward_root(Ea, id, z, w), Ea(z, w)) < 1e-12);
}

TEST_CASE("symbolic pushforward is the squared disk transform") {
  const HermitianRational E1 = exterior_rational(make_disk(0.0, 1.0));
  const HermitianRational P = pushforward_symbolic(E1, RationalFn(Poly{0.0, 0.0, 1.0}));
  // ((z w* - 1) / (z w*))^2 as an identity of coefficient matrices.
  Eigen::MatrixXcd num = Eigen::MatrixXcd::Zero(3, 3), den = Eigen::MatrixXcd::Zero(3, 3);
  num(0, 0) = 1.0;
  num(1, 1) = -2.0;
  num(2, 2) = 1.0;
  den(2, 2) = 1.0;
  const HermPoly2 ref_num(num), ref_den(den);
  const HermPoly2 lhs = P.num * ref_den, rhs = ref_num * P.den;
  const double scale = std::max(lhs.coeff().cwiseAbs().maxCoeff(), rhs.coeff().cwiseAbs().maxCoeff());
  CHECK(herm_distance(lhs * (1.0 / scale), rhs * (1.0 / scale)) <= 1e-10);
  for (cplx z : ring(1.7, 3, 0.2))
    for (cplx w : ring(2.4, 2, 0.5)) CHECK(rel(P(z, w), disk_squared_ref(z, w)) < 1e-10);
}
