#include "expt/moments.hpp"

#include <cmath>
#include <variant>

#include "expt/special.hpp"

namespace expt {

namespace {

double binom(int n, int k) { return std::exp(lgamma_fn(n + 1.0) - lgamma_fn(k + 1.0) - lgamma_fn(n - k + 1.0)); }

void symmetrize(MomentTable& t) {
  t.asymmetry = (t.M - t.M.adjoint()).cwiseAbs().maxCoeff();
  t.M = (0.5 * (t.M + t.M.adjoint())).eval();
}

}  // namespace

cplx disk_moment(cplx a, double R, int p, int q) {
  cplx s{};
  for (int i = 0; i <= std::min(p, q); ++i)
    s += binom(p, i) * binom(q, i) * std::pow(a, p - i) * std::pow(std::conj(a), q - i) * std::pow(R, 2 * i + 2) / (i + 1.0);
  return s;
}

double bernoulli_moment(int p, int q) {
  if (p < 0 || q < 0) throw Error("moment indices must be nonnegative");
  if ((p + q) % 2 != 0) return 0.0;
  return 0.5 * std::exp(lgamma_fn((p + q) / 2.0 + 1.0) - lgamma_fn((p + 1) / 2.0 + 1.0) - lgamma_fn((q + 1) / 2.0 + 1.0));
}

double bernoulli_even_moment(int k) {
  if (k < 0) throw Error("moment index must be nonnegative");
  return std::exp((2 * k + 1) * std::log(2.0) + 2.0 * lgamma_fn(k + 1.0) - lgamma_fn(2 * k + 2.0)) / kPi;
}

double rose_moment(int n, int k, int m, int lambda) {
  if (n < 2) throw Error("rose order must be at least 2");
  if (lambda < 0 || lambda > n - 1) throw Error("lambda out of range");
  if (k < 0 || m < 0) throw Error("moment indices must be nonnegative");
  const double l = (1.0 + lambda) / n;
  return std::exp(lgamma_fn(k + m + 2.0 * l) - lgamma_fn(k + 1.0 + l) - lgamma_fn(m + 1.0 + l)) / n;
}

double rose_moment_ij(int n, int i, int j) {
  if (i < 0 || j < 0) throw Error("moment indices must be nonnegative");
  if ((i - j) % n != 0) return 0.0;
  return rose_moment(n, i / n, j / n, i % n);
}

int rose_order(const DomainSpec& d) {
  const auto* s = std::get_if<LemniscateSublevel>(&d);
  if (!s || s->f.den().degree() != 0 || s->f.den()[0] != cplx(1.0)) return 0;
  const Poly& A = s->f.num();
  const int n = A.degree();
  if (n < 2 || A[0] != cplx(-1.0) || A[n] != cplx(1.0)) return 0;
  for (int i = 1; i < n; ++i)
    if (A[i] != cplx{}) return 0;
  return n;
}

cplx moment_quadrature(const DomainSpec& d, int p, int q, const QuadOptions& opts) {
  if (p < 0 || q < 0) throw Error("moment indices must be nonnegative");
  const SliceRegion region = make_slice_region(d, opts.resolution);
  const double rho = outer_radius(d);
  const auto r = integrate_region(
      region, 1,
      [p, q, rho](cplx z, std::span<cplx> out) {
        const cplx u = z / rho;
        out[0] = std::pow(u, p) * std::pow(std::conj(u), q) / kPi;
      },
      opts);
  return r.value[0] * std::pow(rho, p + q);
}

MomentTable moment_table_quadrature(const DomainSpec& d, int maxdeg, const QuadOptions& opts) {
  if (maxdeg < 0) throw Error("maxdeg must be nonnegative");
  const int n = maxdeg + 1;
  const SliceRegion region = make_slice_region(d, opts.resolution);
  // The tolerances apply to the moments of the domain scaled into the unit
  // disk, whose sizes are comparable for all p, q.
  const double rho = outer_radius(d);
  const auto r = integrate_region(
      region, n * n,
      [n, rho](cplx zeta, std::span<cplx> out) {
        const cplx z = zeta / rho;
        const cplx zb = std::conj(z);
        cplx zp = 1.0 / kPi;
        for (int p = 0; p < n; ++p) {
          cplx v = zp;
          for (int q = 0; q < n; ++q) {
            out[static_cast<std::size_t>(p * n + q)] = v;
            v *= zb;
          }
          zp *= z;
        }
      },
      opts);
  MomentTable t;
  t.maxdeg = maxdeg;
  t.source = MomentSource::quadrature;
  t.radius = outer_radius(d);
  t.M.resize(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) t.M(p, q) = r.value[static_cast<std::size_t>(p * n + q)] * std::pow(rho, p + q);
  symmetrize(t);
  return t;
}

MomentTable moment_table(const DomainSpec& d, int maxdeg, const QuadOptions& opts, bool closed_form) {
  if (maxdeg < 0) throw Error("maxdeg must be nonnegative");
  const int n = maxdeg + 1;
  MomentTable t;
  t.maxdeg = maxdeg;
  t.M = Eigen::MatrixXcd::Zero(n, n);
  auto disks = [&](const Disk& outer, const std::vector<Disk>& holes) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        cplx v = disk_moment(outer.a, outer.R, p, q);
        for (const Disk& h : holes) v -= disk_moment(h.a, h.R, p, q);
        t.M(p, q) = v;
      }
  };
  if (!closed_form) return moment_table_quadrature(d, maxdeg, opts);
  if (const auto* k = std::get_if<Disk>(&d)) {
    disks(*k, {});
  } else if (const auto* k = std::get_if<Annulus>(&d)) {
    disks(Disk{0.0, k->R}, {Disk{0.0, k->r}});
  } else if (const auto* k = std::get_if<CircularDomain>(&d)) {
    disks(k->outer, k->holes);
  } else if (const int order = rose_order(d)) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) t.M(p, q) = rose_moment_ij(order, p, q);
  } else {
    return moment_table_quadrature(d, maxdeg, opts);
  }
  t.source = MomentSource::closed_form;
  t.radius = outer_radius(d);
  symmetrize(t);
  return t;
}

int QuadratureData::order() const {
  int s = 0;
  for (const QuadNode& k : nodes) s += static_cast<int>(k.c.size());
  return s;
}

double quadrature_identity_check(const DomainSpec& d, const QuadratureData& Q, int maxdeg, const QuadOptions& opts) {
  if (maxdeg < 0) throw Error("maxdeg must be nonnegative");
  const int n = maxdeg + 1;
  const SliceRegion region = make_slice_region(d, opts.resolution);
  const auto r = integrate_region(
      region, n,
      [n](cplx z, std::span<cplx> out) {
        cplx v = 1.0;
        for (int m = 0; m < n; ++m) {
          out[static_cast<std::size_t>(m)] = v;
          v *= z;
        }
      },
      opts);
  double worst = 0.0;
  for (int m = 0; m < n; ++m) {
    cplx s{};
    for (const QuadNode& node : Q.nodes)
      for (std::size_t j = 0; j < node.c.size(); ++j) {
        // j-th derivative of z^m
        const int jj = static_cast<int>(j);
        if (jj > m) continue;
        double falling = 1.0;
        for (int i = 0; i < jj; ++i) falling *= m - i;
        s += node.c[j] * falling * std::pow(node.z, m - jj);
      }
    worst = std::max(worst, std::abs(r.value[static_cast<std::size_t>(m)] - s));
  }
  return worst;
}

}  // namespace expt
