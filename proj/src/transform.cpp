#include "expt/transform.hpp"

#include <cmath>
#include <variant>

#include "expt/analysis.hpp"
#include "expt/resultant.hpp"
#include "expt/special.hpp"

namespace expt {

std::string method_name(Method m) {
  switch (m) {
    case Method::quadrature: return "quadrature";
    case Method::moments: return "moments";
    case Method::closed_form: return "closed";
    case Method::pushforward: return "pushforward";
  }
  return "unknown";
}

TransformSample exp_transform_quadrature(const DomainSpec& d, cplx z, cplx w, const QuadOptions& opts) {
  return exp_transform_quadrature_grid(d, {z}, {w}, opts)[0][0];
}

std::vector<std::vector<TransformSample>> exp_transform_quadrature_grid(const DomainSpec& d,
                                                                        const std::vector<cplx>& zs,
                                                                        const std::vector<cplx>& ws,
                                                                        const QuadOptions& opts) {
  for (cplx z : zs) require_exterior(d, z);
  for (cplx w : ws) require_exterior(d, w);
  const std::size_t nz = zs.size(), nw = ws.size();
  const SliceRegion region = make_slice_region(d, opts.resolution);
  const auto r = integrate_region(
      region, static_cast<int>(nz * nw),
      [&](cplx zeta, std::span<cplx> out) {
        std::vector<cplx> b(nw);
        for (std::size_t j = 0; j < nw; ++j) b[j] = 1.0 / (std::conj(zeta) - std::conj(ws[j]));
        for (std::size_t i = 0; i < nz; ++i) {
          const cplx a = -1.0 / (kPi * (zeta - zs[i]));
          for (std::size_t j = 0; j < nw; ++j) out[i * nw + j] = a * b[j];
        }
      },
      opts);
  std::vector<std::vector<TransformSample>> out(nz, std::vector<TransformSample>(nw));
  for (std::size_t i = 0; i < nz; ++i)
    for (std::size_t j = 0; j < nw; ++j) {
      const cplx e = std::exp(r.value[i * nw + j]);
      out[i][j] = {zs[i], ws[j], e, Method::quadrature, std::abs(e) * r.error[i * nw + j]};
    }
  return out;
}

Estimate cauchy_transform(const DomainSpec& d, cplx z, const QuadOptions& opts) {
  require_exterior(d, z);
  const SliceRegion region = make_slice_region(d, opts.resolution);
  const auto r = integrate_region(
      region, 1, [z](cplx zeta, std::span<cplx> out) { out[0] = -1.0 / (kPi * (zeta - z)); }, opts);
  return {r.value[0], r.error[0]};
}

cplx cauchy_closed(const DomainSpec& d, cplx z) {
  auto disk = [z](const Disk& k) {
    if (std::abs(z - k.a) <= k.R) throw RegionError("evaluation point in domain");
    return k.R * k.R / (z - k.a);
  };
  if (const auto* k = std::get_if<Disk>(&d)) return disk(*k);
  if (const auto* k = std::get_if<Annulus>(&d)) {
    if (std::abs(z) <= k->R) throw RegionError("no closed form at this point");
    return (k->R * k->R - k->r * k->r) / z;
  }
  if (const auto* k = std::get_if<CircularDomain>(&d)) {
    cplx s = disk(k->outer);
    for (const Disk& h : k->holes) s -= h.R * h.R / (z - h.a);
    return s;
  }
  if (rose_order(d) == 2) {
    if (std::abs(z) <= std::sqrt(2.0)) throw RegionError("no closed form at this point");
    return bernoulli_cauchy(z);
  }
  throw RegionError("no closed form for domain kind " + kind_name(d));
}

TransformSample exp_transform_moments(const MomentTable& t, cplx z, cplx w, int shells, double tol) {
  if (std::abs(z) <= t.radius || std::abs(w) <= t.radius) throw RegionError("outside convergence region");
  const int n = t.maxdeg + 1;
  if (shells > n) throw Error("moment table too small for the requested shells");
  const cplx iz = 1.0 / z, iw = 1.0 / std::conj(w);
  std::vector<cplx> pz(static_cast<std::size_t>(n)), pw(static_cast<std::size_t>(n));
  pz[0] = iz;
  pw[0] = iw;
  for (int k = 1; k < n; ++k) {
    pz[static_cast<std::size_t>(k)] = pz[static_cast<std::size_t>(k - 1)] * iz;
    pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k - 1)] * iw;
  }
  const int last = shells > 0 ? shells : n;
  cplx sum{};
  double shell_mag = 0.0, prev = -1.0;
  int quiet = 0, growth = 0;
  for (int s = 0; s < last; ++s) {
    cplx shell{};
    for (int p = 0; p <= s; ++p) shell += t.M(p, s - p) * pz[static_cast<std::size_t>(p)] * pw[static_cast<std::size_t>(s - p)];
    sum += shell;
    shell_mag = std::abs(shell);
    growth = (prev >= 0.0 && shell_mag > prev && shell_mag > tol) ? growth + 1 : 0;
    if (growth >= 5) throw RegionError("outside convergence region");
    prev = shell_mag;
    if (shells == 0) {
      quiet = shell_mag < tol / 10 ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
  }
  const cplx e = std::exp(-sum);
  return {z, w, e, Method::moments, std::abs(e) * shell_mag};
}

namespace {

enum class Side { inside, outside };

Side circle_side(cplx a, double R, cplx z) {
  const double r = std::abs(z - a);
  if (std::abs(r - R) <= 1e-12 * R) throw RegionError("point on the boundary circle");
  return r < R ? Side::inside : Side::outside;
}

// A disk transform branch written as rest * (z - w)^alpha * conj(z - w)^beta.
struct Factored {
  cplx rest = 1.0;
  int alpha = 0;
  int beta = 0;
};

void require_nonzero(cplx den) {
  if (den == cplx{} || !std::isfinite(std::abs(den))) throw RegionError("pole of closed form");
}

Factored disk_factored(cplx a, double R, cplx z, cplx w) {
  const Side sz = circle_side(a, R, z), sw = circle_side(a, R, w);
  const cplx u = z - a, v = std::conj(w - a);
  Factored f;
  if (sz == Side::outside && sw == Side::outside) {
    require_nonzero(u * v);
    f.rest = 1.0 - R * R / (u * v);
  } else if (sz == Side::inside && sw == Side::outside) {
    require_nonzero(v);
    f.rest = -1.0 / v;
    f.beta = 1;
  } else if (sz == Side::outside && sw == Side::inside) {
    require_nonzero(u);
    f.rest = 1.0 / u;
    f.alpha = 1;
  } else {
    const cplx den = R * R - u * v;
    require_nonzero(den);
    f.rest = 1.0 / den;
    f.alpha = f.beta = 1;
  }
  return f;
}

cplx ipow(cplx x, int k) {
  cplx r = 1.0;
  for (int i = 0; i < std::abs(k); ++i) r *= x;
  return k < 0 ? 1.0 / r : r;
}

cplx assemble(const Factored& f, cplx z, cplx w) {
  if ((f.alpha < 0 || f.beta < 0) && z == w) throw RegionError("pole of closed form");
  return f.rest * ipow(z - w, f.alpha) * ipow(std::conj(z - w), f.beta);
}

}  // namespace

cplx disk_transform(cplx a, double R, cplx z, cplx w) {
  if (!(R > 0.0)) throw Error("disk radius must be positive");
  return assemble(disk_factored(a, R, z, w), z, w);
}

cplx circular_domain_transform(const CircularDomain& d, cplx z, cplx w) {
  Factored total = disk_factored(d.outer.a, d.outer.R, z, w);
  for (const Disk& h : d.holes) {
    const Factored f = disk_factored(h.a, h.R, z, w);
    total.rest /= f.rest;
    total.alpha -= f.alpha;
    total.beta -= f.beta;
  }
  return assemble(total, z, w);
}

cplx annulus_transform(double r, double R, cplx z, cplx w) {
  if (r == R) return 1.0;
  return circular_domain_transform(CircularDomain{Disk{0.0, R}, {Disk{0.0, r}}}, z, w);
}

cplx ellipse_transform(double a, double b, cplx z, cplx w) {
  if (!(0.0 < b && b < a)) throw Error("ellipse needs 0 < b < a");
  auto side = [a, b](cplx p) {
    const double q = std::norm(p.real() / a) + std::norm(p.imag() / b);
    if (std::abs(q - 1.0) <= 1e-12) throw RegionError("point on the ellipse");
    return q < 1.0 ? Side::inside : Side::outside;
  };
  const Side sz = side(z), sw = side(w);
  const double k = (a + b) / (a - b);
  const cplx wb = std::conj(w);
  auto quotient = [](cplx num, cplx den) {
    require_nonzero(den);
    return num / den;
  };
  if (sz == Side::outside && sw == Side::outside)
    return -k * quotient(z - std::conj(schwarz_ellipse(a, b, w, SchwarzBranch::minus)),
                         wb - schwarz_ellipse(a, b, z, SchwarzBranch::plus));
  if (sz == Side::outside) return -k * quotient(z - w, wb - schwarz_ellipse(a, b, z, SchwarzBranch::plus));
  if (sw == Side::outside)
    return k * quotient(std::conj(z) - wb, z - std::conj(schwarz_ellipse(a, b, w, SchwarzBranch::plus)));
  // The product (conj(w) - S+(z))(conj(w) - S-(z)) is a polynomial, so the
  // focal segment needs no special care here.
  const double c2 = a * a - b * b;
  const cplx den = c2 * z * z + c2 * wb * wb - 2.0 * (a * a + b * b) * z * wb + 4.0 * a * a * b * b;
  return (a + b) * (a + b) * quotient(std::norm(z - w), den);
}

cplx exp_transform_closed(const DomainSpec& d, cplx z, cplx w) {
  if (const auto* k = std::get_if<Disk>(&d)) return disk_transform(k->a, k->R, z, w);
  if (const auto* k = std::get_if<Annulus>(&d)) return annulus_transform(k->r, k->R, z, w);
  if (const auto* k = std::get_if<CircularDomain>(&d)) return circular_domain_transform(*k, z, w);
  if (const auto* k = std::get_if<Ellipse>(&d)) return ellipse_transform(k->a, k->b, z, w);
  if (rose_order(d) == 2) {
    const double r = std::sqrt(2.0);
    if (std::abs(z) <= r || std::abs(w) <= r) throw RegionError("no closed form at this point");
    return bernoulli_exp_transform(z, w);
  }
  throw RegionError("no closed form for domain kind " + kind_name(d));
}

cplx HermitianRational::operator()(cplx z, cplx w) const {
  const cplx q = den(z, w);
  if (q == cplx{}) throw RegionError("pole of rational transform");
  return num(z, w) / q;
}

namespace {

// (z - a)(conj(w) - conj(a)) - s and (z - a)(conj(w) - conj(a)).
HermPoly2 disk_herm(cplx a, double s) {
  Eigen::MatrixXcd m(2, 2);
  m(0, 0) = std::norm(a) - s;
  m(0, 1) = -a;
  m(1, 0) = -std::conj(a);
  m(1, 1) = 1.0;
  return HermPoly2(m);
}

}  // namespace

HermitianRational exterior_rational(const DomainSpec& d) {
  HermitianRational E;
  auto circles = [&E](const Disk& outer, const std::vector<Disk>& holes) {
    E.num = disk_herm(outer.a, outer.R * outer.R);
    E.den = disk_herm(outer.a, 0.0);
    for (const Disk& h : holes) {
      E.num = E.num * disk_herm(h.a, 0.0);
      E.den = E.den * disk_herm(h.a, h.R * h.R);
    }
  };
  if (const auto* k = std::get_if<Disk>(&d))
    circles(*k, {});
  else if (const auto* k = std::get_if<Annulus>(&d))
    circles(Disk{0.0, k->R}, {Disk{0.0, k->r}});
  else if (const auto* k = std::get_if<CircularDomain>(&d))
    circles(k->outer, k->holes);
  else
    throw Error("no rational exterior transform known for domain kind " + kind_name(d));
  return E;
}

namespace {

// E1(xi, .) as a rational function of u = conj(eta), or its limit as xi
// tends to infinity.
RationalFn slice_at(const HermitianRational& E1, SpherePoint xi) {
  if (!xi.infinite) return RationalFn(E1.num.at_z(xi.value), E1.den.at_z(xi.value));
  const int dn = E1.num.degree(), dd = E1.den.degree();
  // The top z-rows give the limit only when the z-degrees agree.
  if (dn != dd) throw Error("resultant undefined (common divisor point)");
  auto top_row = [](const HermPoly2& p) {
    std::vector<cplx> c(static_cast<std::size_t>(p.degree() + 1));
    for (int j = 0; j <= p.degree(); ++j) c[static_cast<std::size_t>(j)] = p.coeff()(p.degree(), j);
    return Poly(c);
  };
  return RationalFn(top_row(E1.num), top_row(E1.den));
}

}  // namespace

cplx pushforward_transform(const HermitianRational& E1, const RationalFn& f, cplx z, cplx w) {
  f.require_lemniscate_map();
  const RationalFn inner_f(f.num().conj_coeffs() - std::conj(w) * f.den().conj_coeffs(), f.den().conj_coeffs());
  auto h = [&](SpherePoint xi) {
    const RationalFn g = slice_at(E1, xi);
    if (g.is_constant()) return g.leading_ratio();
    return meromorphic_resultant(inner_f, g);
  };
  const RationalFn outer_f(f.num() - z * f.den(), f.den());
  return divisor_product(divisor_of(outer_f), h);
}

cplx pushforward_root(const HermitianRational& E1, const RationalFn& f, cplx z, cplx w, int steps) {
  const int n = f.degree();
  if (n == 1) return pushforward_transform(E1, f, z, w);
  if (steps < 2) throw Error("root continuation needs at least two steps");
  const double s0 = 1e3;
  cplx prev = 1.0;
  for (int k = 0; k <= steps; ++k) {
    const double s = std::pow(s0, 1.0 - static_cast<double>(k) / steps);
    const cplx v = pushforward_transform(E1, f, s * z, s * w);
    const cplx r0 = std::pow(v, 1.0 / n);
    cplx best = r0;
    for (int j = 1; j < n; ++j) {
      const cplx cand = r0 * std::polar(1.0, 2.0 * kPi * j / n);
      if (std::abs(cand - prev) < std::abs(best - prev)) best = cand;
    }
    prev = best;
  }
  return prev;
}

HermitianRational pushforward_symbolic(const HermitianRational& E1, const RationalFn& f) {
  HermitianRational out;
  out.num = nested_resultant(f, E1.num);
  out.den = nested_resultant(f, E1.den);
  out.region = E1.region;
  return out;
}

}  // namespace expt
