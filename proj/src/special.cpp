#include "expt/special.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

#include "expt/moments.hpp"
#include "expt/quadrature.hpp"

namespace expt {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

double lanczos_sum(double xm1) {
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (xm1 + i);
  return a;
}

}  // namespace

double gamma_fn(double x) {
  if (is_pole(x)) throw Error("pole of the gamma function");
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  if (x > 140.0) return std::exp(lgamma_fn(x));
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, xm1 + 0.5) * std::exp(-t) * lanczos_sum(xm1);
}

double lgamma_fn(double x) {
  if (!(x > 0.0)) throw Error("log gamma needs a positive argument");
  if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - lgamma_fn(1.0 - x);
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm1));
}

double pochhammer(double a, int k) {
  if (k < 0) throw Error("pochhammer needs k >= 0");
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= a + i;
  return r;
}

double pochhammer_ratio(double a, double x) {
  if (!(a > 0.0) || !(a + x > 0.0)) throw Error("pochhammer ratio needs positive arguments");
  return std::exp(lgamma_fn(a + x) - lgamma_fn(a));
}

// ---------------------------------------------------------------------------
// Gauss-Jacobi

namespace {

GaussRule golub_welsch(int n, double p, double q) {
  // Jacobi weight (1-t)^al (1+t)^be on [-1, 1] with u = (1+t)/2.
  const double al = q - 1.0, be = p - 1.0;
  const double ab = al + be;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    J(k, k) = k == 0 ? (be - al) / (ab + 2.0) : (be * be - al * al) / (s * (s + 2.0));
    if (k + 1 < n) {
      const int j = k + 1;
      const double sj = 2.0 * j + ab;
      const double b2 = j == 1 ? 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                               : 4.0 * j * (j + al) * (j + be) * (j + ab) / (sj * sj * (sj + 1.0) * (sj - 1.0));
      J(k, j) = J(j, k) = std::sqrt(b2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  // Weights on [0, 1] sum to B(p, q).
  const double beta = std::exp(lgamma_fn(p) + lgamma_fn(q) - lgamma_fn(p + q));
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    r.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 + es.eigenvalues()(i));
    const double v = es.eigenvectors()(0, i);
    r.weights[static_cast<std::size_t>(i)] = beta * v * v;
  }
  return r;
}

}  // namespace

GaussRule gauss_jacobi01(int n, double p, double q) {
  if (n < 1) throw Error("quadrature rule needs at least one node");
  if (!(p > 0.0) || !(q > 0.0)) throw Error("Jacobi weight exponents must exceed -1");
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, GaussRule> cache;
  const auto key = std::make_tuple(n, p, q);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  GaussRule r = golub_welsch(n, p, q);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(r)).first->second;
}

// ---------------------------------------------------------------------------
// Appell F2

namespace {

struct KahanC {
  cplx sum{}, comp{};
  void add(cplx v) {
    const cplx y = v - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Whether 1 - x u - y v meets (-inf, 0] for some (u, v) in the unit square.
bool square_hits_cut(cplx x, cplx y) {
  const cplx v[4] = {1.0, 1.0 - x, 1.0 - x - y, 1.0 - y};
  for (int i = 0; i < 4; ++i) {
    const cplx p = v[i], q = v[(i + 1) % 4];
    if (p.imag() == 0.0 && q.imag() == 0.0) {
      if (std::min(p.real(), q.real()) <= 0.0) return true;
      continue;
    }
    if ((p.imag() <= 0.0 && q.imag() >= 0.0) || (p.imag() >= 0.0 && q.imag() <= 0.0)) {
      const double t = -p.imag() / (q.imag() - p.imag());
      if (p.real() + t * (q.real() - p.real()) <= 0.0) return true;
    }
  }
  // 0 strictly inside the parallelogram is caught by the edge test above,
  // since the ray from 0 must leave it.
  return false;
}

double f2_prefactor(double b, double bp, double c, double cp) {
  return std::exp(lgamma_fn(c) + lgamma_fn(cp) - lgamma_fn(b) - lgamma_fn(bp) - lgamma_fn(c - b) - lgamma_fn(cp - bp));
}

}  // namespace

cplx appell_f2_series(const F2Params& P, double tol) {
  if (is_pole(P.c) || is_pole(P.cp)) throw Error("F2 lower parameters must not be nonpositive integers");
  if (!(std::abs(P.x) + std::abs(P.y) < 0.98)) throw NumericError("F2 series outside its convergence domain");
  // row[k] holds the term with indices (k, n-k) of the current shell.
  std::vector<cplx> row{1.0};
  KahanC total;
  total.add(1.0);
  int quiet = 0, growth = 0;
  double last = 1.0;
  for (int n = 0; n < 20000; ++n) {
    std::vector<cplx> next(static_cast<std::size_t>(n + 2));
    for (int k = 0; k <= n; ++k) {
      const int m = n - k;
      next[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k)] * (P.a + n) * (P.bp + m) / ((P.cp + m) * (m + 1.0)) * P.y;
    }
    next[static_cast<std::size_t>(n + 1)] = row[static_cast<std::size_t>(n)] * (P.a + n) * (P.b + n) / ((P.c + n) * (n + 1.0)) * P.x;
    KahanC shell;
    for (cplx t : next) shell.add(t);
    total.add(shell.sum);
    row = std::move(next);
    const double mag = std::abs(shell.sum);
    growth = (mag > last && n > 50) ? growth + 1 : 0;
    if (growth >= 5) throw NumericError("F2 series diverges");
    last = mag;
    // A shell can cancel by accident, so also watch the largest term.
    double big = 0.0;
    for (cplx t : row) big = std::max(big, std::abs(t));
    quiet = (big * static_cast<double>(row.size()) <= 0.1 * tol * std::max(1.0, std::abs(total.sum))) ? quiet + 1 : 0;
    if (quiet >= 3) return total.sum;
  }
  throw NumericError("F2 series did not converge");
}

namespace {

// Integral of g(u) u^(p-1) (1-u)^(q-1) over [0, 1]. Each half is mapped so
// that its endpoint weight disappears: u = t^(1/p) on [0, 1/2] and
// 1 - u = t^(1/q) on [1/2, 1].
cplx jacobi_adaptive(const std::function<cplx(double)>& g, double p, double q, double tol) {
  const double tl = std::pow(0.5, p), tr = std::pow(0.5, q);
  const auto left = integrate_1d_complex(
      [&](double t) {
        const double u = std::pow(t, 1.0 / p);
        return g(u) * std::pow(1.0 - u, q - 1.0) / p;
      },
      0.0, tl, 0.1 * tol, tol, 4000);
  const auto right = integrate_1d_complex(
      [&](double t) {
        const double u = 1.0 - std::pow(t, 1.0 / q);
        return g(u) * std::pow(u, p - 1.0) / q;
      },
      0.0, tr, 0.1 * tol, tol, 4000);
  return left.value + right.value;
}

// The F2 double integral without its Gamma prefactor, by nested adaptive
// quadrature. Used when the integrand is nearly singular at a corner of the
// square and tensor rules converge too slowly.
cplx f2_integral_adaptive(const F2Params& P, double tol) {
  return jacobi_adaptive(
      [&](double u) {
        return jacobi_adaptive([&](double v) { return std::pow(1.0 - P.x * u - P.y * v, -P.a); }, P.bp, P.cp - P.bp,
                               tol);
      },
      P.b, P.c - P.b, tol);
}

}  // namespace

cplx appell_f2_integral(const F2Params& P, double tol) {
  if (!(P.b > 0.0) || !(P.bp > 0.0) || !(P.c - P.b > 0.0) || !(P.cp - P.bp > 0.0))
    throw Error("F2 integral needs b, b', c-b, c'-b' > 0");
  if (square_hits_cut(P.x, P.y)) throw RegionError("integrand pole inside square");
  const double C = f2_prefactor(P.b, P.bp, P.c, P.cp);
  cplx prev{};
  for (int n = 16; n <= 128; n *= 2) {
    const GaussRule ru = gauss_jacobi01(n, P.b, P.c - P.b);
    const GaussRule rv = gauss_jacobi01(n, P.bp, P.cp - P.bp);
    cplx s{};
    for (int i = 0; i < n; ++i) {
      cplx row{};
      for (int j = 0; j < n; ++j)
        row += rv.weights[static_cast<std::size_t>(j)] *
               std::pow(1.0 - P.x * ru.nodes[static_cast<std::size_t>(i)] - P.y * rv.nodes[static_cast<std::size_t>(j)], -P.a);
      s += ru.weights[static_cast<std::size_t>(i)] * row;
    }
    s *= C;
    if (n > 16 && std::abs(s - prev) <= tol * std::max(1.0, std::abs(s))) return s;
    prev = s;
  }
  return C * f2_integral_adaptive(P, tol);
}

F2Transformed f2_transform(const F2Params& P) {
  const cplx d = P.x + P.y - 1.0;
  if (std::abs(d) <= 1e-14) throw Error("F2 transformation undefined at x + y = 1");
  F2Transformed t;
  t.params = {P.a, P.c - P.b, P.cp - P.bp, P.c, P.cp, P.x / d, P.y / d};
  t.prefactor = std::pow(1.0 - P.x - P.y, -P.a);
  return t;
}

cplx appell_f2(const F2Params& P, double tol) {
  if (std::abs(P.x) + std::abs(P.y) <= 0.9) return appell_f2_series(P, tol);
  return appell_f2_integral(P, tol);
}

double hubbell_integral(double s, double t, double tol) {
  if (!(s >= 0.0) || !(t >= 0.0)) throw Error("Hubbell integral needs s, t >= 0");
  if (s == 0.0 || t == 0.0) return 0.0;
  const auto r = integrate_1d(
      [t](double x) {
        const double q = std::sqrt(1.0 + x * x);
        return std::atan(t / q) / q;
      },
      0.0, s, tol, tol);
  return r.value;
}

// ---------------------------------------------------------------------------
// Bernoulli lemniscate

namespace {

void require_outside_sqrt2(cplx z, cplx w) {
  if (!(std::abs(z) > std::sqrt(2.0)) || !(std::abs(w) > std::sqrt(2.0)))
    throw RegionError("needs |z|, |w| > sqrt(2)");
}

cplx odd_arg(cplx z, cplx w) {
  const cplx wb = std::conj(w);
  return 1.0 - 1.0 / ((z * z - 1.0) * (wb * wb - 1.0));
}

}  // namespace

cplx bernoulli_s_odd(cplx z, cplx w) {
  const cplx g = odd_arg(z, w);
  if (g.real() <= 0.0 && std::abs(g.imag()) <= 1e-15 * std::abs(g)) throw RegionError("log argument on branch cut");
  return -0.5 * std::log(g);
}

cplx bernoulli_s_odd_series(cplx z, cplx w, int shells) {
  const cplx iz2 = 1.0 / (z * z), iw2 = 1.0 / (std::conj(w) * std::conj(w));
  KahanC s;
  for (int n = 0; n < shells; ++n)
    for (int k = 0; k <= n; ++k) {
      const int m = n - k;
      s.add(bernoulli_moment(2 * k + 1, 2 * m + 1) * std::pow(iz2, k + 1) * std::pow(iw2, m + 1));
    }
  return s.sum;
}

cplx bernoulli_s_even_series(cplx z, cplx w, int shells) {
  const cplx iz = 1.0 / z, iw = 1.0 / std::conj(w);
  KahanC s;
  for (int n = 0; n < shells; ++n)
    for (int k = 0; k <= n; ++k) {
      const int m = n - k;
      s.add(bernoulli_moment(2 * k, 2 * m) * std::pow(iz, 2 * k + 1) * std::pow(iw, 2 * m + 1));
    }
  return s.sum;
}

std::pair<cplx, cplx> bernoulli_hubbell_args(cplx z, cplx w) {
  const cplx wb = std::conj(w);
  const cplx q = 1.0 - 1.0 / (z * z) - 1.0 / (wb * wb);
  if (q.real() <= 0.0 && std::abs(q.imag()) <= 1e-15 * std::abs(q)) throw RegionError("square root argument on branch cut");
  const cplx r = 1.0 / std::sqrt(q);
  return {r / z, r / wb};
}

cplx bernoulli_s_even(cplx z, cplx w, SEvenMethod method) {
  require_outside_sqrt2(z, w);
  const cplx wb = std::conj(w);
  switch (method) {
    case SEvenMethod::f2: {
      const F2Params P{1.0, 1.0, 1.0, 1.5, 1.5, 1.0 / (z * z), 1.0 / (wb * wb)};
      return 2.0 / (kPi * z * wb) * appell_f2(P);
    }
    case SEvenMethod::hubbell: {
      if (std::abs(z.imag()) > 1e-14 * std::abs(z) || std::abs(w.imag()) > 1e-14 * std::abs(w))
        throw RegionError("Hubbell route needs real arguments");
      const auto [s, t] = bernoulli_hubbell_args(z.real(), w.real());
      const double sr = s.real(), tr = t.real();
      const double sign = (sr < 0.0) != (tr < 0.0) ? -1.0 : 1.0;
      return sign * 2.0 / kPi * hubbell_integral(std::abs(sr), std::abs(tr));
    }
    case SEvenMethod::series: {
      // Shells decay like (|z|^-2 + |w|^-2)^n.
      const double rho = 1.0 / std::norm(z) + 1.0 / std::norm(w);
      const int shells = std::clamp(static_cast<int>(std::ceil(std::log(1e-17) / std::log(rho))) + 10, 10, 4000);
      return bernoulli_s_even_series(z, w, shells);
    }
  }
  throw Error("unknown method");
}

cplx bernoulli_exp_transform(cplx z, cplx w, SEvenMethod method) {
  require_outside_sqrt2(z, w);
  return std::sqrt(odd_arg(z, w)) * std::exp(-bernoulli_s_even(z, w, method));
}

cplx bernoulli_cauchy(cplx z) {
  if (!(std::abs(z) > std::sqrt(2.0))) throw RegionError("needs |z| > sqrt(2)");
  const cplx iz = 1.0 / z;
  return 2.0 * std::asin(iz) / (kPi * std::sqrt(1.0 - iz * iz));
}

cplx bernoulli_cauchy_series(cplx z, int terms) {
  const cplx iz = 1.0 / z;
  KahanC s;
  for (int k = 0; k < terms; ++k) s.add(bernoulli_even_moment(k) * std::pow(iz, 2 * k + 1));
  return s.sum;
}

// ---------------------------------------------------------------------------
// Rose lemniscate

cplx rose_s_lambda(int n, int lambda, cplx x, cplx y, RoseRoute route) {
  if (n < 2 || lambda < 0 || lambda >= n) throw Error("rose index out of range");
  const double l = (1.0 + lambda) / n;
  const double pref = std::exp(lgamma_fn(2.0 * l) - 2.0 * lgamma_fn(1.0 + l));
  const F2Params P{2.0 * l, 1.0, 1.0, l + 1.0, l + 1.0, x, y};
  switch (route) {
    case RoseRoute::series:
      return pref * appell_f2_series(P);
    case RoseRoute::transformed: {
      const F2Transformed T = f2_transform(P);
      return pref * T.prefactor * appell_f2_integral(T.params);
    }
    case RoseRoute::substituted: {
      const F2Transformed T = f2_transform(P);
      const cplx xp = T.params.x, yp = T.params.y;
      if (square_hits_cut(xp, yp)) throw RegionError("integrand pole inside square");
      cplx prev{};
      for (int m = 16; m <= 512; m *= 2) {
        const GaussRule g = gauss_jacobi01(m, 1.0, 1.0);
        cplx s{};
        for (int i = 0; i < m; ++i) {
          const double u = std::pow(g.nodes[static_cast<std::size_t>(i)], 1.0 / l);
          cplx row{};
          for (int j = 0; j < m; ++j) {
            const double v = std::pow(g.nodes[static_cast<std::size_t>(j)], 1.0 / l);
            row += g.weights[static_cast<std::size_t>(j)] * std::pow(1.0 - xp * u - yp * v, -2.0 * l);
          }
          s += g.weights[static_cast<std::size_t>(i)] * row;
        }
        s *= pref * std::pow(1.0 - xp - yp, 2.0 * l);
        if (m > 16 && std::abs(s - prev) <= 1e-13 * std::max(1.0, std::abs(s))) return s;
        prev = s;
      }
      throw NumericError("rose integral did not converge");
    }
  }
  throw Error("unknown route");
}

}  // namespace expt
