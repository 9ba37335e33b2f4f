#include "expt/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace expt {

Poly::Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }

Poly Poly::constant(cplx c) { return Poly(std::vector<cplx>{c}); }

Poly Poly::monomial(int k, cplx c) {
  std::vector<cplx> v(static_cast<std::size_t>(k) + 1, cplx{});
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::from_roots(std::span<const cplx> roots, cplx leading) {
  Poly p = constant(leading);
  for (cplx r : roots) p *= Poly{-r, 1.0};
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

cplx Poly::operator[](int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return {};
  return c_[static_cast<std::size_t>(i)];
}

cplx Poly::leading() const { return c_.empty() ? cplx{} : c_.back(); }

cplx Poly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return Poly(std::move(d));
}

Poly Poly::conj_coeffs() const {
  std::vector<cplx> d(c_.size());
  std::transform(c_.begin(), c_.end(), d.begin(), [](cplx c) { return std::conj(c); });
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (c_.empty()) return {};
  Poly p = *this;
  const cplx lc = c_.back();
  for (auto& c : p.c_) c /= lc;
  p.c_.back() = 1.0;
  return p;
}

double Poly::norm() const {
  double s = 0.0;
  for (cplx c : c_) s += std::norm(c);
  return std::sqrt(s);
}

Poly Poly::chopped(double rel_tol) const {
  Poly p = *this;
  const double cut = rel_tol * norm();
  while (!p.c_.empty() && std::abs(p.c_.back()) <= cut) p.c_.pop_back();
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<cplx> r(c_.size() + o.c_.size() - 1, cplx{});
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(cplx s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

Poly poly_arith(const Poly& p, const Poly& q, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return p + q;
    case ArithOp::sub:
      return p - q;
    case ArithOp::mul:
      return p * q;
  }
  return {};
}

DivMod divmod(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw NumericError("polynomial division by zero");
  const int n = p.degree();
  const int m = q.degree();
  if (n < m) return {Poly{}, p};
  std::vector<cplx> rem(p.coeffs().begin(), p.coeffs().end());
  std::vector<cplx> quo(static_cast<std::size_t>(n - m) + 1, cplx{});
  const cplx lc = q.leading();
  for (int k = n - m; k >= 0; --k) {
    const cplx t = rem[static_cast<std::size_t>(k + m)] / lc;
    quo[static_cast<std::size_t>(k)] = t;
    for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k + j)] -= t * q[j];
    rem[static_cast<std::size_t>(k + m)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(m));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

bool approx_equal(const Poly& p, const Poly& q, double tol) {
  const int n = std::max(p.degree(), q.degree());
  double scale = 1.0;
  double diff = 0.0;
  for (int i = 0; i <= n; ++i) {
    scale = std::max({scale, std::abs(p[i]), std::abs(q[i])});
    diff = std::max(diff, std::abs(p[i] - q[i]));
  }
  return diff <= tol * scale;
}

namespace {

std::vector<cplx> aberth(const Poly& p, int max_iter) {
  const int n = p.degree();
  const Poly dp = p.derivative();
  const auto c = p.coeffs();

  const cplx center = -c[static_cast<std::size_t>(n - 1)] / (static_cast<double>(n) * c.back());
  double radius = std::pow(std::abs(p(center) / c.back()), 1.0 / n);
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1e-3 * std::max(1.0, std::abs(center));

  std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(n));
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * k / n + 0.4 + jitter(rng);
    z[static_cast<std::size_t>(k)] = center + std::polar(radius, theta);
  }

  // Backward-error stopping test: |p(z)| below rounding level of the Horner sum.
  auto rounding_level = [&](cplx zz) {
    const double az = std::abs(zz);
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * az + std::abs(*it);
    return 8.0 * std::numeric_limits<double>::epsilon() * s;
  };

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int it = 0; it < max_iter; ++it) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      if (done[ku]) continue;
      const cplx pv = p(z[ku]);
      if (std::abs(pv) <= rounding_level(z[ku])) {
        done[ku] = true;
        continue;
      }
      all_done = false;
      const cplx ratio = pv / dp(z[ku]);
      cplx s{};
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const cplx d = z[ku] - z[static_cast<std::size_t>(j)];
        if (d != cplx{}) s += 1.0 / d;
      }
      cplx corr = ratio / (1.0 - ratio * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = ratio;
      z[ku] -= corr;
      if (std::abs(corr) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(z[ku])) done[ku] = true;
    }
    if (all_done) break;
  }
  return z;
}

struct DisjointSet {
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

std::vector<std::vector<cplx>> link_clusters(const std::vector<cplx>& pts, double radius) {
  DisjointSet ds(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) <= radius) ds.unite(i, j);
  std::vector<std::vector<cplx>> groups;
  std::vector<long> slot(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t r = ds.find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(pts[i]);
  }
  return groups;
}

double diameter(const std::vector<cplx>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

cplx centroid(const std::vector<cplx>& pts) {
  cplx s{};
  for (cplx p : pts) s += p;
  return s / static_cast<double>(pts.size());
}

// A root of multiplicity m is a simple root of the (m-1)-th derivative, so
// Newton there converges quadratically from the cluster centroid. The step is
// kept only if it stays inside the cluster.
cplx polish_multiple(const Poly& p, cplx z, int m, double radius) {
  Poly d = p;
  for (int k = 1; k < m; ++k) d = d.derivative();
  const Poly dd = d.derivative();
  cplx x = z;
  for (int it = 0; it < 8; ++it) {
    const cplx den = dd(x);
    if (den == cplx{}) break;
    const cplx step = d(x) / den;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return std::isfinite(x.real()) && std::isfinite(x.imag()) && std::abs(x - z) <= radius ? x : z;
}

}  // namespace

std::vector<Root> poly_roots(const Poly& p, const RootOptions& opts) {
  if (p.is_zero()) throw NumericError("undefined roots: zero polynomial");
  if (p.degree() < 1) return {};

  // Exact zero roots are split off before iterating.
  int zeros = 0;
  while (p[zeros] == cplx{}) ++zeros;
  std::vector<cplx> rest(p.coeffs().begin() + zeros, p.coeffs().end());
  const Poly q(std::move(rest));

  std::vector<Root> out;
  if (zeros > 0) out.push_back({cplx{}, zeros});

  if (q.degree() >= 1) {
    std::vector<cplx> raw;
    if (q.degree() == 1) {
      raw.push_back(-q[0] / q[1]);
    } else {
      raw = aberth(q, opts.max_iterations);
    }
    double scale = 1.0;
    for (cplx r : raw) scale = std::max(scale, std::abs(r));

    const double eps = std::numeric_limits<double>::epsilon();
    for (auto& group : link_clusters(raw, opts.cluster_tol * scale)) {
      const auto m = static_cast<double>(group.size());
      const double spread = diameter(group);
      if (group.size() == 1 || spread <= opts.merge_tol * scale ||
          spread <= scale * 100.0 * std::pow(eps, 1.0 / m)) {
        const int mult = static_cast<int>(group.size());
        out.push_back({polish_multiple(q, centroid(group), mult, std::max(spread, opts.merge_tol * scale)), mult});
        continue;
      }
      for (auto& sub : link_clusters(group, opts.merge_tol * scale)) {
        const int mult = static_cast<int>(sub.size());
        const cplx c = centroid(sub);
        out.push_back({mult > 1 ? polish_multiple(q, c, mult, opts.merge_tol * scale) : c, mult});
      }
    }
  }

  double scale = 1.0;
  for (const auto& r : out) scale = std::max(scale, std::abs(r.value));
  const double key_tol = 1e-9 * scale;
  std::sort(out.begin(), out.end(), [key_tol](const Root& a, const Root& b) {
    if (std::abs(a.value.real() - b.value.real()) > key_tol) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

std::vector<cplx> poly_roots_flat(const Poly& p, const RootOptions& opts) {
  std::vector<cplx> flat;
  for (const auto& r : poly_roots(p, opts))
    for (int k = 0; k < r.multiplicity; ++k) flat.push_back(r.value);
  return flat;
}

Poly poly_gcd(const Poly& p, const Poly& q, double rel_tol) {
  if (p.is_zero() && q.is_zero()) throw NumericError("gcd of two zero polynomials");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();

  Poly a = p * (1.0 / p.norm());
  Poly b = q * (1.0 / q.norm());
  if (a.degree() < b.degree()) std::swap(a, b);
  while (true) {
    if (b.degree() == 0) return Poly::constant(1.0);
    Poly r = divmod(a, b).remainder;
    // Coefficients at the noise level of the division are dropped.
    r = r.chopped(rel_tol * std::max(1.0, a.norm()) / std::max(r.norm(), 1e-300));
    if (r.is_zero() || r.norm() <= rel_tol * b.norm()) return b.monic();
    a = b;
    b = r * (1.0 / r.norm());
  }
}

RationalFn::RationalFn(Poly num, Poly den, double gcd_tol) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("rational function with zero denominator");
  if (!num_.is_zero() && num_.degree() >= 1 && den_.degree() >= 1) {
    const Poly g = poly_gcd(num_, den_, gcd_tol);
    if (g.degree() >= 1) {
      num_ = divmod(num_, g).quotient;
      den_ = divmod(den_, g).quotient;
    }
  }
  const cplx lc = den_.leading();
  num_ *= 1.0 / lc;
  den_ = den_.monic();
}

int RationalFn::degree() const { return std::max(num_.degree(), den_.degree()); }

bool RationalFn::is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

cplx RationalFn::operator()(cplx z) const {
  const cplx d = den_(z);
  if (d == cplx{}) return {std::numeric_limits<double>::infinity(), 0.0};
  return num_(z) / d;
}

int RationalFn::order_at_infinity() const { return den_.degree() - num_.degree(); }

cplx RationalFn::leading_ratio() const {
  if (num_.is_zero()) return {};
  return num_.leading() / den_.leading();
}

bool RationalFn::is_lemniscate_map() const { return num_.degree() > den_.degree(); }

const RationalFn& RationalFn::require_lemniscate_map() const {
  if (!is_lemniscate_map()) throw Error("lemniscate map requires deg num > deg den");
  return *this;
}

}  // namespace expt
