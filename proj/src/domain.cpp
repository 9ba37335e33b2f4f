#include "expt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

namespace expt {

namespace {

struct RatEval {
  cplx a, b, da, db;
};

RatEval eval_parts(const RationalFn& f, const Poly& dnum, const Poly& dden, cplx z) {
  return {f.num()(z), f.den()(z), dnum(z), dden(z)};
}

// |A|^2 - |B|^2 and its y-derivative on the line x = const.
std::pair<double, double> level_and_slope(const RationalFn& f, const Poly& dnum, const Poly& dden, cplx z) {
  const RatEval e = eval_parts(f, dnum, dden, z);
  const double phi = std::norm(e.a) - std::norm(e.b);
  const double dphi = -2.0 * (std::conj(e.a) * e.da).imag() + 2.0 * (std::conj(e.b) * e.db).imag();
  return {phi, dphi};
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    return i;
  }
  void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

double Ellipse::c() const { return std::sqrt(a * a - b * b); }

// ---------------------------------------------------------------------------
// Lemniscate topology

LemniscateTopology::LemniscateTopology(RationalFn f) : f_(std::move(f)) {
  f_.require_lemniscate_map();
  for (const Root& r : poly_roots(f_.num())) zeros_.push_back(r.value);
  const int nz = static_cast<int>(zeros_.size());
  DisjointSet ds(nz);

  const Poly& A = f_.num();
  const Poly& B = f_.den();
  const Poly crit = A.derivative() * B - A * B.derivative();
  std::vector<cplx> crits;
  if (crit.degree() >= 1)
    for (const Root& r : poly_roots(crit)) crits.push_back(r.value);

  for (cplx c : crits) {
    const double fc = std::abs(f_(c));
    if (!(fc < 1.0 - 1e-10)) continue;
    double sep = std::numeric_limits<double>::infinity();
    for (cplx z : zeros_) sep = std::min(sep, std::abs(z - c));
    if (sep < 1e-9 * std::max(1.0, std::abs(c))) continue;  // a multiple zero, not a saddle
    for (cplx o : crits)
      if (o != c) sep = std::min(sep, std::abs(o - c));
    double rho = 0.1 * sep;
    // A disk around c that stays inside the sublevel set lies in one component.
    for (int tries = 0; tries < 60; ++tries) {
      bool inside = true;
      for (int k = 0; k < 32 && inside; ++k)
        inside = std::abs(f_(c + std::polar(rho, 2.0 * kPi * k / 32.0))) < 1.0;
      if (inside) break;
      rho *= 0.5;
    }
    int first = -1;
    for (int k = 0; k < 32; ++k) {
      const cplx p = c + std::polar(rho, 2.0 * kPi * (k + 0.5) / 32.0);
      if (std::abs(f_(p)) >= 1.0) continue;
      if (auto zi = flow_to_zero(p)) {
        if (first < 0) first = *zi;
        else ds.join(first, *zi);
      }
    }
  }

  std::map<int, int> relabel;
  zero_comp_.resize(zeros_.size());
  for (int i = 0; i < nz; ++i) {
    const int root = ds.find(i);
    auto [it, fresh] = relabel.try_emplace(root, static_cast<int>(relabel.size()));
    zero_comp_[static_cast<std::size_t>(i)] = it->second;
  }
  count_ = static_cast<int>(relabel.size());
}

std::optional<int> LemniscateTopology::flow_to_zero(cplx z) const {
  const Poly& A = f_.num();
  const Poly& B = f_.den();
  const Poly dA = A.derivative();
  const Poly dB = B.derivative();
  auto fval = [&](cplx p) { return A(p) / B(p); };

  cplx fz = fval(z);
  for (int it = 0; it < 600; ++it) {
    const cplx a = A(z), b = B(z);
    const cplx den = dA(z) * b - a * dB(z);
    if (std::abs(fz) == 0.0) break;
    if (den == cplx{}) return std::nullopt;
    const cplx d = -a * b / den;
    double t = 1.0;
    bool moved = false;
    for (int h = 0; h < 60; ++h, t *= 0.5) {
      const cplx zn = z + t * d;
      const cplx fn = fval(zn);
      if (std::abs(fn) < std::abs(fz) && std::abs(fn - fz * (1.0 - t)) <= 0.3 * t * std::abs(fz)) {
        z = zn;
        fz = fn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (std::abs(t * d) <= 1e-14 * (1.0 + std::abs(z))) break;
  }
  if (zeros_.empty()) return std::nullopt;
  int best = 0;
  for (std::size_t i = 1; i < zeros_.size(); ++i)
    if (std::abs(zeros_[i] - z) < std::abs(zeros_[static_cast<std::size_t>(best)] - z)) best = static_cast<int>(i);
  // The flow must actually have arrived.
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zeros_.size(); ++i)
    if (static_cast<int>(i) != best) sep = std::min(sep, std::abs(zeros_[i] - zeros_[static_cast<std::size_t>(best)]));
  const double dist = std::abs(zeros_[static_cast<std::size_t>(best)] - z);
  if (std::isfinite(sep) && dist > 0.25 * sep) return std::nullopt;
  if (std::abs(fz) > 1e-3) return std::nullopt;
  return best;
}

int LemniscateTopology::component_at(cplx z) const {
  if (!(std::abs(f_(z)) < 1.0)) return -1;
  const double scale = 1e-9 * (1.0 + std::abs(z));
  for (int k = 0; k < 8; ++k) {
    const cplx p = k == 0 ? z : z + std::polar(scale * k, 2.399963229728653 * k);
    if (std::abs(f_(p)) >= 1.0) continue;
    if (auto zi = flow_to_zero(p)) return zero_comp_[static_cast<std::size_t>(*zi)];
  }
  throw NumericError("could not assign a point to a lemniscate component");
}

cplx LemniscateTopology::center(int component) const {
  cplx s{};
  int n = 0;
  for (std::size_t i = 0; i < zeros_.size(); ++i)
    if (zero_comp_[i] == component) {
      s += zeros_[i];
      ++n;
    }
  if (n == 0) throw Error("no such lemniscate component");
  return s / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Construction

DomainSpec make_disk(cplx a, double R) {
  if (!(R > 0.0)) throw Error("disk radius must be positive");
  return Disk{a, R};
}

DomainSpec make_annulus(double r, double R) {
  if (!(r > 0.0) || !(R >= r)) throw Error("annulus needs 0 < r <= R");
  return Annulus{r, R};
}

DomainSpec make_circular(Disk outer, std::vector<Disk> holes) {
  if (!(outer.R > 0.0)) throw Error("disk radius must be positive");
  for (std::size_t i = 0; i < holes.size(); ++i) {
    const Disk& h = holes[i];
    if (!(h.R > 0.0)) throw Error("disk radius must be positive");
    if (!(std::abs(h.a - outer.a) + h.R < outer.R)) throw Error("hole closure must lie in the open outer disk");
    for (std::size_t j = 0; j < i; ++j)
      if (!(std::abs(h.a - holes[j].a) > h.R + holes[j].R)) throw Error("hole closures must be disjoint");
  }
  return CircularDomain{outer, std::move(holes)};
}

DomainSpec make_ellipse(double a, double b) {
  if (!(b > 0.0) || !(a > b)) throw Error("ellipse needs 0 < b < a");
  return Ellipse{a, b};
}

DomainSpec make_lemniscate(const RationalFn& f) {
  return LemniscateSublevel{f, std::make_shared<const LemniscateTopology>(f)};
}

DomainSpec make_lemniscate_component(const RationalFn& f, cplx seed) {
  auto topo = std::make_shared<const LemniscateTopology>(f);
  if (!(std::abs(f(seed)) < 1.0)) throw RegionError("seed lies outside the sublevel set");
  const int label = topo->component_at(seed);
  return LemniscateComponent{f, seed, std::move(topo), label};
}

std::string kind_name(const DomainSpec& d) {
  static const char* names[] = {"disk", "annulus", "circular", "ellipse", "lemniscate", "lemniscate-component"};
  return names[d.index()];
}

// ---------------------------------------------------------------------------
// Membership and extent

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_circular(const CircularDomain& c, cplx z) {
  if (!(std::abs(z - c.outer.a) < c.outer.R)) return false;
  for (const Disk& h : c.holes)
    if (std::abs(z - h.a) <= h.R) return false;
  return true;
}

CircularDomain as_circular(const Annulus& a) { return {Disk{0.0, a.R}, {Disk{0.0, a.r}}}; }

double shoelace(const std::vector<cplx>& loop) {
  double s = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const cplx p = loop[i];
    const cplx q = loop[(i + 1) % loop.size()];
    s += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * s;
}

}  // namespace

bool contains(const DomainSpec& d, cplx z) {
  return std::visit(
      overloaded{
          [&](const Disk& k) { return std::abs(z - k.a) < k.R; },
          [&](const Annulus& k) {
            const double r = std::abs(z);
            return k.r < r && r < k.R;
          },
          [&](const CircularDomain& k) { return in_circular(k, z); },
          [&](const Ellipse& k) {
            const double u = z.real() / k.a, v = z.imag() / k.b;
            return u * u + v * v < 1.0;
          },
          [&](const LemniscateSublevel& k) { return std::abs(k.f(z)) < 1.0; },
          [&](const LemniscateComponent& k) {
            return std::abs(k.f(z)) < 1.0 && k.topology->component_at(z) == k.label;
          },
      },
      d);
}

Box lemniscate_box(const RationalFn& f) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto extend = [&](const Poly& p) {
    if (p.degree() < 1) return;
    for (const Root& r : poly_roots(p)) {
      x0 = std::min(x0, r.value.real());
      x1 = std::max(x1, r.value.real());
      y0 = std::min(y0, r.value.imag());
      y1 = std::max(y1, r.value.imag());
    }
  };
  extend(f.num());
  extend(f.den());
  if (!std::isfinite(x0)) x0 = x1 = y0 = y1 = 0.0;
  Box b{x0 - 1.0, x1 + 1.0, y0 - 1.0, y1 + 1.0};
  const int n = 800;
  for (int iter = 0; iter < 60; ++iter) {
    bool ok = true;
    for (int k = 0; k <= n && ok; ++k) {
      const double s = static_cast<double>(k) / n;
      const double x = b.x0 + s * (b.x1 - b.x0);
      const double y = b.y0 + s * (b.y1 - b.y0);
      ok = std::abs(f(cplx(x, b.y0))) >= 1.0 && std::abs(f(cplx(x, b.y1))) >= 1.0 &&
           std::abs(f(cplx(b.x0, y))) >= 1.0 && std::abs(f(cplx(b.x1, y))) >= 1.0;
    }
    if (ok) return b;
    const double wx = 0.25 * (b.x1 - b.x0), wy = 0.25 * (b.y1 - b.y0);
    b = {b.x0 - wx, b.x1 + wx, b.y0 - wy, b.y1 + wy};
  }
  throw NumericError("could not bound the lemniscate");
}

Box bounding_box(const DomainSpec& d) {
  return std::visit(overloaded{
                        [](const Disk& k) {
                          return Box{k.a.real() - k.R, k.a.real() + k.R, k.a.imag() - k.R, k.a.imag() + k.R};
                        },
                        [](const Annulus& k) { return Box{-k.R, k.R, -k.R, k.R}; },
                        [](const CircularDomain& k) {
                          const Disk& o = k.outer;
                          return Box{o.a.real() - o.R, o.a.real() + o.R, o.a.imag() - o.R, o.a.imag() + o.R};
                        },
                        [](const Ellipse& k) { return Box{-k.a, k.a, -k.b, k.b}; },
                        [](const LemniscateSublevel& k) { return lemniscate_box(k.f); },
                        [](const LemniscateComponent& k) { return lemniscate_box(k.f); },
                    },
                    d);
}

double outer_radius(const DomainSpec& d) {
  return std::visit(overloaded{
                        [](const Disk& k) { return std::abs(k.a) + k.R; },
                        [](const Annulus& k) { return k.R; },
                        [](const CircularDomain& k) { return std::abs(k.outer.a) + k.outer.R; },
                        [](const Ellipse& k) { return k.a; },
                        [&](const auto&) {
                          double r = 0.0;
                          for (const auto& curve : boundary_sample(d, 1440))
                            for (cplx z : curve) r = std::max(r, std::abs(z));
                          return r * (1.0 + 1e-6);
                        },
                    },
                    d);
}

double area(const DomainSpec& d) {
  return std::visit(overloaded{
                        [](const Disk& k) { return kPi * k.R * k.R; },
                        [](const Annulus& k) { return kPi * (k.R * k.R - k.r * k.r); },
                        [](const CircularDomain& k) {
                          double s = k.outer.R * k.outer.R;
                          for (const Disk& h : k.holes) s -= h.R * h.R;
                          return kPi * s;
                        },
                        [](const Ellipse& k) { return kPi * k.a * k.b; },
                        [&](const auto&) {
                          double s = 0.0;
                          for (const auto& curve : boundary_sample(d, 8192)) s += shoelace(curve);
                          return std::abs(s);
                        },
                    },
                    d);
}

void require_exterior(const DomainSpec& d, cplx z, double margin) {
  const bool ok = std::visit(
      overloaded{
          [&](const Disk& k) { return std::abs(z - k.a) > k.R + margin; },
          [&](const Annulus& k) {
            const double r = std::abs(z);
            return r > k.R + margin || r < k.r - margin;
          },
          [&](const CircularDomain& k) {
            if (std::abs(z - k.outer.a) > k.outer.R + margin) return true;
            for (const Disk& h : k.holes)
              if (std::abs(z - h.a) < h.R - margin) return true;
            return false;
          },
          [&](const Ellipse& k) {
            const double u = z.real() / k.a, v = z.imag() / k.b;
            return (std::sqrt(u * u + v * v) - 1.0) * k.b > margin;
          },
          [&](const auto& k) {
            if (contains(d, z)) return false;
            const cplx fz = k.f(z);
            const Poly& A = k.f.num();
            const Poly& B = k.f.den();
            const cplx bz = B(z);
            const cplx df = (A.derivative()(z) * bz - A(z) * B.derivative()(z)) / (bz * bz);
            const double slope = std::abs(df);
            const double gap = std::abs(std::abs(fz) - 1.0);
            return slope == 0.0 ? gap > 0.0 : gap / slope > margin;
          },
      },
      d);
  if (!ok) throw RegionError("evaluation point in domain");
}

// ---------------------------------------------------------------------------
// Grids

double GridMask::cell_area() const { return (box.x1 - box.x0) / nx * (box.y1 - box.y0) / ny; }

cplx GridMask::cell_center(int ix, int iy) const {
  return {box.x0 + (ix + 0.5) * (box.x1 - box.x0) / nx, box.y0 + (iy + 0.5) * (box.y1 - box.y0) / ny};
}

double GridMask::area() const {
  return cell_area() * static_cast<double>(std::count(mask.begin(), mask.end(), static_cast<unsigned char>(1)));
}

GridMask grid_mask(const DomainSpec& d, int resolution) {
  if (resolution < 1) throw Error("grid resolution must be positive");
  GridMask g{bounding_box(d), resolution, resolution, {}};
  g.mask.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix)
      g.mask[static_cast<std::size_t>(iy) * resolution + ix] = contains(d, g.cell_center(ix, iy)) ? 1 : 0;
  return g;
}

GridMask component_of(const RationalFn& f, cplx seed, int resolution) {
  if (resolution < 1) throw Error("grid resolution must be positive");
  if (!(std::abs(f(seed)) < 1.0)) throw RegionError("seed lies outside the sublevel set");
  const LemniscateTopology topo(f);
  const int label = topo.component_at(seed);
  const int n = resolution;
  GridMask g{lemniscate_box(f), n, n, {}};
  g.mask.assign(static_cast<std::size_t>(n) * n, 0);

  // 0 unknown, 1 member, 2 wall
  std::vector<unsigned char> state(static_cast<std::size_t>(n) * n, 0);
  auto idx = [n](int ix, int iy) { return static_cast<std::size_t>(iy) * n + ix; };
  auto member = [&](int ix, int iy) {
    unsigned char& s = state[idx(ix, iy)];
    if (s == 0) {
      const cplx c = g.cell_center(ix, iy);
      s = (std::abs(f(c)) < 1.0 && topo.component_at(c) == label) ? 1 : 2;
    }
    return s == 1;
  };

  const double hx = (g.box.x1 - g.box.x0) / n, hy = (g.box.y1 - g.box.y0) / n;
  int sx = std::clamp(static_cast<int>((seed.real() - g.box.x0) / hx), 0, n - 1);
  int sy = std::clamp(static_cast<int>((seed.imag() - g.box.y0) / hy), 0, n - 1);
  if (!member(sx, sy)) {
    // The seed cell center fell outside; start from the nearest member cell.
    bool found = false;
    for (int r = 1; r < n && !found; ++r)
      for (int dy = -r; dy <= r && !found; ++dy)
        for (int dx = -r; dx <= r && !found; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
          const int ix = sx + dx, iy = sy + dy;
          if (ix < 0 || iy < 0 || ix >= n || iy >= n) continue;
          if (member(ix, iy)) {
            sx = ix;
            sy = iy;
            found = true;
          }
        }
    if (!found) return g;
  }
  std::deque<std::pair<int, int>> queue{{sx, sy}};
  g.mask[idx(sx, sy)] = 1;
  while (!queue.empty()) {
    const auto [ix, iy] = queue.front();
    queue.pop_front();
    const int nb[4][2] = {{ix + 1, iy}, {ix - 1, iy}, {ix, iy + 1}, {ix, iy - 1}};
    for (const auto& p : nb) {
      if (p[0] < 0 || p[1] < 0 || p[0] >= n || p[1] >= n) continue;
      if (g.mask[idx(p[0], p[1])] || !member(p[0], p[1])) continue;
      g.mask[idx(p[0], p[1])] = 1;
      queue.emplace_back(p[0], p[1]);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Boundaries

namespace {

std::vector<cplx> circle_points(cplx a, double R, int count) {
  std::vector<cplx> pts(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double t = 2.0 * kPi * k / count;
    // Exact values at the quarter turns.
    cplx u = std::polar(1.0, t);
    if (4 * k % count == 0) {
      static const cplx quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      u = quarter[(4 * k / count) % 4];
    }
    pts[static_cast<std::size_t>(k)] = a + R * u;
  }
  return pts;
}

cplx project_to_level(const RationalFn& f, cplx z) {
  const Poly dA = f.num().derivative();
  const Poly dB = f.den().derivative();
  for (int it = 0; it < 40; ++it) {
    const cplx a = f.num()(z), b = f.den()(z);
    const cplx fz = a / b;
    const double m = std::abs(fz);
    const double g = m - 1.0;
    if (std::abs(g) < 1e-15) break;
    const cplx df = (dA(z) * b - a * dB(z)) / (b * b);
    const cplx grad = m * std::conj(df / fz);  // gradient of |f| as a vector
    const double gg = std::norm(grad);
    if (gg == 0.0) break;
    z -= g / gg * grad;
  }
  return z;
}

// First crossing of |f| = 1 along each ray from the center, or nothing when
// a ray re-enters the component.
std::optional<std::vector<cplx>> ray_boundary(const LemniscateTopology& topo, int comp, const Box& box, int count) {
  const RationalFn& f = topo.f();
  const cplx c = topo.center(comp);
  if (!(std::abs(f(c)) < 1.0) || topo.component_at(c) != comp) return std::nullopt;
  double reach = 0.0;
  for (cplx corner : {cplx(box.x0, box.y0), cplx(box.x1, box.y0), cplx(box.x0, box.y1), cplx(box.x1, box.y1)})
    reach = std::max(reach, std::abs(corner - c));
  const int steps = 2000;
  const double h = reach / steps;
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const cplx dir = std::polar(1.0, 2.0 * kPi * k / count);
    int j = 1;
    while (j <= steps && std::abs(f(c + (j * h) * dir)) < 1.0) ++j;
    if (j > steps) return std::nullopt;
    double lo = (j - 1) * h, hi = j * h;
    for (int it = 0; it < 100 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (std::abs(f(c + mid * dir)) < 1.0 ? lo : hi) = mid;
    }
    // The ray can slip through a double point of the curve into a
    // neighbouring component; the exit from this one is then the first
    // change of label.
    if (j > 1 && topo.component_at(c + ((j - 1) * h) * dir) != comp) {
      double a = 0.0, b = (j - 1) * h;
      for (int it = 0; it < 100 && b - a > 1e-16 * b; ++it) {
        const double mid = 0.5 * (a + b);
        (topo.component_at(c + mid * dir) == comp ? a : b) = mid;
      }
      lo = a;
    }
    pts.push_back(project_to_level(f, c + lo * dir));
    // Any later run inside the sublevel set must belong elsewhere.
    bool in_run = false;
    for (int i = j + 1; i <= steps; ++i) {
      const cplx p = c + (i * h) * dir;
      const bool inside = std::abs(f(p)) < 1.0;
      if (inside && !in_run && topo.component_at(p) == comp) return std::nullopt;
      in_run = inside;
    }
  }
  return pts;
}

std::vector<cplx> resample_loop(const RationalFn& f, const std::vector<cplx>& loop, int count) {
  std::vector<double> s(loop.size() + 1, 0.0);
  for (std::size_t i = 0; i < loop.size(); ++i) s[i + 1] = s[i] + std::abs(loop[(i + 1) % loop.size()] - loop[i]);
  const double total = s.back();
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(count));
  std::size_t seg = 0;
  for (int k = 0; k < count; ++k) {
    const double target = total * k / count;
    while (seg + 1 < loop.size() && s[seg + 1] < target) ++seg;
    const double len = s[seg + 1] - s[seg];
    const double t = len > 0.0 ? (target - s[seg]) / len : 0.0;
    out.push_back(project_to_level(f, loop[seg] + t * (loop[(seg + 1) % loop.size()] - loop[seg])));
  }
  return out;
}

cplx inner_point(const std::vector<cplx>& loop) {
  const cplx p = loop[0], q = loop[1 % loop.size()];
  const cplx m = 0.5 * (p + q);
  const cplx normal = cplx(0.0, 1.0) * (q - p);
  return m + 0.05 * normal;
}

std::vector<std::vector<cplx>> lemniscate_boundary(const LemniscateTopology& topo, const std::vector<int>& comps,
                                                   int count) {
  const Box box = lemniscate_box(topo.f());
  std::vector<std::vector<cplx>> out;
  std::optional<std::vector<std::vector<cplx>>> traced;
  for (int comp : comps) {
    if (auto pts = ray_boundary(topo, comp, box, count)) {
      out.push_back(std::move(*pts));
      continue;
    }
    if (!traced) traced = trace_lemniscate(topo.f(), 600);
    for (const auto& loop : *traced) {
      if (loop.size() < 3) continue;
      if (topo.component_at(inner_point(loop)) == comp) out.push_back(resample_loop(topo.f(), loop, count));
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<cplx>> trace_lemniscate(const RationalFn& f, int resolution) {
  const Box box = lemniscate_box(f);
  const int n = resolution;
  const int nn = n + 1;
  const double hx = (box.x1 - box.x0) / n, hy = (box.y1 - box.y0) / n;
  auto node = [&](int ix, int iy) { return cplx(box.x0 + ix * hx, box.y0 + iy * hy); };
  std::vector<double> g(static_cast<std::size_t>(nn) * nn);
  for (int iy = 0; iy < nn; ++iy)
    for (int ix = 0; ix < nn; ++ix) {
      const cplx z = node(ix, iy);
      g[static_cast<std::size_t>(iy) * nn + ix] = std::norm(f.num()(z)) - std::norm(f.den()(z));
    }
  auto val = [&](int ix, int iy) { return g[static_cast<std::size_t>(iy) * nn + ix]; };
  auto inside = [&](int ix, int iy) { return val(ix, iy) < 0.0; };
  const int hcount = n * nn;
  auto hedge = [&](int ix, int iy) { return iy * n + ix; };
  auto vedge = [&](int ix, int iy) { return hcount + iy * nn + ix; };

  auto crossing = [&](int id) {
    int ax, ay, bx, by;
    if (id < hcount) {
      ay = by = id / n;
      ax = id % n;
      bx = ax + 1;
    } else {
      const int k = id - hcount;
      ax = bx = k % nn;
      ay = k / nn;
      by = ay + 1;
    }
    const double ga = val(ax, ay), gb = val(bx, by);
    const double t = ga / (ga - gb);
    return node(ax, ay) + t * (node(bx, by) - node(ax, ay));
  };

  std::map<int, std::vector<int>> adj;
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const bool c00 = inside(ix, iy), c10 = inside(ix + 1, iy), c11 = inside(ix + 1, iy + 1), c01 = inside(ix, iy + 1);
      const int bottom = hedge(ix, iy), right = vedge(ix + 1, iy), top = hedge(ix, iy + 1), left = vedge(ix, iy);
      std::vector<int> e;
      if (c00 != c10) e.push_back(bottom);
      if (c10 != c11) e.push_back(right);
      if (c11 != c01) e.push_back(top);
      if (c01 != c00) e.push_back(left);
      if (e.size() == 2) {
        link(e[0], e[1]);
      } else if (e.size() == 4) {
        const cplx mid = node(ix, iy) + cplx(0.5 * hx, 0.5 * hy);
        const bool cm = std::abs(f(mid)) < 1.0;
        // Cut off the corners whose state differs from the center.
        if (c00 != cm) link(left, bottom);
        if (c10 != cm) link(bottom, right);
        if (c11 != cm) link(right, top);
        if (c01 != cm) link(top, left);
      }
    }

  std::vector<std::vector<cplx>> loops;
  std::map<int, bool> used;
  for (const auto& [start, nbrs] : adj) {
    if (used[start]) continue;
    std::vector<cplx> loop;
    int prev = -1, cur = start;
    while (true) {
      used[cur] = true;
      loop.push_back(project_to_level(f, crossing(cur)));
      const auto& nb = adj[cur];
      int next = -1;
      for (int c : nb)
        if (c != prev && !used[c]) {
          next = c;
          break;
        }
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    if (loop.size() < 3) continue;
    // Orient with the interior on the left.
    if (!(std::abs(f(inner_point(loop))) < 1.0)) std::reverse(loop.begin(), loop.end());
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<std::vector<cplx>> boundary_sample(const DomainSpec& d, int count) {
  if (count < 4) throw Error("boundary sampling needs at least 4 points");
  return std::visit(
      overloaded{
          [&](const Disk& k) { return std::vector<std::vector<cplx>>{circle_points(k.a, k.R, count)}; },
          [&](const Annulus& k) {
            return std::vector<std::vector<cplx>>{circle_points(0.0, k.R, count), circle_points(0.0, k.r, count)};
          },
          [&](const CircularDomain& k) {
            std::vector<std::vector<cplx>> out{circle_points(k.outer.a, k.outer.R, count)};
            for (const Disk& h : k.holes) out.push_back(circle_points(h.a, h.R, count));
            return out;
          },
          [&](const Ellipse& k) {
            std::vector<cplx> pts;
            for (const cplx u : circle_points(0.0, 1.0, count)) pts.emplace_back(k.a * u.real(), k.b * u.imag());
            return std::vector<std::vector<cplx>>{pts};
          },
          [&](const LemniscateSublevel& k) {
            std::vector<int> comps(static_cast<std::size_t>(k.topology->component_count()));
            std::iota(comps.begin(), comps.end(), 0);
            return lemniscate_boundary(*k.topology, comps, count);
          },
          [&](const LemniscateComponent& k) { return lemniscate_boundary(*k.topology, {k.label}, count); },
      },
      d);
}

void write_contour_csv(std::ostream& os, const std::vector<std::vector<cplx>>& curves) {
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i > 0) os << '\n';
    for (cplx z : curves[i]) os << z.real() << ',' << z.imag() << '\n';
  }
  os.precision(old);
}

// ---------------------------------------------------------------------------
// Ellipse Schwarz function

cplx ellipse_root(double c, cplx z) {
  if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, c) && std::abs(z.real()) <= c)
    throw RegionError("branch cut");
  return std::sqrt(z - c) * std::sqrt(z + c);
}

cplx schwarz_ellipse(double a, double b, cplx z, SchwarzBranch branch) {
  if (!(b > 0.0) || !(a > b)) throw Error("ellipse needs 0 < b < a");
  const double c2 = a * a - b * b;
  const cplx root = ellipse_root(std::sqrt(c2), z);
  const double sign = branch == SchwarzBranch::plus ? 1.0 : -1.0;
  return ((a * a + b * b) * z + sign * 2.0 * a * b * root) / c2;
}

// ---------------------------------------------------------------------------
// Vertical slices

namespace {

using Intervals = std::vector<std::pair<double, double>>;

Intervals disk_slice(const Disk& k, double x) {
  const double dx = x - k.a.real();
  const double h2 = k.R * k.R - dx * dx;
  if (!(h2 > 0.0)) return {};
  const double h = std::sqrt(h2);
  return {{k.a.imag() - h, k.a.imag() + h}};
}

Intervals subtract(Intervals base, const Intervals& cut) {
  for (const auto& [c0, c1] : cut) {
    Intervals next;
    for (const auto& [b0, b1] : base) {
      if (c1 <= b0 || c0 >= b1) {
        next.emplace_back(b0, b1);
        continue;
      }
      if (c0 > b0) next.emplace_back(b0, c0);
      if (c1 < b1) next.emplace_back(c1, b1);
    }
    base = std::move(next);
  }
  return base;
}

SliceRegion circular_slices(const CircularDomain& k) {
  SliceRegion s;
  s.x0 = k.outer.a.real() - k.outer.R;
  s.x1 = k.outer.a.real() + k.outer.R;
  s.breakpoints = {s.x0, s.x1};
  for (const Disk& h : k.holes) {
    s.breakpoints.push_back(h.a.real() - h.R);
    s.breakpoints.push_back(h.a.real() + h.R);
  }
  s.intervals = [k](double x) {
    Intervals holes;
    for (const Disk& h : k.holes) {
      Intervals hi = disk_slice(h, x);
      holes.insert(holes.end(), hi.begin(), hi.end());
    }
    std::sort(holes.begin(), holes.end());
    return subtract(disk_slice(k.outer, x), holes);
  };
  return s;
}

struct LemniscateSlicer {
  RationalFn f;
  Poly dnum, dden;
  double y0, y1;
  int samples;
  std::shared_ptr<const LemniscateTopology> topo;
  int label;  // -1 for the whole sublevel set

  Intervals operator()(double x) const {
    auto at = [&](double y) { return level_and_slope(f, dnum, dden, cplx(x, y)); };
    auto bisect_root = [&](double lo, double hi) {
      double glo = at(lo).first;
      for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(std::abs(lo), std::abs(hi)) + 1e-300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = at(mid).first;
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    };
    auto bisect_slope = [&](double lo, double hi, bool rising) {
      for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(std::abs(lo), std::abs(hi)) + 1e-300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const bool up = at(mid).second > 0.0;
        ((up == rising) ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    };

    const double h = (y1 - y0) / samples;
    std::vector<double> roots;
    auto prev = at(y0);
    double yp = y0;
    for (int k = 1; k <= samples; ++k) {
      const double y = k == samples ? y1 : y0 + k * h;
      const auto cur = at(y);
      const bool sp = prev.first < 0.0, sc = cur.first < 0.0;
      if (sp != sc) {
        roots.push_back(bisect_root(yp, y));
      } else if (!sp && prev.second < 0.0 && cur.second > 0.0) {
        // Dip between two outside samples.
        const double ym = bisect_slope(yp, y, true);
        if (at(ym).first < 0.0) {
          roots.push_back(bisect_root(yp, ym));
          roots.push_back(bisect_root(ym, y));
        }
      } else if (sp && prev.second > 0.0 && cur.second < 0.0) {
        // Bump between two inside samples.
        const double ym = bisect_slope(yp, y, false);
        if (at(ym).first >= 0.0) {
          roots.push_back(bisect_root(yp, ym));
          roots.push_back(bisect_root(ym, y));
        }
      }
      prev = cur;
      yp = y;
    }
    Intervals out;
    bool inside = at(y0).first < 0.0;
    double start = y0;
    for (double r : roots) {
      if (inside) out.emplace_back(start, r);
      else start = r;
      inside = !inside;
    }
    if (inside) out.emplace_back(start, y1);
    if (label >= 0) {
      Intervals kept;
      for (const auto& iv : out) {
        if (!(iv.second > iv.first)) continue;
        const cplx mid(x, 0.5 * (iv.first + iv.second));
        if (topo->component_at(mid) == label) kept.push_back(iv);
      }
      return kept;
    }
    return out;
  }
};

SliceRegion lemniscate_slices(const RationalFn& f, std::shared_ptr<const LemniscateTopology> topo, int label,
                              int resolution) {
  const Box box = lemniscate_box(f);
  SliceRegion s;
  s.x0 = box.x0;
  s.x1 = box.x1;
  s.breakpoints = {box.x0, box.x1};
  // Critical points are where the level curve can cross itself.
  const Poly crit = f.num().derivative() * f.den() - f.num() * f.den().derivative();
  if (crit.degree() >= 1)
    for (const Root& r : poly_roots(crit))
      if (r.value.real() > box.x0 && r.value.real() < box.x1 && std::abs(std::abs(f(r.value)) - 1.0) < 1e-6)
        s.breakpoints.push_back(r.value.real());
  s.intervals = LemniscateSlicer{f, f.num().derivative(), f.den().derivative(), box.y0, box.y1,
                                 std::max(16, resolution), std::move(topo), label};
  return s;
}

}  // namespace

SliceRegion make_slice_region(const DomainSpec& d, int resolution) {
  SliceRegion s = std::visit(
      overloaded{
          [](const Disk& k) {
            SliceRegion r;
            r.x0 = k.a.real() - k.R;
            r.x1 = k.a.real() + k.R;
            r.breakpoints = {r.x0, r.x1};
            r.intervals = [k](double x) { return disk_slice(k, x); };
            return r;
          },
          [](const Annulus& k) {
            if (k.R == k.r) {
              SliceRegion r;
              r.intervals = [](double) { return Intervals{}; };
              return r;
            }
            return circular_slices(as_circular(k));
          },
          [](const CircularDomain& k) { return circular_slices(k); },
          [](const Ellipse& k) {
            SliceRegion r;
            r.x0 = -k.a;
            r.x1 = k.a;
            r.breakpoints = {r.x0, r.x1};
            r.intervals = [k](double x) -> Intervals {
              const double u = x / k.a;
              const double h2 = 1.0 - u * u;
              if (!(h2 > 0.0)) return {};
              const double h = k.b * std::sqrt(h2);
              return {{-h, h}};
            };
            return r;
          },
          [&](const LemniscateSublevel& k) { return lemniscate_slices(k.f, k.topology, -1, resolution); },
          [&](const LemniscateComponent& k) { return lemniscate_slices(k.f, k.topology, k.label, resolution); },
      },
      d);
  std::sort(s.breakpoints.begin(), s.breakpoints.end());
  s.breakpoints.erase(std::unique(s.breakpoints.begin(), s.breakpoints.end()), s.breakpoints.end());
  std::erase_if(s.breakpoints, [&](double b) { return b < s.x0 || b > s.x1; });
  return s;
}

}  // namespace expt
