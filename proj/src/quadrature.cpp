#include "expt/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <thread>

namespace expt {

const std::array<double, 11> GK21::nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

const std::array<double, 11> GK21::kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525505318, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

const std::array<double, 5> GK21::gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EXPTRANSFORM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

cplx pairwise_sum(std::span<const cplx> v) {
  if (v.empty()) return {};
  if (v.size() <= 8) {
    cplx s{};
    for (cplx x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

namespace {

// Applies f(node, weight_k, weight_g) over the 21 points of [a, b]; the Gauss
// weight is zero at Kronrod-only nodes.
template <class F>
void gk21_points(double a, double b, F&& f) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int j = 0; j < 10; ++j) {
    const double wg = (j % 2 == 1) ? GK21::gauss_weights[static_cast<std::size_t>(j / 2)] : 0.0;
    const double wk = GK21::kronrod_weights[static_cast<std::size_t>(j)];
    const double dx = h * GK21::nodes[static_cast<std::size_t>(j)];
    f(c - dx, h * wk, h * wg);
    f(c + dx, h * wk, h * wg);
  }
  f(c, h * GK21::kronrod_weights[10], 0.0);
}

// Components are accepted once the Gauss-Kronrod difference falls to this
// multiple of the integral of |g|, the level at which rounding dominates.
constexpr double kNoise = 64.0 * std::numeric_limits<double>::epsilon();

struct Tolerance {
  double abs;
  double rel;
};

class InnerIntegrator {
 public:
  InnerIntegrator(int K, const Kernel& kernel, Tolerance tol) : K_(K), kernel_(kernel), tol_(tol), buf_(static_cast<std::size_t>(K)) {}

  // Adds the integral over y in [y0, y1] on the line x, times weight, into
  // sum, its error estimate into err and the integral of |g| (the scale of
  // the rounding error) into mag.
  void add(double x, double y0, double y1, double weight, std::vector<cplx>& sum, std::vector<double>& err,
           std::vector<double>& mag) {
    const double total = y1 - y0;
    if (!(total > 0.0)) return;
    stack_.clear();
    stack_.push_back({y0, y1, 0});
    std::vector<cplx> k(static_cast<std::size_t>(K_)), g(static_cast<std::size_t>(K_));
    std::vector<double> a(static_cast<std::size_t>(K_));
    while (!stack_.empty()) {
      const Seg s = stack_.back();
      stack_.pop_back();
      std::fill(k.begin(), k.end(), cplx{});
      std::fill(g.begin(), g.end(), cplx{});
      std::fill(a.begin(), a.end(), 0.0);
      gk21_points(s.a, s.b, [&](double y, double wk, double wg) {
        kernel_(cplx(x, y), buf_);
        for (int i = 0; i < K_; ++i) {
          k[static_cast<std::size_t>(i)] += wk * buf_[static_cast<std::size_t>(i)];
          a[static_cast<std::size_t>(i)] += wk * std::abs(buf_[static_cast<std::size_t>(i)]);
          if (wg != 0.0) g[static_cast<std::size_t>(i)] += wg * buf_[static_cast<std::size_t>(i)];
        }
      });
      const double share = (s.b - s.a) / total;
      bool ok = s.depth >= 40;
      if (!ok) {
        ok = true;
        for (int i = 0; i < K_ && ok; ++i) {
          const double e = std::abs(k[static_cast<std::size_t>(i)] - g[static_cast<std::size_t>(i)]);
          ok = e <= std::max(tol_.abs, tol_.rel * std::abs(k[static_cast<std::size_t>(i)])) * share ||
               e <= kNoise * a[static_cast<std::size_t>(i)];
        }
      }
      if (ok) {
        for (int i = 0; i < K_; ++i) {
          sum[static_cast<std::size_t>(i)] += weight * k[static_cast<std::size_t>(i)];
          err[static_cast<std::size_t>(i)] += std::abs(weight) * std::abs(k[static_cast<std::size_t>(i)] - g[static_cast<std::size_t>(i)]);
          mag[static_cast<std::size_t>(i)] += std::abs(weight) * a[static_cast<std::size_t>(i)];
        }
      } else {
        const double m = 0.5 * (s.a + s.b);
        stack_.push_back({m, s.b, s.depth + 1});
        stack_.push_back({s.a, m, s.depth + 1});
      }
    }
  }

 private:
  struct Seg {
    double a, b;
    int depth;
  };
  int K_;
  const Kernel& kernel_;
  Tolerance tol_;
  std::vector<cplx> buf_;
  std::vector<Seg> stack_;
};

struct Panel {
  int segment;
  double s0, s1;
  std::vector<cplx> value;
  std::vector<double> error;
  std::vector<double> magnitude;
  bool done = false;
};

}  // namespace

QuadResult integrate_region(const SliceRegion& region, int K, const Kernel& kernel, const QuadOptions& opts) {
  QuadResult out;
  out.value.assign(static_cast<std::size_t>(K), cplx{});
  out.error.assign(static_cast<std::size_t>(K), 0.0);
  const std::vector<double>& bp = region.breakpoints;
  if (bp.size() < 2 || !(region.x1 > region.x0)) {
    out.converged = true;
    return out;
  }
  const double width = region.x1 - region.x0;
  const Tolerance inner_tol{0.1 * opts.abs_tol / width, 0.1 * opts.rel_tol};

  std::vector<Panel> panels;
  const int initial = 4;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    if (!(bp[i + 1] > bp[i])) continue;
    for (int j = 0; j < initial; ++j)
      panels.push_back({static_cast<int>(i), static_cast<double>(j) / initial, static_cast<double>(j + 1) / initial, {}, {}, {}});
  }

  auto evaluate = [&](Panel& p, InnerIntegrator& inner) {
    p.value.assign(static_cast<std::size_t>(K), cplx{});
    p.error.assign(static_cast<std::size_t>(K), 0.0);
    p.magnitude.assign(static_cast<std::size_t>(K), 0.0);
    const double xa = bp[static_cast<std::size_t>(p.segment)];
    const double L = bp[static_cast<std::size_t>(p.segment) + 1] - xa;
    std::vector<cplx> kv(static_cast<std::size_t>(K)), gv(static_cast<std::size_t>(K));
    std::vector<double> ke(static_cast<std::size_t>(K));
    gk21_points(p.s0, p.s1, [&](double s, double wk, double wg) {
      const double x = xa + L * s * s * (3.0 - 2.0 * s);
      const double jac = 6.0 * L * s * (1.0 - s);
      if (jac == 0.0) return;
      std::vector<cplx> line(static_cast<std::size_t>(K), cplx{});
      std::vector<double> line_err(static_cast<std::size_t>(K), 0.0), line_mag(static_cast<std::size_t>(K), 0.0);
      for (const auto& [y0, y1] : region.intervals(x)) inner.add(x, y0, y1, 1.0, line, line_err, line_mag);
      for (int i = 0; i < K; ++i) {
        kv[static_cast<std::size_t>(i)] += wk * jac * line[static_cast<std::size_t>(i)];
        gv[static_cast<std::size_t>(i)] += wg * jac * line[static_cast<std::size_t>(i)];
        ke[static_cast<std::size_t>(i)] += wk * jac * line_err[static_cast<std::size_t>(i)];
        p.magnitude[static_cast<std::size_t>(i)] += wk * jac * line_mag[static_cast<std::size_t>(i)];
      }
    });
    for (int i = 0; i < K; ++i) {
      p.value[static_cast<std::size_t>(i)] = kv[static_cast<std::size_t>(i)];
      p.error[static_cast<std::size_t>(i)] = std::abs(kv[static_cast<std::size_t>(i)] - gv[static_cast<std::size_t>(i)]) + ke[static_cast<std::size_t>(i)];
    }
    p.done = true;
  };

  const int threads = worker_count(opts.threads);
  for (int round = 0;; ++round) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (!panels[i].done) todo.push_back(i);
    const int nt = std::min<int>(threads, static_cast<int>(todo.size()));
    if (nt <= 1) {
      InnerIntegrator inner(K, kernel, inner_tol);
      for (std::size_t i : todo) evaluate(panels[i], inner);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
          InnerIntegrator inner(K, kernel, inner_tol);
          for (std::size_t j = next++; j < todo.size(); j = next++) evaluate(panels[todo[j]], inner);
        });
      for (auto& th : pool) th.join();
    }

    std::vector<cplx> col(panels.size());
    std::vector<double> tol(static_cast<std::size_t>(K));
    bool ok = true;
    for (int i = 0; i < K; ++i) {
      double e = 0.0, mag = 0.0;
      for (std::size_t p = 0; p < panels.size(); ++p) {
        col[p] = panels[p].value[static_cast<std::size_t>(i)];
        e += panels[p].error[static_cast<std::size_t>(i)];
        mag += panels[p].magnitude[static_cast<std::size_t>(i)];
      }
      out.value[static_cast<std::size_t>(i)] = pairwise_sum(col);
      out.error[static_cast<std::size_t>(i)] = e;
      tol[static_cast<std::size_t>(i)] =
          std::max({opts.abs_tol, opts.rel_tol * std::abs(out.value[static_cast<std::size_t>(i)]), kNoise * mag});
      if (e > tol[static_cast<std::size_t>(i)]) ok = false;
    }
    out.panels = static_cast<int>(panels.size());
    if (ok) {
      out.converged = true;
      break;
    }
    if (static_cast<int>(panels.size()) >= opts.max_panels) break;

    std::vector<Panel> next;
    next.reserve(panels.size() * 2);
    bool split_any = false;
    for (Panel& p : panels) {
      const double L = bp[static_cast<std::size_t>(p.segment) + 1] - bp[static_cast<std::size_t>(p.segment)];
      const double share = 0.5 * L * (p.s1 - p.s0) / width;
      bool split = false;
      for (int i = 0; i < K && !split; ++i)
        split = p.error[static_cast<std::size_t>(i)] > share * tol[static_cast<std::size_t>(i)];
      if (split && p.s1 - p.s0 > 1e-15) {
        const double m = 0.5 * (p.s0 + p.s1);
        next.push_back({p.segment, p.s0, m, {}, {}, {}});
        next.push_back({p.segment, m, p.s1, {}, {}, {}});
        split_any = true;
      } else {
        next.push_back(std::move(p));
      }
    }
    panels = std::move(next);
    if (!split_any) break;
  }
  return out;
}

namespace {

template <class T>
std::pair<T, double> adaptive_gk21(const std::function<T(double)>& g, double a, double b, double abs_tol, double rel_tol,
                                   int max_intervals) {
  struct Piece {
    double a, b;
    T value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  auto rule = [&](double lo, double hi) {
    T k{}, gs{};
    gk21_points(lo, hi, [&](double x, double wk, double wg) {
      const T v = g(x);
      k += wk * v;
      gs += wg * v;
    });
    return Piece{lo, hi, k, std::abs(k - gs)};
  };
  if (a == b) return {T{}, 0.0};
  std::priority_queue<Piece> heap;
  Piece first = rule(a, b);
  T total = first.value;
  double err = first.error;
  heap.push(first);
  int count = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_intervals) {
    const Piece p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    const Piece l = rule(p.a, m), r = rule(m, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  // Re-add the pieces for a clean sum.
  T s{};
  double e = 0.0;
  while (!heap.empty()) {
    s += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  return {s, e};
}

}  // namespace

Quad1DResult integrate_1d(const std::function<double(double)>& g, double a, double b, double abs_tol, double rel_tol,
                          int max_intervals) {
  const auto [v, e] = adaptive_gk21<double>(g, a, b, abs_tol, rel_tol, max_intervals);
  return {v, e};
}

Quad1DComplexResult integrate_1d_complex(const std::function<cplx(double)>& g, double a, double b, double abs_tol,
                                         double rel_tol, int max_intervals) {
  const auto [v, e] = adaptive_gk21<cplx>(g, a, b, abs_tol, rel_tol, max_intervals);
  return {v, e};
}

}  // namespace expt
