#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "expt/domain.hpp"

namespace expt {

/// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1]. Nodes
/// are listed for the nonnegative half; index 10 is the center.
struct GK21 {
  static const std::array<double, 11> nodes;
  static const std::array<double, 11> kronrod_weights;
  /// Gauss weights for the odd-indexed nodes 1, 3, 5, 7, 9.
  static const std::array<double, 5> gauss_weights;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  /// Samples per vertical line for lemniscate crossings.
  int resolution = 600;
  int max_panels = 20000;
  /// 0 picks EXPTRANSFORM_THREADS or the hardware count.
  int threads = 0;
};

struct QuadResult {
  std::vector<cplx> value;
  std::vector<double> error;
  int panels = 0;
  bool converged = false;
};

/// Writes K values of the integrand at zeta into out.
using Kernel = std::function<void(cplx zeta, std::span<cplx> out)>;

/// Integral over the region of K integrands with respect to dx dy.
///
/// The outer x-integral runs over panels between breakpoints, each mapped by
/// x = x0 + (x1 - x0)(3s^2 - 2s^3) so that square-root edges become smooth;
/// the inner y-integrals follow the slice intervals exactly. Both levels use
/// adaptive GK21. Panels are refined in rounds and the result is reduced in
/// a fixed order, so it does not depend on the thread count.
QuadResult integrate_region(const SliceRegion& region, int K, const Kernel& kernel, const QuadOptions& opts = {});

struct Quad1DResult {
  double value = 0.0;
  double error = 0.0;
};

/// Globally adaptive GK21 on [a, b].
Quad1DResult integrate_1d(const std::function<double(double)>& g, double a, double b, double abs_tol = 1e-13,
                          double rel_tol = 1e-13, int max_intervals = 2000);

struct Quad1DComplexResult {
  cplx value;
  double error = 0.0;
};

Quad1DComplexResult integrate_1d_complex(const std::function<cplx(double)>& g, double a, double b,
                                         double abs_tol = 1e-13, double rel_tol = 1e-13, int max_intervals = 2000);

/// Worker count: opts value if positive, else EXPTRANSFORM_THREADS, else the
/// hardware concurrency.
int worker_count(int requested);

/// Sum in a balanced binary tree over the index order.
cplx pairwise_sum(std::span<const cplx> v);

}  // namespace expt
