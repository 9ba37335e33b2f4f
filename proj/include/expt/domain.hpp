#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "expt/poly.hpp"

namespace expt {

struct Disk {
  cplx a;
  double R = 1.0;
};

/// r <= |z| < R about the origin. r == R is accepted as the empty domain.
struct Annulus {
  double r = 0.5;
  double R = 1.0;
};

struct CircularDomain {
  Disk outer;
  std::vector<Disk> holes;
};

/// x^2/a^2 + y^2/b^2 < 1 with foci at +-c.
struct Ellipse {
  double a = 2.0;
  double b = 1.0;
  double c() const;
};

/// Component structure of {|f| < 1} for a lemniscate map f.
///
/// Every bounded component contains a zero of f. A point is assigned to a
/// component by following the flow z' = -f/f' (arg f fixed, |f| decreasing)
/// to a zero. Zeros are joined when a critical point of f with |f| < 1 flows
/// into both of them.
class LemniscateTopology {
 public:
  explicit LemniscateTopology(RationalFn f);

  const RationalFn& f() const { return f_; }
  int component_count() const { return count_; }
  const std::vector<cplx>& zeros() const { return zeros_; }
  int zero_component(std::size_t i) const { return zero_comp_[i]; }
  /// Component label of z, or -1 when |f(z)| >= 1.
  int component_at(cplx z) const;
  /// Mean of the zeros of a component.
  cplx center(int component) const;

 private:
  std::optional<int> flow_to_zero(cplx z) const;

  RationalFn f_;
  std::vector<cplx> zeros_;
  std::vector<int> zero_comp_;
  int count_ = 0;
};

/// The whole sublevel set {|f| < 1}.
struct LemniscateSublevel {
  RationalFn f;
  std::shared_ptr<const LemniscateTopology> topology;
};

/// The component of {|f| < 1} containing the seed.
struct LemniscateComponent {
  RationalFn f;
  cplx seed;
  std::shared_ptr<const LemniscateTopology> topology;
  int label = 0;
};

using DomainSpec = std::variant<Disk, Annulus, CircularDomain, Ellipse, LemniscateSublevel, LemniscateComponent>;

DomainSpec make_disk(cplx a, double R);
DomainSpec make_annulus(double r, double R);
DomainSpec make_circular(Disk outer, std::vector<Disk> holes);
DomainSpec make_ellipse(double a, double b);
DomainSpec make_lemniscate(const RationalFn& f);
/// Throws RegionError when |f(seed)| >= 1.
DomainSpec make_lemniscate_component(const RationalFn& f, cplx seed);

std::string kind_name(const DomainSpec& d);

struct Box {
  double x0, x1, y0, y1;
};

bool contains(const DomainSpec& d, cplx z);
Box bounding_box(const DomainSpec& d);
/// max |z| over the closure.
double outer_radius(const DomainSpec& d);
/// Exact for circles and ellipses; for lemniscates the area of the polygon
/// through 8192 boundary samples (relative error near 1e-8).
double area(const DomainSpec& d);

/// Throws RegionError("evaluation point in domain") when z lies in the
/// closure or within `margin` of the boundary.
void require_exterior(const DomainSpec& d, cplx z, double margin = 1e-6);

struct GridMask {
  Box box{};
  int nx = 0;
  int ny = 0;
  std::vector<unsigned char> mask;  // row-major, index iy * nx + ix

  double cell_area() const;
  cplx cell_center(int ix, int iy) const;
  bool at(int ix, int iy) const { return mask[static_cast<std::size_t>(iy) * nx + ix] != 0; }
  double area() const;
};

/// Membership of every cell center of a resolution x resolution grid.
GridMask grid_mask(const DomainSpec& d, int resolution);

/// 4-connected flood fill of {|f| < 1} from the cell containing the seed.
/// Cells assigned to another component by the topology are walls.
GridMask component_of(const RationalFn& f, cplx seed, int resolution);

/// Bounding box of {|f| <= 1}: roots of num and den padded by one unit,
/// enlarged until |f| >= 1 along all four edges.
Box lemniscate_box(const RationalFn& f);

/// Boundary points, one list per boundary curve, ordered along each curve.
/// Circles and ellipses are sampled parametrically; lemniscate components by
/// bisection along rays from the component center, falling back to a traced
/// contour when a ray re-enters the component.
std::vector<std::vector<cplx>> boundary_sample(const DomainSpec& d, int count);

/// Closed polylines of |f| = 1 by marching squares on a grid over the
/// lemniscate box, with every vertex projected onto the curve.
std::vector<std::vector<cplx>> trace_lemniscate(const RationalFn& f, int resolution);

/// "x,y" lines, curves separated by blank lines.
void write_contour_csv(std::ostream& os, const std::vector<std::vector<cplx>>& curves);

enum class SchwarzBranch { plus, minus };

/// sqrt(z^2 - c^2) on the plane cut along [-c, c], positive for large z > c.
cplx ellipse_root(double c, cplx z);

/// S(z) = ((a^2+b^2) z +- 2ab sqrt(z^2-c^2)) / c^2. S_minus agrees with
/// conj(z) on the ellipse. Throws RegionError("branch cut") on [-c, c].
cplx schwarz_ellipse(double a, double b, cplx z, SchwarzBranch branch);

/// Vertical slices of a domain: the set {y : x + iy in D} as disjoint
/// intervals, plus the x-values where the slice structure changes.
struct SliceRegion {
  double x0 = 0.0;
  double x1 = 0.0;
  std::vector<double> breakpoints;
  std::function<std::vector<std::pair<double, double>>(double)> intervals;
};

/// `resolution` is the number of samples per vertical line used to bracket
/// lemniscate crossings; analytic shapes ignore it.
SliceRegion make_slice_region(const DomainSpec& d, int resolution = 600);

}  // namespace expt
