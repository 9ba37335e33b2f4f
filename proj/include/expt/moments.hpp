#pragma once

#include <Eigen/Dense>
#include <vector>

#include "expt/domain.hpp"
#include "expt/quadrature.hpp"

namespace expt {

enum class MomentSource { quadrature, closed_form };

/// M(p, q) = (1/pi) * integral of z^p conj(z)^q dx dy for p, q <= maxdeg.
struct MomentTable {
  int maxdeg = 0;
  Eigen::MatrixXcd M;
  MomentSource source = MomentSource::closed_form;
  /// The domain lies in |z| <= radius, so series in 1/z, 1/conj(w) built
  /// from the table converge for |z|, |w| > radius.
  double radius = 0.0;
  /// Largest |M(q,p) - conj(M(p,q))| before symmetrization.
  double asymmetry = 0.0;
};

cplx moment_quadrature(const DomainSpec& d, int p, int q, const QuadOptions& opts = {});

/// All moments with p, q <= maxdeg from one vector-valued quadrature,
/// symmetrized after recording the asymmetry.
MomentTable moment_table_quadrature(const DomainSpec& d, int maxdeg, const QuadOptions& opts = {});

/// Closed forms for disks, annuli, circular domains and the rose
/// lemniscates |z^n - 1| < 1; quadrature for everything else or when
/// closed forms are declined.
MomentTable moment_table(const DomainSpec& d, int maxdeg, const QuadOptions& opts = {}, bool closed_form = true);

/// Disk moments in closed form for any center.
cplx disk_moment(cplx a, double R, int p, int q);

/// M_{p,q} of the Bernoulli lemniscate |z^2 - 1| < 1: zero for p+q odd,
/// otherwise Gamma((p+q)/2+1) / (2 Gamma((p+1)/2+1) Gamma((q+1)/2+1)).
double bernoulli_moment(int p, int q);
/// M_{2k,0} = 2^(2k+1) (k!)^2 / (pi (2k+1)!).
double bernoulli_even_moment(int k);

/// M_{kn+lambda, mn+lambda} of |z^n - 1| < 1, 0 <= lambda < n.
double rose_moment(int n, int k, int m, int lambda);
/// M_{i,j} of |z^n - 1| < 1; zero unless i = j mod n.
double rose_moment_ij(int n, int i, int j);

/// n when the domain is the full sublevel set of f = z^n - 1, else 0.
int rose_order(const DomainSpec& d);

struct QuadNode {
  cplx z;
  /// c[j] multiplies the j-th derivative of h at z.
  std::vector<cplx> c;
};

struct QuadratureData {
  std::vector<QuadNode> nodes;
  int order() const;
};

/// max over h = 1, z, ..., z^maxdeg of |integral of h dx dy - sum c_kj h^(j)(z_k)|.
double quadrature_identity_check(const DomainSpec& d, const QuadratureData& Q, int maxdeg,
                                 const QuadOptions& opts = {});

}  // namespace expt
