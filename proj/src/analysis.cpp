#include "expt/analysis.hpp"

#include <cmath>

#include "expt/resultant.hpp"

namespace expt {

namespace {

int z_degree(const HermPoly2& p) {
  for (int i = p.degree(); i >= 0; --i)
    if (p.coeff().row(i).cwiseAbs().maxCoeff() > 0.0) return i;
  return -1;
}

int w_degree(const HermPoly2& p) {
  for (int j = p.degree(); j >= 0; --j)
    if (p.coeff().col(j).cwiseAbs().maxCoeff() > 0.0) return j;
  return -1;
}

// Coefficients of a polynomial of degree < m from its values at the m-th
// roots of unity.
std::vector<cplx> dft_interpolate(const std::vector<cplx>& values) {
  const std::size_t m = values.size();
  std::vector<cplx> c(m);
  for (std::size_t k = 0; k < m; ++k) {
    cplx s{};
    for (std::size_t j = 0; j < m; ++j) s += values[j] * std::polar(1.0, -2.0 * kPi * double(j * k % m) / double(m));
    c[k] = s / double(m);
  }
  return c;
}

cplx unit_root(std::size_t j, std::size_t m) { return std::polar(1.0, 2.0 * kPi * double(j) / double(m)); }

}  // namespace

RegularityReport regular_rational_check(const HermitianRational& E, const std::vector<cplx>& probes, double tol) {
  RegularityReport r;
  r.deg_z_phi = z_degree(E.num);
  r.deg_w_phi = w_degree(E.num);
  r.deg_z_psi = z_degree(E.den);
  r.deg_w_psi = w_degree(E.den);
  r.degrees_match = r.deg_z_phi == r.deg_w_phi && r.deg_z_phi == r.deg_z_psi && r.deg_z_phi == r.deg_w_psi &&
                    r.deg_z_phi >= 0;
  if (!r.degrees_match) return r;
  const int d = r.deg_z_phi;
  const cplx s = E.den.column(d).leading();
  const Poly phi_d = E.num.column(d) * (1.0 / s);
  const Poly psi_d = E.den.column(d) * (1.0 / s);
  r.leading_match = approx_equal(phi_d, psi_d, tol);
  const double scale =
      std::max(E.num.coeff().cwiseAbs().maxCoeff(), E.den.coeff().cwiseAbs().maxCoeff()) / std::abs(s);
  bool all = true;
  for (cplx z0 : probes) {
    RegularityWitness wv;
    wv.z0 = z0;
    const double zt = tol * scale * std::pow(std::max(1.0, std::abs(z0)), d);
    for (int k = d; k >= 0; --k)
      if (std::abs(E.num.column(k)(z0) / s) > zt) {
        wv.k = k;
        break;
      }
    for (int j = d; j >= 0; --j)
      if (std::abs(E.den.column(j)(z0) / s) > zt) {
        wv.j = j;
        break;
      }
    wv.pass = wv.k >= 0 && wv.k == wv.j &&
              std::abs(E.num.column(wv.k)(z0) / s - E.den.column(wv.k)(z0) / s) <= zt;
    all = all && wv.pass;
    r.witnesses.push_back(wv);
  }
  r.verdict = r.leading_match && all;
  return r;
}

SeparabilityResult separability_test(const HermitianRational& E, double tol) {
  SeparabilityResult out;
  const Eigen::MatrixXcd& m = E.den.coeff();
  if (m.size() == 0) throw Error("zero denominator");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  out.rank_gap = sv.size() > 1 ? sv(1) / sv(0) : 0.0;
  if (out.rank_gap > tol) return out;
  const Eigen::VectorXcd u = svd.matrixU().col(0);
  std::vector<cplx> c(u.data(), u.data() + u.size());
  Poly chi = Poly(c).chopped(1e-12);
  const cplx lead = chi.leading();
  chi = chi.monic();
  // m = sigma u v^H with v = +-u for a Hermitian rank-one matrix.
  const cplx dotv = svd.matrixV().col(0).dot(u);
  out.scale = sv(0) * std::norm(lead) * dotv.real();
  out.chi = chi;
  out.separable = true;
  return out;
}

Poly fz_polynomial(const RationalFn& f, cplx z) { return f.num() - z * f.den(); }

Poly fz_resultant(const RationalFn& f, const Poly& a) {
  f.require_lemniscate_map();
  const int n = f.degree();
  const std::size_t m = static_cast<std::size_t>(std::max(a.degree(), 0) + 1);
  std::vector<cplx> vals(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Poly fz = fz_polynomial(f, unit_root(j, m));
    std::vector<cplx> fc(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) fc[static_cast<std::size_t>(i)] = fz[i];
    vals[j] = sylvester_resultant_formal(fc, a.coeffs());
  }
  return Poly(dft_interpolate(vals)).chopped(1e-12);
}

HermPoly2 nested_resultant(const RationalFn& f, const HermPoly2& phi) {
  f.require_lemniscate_map();
  if (phi.is_zero()) throw Error("nested resultant of the zero polynomial");
  const int n = f.degree();
  const int d = phi.degree();
  const std::size_t N = static_cast<std::size_t>(n * d);
  const std::size_t M = N + 1;
  const Poly Ab = f.num().conj_coeffs();
  const Poly Bb = f.den().conj_coeffs();

  // Inner resultant over u at each xi node, for one value v of conj(w).
  std::vector<cplx> xi_nodes(M);
  for (std::size_t j = 0; j < M; ++j) xi_nodes[j] = unit_root(j, M);
  std::vector<Poly> phi_at(M);
  for (std::size_t j = 0; j < M; ++j) phi_at[j] = phi.at_z(xi_nodes[j]);

  auto inner = [&](cplx v) {
    std::vector<cplx> a(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = Ab[i] - v * Bb[i];
    std::vector<cplx> vals(M);
    for (std::size_t j = 0; j < M; ++j) {
      std::vector<cplx> b(static_cast<std::size_t>(d + 1));
      for (int i = 0; i <= d; ++i) b[static_cast<std::size_t>(i)] = phi_at[j][i];
      vals[j] = sylvester_resultant_formal(a, b);
    }
    return dft_interpolate(vals);
  };

  Eigen::MatrixXcd samples(M, M);  // (z node, v node)
  for (std::size_t jv = 0; jv < M; ++jv) {
    const std::vector<cplx> R = inner(unit_root(jv, M));
    for (std::size_t jz = 0; jz < M; ++jz) {
      const Poly fz = fz_polynomial(f, unit_root(jz, M));
      std::vector<cplx> a(static_cast<std::size_t>(n + 1));
      for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = fz[i];
      samples(static_cast<Eigen::Index>(jz), static_cast<Eigen::Index>(jv)) = sylvester_resultant_formal(a, R);
    }
  }

  Eigen::MatrixXcd coeff(M, M);
  for (std::size_t jv = 0; jv < M; ++jv) {
    std::vector<cplx> col(M);
    for (std::size_t jz = 0; jz < M; ++jz) col[jz] = samples(static_cast<Eigen::Index>(jz), static_cast<Eigen::Index>(jv));
    const std::vector<cplx> c = dft_interpolate(col);
    for (std::size_t i = 0; i < M; ++i) coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jv)) = c[i];
  }
  for (Eigen::Index i = 0; i < coeff.rows(); ++i) {
    std::vector<cplx> row(M);
    for (std::size_t jv = 0; jv < M; ++jv) row[jv] = coeff(i, static_cast<Eigen::Index>(jv));
    const std::vector<cplx> c = dft_interpolate(row);
    for (std::size_t j = 0; j < M; ++j) coeff(i, static_cast<Eigen::Index>(j)) = c[j];
  }
  const double big = coeff.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < coeff.size(); ++i)
    if (std::abs(coeff(i)) <= 1e-12 * big) coeff(i) = 0.0;
  try {
    return HermPoly2(coeff, 1e-9);
  } catch (const NumericError&) {
    throw NumericError("nested resultant is not Hermitian within tolerance");
  }
}

std::vector<FitReport> rationality_probe(const std::vector<TransformSample>& samples, int dmax) {
  if (dmax < 1) throw Error("dmax must be at least 1");
  const std::size_t S = samples.size();
  double rho = 0.0;
  for (const TransformSample& s : samples) rho = std::max({rho, std::abs(s.z), std::abs(s.w)});
  if (rho == 0.0) throw NumericError("degenerate sample set");

  std::vector<cplx> zs(S), vs(S), es(S);
  for (std::size_t k = 0; k < S; ++k) {
    zs[k] = samples[k].z / rho;
    vs[k] = std::conj(samples[k].w) / rho;
    es[k] = samples[k].value;
  }
  auto mono = [&](std::size_t k, int i, int j) { return std::pow(zs[k], i) * std::pow(vs[k], j); };

  {
    const int nb = (dmax + 1) * (dmax + 1);
    if (S < static_cast<std::size_t>(2 * dmax + 2 * dmax * dmax)) throw NumericError("degenerate sample set");
    Eigen::MatrixXcd V(S, nb);
    for (std::size_t k = 0; k < S; ++k)
      for (int i = 0; i <= dmax; ++i)
        for (int j = 0; j <= dmax; ++j) V(static_cast<Eigen::Index>(k), i * (dmax + 1) + j) = mono(k, i, j);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(V);
    qr.setThreshold(1e-12);
    if (qr.rank() < nb) throw NumericError("degenerate sample set");
  }

  std::vector<FitReport> out;
  for (int d = 1; d <= dmax; ++d) {
    const int nu = 2 * d + 2 * d * d;
    Eigen::MatrixXcd A(S, nu);
    Eigen::VectorXcd rhs(S);
    for (std::size_t k = 0; k < S; ++k) {
      const Eigen::Index r = static_cast<Eigen::Index>(k);
      const cplx om = 1.0 - es[k];
      int c = 0;
      for (int i = 0; i < d; ++i) A(r, c++) = mono(k, i, d) * om;
      for (int j = 0; j < d; ++j) A(r, c++) = mono(k, d, j) * om;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(r, c++) = mono(k, i, j);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(r, c++) = -es[k] * mono(k, i, j);
      rhs(r) = -mono(k, d, d) * om;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
    const Eigen::VectorXcd x = cod.solve(rhs);
    const double res = (A * x - rhs).norm() / std::sqrt(static_cast<double>(S));

    FitReport rep;
    rep.d = d;
    rep.residual = res;
    rep.unknowns = nu;
    rep.phi = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    int c = 0;
    rep.phi(d, d) = 1.0;
    for (int i = 0; i < d; ++i) rep.phi(i, d) = x(c++);
    for (int j = 0; j < d; ++j) rep.phi(d, j) = x(c++);
    rep.psi = rep.phi;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) rep.phi(i, j) = x(c++);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) rep.psi(i, j) = x(c++);
    // Back to unscaled variables, keeping the z^d conj(w)^d coefficient 1.
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        const double f = std::pow(rho, 2 * d - i - j);
        rep.phi(i, j) *= f;
        rep.psi(i, j) *= f;
      }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<TransformSample> probe_samples(const DomainSpec& d, int count, double radius_factor,
                                           const QuadOptions& opts) {
  const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
  if (m < 2) throw Error("probe needs at least 4 samples");
  const double rho = radius_factor * outer_radius(d);
  std::vector<cplx> pts(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) pts[static_cast<std::size_t>(k)] = std::polar(rho, 2.0 * kPi * (k + 0.25) / m);
  const auto grid = exp_transform_quadrature_grid(d, pts, pts, opts);
  std::vector<TransformSample> out;
  out.reserve(static_cast<std::size_t>(m * m));
  for (const auto& row : grid)
    for (const TransformSample& s : row) out.push_back(s);
  return out;
}

}  // namespace expt
