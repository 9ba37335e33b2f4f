#pragma once

#include <doctest.h>

#include <random>

#include "expt/herm.hpp"
#include "expt/poly.hpp"

namespace testing {

inline expt::Poly random_poly(std::mt19937_64& rng, int deg) {
  std::normal_distribution<double> g;
  std::vector<expt::cplx> c(static_cast<std::size_t>(deg + 1));
  for (auto& x : c) x = {g(rng), g(rng)};
  return expt::Poly(c);
}

inline expt::HermPoly2 random_herm(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(d + 1, d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= i; ++j) {
      m(i, j) = {g(rng), i == j ? 0.0 : g(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  return expt::HermPoly2(m);
}

inline double rel(expt::cplx a, expt::cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing
