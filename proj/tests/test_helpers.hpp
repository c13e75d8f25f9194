#pragma once

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "zeno/linalg.hpp"

namespace zeno::test {

inline double mat_dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

inline double cplx_dist(cplx a, cplx b) { return std::abs(a - b); }

inline Matrix random_complex_matrix(std::mt19937_64& rng, int dim, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = scale * cplx{u(rng), u(rng)};
  return m;
}

}  // namespace zeno::test
