#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "bpphase/linalg.hpp"
#include "oracle.hpp"

namespace testing {

inline double max_diff(const bpphase::ComplexMatrix& a, const oracle::Dense& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, std::abs(a(i, j) - b[i][j]));
  return best;
}

inline double max_diff(const bpphase::StateVector& a, const oracle::Vec& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

inline oracle::Dense to_dense(const bpphase::ComplexMatrix& a) {
  oracle::Dense d(a.rows(), oracle::Vec(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d[i][j] = a(i, j);
  return d;
}

inline bpphase::ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> gauss;
  bpphase::ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) z = {gauss(rng), gauss(rng)};
  return m;
}

inline bpphase::StateVector random_unit_state(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss;
  bpphase::StateVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = {gauss(rng), gauss(rng)};
  const double n = v.norm();
  for (std::size_t i = 0; i < dim; ++i) v[i] /= n;
  return v;
}

inline bpphase::ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  const auto a = random_matrix(rng, dim, dim);
  auto h = a + bpphase::adjoint(a);
  return h;
}

}  // namespace testing
