#include "bpphase/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace bpphase {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + a.shape() + " vs " +
                         b.shape());
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " + a.shape());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: " + std::to_string(data_.size()) +
                         " entries cannot fill " + shape());
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw DimensionError("ComplexMatrix: ragged initializer list");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

std::string ComplexMatrix::shape() const {
  return "(" + std::to_string(rows_) + "x" + std::to_string(cols_) + ")";
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw std::out_of_range("StateVector::basis: index " + std::to_string(index) +
                            " outside dimension " + std::to_string(dim));
  }
  StateVector v(dim);
  v[index] = 1.0;
  return v;
}

double StateVector::norm() const { return std::sqrt(std::real(inner(*this, *this))); }

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("inner: dimensions " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()) + " differ");
  }
  Complex sum{};
  for (std::size_t i = 0; i < a.dim(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

double distance(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("distance: dimensions " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()) + " differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum);
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: inner dimensions differ, " + a.shape() + " x " + b.shape());
  }
  const std::size_t n = a.rows();
  const std::size_t inner_dim = a.cols();
  const std::size_t m = b.cols();
  ComplexMatrix c(n, m);
  const auto bd = b.data();
  auto cd = c.data();
  for (std::size_t i = 0; i < n; ++i) {
    Complex* crow = cd.data() + i * m;
    for (std::size_t k = 0; k < inner_dim; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = bd.data() + k * m;
      for (std::size_t j = 0; j < m; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  }
  return t;
}

StateVector apply(const ComplexMatrix& a, const StateVector& psi) {
  if (a.cols() != psi.dim()) {
    throw DimensionError("apply: matrix " + a.shape() + " cannot act on dimension " +
                         std::to_string(psi.dim()));
  }
  StateVector out(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const Complex pj = psi[j];
    if (pj == Complex{}) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] += a(i, j) * pj;
  }
  return out;
}

Complex expectation(const ComplexMatrix& a, const StateVector& psi) {
  require_square(a, "expectation");
  if (a.rows() != psi.dim()) {
    throw DimensionError("expectation: matrix " + a.shape() + " vs state dimension " +
                         std::to_string(psi.dim()));
  }
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (psi[i] != Complex{}) support.push_back(i);
  }
  Complex sum{};
  for (std::size_t i : support) {
    Complex row{};
    for (std::size_t j : support) row += a(i, j) * psi[j];
    sum += std::conj(psi[i]) * row;
  }
  return sum;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned long long k) {
  require_square(a, "matrix_power");
  ComplexMatrix result = ComplexMatrix::identity(a.rows());
  ComplexMatrix base = a;
  while (k > 0) {
    if (k & 1ULL) result = mat_mul(result, base);
    k >>= 1;
    if (k > 0) base = mat_mul(base, base);
  }
  return result;
}

ComplexMatrix q_commutator(const ComplexMatrix& a, const ComplexMatrix& b, Complex q) {
  require_square(a, "q_commutator");
  require_same_shape(a, b, "q_commutator");
  ComplexMatrix result = mat_mul(a, b);
  if (q != Complex{}) {
    const ComplexMatrix ba = mat_mul(b, a);
    auto rd = result.data();
    const auto bad = ba.data();
    for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= q * bad[k];
  }
  return result;
}

ComplexMatrix outer(const StateVector& psi, const StateVector& phi) {
  ComplexMatrix m(psi.dim(), phi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    for (std::size_t j = 0; j < phi.dim(); ++j) m(i, j) = psi[i] * std::conj(phi[j]);
  }
  return m;
}

StateVector column(const ComplexMatrix& a, std::size_t j) {
  if (j >= a.cols()) {
    throw std::out_of_range("column: index " + std::to_string(j) + " outside " + a.shape());
  }
  StateVector v(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, j);
  return v;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  const auto ad = a.data();
  const auto bd = b.data();
  for (std::size_t k = 0; k < ad.size(); ++k) best = std::max(best, std::abs(ad[k] - bd[k]));
  return best;
}

double hermiticity_deviation(const ComplexMatrix& a) {
  require_square(a, "hermiticity_deviation");
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      best = std::max(best, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return best;
}

double unitarity_deviation(const ComplexMatrix& a) {
  require_square(a, "unitarity_deviation");
  ComplexMatrix gram = mat_mul(adjoint(a), a);
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
  return gram.max_abs();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.is_square() && hermiticity_deviation(a) <= tol;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return a.is_square() && unitarity_deviation(a) <= tol;
}

}  // namespace bpphase
