#pragma once

// Dense complex linear algebra used by every operator in the library.
//
// Storage convention (repo-wide): ComplexMatrix is row-major, entry (i, j)
// lives at data()[i * cols() + j]. Row/column indices are storage indices;
// the map from quantum numbers to storage indices lives in formalism.hpp.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpphase {

using Complex = std::complex<double>;

/// Raised when operand shapes are incompatible.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  /// Largest entry magnitude (the max-entry norm used by every check).
  double max_abs() const;

  std::string shape() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim) : amplitudes_(dim) {}
  explicit StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {}

  /// Unit vector with a single 1 at `index`.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  double norm() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amplitudes_;
};

/// <a|b>, antilinear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

/// Euclidean norm of a - b.
double distance(const StateVector& a, const StateVector& b);

/// Matrix product. Zero entries of the left factor are skipped, so products
/// with permutation or diagonal left factors cost O(nnz * cols).
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);

/// A|psi>.
StateVector apply(const ComplexMatrix& a, const StateVector& psi);

/// <psi|A|psi>. Only the support of psi is visited.
Complex expectation(const ComplexMatrix& a, const StateVector& psi);

/// A^k by repeated squaring, A^0 = I.
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned long long k);

/// A·B − q·B·A.
ComplexMatrix q_commutator(const ComplexMatrix& a, const ComplexMatrix& b, Complex q);

/// |ψ><φ|.
ComplexMatrix outer(const StateVector& psi, const StateVector& phi);

/// Column j as a state vector.
StateVector column(const ComplexMatrix& a, std::size_t j);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max-entry |A − A†|.
double hermiticity_deviation(const ComplexMatrix& a);

/// max-entry |A†A − I|.
double unitarity_deviation(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);

}  // namespace bpphase
