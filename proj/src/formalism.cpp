#include "bpphase/formalism.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{−i·2π·k/dim} with k reduced to the symmetric range (−dim/2, dim/2] so
// the angle handed to polar() stays small.
Complex root_of_unity(long long k, std::size_t dim) {
  const auto d = static_cast<long long>(dim);
  long long r = ((k % d) + d) % d;
  if (r == 0) return {1.0, 0.0};
  if (2 * r > d) r -= d;
  return std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(dim));
}

void require_compatible(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": expected two square matrices of equal size, got " +
                         a.shape() + " and " + b.shape());
  }
}

// Σ_n w_n |θ_n><θ_n| for the given spectral weights.
ComplexMatrix spectral_sum(const BpSpace& space, const std::vector<Complex>& weights) {
  const ComplexMatrix basis = phase_basis(space);
  ComplexMatrix weighted = basis;
  for (std::size_t i = 0; i < space.dim; ++i) {
    for (std::size_t n = 0; n < space.dim; ++n) weighted(i, n) *= weights[n];
  }
  return mat_mul(weighted, adjoint(basis));
}

}  // namespace

std::string_view to_string(SpaceKind kind) {
  return kind == SpaceKind::rotor ? "rotor" : "oscillator";
}

IndexMap::IndexMap(SpaceKind kind, long long l_or_s)
    : offset_(kind == SpaceKind::rotor ? -l_or_s : 0),
      dim_(static_cast<std::size_t>(kind == SpaceKind::rotor ? 2 * l_or_s + 1 : l_or_s + 1)) {}

std::size_t IndexMap::index_of(long long quantum_number) const {
  if (!contains(quantum_number)) {
    throw std::out_of_range("quantum number " + std::to_string(quantum_number) +
                            " outside [" + std::to_string(min_quantum_number()) + ", " +
                            std::to_string(max_quantum_number()) + "]");
  }
  return static_cast<std::size_t>(quantum_number - offset_);
}

long long IndexMap::quantum_number(std::size_t index) const {
  if (index >= dim_) {
    throw std::out_of_range("storage index " + std::to_string(index) + " outside dimension " +
                            std::to_string(dim_));
  }
  return offset_ + static_cast<long long>(index);
}

long long IndexMap::raised(long long quantum_number) const {
  index_of(quantum_number);
  return quantum_number == max_quantum_number() ? min_quantum_number() : quantum_number + 1;
}

double BpSpace::theta(std::size_t n) const {
  return theta0 + kTwoPi * static_cast<double>(n) / static_cast<double>(dim);
}

Complex BpSpace::q_power(long long k) const { return root_of_unity(k, dim); }

BpSpace make_space(SpaceKind kind, long long l_or_s, double theta0) {
  if (l_or_s < 0) {
    throw std::invalid_argument(std::string(kind == SpaceKind::rotor ? "l" : "s") +
                                " must be non-negative, got " + std::to_string(l_or_s));
  }
  BpSpace space;
  space.kind = kind;
  space.l_or_s = l_or_s;
  space.dim = static_cast<std::size_t>(kind == SpaceKind::rotor ? 2 * l_or_s + 1 : l_or_s + 1);
  space.theta0 = theta0;
  space.q = root_of_unity(1, space.dim);
  return space;
}

StateVector basis_state(const BpSpace& space, long long quantum_number) {
  return StateVector::basis(space.dim, space.index_map().index_of(quantum_number));
}

StateVector phase_state(const BpSpace& space, long long n) {
  if (n < 0 || n >= static_cast<long long>(space.dim)) {
    throw std::out_of_range("phase state label " + std::to_string(n) + " outside [0, " +
                            std::to_string(space.dim) + ")");
  }
  const IndexMap map = space.index_map();
  const double scale = 1.0 / std::sqrt(static_cast<double>(space.dim));
  StateVector psi(space.dim);
  for (std::size_t k = 0; k < space.dim; ++k) {
    const long long qn = map.quantum_number(k);
    // e^{−i·qn·θ_n} = e^{−i·qn·θ0} · q^{qn·n}
    Complex amp = scale * root_of_unity(qn * n, space.dim);
    if (space.theta0 != 0.0 && qn != 0) {
      amp *= std::polar(1.0, -static_cast<double>(qn) * space.theta0);
    }
    psi[k] = amp;
  }
  return psi;
}

ComplexMatrix phase_basis(const BpSpace& space) {
  ComplexMatrix basis(space.dim, space.dim);
  for (std::size_t n = 0; n < space.dim; ++n) {
    const StateVector psi = phase_state(space, static_cast<long long>(n));
    for (std::size_t k = 0; k < space.dim; ++k) basis(k, n) = psi[k];
  }
  return basis;
}

ComplexMatrix shift_operator(const BpSpace& space) {
  const IndexMap map = space.index_map();
  ComplexMatrix e(space.dim, space.dim);
  for (std::size_t k = 0; k < space.dim; ++k) {
    const long long qn = map.quantum_number(k);
    e(map.index_of(map.raised(qn)), k) = 1.0;
  }
  return e;
}

ComplexMatrix q_lz_operator(const BpSpace& space) {
  const IndexMap map = space.index_map();
  std::vector<Complex> diag(space.dim);
  for (std::size_t k = 0; k < space.dim; ++k) diag[k] = space.q_power(map.quantum_number(k));
  return ComplexMatrix::diagonal(diag);
}

ComplexMatrix phi_operator(const BpSpace& space) {
  std::vector<Complex> weights(space.dim);
  for (std::size_t n = 0; n < space.dim; ++n) weights[n] = space.theta(n);
  return spectral_sum(space, weights);
}

ComplexMatrix exp_i_phi_spectral(const BpSpace& space) {
  std::vector<Complex> weights(space.dim);
  for (std::size_t n = 0; n < space.dim; ++n) weights[n] = std::polar(1.0, space.theta(n));
  return spectral_sum(space, weights);
}

ComplexMatrix angular_velocity_operator(const ComplexMatrix& hamiltonian,
                                        const ComplexMatrix& shift, double hbar) {
  require_compatible(hamiltonian, shift, "angular_velocity_operator");
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("angular_velocity_operator: hbar must be positive");
  }
  ComplexMatrix r = mat_mul(mat_mul(adjoint(shift), hamiltonian), shift);
  r -= hamiltonian;
  for (auto& z : r.data()) z /= hbar;
  return r;
}

ComplexMatrix naive_phase_rate(const ComplexMatrix& phi, const ComplexMatrix& hamiltonian,
                               double hbar) {
  require_compatible(phi, hamiltonian, "naive_phase_rate");
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("naive_phase_rate: hbar must be positive");
  }
  ComplexMatrix rate = mat_mul(phi, hamiltonian);
  rate -= mat_mul(hamiltonian, phi);
  const Complex i_hbar{0.0, hbar};
  for (auto& z : rate.data()) z /= i_hbar;
  return rate;
}

double DualityReport::worst() const {
  return std::max({shift_interior, shift_wrap, dual_interior, dual_wrap, q_commutator});
}

DualityReport duality_check(const BpSpace& space) {
  DualityReport report;
  const IndexMap map = space.index_map();
  const long long top = map.max_quantum_number();
  const long long bottom = map.min_quantum_number();
  const ComplexMatrix e = shift_operator(space);
  const ComplexMatrix q_lz = q_lz_operator(space);

  for (long long qn = bottom; qn < top; ++qn) {
    const double dev = distance(apply(e, basis_state(space, qn)), basis_state(space, qn + 1));
    report.shift_interior = std::max(report.shift_interior, dev);
  }
  report.shift_wrap = distance(apply(e, basis_state(space, top)), basis_state(space, bottom));

  {
    // Columns of q^{L_z}·P are q^{L_z}|θ_n>.
    const ComplexMatrix phases = phase_basis(space);
    const ComplexMatrix moved = mat_mul(q_lz, phases);
    const std::size_t last = space.dim - 1;
    for (std::size_t n = 0; n < last; ++n) {
      const double dev = distance(column(moved, n), column(phases, n + 1));
      report.dual_interior = std::max(report.dual_interior, dev);
    }
    report.dual_wrap = distance(column(moved, last), column(phases, 0));
  }

  report.q_commutator = q_commutator(q_lz, e, space.q).max_abs();
  return report;
}

}  // namespace bpphase
