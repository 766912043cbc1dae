#pragma once

// Finite-dimensional phase formalism: phase states, the cyclic shift
// operator e^{iΦ}, its dual q^{L_z}, the hermitian phase operator Φ and the
// angular-velocity operator R = (E†HE − H)/ħ.
//
// Index convention: storage index k holds quantum number
//   rotor:      m = k − l      (m = −l at k = 0, m = +l at k = dim − 1)
//   oscillator: n = k
// Phase state n has amplitude e^{−i·(quantum number)·θ_n}/√dim on each
// basis state, with θ_n = θ0 + 2πn/dim.

#include <cstddef>
#include <string_view>

#include "bpphase/linalg.hpp"

namespace bpphase {

enum class SpaceKind { rotor, oscillator };

std::string_view to_string(SpaceKind kind);

/// Bijection between quantum numbers and storage indices.
class IndexMap {
 public:
  IndexMap(SpaceKind kind, long long l_or_s);

  long long min_quantum_number() const { return offset_; }
  long long max_quantum_number() const { return offset_ + static_cast<long long>(dim_) - 1; }

  bool contains(long long quantum_number) const {
    return quantum_number >= min_quantum_number() && quantum_number <= max_quantum_number();
  }

  /// Throws std::out_of_range outside [min, max].
  std::size_t index_of(long long quantum_number) const;
  long long quantum_number(std::size_t index) const;

  /// Quantum number one step up the cycle (max wraps to min).
  long long raised(long long quantum_number) const;

 private:
  long long offset_;
  std::size_t dim_;
};

struct BpSpace {
  SpaceKind kind = SpaceKind::rotor;
  long long l_or_s = 0;
  std::size_t dim = 1;
  double theta0 = 0.0;
  Complex q{1.0, 0.0};

  IndexMap index_map() const { return {kind, l_or_s}; }

  /// θ_n = θ0 + 2πn/dim.
  double theta(std::size_t n) const;

  /// q^k, computed from the reduced exponent k mod dim so that q^dim == 1 exactly.
  Complex q_power(long long k) const;
};

/// Throws std::invalid_argument for a negative l_or_s.
BpSpace make_space(SpaceKind kind, long long l_or_s, double theta0 = 0.0);

/// |m> (rotor) or |n> (oscillator).
StateVector basis_state(const BpSpace& space, long long quantum_number);

/// |θ_n>; throws std::out_of_range unless 0 <= n < dim.
StateVector phase_state(const BpSpace& space, long long n);

/// Matrix whose n-th column is |θ_n>.
ComplexMatrix phase_basis(const BpSpace& space);

/// e^{iΦ}: |m> -> |m+1>, closing the cycle at the top state.
ComplexMatrix shift_operator(const BpSpace& space);

/// q^{L_z} (or q^{N}): diagonal with q^m at the index of m.
ComplexMatrix q_lz_operator(const BpSpace& space);

/// Φ = Σ_n θ_n |θ_n><θ_n|. Dense O(dim³) construction.
ComplexMatrix phi_operator(const BpSpace& space);

/// Σ_n e^{iθ_n} |θ_n><θ_n|: e^{iΦ} from the spectral decomposition of Φ.
ComplexMatrix exp_i_phi_spectral(const BpSpace& space);

/// R = (E†·H·E − H)/ħ. Throws DimensionError on non-square or mismatched
/// operands and std::invalid_argument for hbar <= 0.
ComplexMatrix angular_velocity_operator(const ComplexMatrix& hamiltonian,
                                        const ComplexMatrix& shift, double hbar);

/// (1/iħ)[Φ, H], the rate obtained by applying the Heisenberg equation to Φ itself.
ComplexMatrix naive_phase_rate(const ComplexMatrix& phi, const ComplexMatrix& hamiltonian,
                               double hbar);

/// Worst-case deviations of the shift relations and the q-commutator.
struct DualityReport {
  double shift_interior = 0.0;  ///< max ‖E|m> − |m+1>‖ for m below the top state
  double shift_wrap = 0.0;      ///< ‖E|top> − |bottom>‖
  double dual_interior = 0.0;   ///< max ‖q^{L_z}|θ_n> − |θ_{n+1}>‖ for n < dim − 1
  double dual_wrap = 0.0;       ///< ‖q^{L_z}|θ_{dim−1}> − |θ_0>‖
  double q_commutator = 0.0;    ///< max-entry of q^{L_z}E − qEq^{L_z}

  double worst() const;
};

DualityReport duality_check(const BpSpace& space);

}  // namespace bpphase
