#pragma once

// The three model systems (free rotor, charged rotor in a uniform axial
// field, harmonic oscillator), their Hamiltonians, and the <R> tables built
// from them.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpphase/formalism.hpp"
#include "bpphase/linalg.hpp"

namespace bpphase {

enum class SystemKind { free_rotor, magnetic_rotor, oscillator };
enum class UnitSystem { natural, gaussian };

std::string_view to_string(SystemKind kind);
std::string_view to_string(UnitSystem units);

/// CGS-Gaussian constants for the electron.
namespace gaussian {
inline constexpr double kElectronCharge = 4.803204712570263e-10;  // statC
inline constexpr double kElectronMass = 9.1093837015e-28;         // g
inline constexpr double kSpeedOfLight = 2.99792458e10;            // cm/s
inline constexpr double kHbar = 1.054571817e-27;                  // erg·s
}  // namespace gaussian

struct SystemSpec {
  SystemKind kind = SystemKind::free_rotor;
  double mass = 1.0;
  double radius = 1.0;
  double hbar = 1.0;
  double omega = 1.0;  // oscillator only
  double field = 0.0;
  double charge = 1.0;
  double light_speed = 1.0;
  UnitSystem units = UnitSystem::natural;

  /// ω_L = eB/(2Mc).
  double larmor() const { return charge * field / (2.0 * mass * light_speed); }

  /// Sets the field so that larmor() == omega_l for the current e, M, c.
  SystemSpec& with_larmor(double omega_l);

  /// Throws std::invalid_argument on non-positive M, R, ħ (ω for the
  /// oscillator) or a non-finite Larmor frequency.
  void validate() const;

  static SystemSpec free_rotor(double mass = 1.0, double radius = 1.0, double hbar = 1.0);
  static SystemSpec magnetic_rotor(double larmor_frequency, double mass = 1.0,
                                   double radius = 1.0, double hbar = 1.0);
  static SystemSpec oscillator(double omega, double hbar = 1.0);
  /// Electron on a ring of `radius_cm` in a field of `field_gauss`.
  static SystemSpec electron_ring_gaussian(double radius_cm, double field_gauss);
};

/// H₀ = ħ²L_z²/(2MR²).
ComplexMatrix rotor_hamiltonian(const BpSpace& space, const SystemSpec& spec);

/// H₀ − ω_L·ħ·L_z.
ComplexMatrix magnetic_hamiltonian(const BpSpace& space, const SystemSpec& spec);

/// (N + 1/2)ħω.
ComplexMatrix oscillator_hamiltonian(const BpSpace& space, const SystemSpec& spec);

/// Dispatches on spec.kind.
ComplexMatrix hamiltonian(const BpSpace& space, const SystemSpec& spec);

struct ExpectationRow {
  long long quantum_number = 0;
  double r_expectation = 0.0;
  /// Classical angular velocity for the state; ω for the oscillator.
  double semiclassical_target = 0.0;
  double abs_error = 0.0;
  /// Empty when the target is zero.
  std::optional<double> rel_error;
  /// <R_B> − <R_0>, magnetic rotor only.
  std::optional<double> field_shift;
  /// Top state, where the shift closes the cycle.
  bool wrap = false;

  friend bool operator==(const ExpectationRow&, const ExpectationRow&) = default;
};

struct ExpectationSummary {
  /// Max deviation of interior rows from the exact interior formula:
  /// (2m+1)ħ/(2MR²) (− ω_L with field), or ω for the oscillator.
  double interior_formula_deviation = 0.0;
  /// Largest |Im <R>| seen over all rows.
  double max_imaginary_part = 0.0;
  double edge_value = 0.0;
  std::optional<double> larmor_frequency;
  /// Mean of the interior field shifts and their worst deviation from −ω_L.
  std::optional<double> interior_shift;
  std::optional<double> interior_shift_deviation;

  friend bool operator==(const ExpectationSummary&, const ExpectationSummary&) = default;
};

struct ExpectationReport {
  BpSpace space;
  SystemSpec spec;
  std::vector<ExpectationRow> rows;
  ExpectationSummary summary;
};

/// <R> over every basis state. Throws std::invalid_argument when the space
/// kind does not match the system kind.
ExpectationReport expectation_table(const BpSpace& space, const SystemSpec& spec);

struct ConvergenceRow {
  long long l = 0;
  long long m = 0;
  double r_expectation = 0.0;
  double target = 0.0;
  double rel_error = 0.0;

  friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct ConvergenceReport {
  double m_fraction = 0.0;
  std::vector<ConvergenceRow> rows;  // sorted by l
  /// max |rel_error − 1/(2m)|
  double closed_form_deviation = 0.0;
  bool strictly_decreasing = true;
};

/// Free-rotor <m|R|m> against the Ehrenfest value ħm/(MR²) with
/// m = round(m_fraction·l). Throws std::invalid_argument if any l < 2 or
/// m falls outside [1, l).
ConvergenceReport semiclassical_convergence(double m_fraction, std::vector<long long> l_values,
                                            const SystemSpec& spec);

}  // namespace bpphase
