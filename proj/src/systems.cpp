#include "bpphase/systems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bpphase {

namespace {

bool is_rotor(SystemKind kind) {
  return kind == SystemKind::free_rotor || kind == SystemKind::magnetic_rotor;
}

void require_kinds(const BpSpace& space, const SystemSpec& spec, const char* what) {
  const bool ok = is_rotor(spec.kind) ? space.kind == SpaceKind::rotor
                                      : space.kind == SpaceKind::oscillator;
  if (!ok) {
    throw std::invalid_argument(std::string(what) + ": " + std::string(to_string(spec.kind)) +
                                " system cannot live on a " +
                                std::string(to_string(space.kind)) + " space");
  }
}

std::vector<double> rotor_energies(const BpSpace& space, const SystemSpec& spec) {
  const IndexMap map = space.index_map();
  const double scale = spec.hbar * spec.hbar / (2.0 * spec.mass * spec.radius * spec.radius);
  std::vector<double> energies(space.dim);
  for (std::size_t k = 0; k < space.dim; ++k) {
    const auto m = static_cast<double>(map.quantum_number(k));
    energies[k] = m * m * scale;
  }
  return energies;
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::free_rotor:
      return "free_rotor";
    case SystemKind::magnetic_rotor:
      return "magnetic_rotor";
    case SystemKind::oscillator:
      return "oscillator";
  }
  return "unknown";
}

std::string_view to_string(UnitSystem units) {
  return units == UnitSystem::natural ? "natural" : "gaussian";
}

SystemSpec& SystemSpec::with_larmor(double omega_l) {
  field = omega_l * 2.0 * mass * light_speed / charge;
  return *this;
}

void SystemSpec::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  if (kind == SystemKind::oscillator && !(omega > 0.0)) {
    throw std::invalid_argument("omega must be positive for the oscillator");
  }
  if (!std::isfinite(larmor())) {
    throw std::invalid_argument("Larmor frequency eB/(2Mc) is not finite");
  }
}

SystemSpec SystemSpec::free_rotor(double mass, double radius, double hbar) {
  SystemSpec spec;
  spec.kind = SystemKind::free_rotor;
  spec.mass = mass;
  spec.radius = radius;
  spec.hbar = hbar;
  return spec;
}

SystemSpec SystemSpec::magnetic_rotor(double larmor_frequency, double mass, double radius,
                                      double hbar) {
  SystemSpec spec = free_rotor(mass, radius, hbar);
  spec.kind = SystemKind::magnetic_rotor;
  spec.with_larmor(larmor_frequency);
  return spec;
}

SystemSpec SystemSpec::oscillator(double omega, double hbar) {
  SystemSpec spec;
  spec.kind = SystemKind::oscillator;
  spec.omega = omega;
  spec.hbar = hbar;
  return spec;
}

SystemSpec SystemSpec::electron_ring_gaussian(double radius_cm, double field_gauss) {
  SystemSpec spec;
  spec.kind = SystemKind::magnetic_rotor;
  spec.units = UnitSystem::gaussian;
  spec.mass = gaussian::kElectronMass;
  spec.radius = radius_cm;
  spec.hbar = gaussian::kHbar;
  spec.charge = gaussian::kElectronCharge;
  spec.light_speed = gaussian::kSpeedOfLight;
  spec.field = field_gauss;
  return spec;
}

ComplexMatrix rotor_hamiltonian(const BpSpace& space, const SystemSpec& spec) {
  require_kinds(space, spec, "rotor_hamiltonian");
  spec.validate();
  const std::vector<double> energies = rotor_energies(space, spec);
  return ComplexMatrix::diagonal(energies);
}

ComplexMatrix magnetic_hamiltonian(const BpSpace& space, const SystemSpec& spec) {
  if (spec.kind != SystemKind::magnetic_rotor) {
    throw std::invalid_argument("magnetic_hamiltonian: expected a magnetic_rotor system, got " +
                                std::string(to_string(spec.kind)));
  }
  require_kinds(space, spec, "magnetic_hamiltonian");
  spec.validate();
  // The field term carries ħ so that ω_L·ħ·m is an energy for dimensionless m.
  const double zeeman = spec.larmor() * spec.hbar;
  const IndexMap map = space.index_map();
  std::vector<double> energies = rotor_energies(space, spec);
  for (std::size_t k = 0; k < space.dim; ++k) {
    energies[k] -= zeeman * static_cast<double>(map.quantum_number(k));
  }
  return ComplexMatrix::diagonal(energies);
}

ComplexMatrix oscillator_hamiltonian(const BpSpace& space, const SystemSpec& spec) {
  if (spec.kind != SystemKind::oscillator) {
    throw std::invalid_argument("oscillator_hamiltonian: expected an oscillator system, got " +
                                std::string(to_string(spec.kind)));
  }
  require_kinds(space, spec, "oscillator_hamiltonian");
  spec.validate();
  std::vector<double> energies(space.dim);
  for (std::size_t n = 0; n < space.dim; ++n) {
    energies[n] = (static_cast<double>(n) + 0.5) * spec.hbar * spec.omega;
  }
  return ComplexMatrix::diagonal(energies);
}

ComplexMatrix hamiltonian(const BpSpace& space, const SystemSpec& spec) {
  switch (spec.kind) {
    case SystemKind::free_rotor:
      return rotor_hamiltonian(space, spec);
    case SystemKind::magnetic_rotor:
      return magnetic_hamiltonian(space, spec);
    case SystemKind::oscillator:
      return oscillator_hamiltonian(space, spec);
  }
  throw std::invalid_argument("hamiltonian: unknown system kind");
}

ExpectationReport expectation_table(const BpSpace& space, const SystemSpec& spec) {
  require_kinds(space, spec, "expectation_table");
  spec.validate();

  const ComplexMatrix shift = shift_operator(space);
  const ComplexMatrix r = angular_velocity_operator(hamiltonian(space, spec), shift, spec.hbar);
  const bool magnetic = spec.kind == SystemKind::magnetic_rotor;
  std::optional<ComplexMatrix> r_free;
  if (magnetic) {
    r_free = angular_velocity_operator(rotor_hamiltonian(space, spec), shift, spec.hbar);
  }

  ExpectationReport report{space, spec, {}, {}};
  const IndexMap map = space.index_map();
  const long long top = map.max_quantum_number();
  const double omega_l = magnetic ? spec.larmor() : 0.0;
  const double rotor_unit = spec.hbar / (spec.mass * spec.radius * spec.radius);

  double shift_sum = 0.0;
  long long shift_count = 0;
  double shift_dev = 0.0;

  for (std::size_t k = 0; k < space.dim; ++k) {
    const long long qn = map.quantum_number(k);
    const StateVector psi = StateVector::basis(space.dim, k);
    const Complex value = expectation(r, psi);

    ExpectationRow row;
    row.quantum_number = qn;
    row.r_expectation = value.real();
    row.wrap = qn == top;
    report.summary.max_imaginary_part =
        std::max(report.summary.max_imaginary_part, std::abs(value.imag()));

    double interior_formula = 0.0;
    if (space.kind == SpaceKind::rotor) {
      row.semiclassical_target = rotor_unit * static_cast<double>(qn) - omega_l;
      interior_formula = 0.5 * static_cast<double>(2 * qn + 1) * rotor_unit - omega_l;
    } else {
      row.semiclassical_target = spec.omega;
      interior_formula = spec.omega;
    }
    row.abs_error = std::abs(row.r_expectation - row.semiclassical_target);
    if (row.semiclassical_target != 0.0) {
      row.rel_error = row.abs_error / std::abs(row.semiclassical_target);
    }

    if (magnetic) {
      row.field_shift = row.r_expectation - expectation(*r_free, psi).real();
    }

    if (row.wrap) {
      report.summary.edge_value = row.r_expectation;
    } else {
      report.summary.interior_formula_deviation =
          std::max(report.summary.interior_formula_deviation,
                   std::abs(row.r_expectation - interior_formula));
      if (magnetic) {
        shift_sum += *row.field_shift;
        ++shift_count;
        shift_dev = std::max(shift_dev, std::abs(*row.field_shift + omega_l));
      }
    }
    report.rows.push_back(row);
  }

  if (magnetic) {
    report.summary.larmor_frequency = omega_l;
    report.summary.interior_shift_deviation = shift_dev;
    if (shift_count > 0) report.summary.interior_shift = shift_sum / static_cast<double>(shift_count);
  }
  return report;
}

ConvergenceReport semiclassical_convergence(double m_fraction, std::vector<long long> l_values,
                                            const SystemSpec& spec) {
  if (spec.kind != SystemKind::free_rotor) {
    throw std::invalid_argument("semiclassical_convergence: expected a free_rotor system");
  }
  spec.validate();
  if (!(m_fraction > 0.0 && m_fraction < 1.0)) {
    throw std::invalid_argument("m_fraction must lie in (0, 1)");
  }
  if (l_values.empty()) throw std::invalid_argument("l list is empty");
  std::sort(l_values.begin(), l_values.end());

  ConvergenceReport report;
  report.m_fraction = m_fraction;
  long long previous_m = 0;
  for (const long long l : l_values) {
    const long long m = std::llround(m_fraction * static_cast<double>(l));
    if (l < 2 || m < 1 || m >= l) {
      throw std::invalid_argument("l = " + std::to_string(l) + " gives m = " +
                                  std::to_string(m) + ", need l >= 2 and 1 <= m < l");
    }
    // 1/(2m) only decreases strictly if m does not repeat across the sweep.
    if (m <= previous_m) {
      throw std::invalid_argument("l = " + std::to_string(l) + " repeats m = " +
                                  std::to_string(m) + " from a smaller l");
    }
    previous_m = m;
  }

  for (const long long l : l_values) {
    const long long m = std::llround(m_fraction * static_cast<double>(l));
    const BpSpace space = make_space(SpaceKind::rotor, l);
    const ComplexMatrix r =
        angular_velocity_operator(rotor_hamiltonian(space, spec), shift_operator(space), spec.hbar);

    ConvergenceRow row;
    row.l = l;
    row.m = m;
    row.r_expectation = expectation(r, basis_state(space, m)).real();
    row.target = spec.hbar * static_cast<double>(m) / (spec.mass * spec.radius * spec.radius);
    row.rel_error = std::abs(row.r_expectation - row.target) / std::abs(row.target);
    report.closed_form_deviation =
        std::max(report.closed_form_deviation,
                 std::abs(row.rel_error - 1.0 / (2.0 * static_cast<double>(m))));
    if (!report.rows.empty() && !(row.rel_error < report.rows.back().rel_error)) {
      report.strictly_decreasing = false;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace bpphase
