#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bpphase/report_io.hpp"
#include "bpphase/systems.hpp"

namespace bpphase::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Subcommand { verify, rotor_table, oscillator_table, larmor, converge, dump_phase_states };

std::string_view to_string(Subcommand cmd);

struct RunConfig {
  Subcommand subcommand = Subcommand::verify;
  std::optional<long long> l;
  std::optional<long long> s;
  std::optional<double> mass;
  std::optional<double> radius;
  std::optional<double> hbar;
  double omega = 1.0;
  std::optional<double> field;
  std::optional<double> larmor;  // sets the field from ω_L directly
  std::optional<double> charge;
  std::optional<double> light_speed;
  UnitSystem units = UnitSystem::natural;
  double theta0 = 0.0;
  double tol = 1e-12;
  io::OutputFormat format = io::OutputFormat::table;
  std::optional<std::string> output;
  std::optional<std::string> gnuplot;
  double m_fraction = 0.5;
  std::vector<long long> l_list;
  bool header = false;

  /// Physical parameters, with unit-system defaults filled in.
  SystemSpec system(SystemKind kind) const;
};

/// One line of the verification report.
struct Check {
  std::string name;
  double deviation = 0.0;
  double threshold = 0.0;
  bool passed() const { return deviation <= threshold; }
};

/// Every structural identity at angular momentum l: the shift relations,
/// the q-commutator, unitarity, the phase-basis Gram and completeness
/// relations, the spectral form of e^{iΦ}, and hermiticity plus θ0
/// independence of R for the three systems (oscillator at s = 2l).
std::vector<Check> run_verification(const RunConfig& config);

/// Parses `args` (without the program name), runs the subcommand, and
/// writes its output. Returns 0 on success, 1 on a failed check, 2 on a
/// usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bpphase::cli
