#include "bpphase/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bpphase/formalism.hpp"

#ifndef BPPHASE_VERSION
#define BPPHASE_VERSION "0.0.0"
#endif

namespace bpphase::cli {

namespace {

using io::Document;
using nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json spec_json(const SystemSpec& spec) {
  ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["units"] = to_string(spec.units);
  j["mass"] = spec.mass;
  j["radius"] = spec.radius;
  j["hbar"] = spec.hbar;
  if (spec.kind == SystemKind::oscillator) j["omega"] = spec.omega;
  if (spec.kind == SystemKind::magnetic_rotor) {
    j["field"] = spec.field;
    j["charge"] = spec.charge;
    j["light_speed"] = spec.light_speed;
    j["larmor_frequency"] = spec.larmor();
  }
  return j;
}

ordered_json base_config(const RunConfig& config) {
  ordered_json j;
  j["subcommand"] = to_string(config.subcommand);
  if (config.l) j["l"] = *config.l;
  if (config.s) j["s"] = *config.s;
  j["theta0"] = config.theta0;
  j["tol"] = config.tol;
  return j;
}

std::string header_line() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
  return fmt::format("bpphase {} generated unix_time={}", BPPHASE_VERSION, secs.count());
}

long long require_l(const RunConfig& config, long long minimum) {
  if (!config.l) throw UsageError("--l is required");
  if (*config.l < minimum) {
    throw UsageError(fmt::format("--l must be >= {}, got {}", minimum, *config.l));
  }
  return *config.l;
}

Document rotor_document(const RunConfig& config, const ExpectationReport& report) {
  const bool magnetic = report.spec.kind == SystemKind::magnetic_rotor;
  const bool rotor = report.space.kind == SpaceKind::rotor;
  Document doc;
  doc.config = base_config(config);
  doc.config["system"] = spec_json(report.spec);
  doc.table.columns = {rotor ? "m" : "n", "r_expectation", "semiclassical_target", "rel_error",
                       "wrap_flag"};
  if (magnetic) doc.table.columns.emplace_back("field_shift");
  for (const auto& row : report.rows) {
    std::vector<io::Cell> cells{row.quantum_number, row.r_expectation, row.semiclassical_target,
                                row.rel_error, row.wrap};
    if (magnetic) cells.emplace_back(row.field_shift);
    doc.table.rows.push_back(std::move(cells));
  }
  const auto& s = report.summary;
  doc.summary["interior_formula_deviation"] = s.interior_formula_deviation;
  doc.summary["max_imaginary_part"] = s.max_imaginary_part;
  doc.summary["edge_value"] = s.edge_value;
  doc.summary["edge_note"] =
      "top basis state is mapped to the bottom state by the cyclic shift; its row is a "
      "wraparound value, not an interior one";
  if (magnetic) {
    doc.summary["larmor_frequency"] = optional_json(s.larmor_frequency);
    doc.summary["interior_shift"] = optional_json(s.interior_shift);
    doc.summary["interior_shift_deviation"] = optional_json(s.interior_shift_deviation);
  }
  return doc;
}

int cmd_verify(const RunConfig& config, Document& doc) {
  require_l(config, 0);
  const std::vector<Check> checks = run_verification(config);
  doc.config = base_config(config);
  doc.table.columns = {"check", "deviation", "threshold", "passed"};
  std::size_t failed = 0;
  for (const auto& c : checks) {
    doc.table.rows.push_back({c.name, c.deviation, c.threshold, c.passed()});
    if (!c.passed()) ++failed;
  }
  doc.summary["checks"] = static_cast<long long>(checks.size());
  doc.summary["failed"] = static_cast<long long>(failed);
  doc.summary["all_passed"] = failed == 0;
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_rotor_table(const RunConfig& config, Document& doc) {
  const long long l = require_l(config, 0);
  const bool magnetic = config.field.has_value() || config.larmor.has_value();
  const SystemSpec spec =
      config.system(magnetic ? SystemKind::magnetic_rotor : SystemKind::free_rotor);
  doc = rotor_document(config, expectation_table(make_space(SpaceKind::rotor, l, config.theta0), spec));
  return kExitOk;
}

int cmd_oscillator_table(const RunConfig& config, Document& doc) {
  if (!config.s) throw UsageError("--s is required");
  if (*config.s < 0) throw UsageError(fmt::format("--s must be >= 0, got {}", *config.s));
  const SystemSpec spec = config.system(SystemKind::oscillator);
  doc = rotor_document(config,
                       expectation_table(make_space(SpaceKind::oscillator, *config.s, config.theta0), spec));
  return kExitOk;
}

int cmd_larmor(const RunConfig& config, Document& doc) {
  const long long l = require_l(config, 1);
  if (!config.field && !config.larmor) throw UsageError("larmor needs --field or --larmor");
  const SystemSpec spec = config.system(SystemKind::magnetic_rotor);
  const ExpectationReport report =
      expectation_table(make_space(SpaceKind::rotor, l, config.theta0), spec);

  const double omega_l = spec.larmor();
  const double measured = report.summary.interior_shift.value_or(0.0);
  const double difference = report.summary.interior_shift_deviation.value_or(0.0);
  const double threshold = config.tol * std::max(1.0, std::abs(omega_l));

  doc.config = base_config(config);
  doc.config["system"] = spec_json(spec);
  doc.table.columns = {"quantity", "value"};
  doc.table.rows.push_back({std::string("larmor_frequency"), omega_l});
  doc.table.rows.push_back({std::string("measured_shift"), measured});
  doc.table.rows.push_back({std::string("difference"), difference});
  doc.table.rows.push_back(
      {std::string("relative_difference"),
       omega_l != 0.0 ? std::optional<double>(difference / std::abs(omega_l)) : std::nullopt});
  doc.summary["threshold"] = threshold;
  doc.summary["passed"] = difference <= threshold;
  return difference <= threshold ? kExitOk : kExitCheckFailed;
}

int cmd_converge(const RunConfig& config, Document& doc) {
  if (config.l_list.empty()) throw UsageError("--l-list is required");
  const SystemSpec spec = config.system(SystemKind::free_rotor);
  const ConvergenceReport report = semiclassical_convergence(config.m_fraction, config.l_list, spec);

  doc.config = base_config(config);
  doc.config["m_fraction"] = config.m_fraction;
  doc.config["l_list"] = config.l_list;
  doc.config["system"] = spec_json(spec);
  doc.table.columns = {"l", "m", "r_expectation", "target", "rel_error"};
  for (const auto& row : report.rows) {
    doc.table.rows.push_back({row.l, row.m, row.r_expectation, row.target, row.rel_error});
  }
  doc.summary["closed_form_deviation"] = report.closed_form_deviation;
  doc.summary["strictly_decreasing"] = report.strictly_decreasing;

  if (config.gnuplot) {
    if (!config.output) throw UsageError("--gnuplot needs --output for the data file");
    std::ofstream script(*config.gnuplot);
    if (!script) throw UsageError("cannot open " + *config.gnuplot);
    script << "set datafile separator ','\n"
           << "set logscale xy\n"
           << "set xlabel 'l'\n"
           << "set ylabel 'relative error'\n"
           << "plot '" << *config.output
           << "' skip 1 using 1:5 with linespoints title '<R> vs Ehrenfest', \\\n"
           << "     '' skip 1 using 1:(1/(2*$2)) with lines title '1/(2m)'\n";
  }
  const bool ok = report.closed_form_deviation <= 1e-10 && report.strictly_decreasing;
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_dump_phase_states(const RunConfig& config, Document& doc) {
  if (config.l.has_value() == config.s.has_value()) {
    throw UsageError("dump-phase-states needs exactly one of --l or --s");
  }
  const long long value = config.l ? *config.l : *config.s;
  if (value < 0) throw UsageError("--l/--s must be non-negative");
  const BpSpace space =
      make_space(config.l ? SpaceKind::rotor : SpaceKind::oscillator, value, config.theta0);
  const IndexMap map = space.index_map();

  doc.config = base_config(config);
  doc.config["kind"] = to_string(space.kind);
  doc.config["dim"] = static_cast<long long>(space.dim);
  doc.table.columns = {"n", "theta", "quantum_number", "re", "im"};
  for (std::size_t n = 0; n < space.dim; ++n) {
    const StateVector psi = phase_state(space, static_cast<long long>(n));
    for (std::size_t k = 0; k < space.dim; ++k) {
      doc.table.rows.push_back({static_cast<long long>(n), space.theta(n), map.quantum_number(k),
                                psi[k].real(), psi[k].imag()});
    }
  }
  return kExitOk;
}

std::vector<std::string> reversed(std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

std::string_view to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::verify:
      return "verify";
    case Subcommand::rotor_table:
      return "rotor-table";
    case Subcommand::oscillator_table:
      return "oscillator-table";
    case Subcommand::larmor:
      return "larmor";
    case Subcommand::converge:
      return "converge";
    case Subcommand::dump_phase_states:
      return "dump-phase-states";
  }
  return "unknown";
}

SystemSpec RunConfig::system(SystemKind kind) const {
  SystemSpec spec;
  if (units == UnitSystem::gaussian) {
    spec = SystemSpec::electron_ring_gaussian(1.0, 0.0);
  }
  spec.kind = kind;
  spec.units = units;
  if (mass) spec.mass = *mass;
  if (radius) spec.radius = *radius;
  if (hbar) spec.hbar = *hbar;
  if (charge) spec.charge = *charge;
  if (light_speed) spec.light_speed = *light_speed;
  spec.omega = omega;
  spec.field = field.value_or(0.0);
  if (larmor) spec.with_larmor(*larmor);
  spec.validate();
  return spec;
}

std::vector<Check> run_verification(const RunConfig& config) {
  const long long l = config.l.value_or(0);
  const double tol = config.tol;
  const BpSpace space = make_space(SpaceKind::rotor, l, config.theta0);
  const double dim = static_cast<double>(space.dim);
  std::vector<Check> checks;

  const DualityReport duality = duality_check(space);
  checks.push_back({"shift |m> -> |m+1>", duality.shift_interior, tol});
  checks.push_back({"shift wrap |l> -> |-l>", duality.shift_wrap, tol});
  checks.push_back({"dual q^Lz |theta_n> -> |theta_n+1>", duality.dual_interior, tol});
  checks.push_back({"dual wrap |theta_2l> -> |theta_0>", duality.dual_wrap, tol});
  checks.push_back({"q-commutator [q^Lz, E]_q", duality.q_commutator, tol});

  const ComplexMatrix shift = shift_operator(space);
  checks.push_back({"E unitary", unitarity_deviation(shift), tol});
  checks.push_back({"q^Lz unitary", unitarity_deviation(q_lz_operator(space)), tol});
  checks.push_back({"E^D = I", max_abs_diff(matrix_power(shift, space.dim),
                                              ComplexMatrix::identity(space.dim)),
                    tol});

  const ComplexMatrix phases = phase_basis(space);
  checks.push_back({"phase basis orthonormal", unitarity_deviation(phases), tol * dim});
  checks.push_back({"phase basis complete", unitarity_deviation(adjoint(phases)), tol * dim});

  // The spectral e^{iΦ} matches E except for a phase e^{i·D·θ0} on the wrap entry.
  ComplexMatrix expected = shift;
  expected(0, space.dim - 1) *= std::polar(1.0, dim * config.theta0);
  checks.push_back(
      {"spectral e^{iPhi} = E", max_abs_diff(exp_i_phi_spectral(space), expected), tol * dim});

  const BpSpace osc_space = make_space(SpaceKind::oscillator, 2 * l, config.theta0);
  const double shifted_theta0 = config.theta0 + 2.0 * std::numbers::pi;
  const SystemSpec free = config.system(SystemKind::free_rotor);
  SystemSpec magnetic = config.system(SystemKind::magnetic_rotor);
  if (!config.field && !config.larmor) magnetic.with_larmor(0.1);
  const SystemSpec oscillator = config.system(SystemKind::oscillator);

  struct Case {
    const char* name;
    SpaceKind kind;
    long long size;
    const SystemSpec* spec;
  };
  const Case cases[] = {{"free rotor", SpaceKind::rotor, l, &free},
                        {"magnetic rotor", SpaceKind::rotor, l, &magnetic},
                        {"oscillator", SpaceKind::oscillator, 2 * l, &oscillator}};
  for (const auto& c : cases) {
    const BpSpace sp = c.kind == SpaceKind::rotor ? space : osc_space;
    const ComplexMatrix h = hamiltonian(sp, *c.spec);
    const ComplexMatrix r = angular_velocity_operator(h, shift_operator(sp), c.spec->hbar);
    checks.push_back({fmt::format("R hermitian ({})", c.name), hermiticity_deviation(r),
                      tol * h.max_abs() / c.spec->hbar});

    const BpSpace moved = make_space(c.kind, c.size, shifted_theta0);
    const ComplexMatrix r_moved =
        angular_velocity_operator(hamiltonian(moved, *c.spec), shift_operator(moved), c.spec->hbar);
    const bool identical =
        std::memcmp(r.data().data(), r_moved.data().data(), r.data().size_bytes()) == 0;
    checks.push_back({fmt::format("R bit-identical under theta0 + 2pi ({})", c.name),
                      identical ? 0.0 : max_abs_diff(r, r_moved) + 1.0, 0.0});
  }
  return checks;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Angular-velocity operator in the finite-dimensional phase formalism", "bpphase"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BPPHASE_VERSION);

  std::string units = "natural";
  std::string format = "table";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mass", config.mass, "particle mass M");
    sub->add_option("--radius", config.radius, "ring radius R");
    sub->add_option("--hbar", config.hbar, "reduced Planck constant");
    sub->add_option("--units", units, "natural or gaussian")
        ->check(CLI::IsMember({"natural", "gaussian"}));
    sub->add_option("--theta0", config.theta0, "phase grid origin (radians)");
    sub->add_option("--tol", config.tol, "absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--output,-o", config.output, "output file (default stdout)");
    sub->add_flag("--header", config.header, "prefix output with version and timestamp");
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", config.field, "magnetic field B");
    sub->add_option("--larmor", config.larmor, "Larmor frequency eB/(2Mc), sets B");
    sub->add_option("--charge", config.charge, "particle charge e");
    sub->add_option("--light-speed", config.light_speed, "speed of light c");
  };

  auto* verify = app.add_subcommand("verify", "check every structural identity at a given l");
  verify->add_option("--l", config.l, "angular momentum cutoff l")->required();
  verify->add_option("--omega", config.omega, "oscillator frequency");
  add_common(verify);
  add_field(verify);

  auto* rotor = app.add_subcommand("rotor-table", "<m|R|m> for the (optionally charged) rotor");
  rotor->add_option("--l", config.l, "angular momentum cutoff l")->required();
  add_common(rotor);
  add_field(rotor);

  auto* osc = app.add_subcommand("oscillator-table", "<n|R|n> for the harmonic oscillator");
  osc->add_option("--s", config.s, "number-state cutoff s")->required();
  osc->add_option("--omega", config.omega, "oscillator frequency");
  add_common(osc);

  auto* larmor = app.add_subcommand("larmor", "field-induced shift of <R> against eB/(2Mc)");
  larmor->add_option("--l", config.l, "angular momentum cutoff l")->required();
  add_common(larmor);
  add_field(larmor);

  auto* converge = app.add_subcommand("converge", "relative error against the Ehrenfest value");
  converge->add_option("--m-fraction", config.m_fraction, "m = round(fraction * l)")->required();
  converge->add_option("--l-list", config.l_list, "comma-separated l values")
      ->required()
      ->delimiter(',');
  converge->add_option("--gnuplot", config.gnuplot, "write a gnuplot script for the data file");
  add_common(converge);

  auto* dump = app.add_subcommand("dump-phase-states", "amplitude table of every phase state");
  dump->add_option("--l", config.l, "rotor cutoff l");
  dump->add_option("--s", config.s, "oscillator cutoff s");
  add_common(dump);

  try {
    app.parse(reversed(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << BPPHASE_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  config.units = units == "gaussian" ? UnitSystem::gaussian : UnitSystem::natural;
  config.format = io::parse_format(format);
  if (app.got_subcommand(verify)) config.subcommand = Subcommand::verify;
  if (app.got_subcommand(rotor)) config.subcommand = Subcommand::rotor_table;
  if (app.got_subcommand(osc)) config.subcommand = Subcommand::oscillator_table;
  if (app.got_subcommand(larmor)) config.subcommand = Subcommand::larmor;
  if (app.got_subcommand(converge)) config.subcommand = Subcommand::converge;
  if (app.got_subcommand(dump)) config.subcommand = Subcommand::dump_phase_states;

  Document doc;
  int status = kExitOk;
  try {
    switch (config.subcommand) {
      case Subcommand::verify:
        status = cmd_verify(config, doc);
        break;
      case Subcommand::rotor_table:
        status = cmd_rotor_table(config, doc);
        break;
      case Subcommand::oscillator_table:
        status = cmd_oscillator_table(config, doc);
        break;
      case Subcommand::larmor:
        status = cmd_larmor(config, doc);
        break;
      case Subcommand::converge:
        status = cmd_converge(config, doc);
        break;
      case Subcommand::dump_phase_states:
        status = cmd_dump_phase_states(config, doc);
        break;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }

  if (config.header) doc.header = header_line();
  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *config.output << '\n';
      return kExitUsage;
    }
    io::write(file, doc, config.format);
  } else {
    io::write(out, doc, config.format);
  }
  return status;
}

}  // namespace bpphase::cli
