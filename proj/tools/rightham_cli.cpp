// Command-line front end: close, invariants, spectrum, separate.
//
// Exit codes: 0 success, 2 input error, 3 non-closing algebra, 4 I/O failure.
// Reports are JSON, written to -o <file> or stdout.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rightham/commands.hpp"

namespace {

using rightham::CommandResult;
using rightham::Json;
namespace exit_status = rightham::exit_status;

// RIGHTHAM_MAX_TERMS caps the number of terms any exact polynomial may hold.
rightham::PhaseContext::Limits limits_from_env() {
  rightham::PhaseContext::Limits limits;
  if (const char* cap = std::getenv("RIGHTHAM_MAX_TERMS")) {
    try {
      limits.max_terms = std::stoul(cap);
    } catch (const std::exception&) {
      throw rightham::InvalidInput(std::string("RIGHTHAM_MAX_TERMS is not a number: ") + cap);
    }
  }
  return limits;
}

int emit(const Json& report, const std::string& output) {
  const std::string text = report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
    return std::cout ? 0 : exit_status::kIoFailure;
  }
  std::ofstream out(output, std::ios::binary);
  if (!(out << text)) {
    std::cerr << "error: cannot write report to " << output << "\n";
    return exit_status::kIoFailure;
  }
  return 0;
}

template <typename F>
int run(const std::string& command, const std::string& output, F&& body) {
  try {
    CommandResult result = body();
    if (int io = emit(result.report, output); io != 0) return io;
    return result.exit_code;
  } catch (const rightham::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(rightham::error_report(command, e.what(), exit_status::kIoFailure), output);
    return exit_status::kIoFailure;
  } catch (const rightham::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (int io = emit(rightham::error_report(command, e.what(), exit_status::kInputError), output); io != 0) {
      return io;
    }
    return exit_status::kInputError;
  }
}

std::vector<rightham::Rational> parse_masses(const std::string& text) {
  std::vector<rightham::Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(rightham::parse_rational(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained-Hamiltonian algebra engine"};
  app.require_subcommand(1);
  std::string output;

  // close
  auto* close = app.add_subcommand("close", "Close the algebra of a problem file's generators");
  std::string close_problem;
  close->add_option("problem", close_problem, "Problem file (JSON)")->required();
  close->add_option("-o,--output", output, "Report file (default stdout)");

  // invariants
  auto* inv = app.add_subcommand("invariants", "Casimir and centre search on the closed algebra");
  std::string inv_problem;
  bool want_casimir = false, want_center = false;
  std::optional<unsigned> degree;
  inv->add_option("problem", inv_problem, "Problem file (JSON)")->required();
  inv->add_flag("--casimir", want_casimir, "Quadratic-in-generators Casimir search");
  inv->add_flag("--center", want_center, "Bounded-degree centre search");
  inv->add_option("--degree", degree, "Centre ansatz degree");
  inv->add_option("-o,--output", output, "Report file (default stdout)");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Box, internal and composite spectra");
  spectrum->require_subcommand(1);
  double mass = 1, side = 1, omega = 1, kappa = 1, rmin = 0.1;
  int nmax = 3, grid = 2000, count = 5;
  std::size_t composite_count = 0;
  std::string potential = "harmonic", table, mode = "right";
  std::vector<double> domain, internal;
  std::optional<double> offset_given;

  auto* box = spectrum->add_subcommand("box", "Centre-of-mass levels in a cubic box");
  box->add_option("--mass", mass, "Total mass M")->check(CLI::PositiveNumber);
  box->add_option("--side", side, "Box side l")->check(CLI::PositiveNumber);
  box->add_option("--nmax", nmax, "Largest quantum number per axis")->check(CLI::PositiveNumber);
  box->add_option("-o,--output", output, "Report file (default stdout)");

  auto* internal_cmd = spectrum->add_subcommand("internal", "Finite-difference levels of a 1D potential");
  internal_cmd->add_option("--potential", potential, "harmonic | box | coulomb | tabulated")
      ->check(CLI::IsMember({"harmonic", "box", "coulomb", "tabulated"}));
  internal_cmd->add_option("--omega", omega, "Oscillator frequency");
  internal_cmd->add_option("--mass", mass, "Particle mass")->check(CLI::PositiveNumber);
  internal_cmd->add_option("--side", side, "Well width (box potential)")->check(CLI::PositiveNumber);
  internal_cmd->add_option("--kappa", kappa, "Coulomb strength");
  internal_cmd->add_option("--rmin", rmin, "Coulomb regularization radius")->check(CLI::PositiveNumber);
  internal_cmd->add_option("--table", table, "Two-column potential table")->check(CLI::ExistingFile);
  internal_cmd->add_option("--domain", domain, "Domain bounds lo,hi")->delimiter(',')->expected(2);
  internal_cmd->add_option("--grid", grid, "Grid nodes including both walls");
  internal_cmd->add_option("--count", count, "Number of levels");
  internal_cmd->add_option("-o,--output", output, "Report file (default stdout)");

  auto* composite = spectrum->add_subcommand("composite", "Spurious or right-Hamiltonian composite levels");
  composite->add_option("--mode", mode, "right | spurious")->check(CLI::IsMember({"right", "spurious"}));
  composite->add_option("--f", offset_given, "Constant offset f(M) (default: --mass)");
  composite->add_option("--internal", internal, "Internal energies, comma separated")->delimiter(',')->required();
  composite->add_option("--mass", mass, "Total mass M")->check(CLI::PositiveNumber);
  composite->add_option("--side", side, "Box side l")->check(CLI::PositiveNumber);
  composite->add_option("--nmax", nmax, "Largest box quantum number per axis")->check(CLI::PositiveNumber);
  composite->add_option("--count", composite_count, "Keep the lowest N levels (0 = all)");
  composite->add_option("-o,--output", output, "Report file (default stdout)");

  // separate
  auto* separate = app.add_subcommand("separate", "Centre-of-mass / relative separation");
  std::string masses_text, hamiltonian_text;
  std::size_t dimension = 3;
  bool jacobi = false;
  separate->add_option("--masses", masses_text, "Masses m1,m2[,...] as exact rationals")->required();
  separate->add_option("--dim", dimension, "Spatial dimension")->check(CLI::PositiveNumber);
  separate->add_option("--hamiltonian", hamiltonian_text, "Hamiltonian in q/p variables (default: kinetic)");
  separate->add_flag("--jacobi", jacobi, "Use Jacobi coordinates for two bodies");
  separate->add_option("-o,--output", output, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_status::kInputError;
  }

  if (close->parsed()) {
    return run("close", output, [&] {
      return rightham::cmd_close(rightham::load_problem(close_problem), close_problem, limits_from_env());
    });
  }
  if (inv->parsed()) {
    return run("invariants", output, [&] {
      return rightham::cmd_invariants(rightham::load_problem(inv_problem), inv_problem,
                                      {want_casimir, want_center, degree}, limits_from_env());
    });
  }
  if (box->parsed()) {
    return run("spectrum", output, [&] { return rightham::cmd_spectrum_box(mass, side, nmax); });
  }
  if (internal_cmd->parsed()) {
    return run("spectrum", output, [&] {
      rightham::PotentialSpec spec;
      if (potential == "box") {
        spec = rightham::PotentialSpec::box(side, mass, grid);
      } else {
        spec.mass = mass;
        spec.grid = grid;
        if (potential == "harmonic") {
          spec.kind = rightham::Harmonic{omega};
          spec.lower = -10;
          spec.upper = 10;
        } else if (potential == "coulomb") {
          spec.kind = rightham::CoulombRegularized{kappa, rmin};
          spec.lower = -50;
          spec.upper = 50;
        } else {
          if (table.empty()) throw rightham::InvalidInput("--potential tabulated needs --table");
          std::ifstream in(table);
          if (!in) throw rightham::IoError("cannot read " + table);
          auto t = rightham::read_tabulated(in);
          spec.lower = t.x.front();
          spec.upper = t.x.back();
          spec.kind = std::move(t);
        }
      }
      if (domain.size() == 2) {
        spec.lower = domain[0];
        spec.upper = domain[1];
      }
      return rightham::cmd_spectrum_internal(spec, count);
    });
  }
  if (composite->parsed()) {
    return run("spectrum", output, [&] {
      return rightham::cmd_spectrum_composite(mode, internal, offset_given.value_or(mass), mass, side, nmax,
                                              composite_count);
    });
  }
  if (separate->parsed()) {
    return run("separate", output, [&] {
      std::optional<std::string> h;
      if (!hamiltonian_text.empty()) h = hamiltonian_text;
      return rightham::cmd_separate(parse_masses(masses_text), dimension, h, jacobi);
    });
  }
  return exit_status::kInputError;
}
