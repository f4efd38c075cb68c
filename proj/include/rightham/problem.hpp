#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rightham/closure.hpp"
#include "rightham/parser.hpp"

namespace rightham {

class IoError : public Error {
 public:
  using Error::Error;
};

/// A bracket value quoted from a reference derivation, compared against the
/// computed one. All three fields are DSL expressions; they may use generator
/// and definition names.
struct PrintedBracket {
  std::string left;
  std::string right;
  std::string value;
};

/// Problem file (JSON):
///
///   {
///     "dof": 3,
///     "params": {"m": "1", "r0": ["1", "3/2", "2/7"]},
///     "generators": {"H": "(1/(2*m))*(p1^2+p2^2+p3^2)", "U": "..."},
///     "definitions": {"V": "..."},
///     "printed": [{"left": "H", "right": "U", "value": "2*V"}],
///     "options": {"bracket": "poisson", "hbar": "1", "max_basis": 32,
///                 "max_degree": 16, "center_degree": 2, "f_of_M": "M"}
///   }
///
/// A parameter given as an array lists alternative assignments; scalars are
/// broadcast. Assignment 0 is the primary run.
struct ProblemFile {
  int dof = 1;
  std::vector<std::pair<std::string, std::vector<Rational>>> params;
  std::vector<std::pair<std::string, std::string>> generators;
  std::vector<std::pair<std::string, std::string>> definitions;
  std::vector<PrintedBracket> printed;
  BracketKind bracket = BracketKind::Poisson;
  Rational hbar = 1;
  ClosureLimits limits;
  unsigned center_degree = 2;
  std::optional<std::string> f_of_M;

  std::size_t assignment_count() const;
  std::map<std::string, Rational> assignment(std::size_t index) const;
};

/// Schema violations throw InvalidInput.
ProblemFile parse_problem(std::string_view json_text);
/// Adds IoError for unreadable files.
ProblemFile load_problem(const std::filesystem::path& path);

/// A problem bound to one parameter assignment.
struct ProblemInstance {
  ContextPtr context;
  std::vector<AlgebraElement> seeds;
  SymbolTable symbols;  // generators and definitions
};

/// Parses every generator and definition. Parse errors are rethrown as
/// InvalidInput prefixed with the offending entry name.
ProblemInstance instantiate(const ProblemFile& problem, std::size_t assignment = 0,
                            PhaseContext::Limits limits = {});

}  // namespace rightham
