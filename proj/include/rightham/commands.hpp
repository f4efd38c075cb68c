#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rightham/problem.hpp"
#include "rightham/spectra.hpp"

namespace rightham {

using Json = nlohmann::ordered_json;

namespace exit_status {
inline constexpr int kSuccess = 0;
inline constexpr int kInputError = 2;
inline constexpr int kNonClosing = 3;
inline constexpr int kIoFailure = 4;
}  // namespace exit_status

struct CommandResult {
  Json report;
  int exit_code = exit_status::kSuccess;
};

/// Closure of the problem's generators, parameter sweep and printed-value
/// comparisons. Exit 3 (with diagnostics) when the algebra does not close.
CommandResult cmd_close(const ProblemFile& problem, const std::string& source,
                        PhaseContext::Limits limits = {});

struct InvariantRequest {
  bool casimir = false;
  bool center = false;
  std::optional<unsigned> degree;  // overrides the problem's center_degree
};

/// Casimir and/or centre search on the closed algebra. Exit 0 whenever the
/// computation completes, 3 if the algebra does not close.
CommandResult cmd_invariants(const ProblemFile& problem, const std::string& source, InvariantRequest request,
                             PhaseContext::Limits limits = {});

Json to_json(const SpectrumReport& report);

CommandResult cmd_spectrum_box(double mass, double side, int n_max);
CommandResult cmd_spectrum_internal(const PotentialSpec& spec, int count);
/// mode "right": offset + internal; mode "spurious": internal + box levels.
CommandResult cmd_spectrum_composite(const std::string& mode, const std::vector<double>& internal, double offset,
                                     double mass, double side, int n_max, std::size_t count);

/// Two masses use the two-body map unless `jacobi` is set; more use Jacobi
/// coordinates. The Hamiltonian defaults to the kinetic energy and is written
/// in q/p variables with body-major layout.
CommandResult cmd_separate(const std::vector<Rational>& masses, std::size_t dimension,
                           const std::optional<std::string>& hamiltonian, bool jacobi);

/// Report for a failed command (input or I/O error).
Json error_report(const std::string& command, const std::string& message, int exit_code);

}  // namespace rightham
