#include "rightham/commands.hpp"

#include <algorithm>
#include <set>

#include "rightham/invariants.hpp"
#include "rightham/separation.hpp"

namespace rightham {

namespace {

constexpr const char* kConventionNote =
    "bracket convention: {A,B} = sum_i dA/dq_i dB/dp_i - dA/dp_i dB/dq_i; "
    "sources using the opposite convention differ by an overall sign";
constexpr const char* kMoyalNote =
    "moyal bracket: the operator commutator is [A,B] = i*hbar*{A,B}_M (Weyl symbols)";

Json closure_json(const LieClosure& closure) {
  Json basis = Json::array();
  const auto& seeds = closure.seed_names();
  for (const auto& e : closure.basis()) {
    basis.push_back({{"name", e.name},
                     {"expr", to_string(e.poly)},
                     {"identity", e.identity},
                     {"seed", std::find(seeds.begin(), seeds.end(), e.name) != seeds.end()}});
  }
  Json constants = Json::array();
  for (const auto& c : structure_constants(closure)) {
    constants.push_back({{"left", closure.basis()[c.i].name},
                         {"right", closure.basis()[c.j].name},
                         {"element", closure.basis()[c.k].name},
                         {"value", to_string(c.value)}});
  }
  Json out;
  out["bracket"] = to_string(closure.bracket_kind());
  out["size"] = closure.basis().size();
  out["basis"] = std::move(basis);
  out["structure_constants"] = std::move(constants);
  out["verified"] = verify_closure(closure).empty();
  out["jacobi"] = structure_satisfies_jacobi(closure);
  return out;
}

Json partial_json(const NonClosing& e) {
  Json basis = Json::array();
  for (const auto& b : e.partial_basis()) basis.push_back({{"name", b.name}, {"expr", to_string(b.poly)}});
  return {{"reason", e.what()}, {"pair", {e.left(), e.right()}}, {"partial_basis", std::move(basis)}};
}

Json assignment_json(const std::map<std::string, Rational>& values) {
  Json out = Json::object();
  for (const auto& [name, v] : values) out[name] = to_string(v);
  return out;
}

std::string relation_note(const PrintedBracket& p, PrintedRelation relation) {
  const std::string pair = "{" + p.left + ", " + p.right + "}";
  switch (relation) {
    case PrintedRelation::Match:
      return pair + ": computed value matches the printed value";
    case PrintedRelation::SignFlipped:
      return pair + ": computed value is the negative of the printed value (opposite sign convention)";
    case PrintedRelation::ConstantShift:
      return pair + ": computed value differs from the printed value by a constant term, carried by the identity element";
    case PrintedRelation::SignFlippedAndConstantShift:
      return pair + ": computed value is the negative of the printed value (opposite sign convention) "
                    "and differs by a constant term, carried by the identity element";
    case PrintedRelation::Mismatch:
      return pair + ": computed value disagrees with the printed value beyond sign and constant term";
  }
  return pair;
}

Json printed_comparisons(const ProblemFile& problem, const ProblemInstance& instance, Json& diagnostics) {
  Json out = Json::array();
  for (const auto& p : problem.printed) {
    auto parse = [&](const std::string& text) {
      try {
        return parse_expression(text, instance.context, &instance.symbols);
      } catch (const ParseError& e) {
        throw InvalidInput("printed bracket {" + p.left + ", " + p.right + "}: " + e.what());
      }
    };
    const auto computed = bracket(problem.bracket, parse(p.left), parse(p.right));
    const auto printed = parse(p.value);
    const auto relation = compare_with_printed(computed, printed);
    const auto note = relation_note(p, relation);
    if (relation != PrintedRelation::Match) diagnostics.push_back(note);
    out.push_back({{"left", p.left},
                   {"right", p.right},
                   {"computed", to_string(computed)},
                   {"printed", to_string(printed)},
                   {"relation", to_string(relation)},
                   {"note", note}});
  }
  return out;
}

Json base_report(const std::string& command, const std::string& source, const ProblemFile& problem) {
  Json report;
  report["command"] = command;
  report["problem"] = source;
  report["bracket"] = to_string(problem.bracket);
  report["hbar"] = to_string(problem.hbar);
  report["assignment"] = assignment_json(problem.assignment(0));
  return report;
}

Json initial_diagnostics(const ProblemFile& problem) {
  Json d = Json::array();
  d.push_back(kConventionNote);
  if (problem.bracket == BracketKind::Moyal) d.push_back(kMoyalNote);
  return d;
}

Json casimir_json(const std::vector<CasimirSolution>& solutions, const LieClosure& closure) {
  const auto& basis = closure.basis();
  Json list = Json::array();
  std::size_t nontrivial = 0;
  for (const auto& s : solutions) {
    if (!s.trivial) ++nontrivial;
    Json quadratic = Json::array(), linear = Json::array(), residuals = Json::array();
    for (const auto& q : s.quadratic) {
      quadratic.push_back({{"left", basis[q.i].name}, {"right", basis[q.j].name}, {"value", to_string(q.value)}});
    }
    for (const auto& l : s.linear) linear.push_back({{"element", basis[l.i].name}, {"value", to_string(l.value)}});
    const auto check = verify_invariant(s.realization, closure);
    for (const auto& r : check.residuals) residuals.push_back({{"element", r.element}, {"residual", to_string(r.value)}});
    list.push_back({{"trivial", s.trivial},
                    {"quadratic", std::move(quadratic)},
                    {"linear", std::move(linear)},
                    {"constant", to_string(s.constant)},
                    {"realization", to_string(s.realization)},
                    {"verification", {{"passed", check.passed}, {"residuals", std::move(residuals)}}}});
  }
  return {{"nontrivial_count", nontrivial}, {"solutions", std::move(list)}};
}

}  // namespace

Json error_report(const std::string& command, const std::string& message, int exit_code) {
  Json report;
  report["command"] = command;
  report["error"] = message;
  report["exit_status"] = exit_code;
  return report;
}

CommandResult cmd_close(const ProblemFile& problem, const std::string& source, PhaseContext::Limits limits) {
  CommandResult result;
  Json report = base_report("close", source, problem);
  Json diagnostics = initial_diagnostics(problem);

  const auto instance = instantiate(problem, 0, limits);
  try {
    const auto closure = close_algebra(instance.seeds, problem.bracket, problem.limits);
    report["status"] = "closed";
    report["closure"] = closure_json(closure);
    if (closure.identity_index()) {
      diagnostics.push_back("the identity entered the basis: some bracket has a constant component");
    }
  } catch (const NonClosing& e) {
    report["status"] = "non-closing";
    report["non_closing"] = partial_json(e);
    diagnostics.push_back(std::string("NonClosing: ") + e.what() + " at pair {" + e.left() + ", " + e.right() + "}");
    result.exit_code = exit_status::kNonClosing;
  }

  if (problem.assignment_count() > 1) {
    Json sweep = Json::array();
    std::set<std::string> sizes;
    for (std::size_t k = 0; k < problem.assignment_count(); ++k) {
      const auto inst = instantiate(problem, k, limits);
      Json entry{{"assignment", assignment_json(problem.assignment(k))}};
      try {
        entry["basis_size"] = close_algebra(inst.seeds, problem.bracket, problem.limits).basis().size();
      } catch (const NonClosing&) {
        entry["basis_size"] = "non-closing";
      }
      sizes.insert(entry["basis_size"].dump());
      sweep.push_back(std::move(entry));
    }
    if (sizes.size() > 1) {
      diagnostics.push_back("basis dimension depends on the parameter assignment (coincidental cancellation?)");
    }
    report["parameter_sweep"] = std::move(sweep);
  }

  if (!problem.printed.empty()) report["printed_comparison"] = printed_comparisons(problem, instance, diagnostics);
  report["diagnostics"] = std::move(diagnostics);
  report["exit_status"] = result.exit_code;
  result.report = std::move(report);
  return result;
}

CommandResult cmd_invariants(const ProblemFile& problem, const std::string& source, InvariantRequest request,
                             PhaseContext::Limits limits) {
  CommandResult result;
  Json report = base_report("invariants", source, problem);
  Json diagnostics = initial_diagnostics(problem);
  const auto instance = instantiate(problem, 0, limits);

  std::optional<LieClosure> closure;
  try {
    closure.emplace(close_algebra(instance.seeds, problem.bracket, problem.limits));
  } catch (const NonClosing& e) {
    report["status"] = "non-closing";
    report["non_closing"] = partial_json(e);
    diagnostics.push_back(std::string("NonClosing: ") + e.what());
    report["diagnostics"] = std::move(diagnostics);
    report["exit_status"] = exit_status::kNonClosing;
    return {std::move(report), exit_status::kNonClosing};
  }
  report["status"] = "closed";
  report["closure"] = closure_json(*closure);

  if (!request.casimir && !request.center) request.casimir = true;
  if (request.casimir) {
    const auto solutions = find_casimir(*closure);
    report["casimir"] = casimir_json(solutions, *closure);
    if (report["casimir"]["nontrivial_count"] == 0) {
      diagnostics.push_back("no nontrivial quadratic Casimir: only constants commute with the algebra");
    }
  }
  if (request.center) {
    const unsigned degree = request.degree.value_or(problem.center_degree);
    CenterSolution center;
    try {
      center = find_center(*closure, {degree, 5000});
    } catch (const AnsatzTooLarge& e) {
      throw InvalidInput(e.what());
    }
    Json basis = Json::array();
    bool all_pass = true;
    for (const auto& p : center.basis) {
      basis.push_back(to_string(p));
      all_pass = all_pass && verify_invariant(p, *closure).passed;
    }
    report["center"] = {{"degree", degree},
                        {"dimension", center.basis.size()},
                        {"basis", std::move(basis)},
                        {"verified", all_pass}};
    const bool only_constants = center.basis.size() == 1 && center.basis.front().is_constant();
    if (only_constants) {
      diagnostics.push_back("centre up to degree " + std::to_string(degree) +
                            " is span{1}: only multiples of the identity commute with the whole algebra "
                            "(Schur's lemma for an irreducible algebra); the right Hamiltonian is f(M)*1 + H_int");
    }
    std::optional<std::string> f_text = problem.f_of_M;
    if (!f_text && instance.context->param("M")) f_text = "M";
    if (only_constants && f_text) {
      const auto f = parse_expression(*f_text, instance.context, &instance.symbols);
      if (!f.is_constant()) throw InvalidInput("f_of_M must evaluate to a constant");
      report["right_hamiltonian"] = {{"f", to_string(f.constant_term())},
                                     {"form", "f*1 + H_int"},
                                     {"centre_element", "1"}};
    }
  }
  report["diagnostics"] = std::move(diagnostics);
  report["exit_status"] = result.exit_code;
  result.report = std::move(report);
  return result;
}

Json to_json(const SpectrumReport& report) {
  Json levels = Json::array();
  std::map<std::size_t, std::pair<double, std::size_t>> groups;
  for (const auto& l : report.levels) {
    levels.push_back({{"labels", l.labels}, {"energy", l.energy}, {"group", l.group}});
    auto& g = groups.try_emplace(l.group, l.energy, 0).first->second;
    ++g.second;
  }
  Json multiplets = Json::array();
  for (const auto& [id, g] : groups) multiplets.push_back({{"group", id}, {"energy", g.first}, {"degeneracy", g.second}});
  Json metadata = Json::object();
  for (const auto& [k, v] : report.metadata) metadata[k] = v;
  Json out;
  out["mode"] = to_string(report.mode);
  out["level_count"] = report.levels.size();
  if (report.offset) out["offset"] = *report.offset;
  out["levels"] = std::move(levels);
  out["multiplets"] = std::move(multiplets);
  out["metadata"] = std::move(metadata);
  return out;
}

CommandResult cmd_spectrum_box(double mass, double side, int n_max) {
  Json report{{"command", "spectrum"}, {"subcommand", "box"}};
  report["spectrum"] = to_json(box_spectrum(mass, side, n_max));
  report["exit_status"] = 0;
  return {std::move(report), 0};
}

CommandResult cmd_spectrum_internal(const PotentialSpec& spec, int count) {
  Json report{{"command", "spectrum"}, {"subcommand", "internal"}};
  report["spectrum"] = to_json(internal_spectrum(spec, count));
  report["exit_status"] = 0;
  return {std::move(report), 0};
}

CommandResult cmd_spectrum_composite(const std::string& mode, const std::vector<double>& internal, double offset,
                                     double mass, double side, int n_max, std::size_t count) {
  Json report{{"command", "spectrum"}, {"subcommand", "composite"}};
  if (mode == "right") {
    report["spectrum"] = to_json(composite_right(internal, offset));
  } else if (mode == "spurious") {
    report["spectrum"] = to_json(composite_spurious(internal, box_spectrum(mass, side, n_max), count));
  } else {
    throw InvalidInput("composite mode must be 'right' or 'spurious'");
  }
  report["exit_status"] = 0;
  return {std::move(report), 0};
}

CommandResult cmd_separate(const std::vector<Rational>& masses, std::size_t dimension,
                           const std::optional<std::string>& hamiltonian, bool jacobi) {
  if (masses.size() < 2) throw InvalidInput("separation needs at least two masses");
  const bool use_jacobi = jacobi || masses.size() > 2;
  const CanonicalMap map = use_jacobi ? jacobi_transform(masses, dimension)
                                      : two_body_transform(masses[0], masses[1], dimension);

  Json report{{"command", "separate"}, {"transform", use_jacobi ? "jacobi" : "two-body"}};
  Json m = Json::array();
  for (const auto& x : masses) m.push_back(to_string(x));
  report["masses"] = std::move(m);
  report["dimension"] = dimension;

  auto matrix_json = [](const RationalMatrix& a) {
    Json rows = Json::array();
    for (const auto& row : a) {
      Json r = Json::array();
      for (const auto& v : row) r.push_back(to_string(v));
      rows.push_back(std::move(r));
    }
    return rows;
  };
  report["map"] = {{"positions", matrix_json(map.positions)},
                   {"momenta", matrix_json(map.momenta)},
                   {"position_labels", map.position_labels},
                   {"momentum_labels", map.momentum_labels},
                   {"cm_row", map.cm_row}};
  const auto canonical = verify_canonical(map);
  report["canonical"] = {{"passed", canonical.passed}, {"violations", canonical.violations}};

  const auto body_ctx = body_context(map);
  PhasePoly h = kinetic_energy(map, body_ctx);
  if (hamiltonian) {
    try {
      h = parse_expression(*hamiltonian, body_ctx);
    } catch (const ParseError& e) {
      throw InvalidInput(std::string("hamiltonian: ") + e.what());
    }
  }
  report["hamiltonian"] = to_string(h);

  int code = exit_status::kSuccess;
  try {
    const auto s = separate_hamiltonian(h, map);
    Json reduced = Json::array();
    for (const auto& mu : s.reduced_masses) reduced.push_back(to_string(mu));
    report["separation"] = {{"H_CM", to_string(s.cm)},
                            {"H_int", to_string(s.internal)},
                            {"cm_is_free_kinetic", s.cm_is_free_kinetic},
                            {"total_mass", to_string(map.total_mass())},
                            {"reduced_masses", std::move(reduced)},
                            {"kinetic_cross_terms", s.kinetic_cross_terms},
                            {"reassembly", s.reassembly_ok}};
  } catch (const SeparationFailure& e) {
    report["failure"] = {{"message", e.what()}, {"mixed_terms", e.mixed_terms()}};
    code = exit_status::kInputError;
  }
  report["exit_status"] = code;
  return {std::move(report), code};
}

}  // namespace rightham
