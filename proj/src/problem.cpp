#include "rightham/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rightham {

namespace {

using Json = nlohmann::ordered_json;

Rational rational_field(const Json& value, const std::string& where) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.dump());
  throw InvalidInput(where + ": exact values must be strings such as \"3/2\" or integers");
}

std::vector<std::pair<std::string, std::string>> named_expressions(const Json& doc, const char* key,
                                                                   bool required) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!doc.contains(key)) {
    if (required) throw InvalidInput(std::string("problem file lacks \"") + key + "\"");
    return out;
  }
  const Json& section = doc.at(key);
  if (!section.is_object()) throw InvalidInput(std::string("\"") + key + "\" must be an object");
  for (const auto& [name, expr] : section.items()) {
    if (!expr.is_string()) throw InvalidInput(std::string(key) + "." + name + " must be a string");
    out.emplace_back(name, expr.get<std::string>());
  }
  return out;
}

}  // namespace

std::size_t ProblemFile::assignment_count() const {
  std::size_t count = 1;
  for (const auto& [name, values] : params) count = std::max(count, values.size());
  return count;
}

std::map<std::string, Rational> ProblemFile::assignment(std::size_t index) const {
  std::map<std::string, Rational> out;
  for (const auto& [name, values] : params) {
    out[name] = values.size() == 1 ? values.front() : values.at(index);
  }
  return out;
}

ProblemFile parse_problem(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed problem file: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("problem file must hold a JSON object");

  ProblemFile problem;
  try {
    if (!doc.contains("dof") || !doc.at("dof").is_number_integer()) {
      throw InvalidInput("problem file needs an integer \"dof\"");
    }
    problem.dof = doc.at("dof").get<int>();
    if (problem.dof < 1) throw InvalidInput("\"dof\" must be positive");

    if (doc.contains("params")) {
      std::size_t sweep = 1;
      for (const auto& [name, value] : doc.at("params").items()) {
        std::vector<Rational> values;
        if (value.is_array()) {
          if (value.empty()) throw InvalidInput("params." + name + " is an empty list");
          for (const auto& v : value) values.push_back(rational_field(v, "params." + name));
        } else {
          values.push_back(rational_field(value, "params." + name));
        }
        if (values.size() > 1) {
          if (sweep > 1 && values.size() != sweep) {
            throw InvalidInput("parameter lists must share one length (params." + name + ")");
          }
          sweep = values.size();
        }
        problem.params.emplace_back(name, std::move(values));
      }
    }

    problem.generators = named_expressions(doc, "generators", true);
    if (problem.generators.empty()) throw InvalidInput("problem file has no generators");
    problem.definitions = named_expressions(doc, "definitions", false);

    if (doc.contains("printed")) {
      for (const auto& entry : doc.at("printed")) {
        problem.printed.push_back({entry.at("left").get<std::string>(), entry.at("right").get<std::string>(),
                                   entry.at("value").get<std::string>()});
      }
    }

    if (doc.contains("options")) {
      const Json& o = doc.at("options");
      if (o.contains("bracket")) problem.bracket = parse_bracket_kind(o.at("bracket").get<std::string>());
      if (o.contains("hbar")) problem.hbar = rational_field(o.at("hbar"), "options.hbar");
      if (o.contains("max_basis")) problem.limits.max_basis = o.at("max_basis").get<std::size_t>();
      if (o.contains("max_degree")) problem.limits.max_degree = o.at("max_degree").get<unsigned>();
      if (o.contains("center_degree")) problem.center_degree = o.at("center_degree").get<unsigned>();
      if (o.contains("f_of_M")) problem.f_of_M = o.at("f_of_M").get<std::string>();
    }
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("problem file schema error: ") + e.what());
  }
  return problem;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read problem file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem(text.str());
}

ProblemInstance instantiate(const ProblemFile& problem, std::size_t assignment, PhaseContext::Limits limits) {
  limits.max_degree = std::max(limits.max_degree, problem.limits.max_degree);
  ProblemInstance instance;
  instance.context = PhaseContext::make(problem.dof, problem.assignment(assignment), problem.hbar, limits);
  std::set<std::string> names;
  auto define = [&](const std::string& kind, const std::string& name, const std::string& text) {
    if (!names.insert(name).second) throw InvalidInput("duplicate name '" + name + "'");
    if (instance.context->lookup_variable(name) || instance.context->param(name)) {
      throw InvalidInput(kind + " '" + name + "' shadows a variable or parameter");
    }
    try {
      auto poly = parse_expression(text, instance.context, &instance.symbols);
      instance.symbols.emplace(name, poly);
      return poly;
    } catch (const ParseError& e) {
      throw InvalidInput(kind + " '" + name + "': " + e.what());
    }
  };
  for (const auto& [name, text] : problem.generators) {
    instance.seeds.push_back({name, define("generator", name, text), false});
  }
  for (const auto& [name, text] : problem.definitions) define("definition", name, text);
  return instance;
}

}  // namespace rightham
