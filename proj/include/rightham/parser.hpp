#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "rightham/phase_poly.hpp"

namespace rightham {

/// Named polynomials that expressions may refer to (e.g. previously defined
/// generators). Looked up after variables and parameters.
using SymbolTable = std::map<std::string, PhasePoly, std::less<>>;

/// Parses the expression DSL into a canonical polynomial.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | base ('^' uint)?
///   base   := number | identifier | '(' expr ')'
///
/// Numbers are integers or finite decimals. Identifiers resolve to phase-space
/// variables, then bound parameters, then `symbols`. Division is only allowed
/// by an expression that evaluates to a nonzero constant.
///
/// Errors are reported as ParseError with a 1-based character position.
PhasePoly parse_expression(std::string_view text, const ContextPtr& ctx,
                           const SymbolTable* symbols = nullptr);

}  // namespace rightham
