#pragma once

#include <forge/dsl/ast.hpp>

#include <string_view>

namespace forge::dsl {

/// Recursive-descent parse with name resolution. Throws ParseError with the
/// line and column of the first problem.
Script parse(std::string_view source);

/// Parses one scalar expression in which every identifier is a symbol, e.g.
/// the canonical rendering of an Expr.
Expr parse_expression(std::string_view text);

} // namespace forge::dsl
