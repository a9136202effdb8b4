#pragma once

#include <string>
#include <vector>

#include "weblin/expr.hpp"

namespace weblin {

/// Parses an infix expression over x1, x2 and the declared parameter names.
/// Grammar: + - * /, ^ with integer exponent, unary minus, parentheses,
/// exp/log/sin/cos calls, integer and decimal literals (kept exact).
/// Throws SyntaxError (with offset) or Error(UnknownIdentifier).
Expr parse_expr(const std::string& text,
                const std::vector<std::string>& params = {});

}  // namespace weblin
