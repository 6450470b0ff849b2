#pragma once

#include <functional>
#include <string>

namespace arbor {

// Parses an arithmetic expression in the variable t. Supports + - * / ^,
// parentheses, pi, and abs min max exp log sqrt sin cos tanh pow.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace arbor
