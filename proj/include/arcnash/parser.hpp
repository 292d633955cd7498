#pragma once

#include <memory>
#include <string>
#include <vector>

#include "arcnash/multipoly.hpp"

namespace arcnash {

// AST for the polynomial grammar: identifiers, rational literals,
// +, -, *, ^ (nonnegative integer exponents), parentheses.
struct ExprNode {
    enum class Kind { Variable, Literal, Add, Sub, Mul, Pow, Neg };
    Kind kind;
    std::string name;      // Variable
    Rational value;        // Literal
    int exponent = 0;      // Pow
    std::unique_ptr<ExprNode> lhs, rhs;
};

std::unique_ptr<ExprNode> parse_expression(const std::string& text);

// Variables sorted naturally: alphabetic prefix, then numeric suffix
// (z1 < z2 < z10).
std::vector<std::string> collect_variables(const ExprNode& ast);

MultiPoly lower_to_poly(const ExprNode& ast, const std::vector<std::string>& vars);

// Parse with a declared variable list (unknown identifiers are an error)...
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);
// ...or infer the variable list from the expression.
MultiPoly parse_poly(const std::string& text);

std::string render(const MultiPoly& p);

}  // namespace arcnash
