#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dg/mpoly.hpp"

namespace dg {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Call };
  Kind kind;
  Q value;           // Num
  std::string name;  // Var, Call
  std::vector<ExprPtr> kids;
};

// Precedence: ^ above unary minus above * / above + -; all binary operators
// associate to the left. A rational exponent must be parenthesized: x^(1/3).
// Syntax errors are reported as Error("SyntaxError") with a character position.
ExprPtr parse_expr(const std::string& text);
std::string print_expr(const ExprPtr& e);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Identifiers occurring in e (function names excluded), in first-seen order.
std::vector<std::string> expr_vars(const ExprPtr& e);
// Canonical ordering of diagonal variables: x, y, z, u, w, then the rest alphabetically.
std::vector<std::string> canonical_vars(std::vector<std::string> vs);

struct RatFn {
  MPoly num, den;
};

// Rational function with integer powers only.
RatFn to_ratfn(const ExprPtr& e, const std::vector<std::string>& vars);

// num/den times a product of rational powers of polynomials with constant term 1.
struct PowerForm {
  MPoly num, den;
  std::vector<std::pair<MPoly, Q>> powers;
};
PowerForm to_power_form(const ExprPtr& e, const std::vector<std::string>& vars);

// Convenience: parse a polynomial in the given variables.
MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);
RatFn parse_ratfn(const std::string& text, const std::vector<std::string>& vars);

// Evaluate an expression whose value must be a rational constant.
Q eval_constant(const ExprPtr& e);

}  // namespace dg
