#pragma once

#include <array>
#include <string>
#include <vector>

#include "dg/mpoly.hpp"
#include "dg/ratfunc.hpp"

namespace dg {

// Plane curve over Q(p): poly has variables {u, v, "p"}.
struct PlaneCurveQP {
  MPoly poly;
  std::string u, v;
  bool degenerate = false;  // no dependence on (u, v)
};

enum class HauptRoute { Cubic, QuadraticFiber };

// H = 1728 / j, both in the parameter p.
struct HauptResult {
  RatFunc j, H;
  HauptRoute route = HauptRoute::Cubic;
};

// Substitute elim = p / prod(other diag vars), clear denominators, strip the
// content in Q(p) and any monomial factor in the curve variables. The remaining
// variables of Q become the curve variables. Default: all variables of Q are
// diagonal variables and the last one is eliminated.
PlaneCurveQP eliminate_diag_curve(const MPoly& den);
PlaneCurveQP eliminate_diag_curve(const MPoly& den, const std::vector<std::string>& diag_vars, const std::string& elim);

// Aronhold invariants of the homogenized ternary cubic, normalized on y^2 = x^3 + A x + B.
HauptResult j_from_cubic(const PlaneCurveQP& C);
// v^2 = discriminant in fiber_var, odd-multiplicity part of degree 3 or 4.
HauptResult j_from_quadratic_fiber(const PlaneCurveQP& C, const std::string& fiber_var);
// Cubic route when the curve has total degree 3, else a quadratic fiber.
HauptResult hauptmodul_of_denominator(const MPoly& den);
HauptResult hauptmodul_of_curve(const PlaneCurveQP& C);

// Degree-4 and degree-6 invariants of sum c[n] X^i Y^j W^k over the index order
// of cubic_monomials(); scaled so that S = A and T = B on Y^2 W - X^3 - A X W^2 - B W^3.
const std::vector<std::array<int, 3>>& cubic_monomials();
const MPoly& aronhold_S();
const MPoly& aronhold_T();

std::string route_name(HauptRoute r);

// c*p^k*(f1)^m1*.../(g1)^n1... with integer primitive square-free factors
// printed in ascending powers with positive constant term.
std::string factored_str(const RatFunc& f, const std::string& var = "p");

}  // namespace dg
