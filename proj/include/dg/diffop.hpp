#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dg/ratfunc.hpp"
#include "dg/series.hpp"

namespace dg {

// Linear differential operator sum_i c[i](x) Dx^i with rational-function coefficients.
class DiffOp {
 public:
  DiffOp() = default;
  explicit DiffOp(std::vector<RatFunc> c);
  static DiffOp from_polys(const std::vector<UPoly>& c);
  static DiffOp D(int k = 1);
  static DiffOp theta();
  // p(theta) for a univariate polynomial p.
  static DiffOp theta_poly(const UPoly& p);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const RatFunc& coeff(int i) const { return c_.at(i); }
  const std::vector<RatFunc>& coeffs() const { return c_; }
  const RatFunc& lc() const { return c_.back(); }
  bool is_polynomial() const;
  std::vector<UPoly> poly_coeffs() const;  // requires is_polynomial()

  // Primitive polynomial form: no common polynomial factor, integer coefficients
  // with gcd 1, leading coefficient of the top derivative positive.
  DiffOp normalized() const;
  DiffOp monic() const;

  DiffOp operator-() const;
  friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);  // composition a o b
  friend DiffOp operator*(const RatFunc& f, const DiffOp& a);  // left multiplication
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

  // "(c_r)*Dx^r+...+(c_0)"; re-parses with parse_diffop.
  std::string str() const;
  // Theta form "(c_k(x))*T^k+..." after left multiplication by the power of x
  // that makes it polynomial in x and theta with no x factor.
  std::string theta_str() const;

 private:
  void trim();
  std::vector<RatFunc> c_;
};

DiffOp multiply(const DiffOp& a, const DiffOp& b);
// Equality of primitive normalizations.
bool equal_normalized(const DiffOp& a, const DiffOp& b);

// Text in x and Dx (or T for theta); coefficients stand to the left of the derivations.
DiffOp parse_diffop(const std::string& text);

UniSeries apply(const DiffOp& L, const UniSeries& s);
DiffOp adjoint(const DiffOp& L);
// a = q * b + r with order(r) < order(b).
std::pair<DiffOp, DiffOp> right_divide(const DiffOp& a, const DiffOp& b);
DiffOp gcrd(const DiffOp& a, const DiffOp& b);
DiffOp lclm(const std::vector<DiffOp>& ops);

// Theta form: L times x^shift equals sum_j x^j P_j(theta), P_0 != 0.
struct ThetaForm {
  std::vector<UPoly> p;
  int shift = 0;
};
ThetaForm theta_form(const DiffOp& L);
DiffOp from_theta(const std::vector<UPoly>& p);

enum class Point { Zero, Infinity };
// Roots are the local exponents: x^rho at zero, (1/x)^rho at infinity.
UPoly indicial(const DiffOp& L, Point pt);
bool is_MUM(const DiffOp& L);

struct FrobeniusBasis {
  std::vector<std::pair<int, UniSeries>> sols;  // series include the x^exponent factor
};
// Log-free solutions at 0 with non-negative integer exponents, through x^N.
// The series for exponent e is the Frobenius limit rho -> e when that limit exists.
FrobeniusBasis analytic_solutions(const DiffOp& L, int N);

std::vector<RatFunc> rational_solutions(const DiffOp& L);

struct ExteriorSquare {
  DiffOp op;
  bool degenerate = false;  // order below C(n, 2)
};
ExteriorSquare exterior_square(const DiffOp& L);

struct Intertwiner {
  DiffOp R;  // target o R = S o source
  DiffOp S;
};
// Operators R of order < order(source) with target o R divisible on the right by source.
// Coefficients are reduced rational functions with numerator and denominator degree <= max_deg,
// denominators dividing a power of the singular polynomials of the pair.
std::optional<Intertwiner> find_intertwiner(const DiffOp& source, const DiffOp& target, int max_deg);
// Intertwiner from adjoint(L) to L, if one exists within the degree bound.
std::optional<Intertwiner> selfdual_report(const DiffOp& L, int max_deg);

}  // namespace dg
