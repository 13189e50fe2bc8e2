#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dg/rational.hpp"

namespace dg {

// Dense univariate polynomial over Q, c[i] is the coefficient of x^i.
// Trailing zeros are always trimmed, so the zero polynomial has c.empty().
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Q& c0);  // NOLINT: constants convert implicitly
  UPoly(long c0) : UPoly(Q(c0)) {}  // NOLINT
  explicit UPoly(std::vector<Q> coeffs);

  static UPoly x() { return monomial(1, 1); }
  static UPoly monomial(const Q& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const Q& lc() const;
  Q coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Q(0); }
  const std::vector<Q>& coeffs() const { return c_; }
  int valuation() const;

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  UPoly& operator*=(const Q& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Q& s) { return a *= s; }
  friend UPoly operator*(const Q& s, UPoly a) { return a *= s; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  UPoly derivative() const;
  Q eval(const Q& t) const;
  UPoly compose(const UPoly& inner) const;
  UPoly shift_up(int k) const;  // x^k * p
  UPoly pow(unsigned e) const;
  UPoly truncate(int n) const;  // keep terms of degree < n

  // Rational content: positive, so that p / content() has coprime integer coefficients.
  Q content() const;
  UPoly primitive() const;  // integer coefficients, gcd 1, positive lc
  UPoly monic() const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Q> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator/(const UPoly& a, const UPoly& b);  // exact quotient, throws if remainder
UPoly operator%(const UPoly& a, const UPoly& b);

// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly lcm(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& a);
// Yun decomposition: result[i] is the product of the irreducible factors of multiplicity i+1.
std::vector<UPoly> squarefree_decomposition(const UPoly& a);
// Distinct integer roots, ascending, with multiplicities.
std::vector<std::pair<long, int>> integer_roots(const UPoly& a);
// Polynomial of degree < xs.size() through the points (xs[i], ys[i]).
UPoly interpolate(const std::vector<Q>& xs, const std::vector<Q>& ys);

}  // namespace dg
