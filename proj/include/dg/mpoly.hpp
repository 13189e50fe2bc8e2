#pragma once

#include <map>
#include <string>
#include <vector>

#include "dg/rational.hpp"
#include "dg/upoly.hpp"

namespace dg {

using Exps = std::vector<int>;

// Sparse multivariate polynomial over Q. Terms are keyed by exponent vector
// and ordered lexicographically, first variable most significant.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  MPoly(std::vector<std::string> vars, const Q& c);

  static MPoly var(const std::vector<std::string>& vars, const std::string& name);
  static MPoly monomial(const std::vector<std::string>& vars, const Exps& e, const Q& c = 1);

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  int var_index(const std::string& name) const;  // -1 if absent
  const std::map<Exps, Q>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Q constant_term() const;
  Q coeff(const Exps& e) const;
  void add_term(const Exps& e, const Q& c);

  int degree(int v) const;
  int total_degree() const;
  bool depends_on(int v) const { return degree(v) > 0; }

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const Q& s);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Q& s) { return a *= s; }
  friend MPoly operator*(const Q& s, MPoly a) { return a *= s; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.t_ == b.t_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
  MPoly pow(unsigned e) const;

  // Coefficients with respect to variable v: result[k] is the coefficient of v^k
  // (as a polynomial over the same variable list, not involving v).
  std::vector<MPoly> coeffs_in(int v) const;
  static MPoly from_coeffs_in(const std::vector<MPoly>& cs, int v, const std::vector<std::string>& vars);

  MPoly derivative(int v) const;
  MPoly substitute(int v, const MPoly& value) const;
  MPoly rename(const std::vector<std::string>& new_vars) const;  // same arity
  MPoly embed(const std::vector<std::string>& bigger) const;     // superset of vars

  // Univariate view when only variable v occurs.
  UPoly to_upoly(int v) const;
  static MPoly from_upoly(const UPoly& p, const std::vector<std::string>& vars, int v);

  Q content() const;
  MPoly primitive() const;  // integral coprime coefficients, positive leading term

  std::string str() const;

 private:
  void check_same(const MPoly& o) const;
  std::vector<std::string> vars_;
  std::map<Exps, Q> t_;
};

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Exact division; throws std::domain_error when b does not divide a.
MPoly divide_exact(const MPoly& a, const MPoly& b);
bool try_divide(const MPoly& a, const MPoly& b, MPoly& q);

// Resultant with respect to the named variable by the subresultant PRS.
MPoly resultant(const MPoly& a, const MPoly& b, const std::string& var);

}  // namespace dg
