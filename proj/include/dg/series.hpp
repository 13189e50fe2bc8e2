#pragma once

#include <string>
#include <vector>

#include "dg/mpoly.hpp"
#include "dg/ratfunc.hpp"

namespace dg {

// Univariate series c[0] + c[1] x + ... + c[N] x^N, known exactly through x^N.
class UniSeries {
 public:
  UniSeries() = default;
  explicit UniSeries(std::vector<Q> c, std::string var = "x") : var_(std::move(var)), c_(std::move(c)) {}
  static UniSeries zero(int bound, std::string var = "x") { return UniSeries(std::vector<Q>(bound + 1), std::move(var)); }
  static UniSeries from_poly(const UPoly& p, int bound, std::string var = "x");
  // Taylor expansion at 0; the denominator must not vanish there.
  static UniSeries from_ratfunc(const RatFunc& f, int bound, std::string var = "x");

  int bound() const { return static_cast<int>(c_.size()) - 1; }
  const std::string& var() const { return var_; }
  const std::vector<Q>& coeffs() const { return c_; }
  const Q& operator[](int i) const { return c_[i]; }
  Q& operator[](int i) { return c_[i]; }
  Q coeff(int i) const { return i >= 0 && i <= bound() ? c_[i] : Q(0); }
  int valuation() const;  // -1 if zero through the bound
  bool is_zero() const { return valuation() < 0; }

  UniSeries truncate(int bound) const;
  UniSeries operator-() const;
  friend UniSeries operator+(const UniSeries& a, const UniSeries& b);
  friend UniSeries operator-(const UniSeries& a, const UniSeries& b);
  friend UniSeries operator*(const UniSeries& a, const UniSeries& b);
  friend UniSeries operator*(const Q& s, const UniSeries& a);
  friend UniSeries operator/(const UniSeries& a, const UniSeries& b);  // b(0) != 0
  // Exact equality through the smaller bound.
  friend bool operator==(const UniSeries& a, const UniSeries& b);
  friend bool operator!=(const UniSeries& a, const UniSeries& b) { return !(a == b); }

  UniSeries derivative() const;
  UniSeries shift(int k) const;        // multiply by x^k (k may be negative if the low terms vanish)
  UniSeries substitute_power(int k) const;  // x -> x^k
  UniSeries compose(const UniSeries& inner) const;  // inner(0) = 0
  UniSeries pow(const Q& r) const;     // requires c[0] = 1
  UniSeries inverse() const;

  std::string str(int max_terms = -1) const;

 private:
  std::string var_ = "x";
  std::vector<Q> c_;
};

// Multivariate series truncated per variable: every exponent is at most N.
// Coefficients live in a dense box of (N+1)^k entries.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(std::vector<std::string> vars, int N);
  static TruncSeries from_poly(const MPoly& p, int N);

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  int bound() const { return n_; }
  size_t size() const { return data_.size(); }
  size_t index(const Exps& e) const;
  Exps exps(size_t idx) const;
  bool in_box(const Exps& e) const;
  Q coeff(const Exps& e) const { return in_box(e) ? data_[index(e)] : Q(0); }
  void set(const Exps& e, const Q& c) { data_[index(e)] = c; }
  const std::vector<Q>& data() const { return data_; }
  std::vector<Q>& data() { return data_; }
  const std::vector<size_t>& strides() const { return stride_; }

  size_t nonzeros() const;
  TruncSeries operator-() const;
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const Q& s, const TruncSeries& a);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const MPoly& p);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.vars_ == b.vars_ && a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  void check_same(const TruncSeries& o) const;
  std::vector<std::string> vars_;
  int n_ = 0;
  std::vector<size_t> stride_;
  std::vector<Q> data_;
};

// P/Q expanded through per-variable bound N; Q(0) = 0 raises NoMultiTaylorExpansion.
TruncSeries expand_rational(const MPoly& P, const MPoly& Qd, int N);
// num/Q for a series numerator.
TruncSeries divide(const TruncSeries& num, const MPoly& Qd);
TruncSeries divide(const TruncSeries& num, const TruncSeries& den);
// Q^r for Q(0) = 1 after normalizing the constant; otherwise UnsupportedConstantTerm.
TruncSeries expand_power(const MPoly& Qd, const Q& r, int N);

// Substitute series for variables: images[i] replaces source variable i.
// All images live in one target variable list and bound.
TruncSeries series_substitute(const MPoly& P, const MPoly& Qd, const std::vector<TruncSeries>& images);
TruncSeries series_substitute(const TruncSeries& S, const std::vector<TruncSeries>& images);

UniSeries diag(const TruncSeries& S);
// Diagonal of P/Q computed without materializing rational coefficients when possible.
UniSeries diag_rational(const MPoly& P, const MPoly& Qd, int N);
// Diagonal of P * base^r / Q.
UniSeries diag_of_ratpower(const MPoly& P, const MPoly& Qd, const MPoly& base, const Q& r, int N);
// Diagonal of num/den * prod base_i^r_i.
struct PowerForm;
UniSeries diag_of_power_form(const PowerForm& f, int N);
TruncSeries expand_power_form(const PowerForm& f, int N);

// True iff the terms of P/Q that can reach the diagonal form a rational function of
// the grouping monomials and the diagonal agrees with it through order N.
bool effective_grouping_check(const MPoly& P, const MPoly& Qd, const std::vector<MPoly>& grouping, int N);

}  // namespace dg
