#pragma once

#include <string>
#include <vector>

#include "dg/diffop.hpp"
#include "dg/expr.hpp"
#include "dg/mpoly.hpp"
#include "dg/ratfunc.hpp"
#include "dg/series.hpp"

namespace dg {

// pFq(upper; lower; scale * x^power)
struct PFQSpec {
  std::vector<Q> upper, lower;
  Q scale = 1;
  int power = 1;
};

// HeunG(a, q; alpha, beta, gamma, delta; scale * x^power)
struct HeunSpec {
  Q a, q, alpha, beta, gamma, delta;
  Q scale = 1;
  int power = 1;
};

UniSeries pfq_series(const PFQSpec& spec, int N);
UniSeries heun_series(const HeunSpec& spec, int N);

// Hypergeometric operator in x, t = c x^k, theta_t = theta / k:
// theta_t prod(theta_t + b - 1) - t prod(theta_t + a), primitive normalization.
DiffOp pfq_operator(const PFQSpec& spec);

// base^exponent * 2F1(spec)(pullback); base(0) = 1 and pullback(0) = 0.
UniSeries pullbacked_2f1(const RatFunc& base, const Q& exponent, const PFQSpec& spec, const RatFunc& pullback, int N);

// Root of minpoly(s, x) = 0 with s(0) = seed, lifted by Newton iteration through x^N.
// s_var and x_var name the two variables of minpoly.
UniSeries algebraic_root_series(const MPoly& minpoly, const std::string& s_var, const std::string& x_var, const Q& seed, int N);

// Value of minpoly at s = series, truncated like the series.
UniSeries eval_minpoly(const MPoly& minpoly, const std::string& s_var, const std::string& x_var, const UniSeries& s);

// Univariate series of an expression in var through var^N. Supports + - * /, integer
// and rational powers, and cos, sin, exp, log, sqrt of arguments where these expand.
UniSeries series_of_expr(const ExprPtr& e, const std::string& var, int N);

}  // namespace dg
