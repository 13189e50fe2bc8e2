#pragma once

#include <optional>
#include <vector>

#include "dg/diffop.hpp"
#include "dg/expr.hpp"
#include "dg/series.hpp"

namespace dg {

// The ansatz is sum_{j <= max_coeff_degree} x^j P_j(theta) with deg P_j <= order,
// so "degree" counts powers of x in theta form.
struct GuessConfig {
  int max_order = 6;
  int max_coeff_degree = 8;
  int verification_margin = 10;
};

struct GuessedOperator {
  DiffOp op;  // primitive normalization
  int order = 0;
  int coeff_degree = 0;
  int terms_used = 0;
  int terms_verified = 0;
};

// (order, degree) pairs in search order: ascending order, then ascending degree.
std::vector<std::pair<int, int>> guess_schedule(const GuessConfig& cfg);

// Operator of exactly this shape annihilating every series, checked on held-out terms.
// Empty when the pair admits none; InsufficientTerms when the series are too short.
std::optional<GuessedOperator> guess_at(const std::vector<UniSeries>& s, int order, int degree, int margin);

// First pair in the schedule that admits an operator. nullopt means NotFound.
std::optional<GuessedOperator> guess_ode(const UniSeries& s, const GuessConfig& cfg);
// Common annihilator of several series.
std::optional<GuessedOperator> guess_ode(const std::vector<UniSeries>& s, const GuessConfig& cfg);

// Expand, take the diagonal through x^N, guess, then re-check on N + margin terms.
// Raises NotFound when no operator survives.
GuessedOperator guess_and_certify(const MPoly& P, const MPoly& Q, const GuessConfig& cfg, int N);
GuessedOperator guess_and_certify(const PowerForm& f, const GuessConfig& cfg, int N);

}  // namespace dg
