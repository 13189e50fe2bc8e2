#include "dg/guess.hpp"

#include <algorithm>

#include "dg/linalg.hpp"

namespace dg {

std::vector<std::pair<int, int>> guess_schedule(const GuessConfig& cfg) {
  std::vector<std::pair<int, int>> out;
  for (int r = 1; r <= cfg.max_order; ++r)
    for (int d = 0; d <= cfg.max_coeff_degree; ++d) out.push_back({r, d});
  return out;
}

namespace {

// Row for the coefficient of x^n of sum_{j,k} c_jk x^j theta^k s, columns (j, k) with k fastest.
QRow equation(const UniSeries& s, int n, int r, int d) {
  QRow row((d + 1) * (r + 1));
  for (int j = 0; j <= d && j <= n; ++j) {
    const Q& c = s[n - j];
    if (c == 0) continue;
    Q p = 1;
    for (int k = 0; k <= r; ++k) {
      row[j * (r + 1) + k] = p * c;
      p *= n - j;
    }
  }
  return row;
}

DiffOp op_from(const std::vector<Q>& v, int r, int d) {
  std::vector<UPoly> p(d + 1);
  for (int j = 0; j <= d; ++j) p[j] = UPoly(std::vector<Q>(v.begin() + j * (r + 1), v.begin() + (j + 1) * (r + 1)));
  return from_theta(p);
}

constexpr unsigned long kPrime = 2147483629UL;

}  // namespace

std::optional<GuessedOperator> guess_at(const std::vector<UniSeries>& s, int r, int d, int margin) {
  const int U = (d + 1) * (r + 1);
  ZMat fit;
  std::vector<QRow> held;
  int used = 0, verified = 0;
  for (const auto& ser : s) {
    int M = ser.bound() + 1;
    int nfit = M - margin;
    if (nfit < 0) throw Error("InsufficientTerms", "series shorter than the verification margin");
    for (int n = 0; n < M; ++n) {
      QRow row = equation(ser, n, r, d);
      if (n < nfit) fit.push_back(clear_row(row));
      else held.push_back(row);
    }
    used += nfit;
    verified += M - nfit;
  }
  if (used < U) throw Error("InsufficientTerms", "need " + std::to_string(U) + " fitted terms for order " + std::to_string(r) + " and degree " + std::to_string(d));
  if (rank_mod(fit, U, kPrime) == U) return std::nullopt;
  auto ns = nullspace(fit, U);
  if (ns.empty()) return std::nullopt;
  // combinations of the kernel that also satisfy the held-out equations
  QMat h;
  for (const auto& row : held) {
    QRow hr(ns.size());
    for (size_t b = 0; b < ns.size(); ++b) {
      Q acc = 0;
      for (int c = 0; c < U; ++c)
        if (row[c] != 0 && sgn(ns[b][c]) != 0) acc += row[c] * Q(ns[b][c]);
      hr[b] = acc;
    }
    h.push_back(hr);
  }
  std::vector<ZRow> combos;
  if (h.empty()) {
    combos.push_back(ZRow(ns.size(), 0));
    combos[0][0] = 1;
  } else {
    combos = nullspace(h, static_cast<int>(ns.size()));
  }
  if (combos.empty()) return std::nullopt;
  std::vector<Q> v(U, Q(0));
  for (size_t b = 0; b < ns.size(); ++b)
    if (sgn(combos[0][b]) != 0)
      for (int c = 0; c < U; ++c) v[c] += Q(combos[0][b] * ns[b][c]);
  DiffOp L = op_from(v, r, d).normalized();
  for (const auto& ser : s)
    if (!apply(L, ser).is_zero()) return std::nullopt;
  GuessedOperator g;
  g.op = L;
  g.order = L.order();
  g.coeff_degree = d;
  g.terms_used = used;
  g.terms_verified = verified;
  return g;
}

std::optional<GuessedOperator> guess_ode(const std::vector<UniSeries>& s, const GuessConfig& cfg) {
  if (cfg.verification_margin < 1 || cfg.max_order < 1) throw std::invalid_argument("invalid guess configuration");
  bool any = false;
  for (auto [r, d] : guess_schedule(cfg)) {
    try {
      auto g = guess_at(s, r, d, cfg.verification_margin);
      any = true;
      if (g) return g;
    } catch (const Error& e) {
      if (e.name() != "InsufficientTerms") throw;
    }
  }
  if (!any) throw Error("InsufficientTerms", "too few terms for every (order, degree) pair within bounds");
  return std::nullopt;
}

std::optional<GuessedOperator> guess_ode(const UniSeries& s, const GuessConfig& cfg) { return guess_ode(std::vector<UniSeries>{s}, cfg); }

namespace {

GuessedOperator certify(const UniSeries& s, const UniSeries& fresh, const GuessConfig& cfg) {
  auto g = guess_ode(s, cfg);
  if (!g) throw Error("NotFound", "no operator within order " + std::to_string(cfg.max_order) + " and degree " + std::to_string(cfg.max_coeff_degree));
  if (!apply(g->op, fresh).is_zero()) throw Error("NotFound", "guessed operator fails on the extended expansion");
  return *g;
}

}  // namespace

GuessedOperator guess_and_certify(const MPoly& P, const MPoly& Qd, const GuessConfig& cfg, int N) {
  UniSeries fresh = diag_rational(P, Qd, N + cfg.verification_margin);
  return certify(fresh.truncate(N), fresh, cfg);
}

GuessedOperator guess_and_certify(const PowerForm& f, const GuessConfig& cfg, int N) {
  UniSeries fresh = diag_of_power_form(f, N + cfg.verification_margin);
  return certify(fresh.truncate(N), fresh, cfg);
}

}  // namespace dg
