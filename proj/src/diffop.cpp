#include <random>
#include "dg/diffop.hpp"

#include <algorithm>
#include <map>

#include "dg/expr.hpp"
#include "dg/linalg.hpp"

namespace dg {

namespace {

UPoly lcm_dens(const std::vector<RatFunc>& c) {
  UPoly l(1);
  for (const auto& f : c) l = lcm(l, f.den());
  return l;
}

// Coefficients with denominators cleared by their lcm.
std::vector<UPoly> cleared(const std::vector<RatFunc>& c) {
  UPoly l = lcm_dens(c);
  std::vector<UPoly> out;
  out.reserve(c.size());
  for (const auto& f : c) out.push_back(f.num() * (l / f.den()));
  return out;
}

// theta (theta-1) ... (theta-i+1)
UPoly falling_theta(int i) {
  UPoly p(1);
  for (int k = 0; k < i; ++k) p *= UPoly(std::vector<Q>{Q(-k), Q(1)});
  return p;
}

// Taylor coefficients of p(a + eps) in eps.
std::vector<Q> taylor_at(const UPoly& p, const Q& a) {
  std::vector<Q> out;
  UPoly d = p;
  Q f = 1;
  for (int k = 0; !d.is_zero(); ++k) {
    if (k > 0) f *= k;
    out.push_back(d.eval(a) / f);
    d = d.derivative();
  }
  return out;
}

std::string coeff_str(const RatFunc& c) { return c.is_polynomial() ? "(" + c.num().str() + ")" : c.str(); }

std::string op_str(const std::vector<RatFunc>& c, const std::string& sym) {
  std::string s;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[k].is_zero()) continue;
    std::string term;
    std::string pw = k == 0 ? "" : (k == 1 ? sym : sym + "^" + std::to_string(k));
    if (k > 0 && c[k] == RatFunc(1)) term = pw;
    else term = coeff_str(c[k]) + (k > 0 ? "*" + pw : "");
    s += (s.empty() ? "" : "+") + term;
  }
  return s.empty() ? "0" : s;
}

}  // namespace

// ---------------- DiffOp basics ----------------

DiffOp::DiffOp(std::vector<RatFunc> c) : c_(std::move(c)) { trim(); }

void DiffOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DiffOp DiffOp::from_polys(const std::vector<UPoly>& c) { return DiffOp(std::vector<RatFunc>(c.begin(), c.end())); }

DiffOp DiffOp::D(int k) {
  std::vector<RatFunc> c(k + 1);
  c[k] = 1;
  return DiffOp(c);
}

DiffOp DiffOp::theta() { return DiffOp({RatFunc(0), RatFunc(UPoly::x())}); }

DiffOp DiffOp::theta_poly(const UPoly& p) { return from_theta({p}); }

bool DiffOp::is_polynomial() const {
  return std::all_of(c_.begin(), c_.end(), [](const RatFunc& f) { return f.is_polynomial(); });
}

std::vector<UPoly> DiffOp::poly_coeffs() const {
  if (!is_polynomial()) throw std::invalid_argument("operator has non-polynomial coefficients");
  std::vector<UPoly> out;
  for (const auto& f : c_) out.push_back(f.num());
  return out;
}

DiffOp DiffOp::normalized() const {
  if (is_zero()) return *this;
  std::vector<UPoly> p = cleared(c_);
  UPoly g;
  for (const auto& q : p) g = gcd(g, q);
  std::vector<Q> all;
  for (auto& q : p) {
    q = q / g;
    all.insert(all.end(), q.coeffs().begin(), q.coeffs().end());
  }
  Q scale(lcm_den(all), gcd_num(all));
  scale.canonicalize();
  if (p.back().lc() < 0) scale = -scale;
  for (auto& q : p) q *= scale;
  return from_polys(p);
}

DiffOp DiffOp::monic() const {
  if (is_zero()) return *this;
  RatFunc inv = lc().inverse();
  return inv * *this;
}

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& f : r.c_) f = -f;
  return r;
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
  std::vector<RatFunc> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.c_.size()) c[i] += a.c_[i];
    if (i < b.c_.size()) c[i] += b.c_[i];
  }
  return DiffOp(c);
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }

DiffOp operator*(const RatFunc& f, const DiffOp& a) {
  std::vector<RatFunc> c = a.c_;
  for (auto& g : c) g = f * g;
  return DiffOp(c);
}

namespace {

// D o X
std::vector<RatFunc> d_compose(const std::vector<RatFunc>& x) {
  std::vector<RatFunc> c(x.size() + 1);
  for (size_t j = 0; j < x.size(); ++j) {
    if (x[j].is_zero()) continue;
    c[j] += x[j].derivative();
    c[j + 1] += x[j];
  }
  return c;
}

}  // namespace

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
  if (a.is_zero() || b.is_zero()) return DiffOp();
  std::vector<RatFunc> acc(a.c_.size() + b.c_.size() - 1);
  std::vector<RatFunc> cur = b.c_;
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (i > 0) cur = d_compose(cur);
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < cur.size(); ++j)
      if (!cur[j].is_zero()) acc[j] += a.c_[i] * cur[j];
  }
  return DiffOp(acc);
}

DiffOp multiply(const DiffOp& a, const DiffOp& b) { return a * b; }

bool equal_normalized(const DiffOp& a, const DiffOp& b) { return a.normalized() == b.normalized(); }

std::string DiffOp::str() const { return op_str(c_, "Dx"); }

std::string DiffOp::theta_str() const {
  if (is_zero()) return "0";
  ThetaForm tf = theta_form(*this);
  size_t top = 0;
  for (const auto& p : tf.p) top = std::max(top, p.coeffs().size());
  std::vector<RatFunc> c(top);
  for (size_t k = 0; k < top; ++k) {
    std::vector<Q> cx(tf.p.size());
    for (size_t j = 0; j < tf.p.size(); ++j) cx[j] = tf.p[j].coeff(static_cast<int>(k));
    c[k] = UPoly(cx);
  }
  return op_str(c, "T");
}

DiffOp parse_diffop(const std::string& text) {
  ExprPtr e = parse_expr(text);
  auto vs = expr_vars(e);
  bool has_d = std::find(vs.begin(), vs.end(), "Dx") != vs.end();
  bool has_t = std::find(vs.begin(), vs.end(), "T") != vs.end();
  if (has_d && has_t) throw Error("SemanticError", "operator mixes Dx and T");
  std::string sym = has_t ? "T" : "Dx";
  for (const auto& v : vs)
    if (v != "x" && v != sym) throw Error("SemanticError", "unexpected symbol " + v + " in operator");
  RatFn f = to_ratfn(e, {"x", sym});
  if (f.den.degree(1) > 0) throw Error("SemanticError", "derivation symbol in a denominator");
  UPoly den = f.den.to_upoly(0);
  auto cs = f.num.coeffs_in(1);
  std::vector<RatFunc> c;
  for (const auto& m : cs) c.push_back(RatFunc(m.to_upoly(0), den));
  if (sym == "Dx") return DiffOp(c);
  DiffOp out, tk = DiffOp({RatFunc(1)});
  for (size_t k = 0; k < c.size(); ++k) {
    if (k > 0) tk = DiffOp::theta() * tk;
    out = out + c[k] * tk;
  }
  return out;
}

// ---------------- application, adjoint, division ----------------

UniSeries apply(const DiffOp& L, const UniSeries& s) {
  int out = s.bound() - std::max(L.order(), 0);
  if (L.is_zero()) return UniSeries::zero(s.bound(), s.var());
  if (out < 0) return UniSeries(std::vector<Q>{}, s.var());
  UPoly E = lcm_dens(L.coeffs());
  std::vector<UPoly> p = cleared(L.coeffs());
  UniSeries acc = UniSeries::zero(out, s.var()), d = s;
  for (int i = 0; i <= L.order(); ++i) {
    if (i > 0) d = d.derivative();
    if (p[i].is_zero()) continue;
    acc = acc + UniSeries::from_poly(p[i], out, s.var()) * d.truncate(out);
  }
  if (E.is_one()) return acc;
  int v = E.valuation();
  if (v > 0) {
    for (int i = 0; i < v && i <= acc.bound(); ++i)
      if (acc[i] != 0) throw Error("PoleInResult", "operator applied to the series has a pole at 0");
    acc = acc.shift(-v);
    E = UPoly(std::vector<Q>(E.coeffs().begin() + v, E.coeffs().end()));
  }
  return acc / UniSeries::from_poly(E, acc.bound(), s.var());
}

DiffOp adjoint(const DiffOp& L) {
  if (L.is_zero()) return L;
  std::vector<RatFunc> out(L.order() + 1);
  for (int i = 0; i <= L.order(); ++i) {
    if (L.coeff(i).is_zero()) continue;
    // (-1)^i sum_k C(i,k) a_i^(i-k) D^k
    std::vector<RatFunc> der{L.coeff(i)};
    for (int t = 1; t <= i; ++t) der.push_back(der.back().derivative());
    Q sign = i % 2 ? -1 : 1;
    for (int k = 0; k <= i; ++k) out[k] += RatFunc(sign * Q(binomial(i, k))) * der[i - k];
  }
  return DiffOp(out);
}

std::pair<DiffOp, DiffOp> right_divide(const DiffOp& a, const DiffOp& b) {
  if (b.is_zero()) throw std::invalid_argument("right division by the zero operator");
  int top = a.order() - b.order();
  if (top < 0) return {DiffOp(), a};
  std::vector<std::vector<RatFunc>> dkb{b.coeffs()};
  for (int k = 1; k <= top; ++k) dkb.push_back(d_compose(dkb.back()));
  std::vector<RatFunc> q(top + 1);
  DiffOp rem = a;
  RatFunc binv = b.lc().inverse();
  for (int k = top; k >= 0; --k) {
    if (rem.order() != b.order() + k) continue;
    RatFunc c = rem.lc() * binv;
    q[k] = c;
    rem = rem - c * DiffOp(dkb[k]);
  }
  return {DiffOp(q), rem};
}

DiffOp gcrd(const DiffOp& a0, const DiffOp& b0) {
  DiffOp a = a0, b = b0;
  while (!b.is_zero()) {
    DiffOp r = right_divide(a, b).second;
    a = b;
    b = r;
  }
  return a.normalized();
}

namespace {

// Remainders of D^0..D^count modulo a (order n >= 1), as coefficient vectors of length n.
std::vector<std::vector<RatFunc>> power_remainders(const DiffOp& a, int count) {
  const int n = a.order();
  std::vector<RatFunc> red(n);
  RatFunc inv = a.lc().inverse();
  for (int j = 0; j < n; ++j) red[j] = -(a.coeff(j) * inv);
  std::vector<std::vector<RatFunc>> out;
  std::vector<RatFunc> cur(n);
  cur[0] = 1;
  out.push_back(cur);
  for (int k = 1; k <= count; ++k) {
    std::vector<RatFunc> nxt(n);
    for (int j = 0; j < n; ++j) {
      if (cur[j].is_zero()) continue;
      nxt[j] += cur[j].derivative();
      if (j + 1 < n) nxt[j + 1] += cur[j];
      else
        for (int l = 0; l < n; ++l) nxt[l] += cur[j] * red[l];
    }
    cur = nxt;
    out.push_back(cur);
  }
  return out;
}

DiffOp lclm2(const DiffOp& a, const DiffOp& b) {
  if (a.order() == 0) return b.normalized();
  if (b.order() == 0) return a.normalized();
  const int n = a.order(), m = b.order(), cols = n + m + 1;
  auto ra = power_remainders(a, n + m), rb = power_remainders(b, n + m);
  PMat rows;
  auto add_rows = [&](const std::vector<std::vector<RatFunc>>& r, int comps) {
    for (int j = 0; j < comps; ++j) {
      std::vector<RatFunc> row(cols);
      for (int i = 0; i < cols; ++i) row[i] = r[i][j];
      std::vector<UPoly> pr = cleared(row);
      rows.push_back(pr);
    }
  };
  add_rows(ra, n);
  add_rows(rb, m);
  auto ns = nullspace(rows, cols);
  if (ns.empty()) throw std::logic_error("lclm: no dependency found");
  return DiffOp::from_polys(ns[0]).normalized();
}

}  // namespace

DiffOp lclm(const std::vector<DiffOp>& ops) {
  if (ops.empty()) throw std::invalid_argument("lclm of an empty list");
  DiffOp acc = ops[0].normalized();
  for (size_t i = 1; i < ops.size(); ++i) acc = lclm2(acc, ops[i]);
  return acc;
}

// ---------------- theta form and local data ----------------

ThetaForm theta_form(const DiffOp& L) {
  if (L.is_zero()) throw std::invalid_argument("theta form of the zero operator");
  std::vector<UPoly> a = cleared(L.coeffs());
  std::map<int, UPoly> terms;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    UPoly ft = falling_theta(i);
    for (int k = 0; k <= a[i].degree(); ++k)
      if (a[i].coeff(k) != 0) terms[k - i] += a[i].coeff(k) * ft;
  }
  ThetaForm tf;
  int lo = terms.begin()->first, hi = terms.rbegin()->first;
  while (terms[lo].is_zero()) ++lo;
  while (terms[hi].is_zero()) --hi;
  tf.shift = -lo;
  for (int j = lo; j <= hi; ++j) tf.p.push_back(terms.count(j) ? terms[j] : UPoly());
  return tf;
}

DiffOp from_theta(const std::vector<UPoly>& p) {
  int kmax = 0;
  for (const auto& q : p) kmax = std::max(kmax, q.degree());
  // Stirling numbers of the second kind: theta^k = sum_i S(k,i) x^i D^i
  std::vector<std::vector<Z>> S(kmax + 1, std::vector<Z>(kmax + 1, 0));
  S[0][0] = 1;
  for (int k = 1; k <= kmax; ++k)
    for (int i = 1; i <= k; ++i) S[k][i] = Z(i) * S[k - 1][i] + S[k - 1][i - 1];
  std::vector<UPoly> c(kmax + 1);
  for (int j = 0; j < static_cast<int>(p.size()); ++j)
    for (int k = 0; k <= p[j].degree(); ++k) {
      if (p[j].coeff(k) == 0) continue;
      for (int i = 0; i <= k; ++i)
        if (S[k][i] != 0) c[i] += UPoly::monomial(p[j].coeff(k) * Q(S[k][i]), i + j);
    }
  return DiffOp::from_polys(c);
}

UPoly indicial(const DiffOp& L, Point pt) {
  ThetaForm tf = theta_form(L);
  if (pt == Point::Zero) return tf.p.front();
  return tf.p.back().compose(UPoly(std::vector<Q>{Q(0), Q(-1)}));
}

bool is_MUM(const DiffOp& L) {
  UPoly p = indicial(L, Point::Zero);
  return p.degree() == L.order() && p.valuation() == L.order();
}

namespace {

// Truncated Laurent series in eps with coefficients for eps^-K .. eps^K.
struct Laurent {
  int K;
  std::vector<Q> c;
  explicit Laurent(int k) : K(k), c(2 * k + 1) {}
  Q& at(int t) { return c[t + K]; }
  const Q& at(int t) const { return c[t + K]; }
};

// acc -= poly(eps) * s, keeping exponents <= K
void sub_mul(Laurent& acc, const std::vector<Q>& poly, const Laurent& s) {
  for (int t = -s.K; t <= s.K; ++t) {
    if (s.at(t) == 0) continue;
    for (int k = 0; k < static_cast<int>(poly.size()) && t + k <= s.K; ++k)
      if (poly[k] != 0) acc.at(t + k) -= poly[k] * s.at(t);
  }
}

// Frobenius limit at rho = e; empty if some coefficient has a pole.
std::optional<UniSeries> frobenius_limit(const std::vector<UPoly>& P, long e, int N, int K) {
  const int J = static_cast<int>(P.size()) - 1;
  std::vector<Laurent> c;
  c.emplace_back(K);
  c[0].at(0) = 1;
  for (int n = 1; n <= N - e; ++n) {
    Laurent acc(K);
    for (int j = 1; j <= std::min(J, n); ++j)
      if (!P[j].is_zero()) sub_mul(acc, taylor_at(P[j], Q(n - j + e)), c[n - j]);
    std::vector<Q> d = taylor_at(P[0], Q(n + e));
    int m = 0;
    while (m < static_cast<int>(d.size()) && d[m] == 0) ++m;
    Laurent sh(K);
    for (int t = -K; t <= K; ++t)
      if (acc.at(t) != 0) {
        if (t - m < -K) return std::nullopt;  // deeper pole than the budget: logarithmic
        sh.at(t - m) = acc.at(t);
      }
    // divide by the unit d[m] + d[m+1] eps + ...
    Laurent q(K);
    for (int t = -K; t <= K; ++t) {
      Q v = sh.at(t);
      for (int k = 1; m + k < static_cast<int>(d.size()) && t - k >= -K; ++k)
        if (d[m + k] != 0) v -= d[m + k] * q.at(t - k);
      q.at(t) = v / d[m];
    }
    c.push_back(q);
  }
  std::vector<Q> out(N + 1);
  for (int n = 0; n <= N - e; ++n) {
    for (int t = -K; t < 0; ++t)
      if (c[n].at(t) != 0) return std::nullopt;
    out[n + e] = c[n].at(0);
  }
  return UniSeries(out);
}

// Log-free solution x^e (1 + ...) with free coefficients at resonances set to zero where possible.
std::optional<UniSeries> parametric_solution(const std::vector<UPoly>& P, long e, int N) {
  const int J = static_cast<int>(P.size()) - 1;
  // c_n as affine forms: c[n][0] constant part, c[n][1+k] coefficient of parameter k
  std::vector<std::vector<Q>> c{{Q(1)}};
  std::vector<std::vector<Q>> constraints;
  int params = 0;
  auto widen = [&](std::vector<Q>& v) { v.resize(1 + params); };
  for (int n = 1; n <= N - e; ++n) {
    std::vector<Q> acc(1 + params);
    for (int j = 1; j <= std::min(J, n); ++j) {
      if (P[j].is_zero()) continue;
      Q w = P[j].eval(Q(n - j + e));
      auto prev = c[n - j];
      widen(prev);
      for (int k = 0; k <= params; ++k) acc[k] -= w * prev[k];
    }
    Q d = P[0].eval(Q(n + e));
    if (d == 0) {
      constraints.push_back(acc);
      ++params;
      std::vector<Q> fresh(1 + params);
      fresh[params] = 1;
      c.push_back(fresh);
    } else {
      for (auto& v : acc) v /= d;
      c.push_back(acc);
    }
  }
  // solve sum_k A[k] t_k = -b with Gauss-Jordan over Q
  std::vector<std::vector<Q>> A;
  for (auto row : constraints) {
    row.resize(1 + params);
    std::vector<Q> r(params + 1);
    for (int k = 0; k < params; ++k) r[k] = row[k + 1];
    r[params] = -row[0];
    A.push_back(r);
  }
  std::vector<Q> t(params, Q(0));
  std::vector<int> pivcol;
  int r = 0;
  for (int col = 0; col < params && r < static_cast<int>(A.size()); ++col) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(A.size()) && piv < 0; ++i)
      if (A[i][col] != 0) piv = i;
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    Q inv = 1 / A[r][col];
    for (auto& v : A[r]) v *= inv;
    for (int i = 0; i < static_cast<int>(A.size()); ++i) {
      if (i == r || A[i][col] == 0) continue;
      Q f = A[i][col];
      for (int k = 0; k <= params; ++k) A[i][k] -= f * A[r][k];
    }
    pivcol.push_back(col);
    ++r;
  }
  for (size_t i = r; i < A.size(); ++i)
    if (A[i][params] != 0) return std::nullopt;
  for (int i = 0; i < r; ++i) t[pivcol[i]] = A[i][params];
  std::vector<Q> out(N + 1);
  for (int n = 0; n <= N - e; ++n) {
    auto v = c[n];
    widen(v);
    Q s = v[0];
    for (int k = 0; k < params; ++k) s += v[k + 1] * t[k];
    out[n + e] = s;
  }
  return UniSeries(out);
}

}  // namespace

FrobeniusBasis analytic_solutions(const DiffOp& L, int N) {
  FrobeniusBasis basis;
  if (L.is_zero() || L.order() == 0) return basis;
  ThetaForm tf = theta_form(L);
  if (tf.p[0].degree() <= 0) return basis;
  auto roots = integer_roots(tf.p[0]);
  for (const auto& [e, mult] : roots) {
    if (e < 0 || e > N) continue;
    int K = 0;
    for (const auto& [e2, m2] : roots)
      if (e2 > e && e2 <= N) K += m2;
    std::optional<UniSeries> s = frobenius_limit(tf.p, e, N, K);
    if (!s) s = parametric_solution(tf.p, e, N);
    if (!s) continue;
    if (!apply(L, *s).is_zero()) throw std::logic_error("analytic_solutions: series does not satisfy the operator");
    basis.sols.push_back({static_cast<int>(e), *s});
  }
  return basis;
}

// ---------------- rational solutions ----------------

namespace {

int order_at(const UPoly& q, UPoly a) {
  int m = 0;
  while (!a.is_zero() && (a % q).is_zero()) {
    ++m;
    a = a.derivative();
  }
  return m;
}

// Split a squarefree polynomial so that every coefficient has constant order on each piece.
std::vector<UPoly> split_by_orders(const UPoly& S, const std::vector<UPoly>& a) {
  std::vector<UPoly> pieces{S.monic()};
  for (const auto& ai : a) {
    if (ai.is_zero()) continue;
    UPoly H = S, d = ai;
    for (int k = 1; k <= ai.degree() + 1; ++k) {
      H = gcd(H, d);
      if (H.degree() <= 0) break;
      std::vector<UPoly> next;
      for (const auto& q : pieces) {
        UPoly g = gcd(q, H);
        if (g.degree() > 0 && g.degree() < q.degree()) {
          next.push_back(g);
          next.push_back((q / g).monic());
        } else {
          next.push_back(q);
        }
      }
      pieces = next;
      d = d.derivative();
    }
  }
  return pieces;
}

// ---- arithmetic in F_p[x], used to locate exponents of large local data ----

using u64 = unsigned long long;
using PolyP = std::vector<u64>;  // low degree first, no trailing zeros

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }
u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1, a = mulm(a, a, p))
    if (e & 1) r = mulm(r, a, p);
  return r;
}
u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

void trimp(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

bool to_mod(const Q& c, u64 p, u64& out) {
  u64 den = mpz_fdiv_ui(c.get_den_mpz_t(), p);
  if (den == 0) return false;
  out = mulm(mpz_fdiv_ui(c.get_num_mpz_t(), p), invm(den, p), p);
  return true;
}

bool to_modp(const UPoly& f, u64 p, PolyP& out) {
  out.assign(f.degree() + 1 > 0 ? f.degree() + 1 : 0, 0);
  for (int i = 0; i <= f.degree(); ++i)
    if (!to_mod(f.coeff(i), p, out[i])) return false;
  trimp(out);
  return true;
}

PolyP remp(PolyP a, const PolyP& b, u64 p) {
  const u64 il = invm(b.back(), p);
  const size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    u64 f = mulm(a.back(), il, p);
    size_t sh = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i) a[sh + i] = (a[sh + i] + p - mulm(f, b[i], p)) % p;
    trimp(a);
  }
  return a;
}

PolyP mulp(const PolyP& a, const PolyP& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  PolyP c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulm(a[i], b[j], p)) % p;
  trimp(c);
  return c;
}

PolyP gcdp(PolyP a, PolyP b, u64 p) {
  while (!b.empty()) {
    PolyP r = remp(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 il = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, il, p);
  }
  return a;
}

// base^e mod m
PolyP powmodp(PolyP base, u64 e, const PolyP& m, u64 p) {
  PolyP r{1};
  base = remp(base, m, p);
  for (; e; e >>= 1) {
    if (e & 1) r = remp(mulp(r, base, p), m, p);
    base = remp(mulp(base, base, p), m, p);
  }
  return r;
}

u64 evalp(const PolyP& a, u64 t, u64 p) {
  u64 r = 0;
  for (size_t i = a.size(); i-- > 0;) r = (mulm(r, t, p) + a[i]) % p;
  return r;
}

// Roots in F_p of a polynomial, by Cantor-Zassenhaus splitting of gcd(f, x^p - x).
void split_roots(const PolyP& g, u64 p, std::mt19937_64& rng, std::vector<u64>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back((p - mulm(g[0], invm(g[1], p), p)) % p);
    return;
  }
  for (;;) {
    u64 delta = rng() % p;
    PolyP h = powmodp(PolyP{delta, 1}, (p - 1) / 2, g, p);
    if (h.empty()) h = {p - 1};
    else h[0] = (h[0] + p - 1) % p;
    trimp(h);
    PolyP f = gcdp(g, h, p);
    if (f.size() > 1 && f.size() < g.size()) {
      split_roots(f, p, rng, out);
      // g / f
      PolyP q(g.size() - f.size() + 1, 0), rem = g;
      for (size_t k = q.size(); k-- > 0;) {
        q[k] = rem[k + f.size() - 1];
        for (size_t i = 0; i < f.size(); ++i) rem[k + i] = (rem[k + i] + p - mulm(q[k], f[i], p)) % p;
      }
      trimp(q);
      split_roots(q, p, rng, out);
      return;
    }
  }
}

std::vector<u64> roots_mod(PolyP f, u64 p) {
  std::vector<u64> out;
  if (f.size() <= 1) return out;
  PolyP xp = powmodp(PolyP{0, 1}, p, f, p);
  xp.resize(std::max<size_t>(xp.size(), 2), 0);
  xp[1] = (xp[1] + p - 1) % p;
  trimp(xp);
  PolyP g = xp.empty() ? f : gcdp(f, xp, p);
  std::mt19937_64 rng(p);
  split_roots(g, p, rng, out);
  return out;
}

// Norm from Q[x]/(q) of I(x, rho) = sum_k I[k](x) rho^k, as a polynomial in rho mod p.
// Empty when p divides a denominator.
std::optional<PolyP> norm_mod(const UPoly& q, const std::vector<UPoly>& I, u64 p) {
  PolyP qp;
  if (!to_modp(q, p, qp) || static_cast<int>(qp.size()) != q.degree() + 1) return std::nullopt;
  std::vector<PolyP> Ip(I.size());
  for (size_t k = 0; k < I.size(); ++k)
    if (!to_modp(I[k], p, Ip[k])) return std::nullopt;
  const int dq = q.degree(), npts = dq * (static_cast<int>(I.size()) - 1) + 1;
  std::vector<u64> xs, ys;
  for (int t = 0; t < npts; ++t) {
    PolyP It;
    u64 tp = 1;
    for (const auto& c : Ip) {
      if (It.size() < c.size()) It.resize(c.size(), 0);
      for (size_t i = 0; i < c.size(); ++i) It[i] = (It[i] + mulm(tp, c[i], p)) % p;
      tp = mulm(tp, static_cast<u64>(t), p);
    }
    trimp(It);
    // determinant of multiplication by It on 1, x, ..., x^(dq-1)
    std::vector<std::vector<u64>> m(dq, std::vector<u64>(dq, 0));
    PolyP col = It.empty() ? It : remp(It, qp, p);
    for (int j = 0; j < dq; ++j) {
      for (size_t i = 0; i < col.size(); ++i) m[i][j] = col[i];
      col.insert(col.begin(), 0);
      trimp(col);
      if (!col.empty()) col = remp(col, qp, p);
    }
    u64 det = 1;
    for (int c = 0; c < dq && det; ++c) {
      int piv = c;
      while (piv < dq && m[piv][c] == 0) ++piv;
      if (piv == dq) {
        det = 0;
        break;
      }
      if (piv != c) {
        std::swap(m[piv], m[c]);
        det = (p - det) % p;
      }
      det = mulm(det, m[c][c], p);
      u64 iv = invm(m[c][c], p);
      for (int i = c + 1; i < dq; ++i) {
        if (!m[i][c]) continue;
        u64 f = mulm(m[i][c], iv, p);
        for (int j = c; j < dq; ++j) m[i][j] = (m[i][j] + p - mulm(f, m[c][j], p)) % p;
      }
    }
    xs.push_back(static_cast<u64>(t));
    ys.push_back(det);
  }
  // Newton interpolation mod p
  const int n = npts;
  std::vector<u64> c = ys;
  for (int k = 1; k < n; ++k)
    for (int i = n - 1; i >= k; --i) c[i] = mulm((c[i] + p - c[i - 1]) % p, invm((xs[i] + p - xs[i - k]) % p, p), p);
  PolyP r;
  for (int i = n - 1; i >= 0; --i) {
    r = mulp(r, PolyP{(p - xs[i]) % p, 1}, p);
    if (r.empty()) r = {0};
    r[0] = (r[0] + c[i]) % p;
    trimp(r);
  }
  return r;
}

// Most negative integer local exponent at the roots of q, if any exponent is negative.
std::optional<long> min_exponent(const UPoly& q, const std::vector<UPoly>& a) {
  const int r = static_cast<int>(a.size()) - 1;
  std::vector<int> m(r + 1, -1);
  int delta = 0;
  bool first = true;
  for (int i = 0; i <= r; ++i) {
    if (a[i].is_zero()) continue;
    m[i] = order_at(q, a[i]);
    if (first || m[i] - i < delta) delta = m[i] - i;
    first = false;
  }
  // I(x, rho) = sum_k I[k](x) rho^k reduced mod q
  std::vector<UPoly> I;
  for (int i = 0; i <= r; ++i) {
    if (m[i] < 0 || m[i] - i != delta) continue;
    UPoly d = a[i];
    Q f = 1;
    for (int k = 1; k <= m[i]; ++k) {
      d = d.derivative();
      f *= k;
    }
    d = (1 / f) * d % q;
    UPoly fall = falling_theta(i);
    if (static_cast<int>(I.size()) <= fall.degree()) I.resize(fall.degree() + 1);
    for (int k = 0; k <= fall.degree(); ++k) I[k] = (I[k] + fall.coeff(k) * d) % q;
  }
  // The norm of I vanishes exactly at the exponents of the roots of q. Its roots are
  // located mod two primes, then each negative candidate is confirmed over Q.
  std::vector<std::pair<u64, PolyP>> norms;
  for (u64 p = 2147483629ULL; norms.size() < 2 && p > 2147000000ULL; p -= 2) {
    if (powm(2, p - 1, p) != 1 || powm(3, p - 1, p) != 1) continue;
    auto n = norm_mod(q, I, p);
    if (n && !n->empty()) norms.push_back({p, *n});
  }
  if (norms.size() < 2) throw std::runtime_error("no usable prime for the local exponent computation");
  const u64 p1 = norms[0].first, p2 = norms[1].first;
  std::vector<long> cands;
  for (u64 root : roots_mod(norms[0].second, p1)) {
    if (root <= p1 / 2) continue;  // only negative representatives
    long c = -static_cast<long>(p1 - root);
    u64 c2 = (p2 - (static_cast<u64>(-c) % p2)) % p2;
    if (evalp(norms[1].second, c2, p2) == 0) cands.push_back(c);
  }
  std::sort(cands.begin(), cands.end());
  for (long c : cands) {
    UPoly Ic;
    Q cp = 1;
    for (const auto& k : I) {
      Ic += cp * k;
      cp *= c;
    }
    if (Ic.is_zero() || gcd(q, Ic).degree() > 0) return c;
  }
  return std::nullopt;
}

}  // namespace

std::vector<RatFunc> rational_solutions(const DiffOp& L0) {
  if (L0.is_zero() || L0.order() == 0) return {};
  DiffOp L = L0.normalized();
  std::vector<UPoly> a = L.poly_coeffs();
  const int r = L.order();
  UPoly D(1);
  if (a[r].degree() > 0) {
    UPoly S = squarefree_part(a[r]);
    for (const auto& q : split_by_orders(S, a)) {
      auto e = min_exponent(q, a);
      if (e && *e < 0) D *= q.pow(static_cast<unsigned>(-*e));
    }
  }
  ThetaForm tf = theta_form(L);
  if (tf.p.back().degree() <= 0) return {};
  auto inf = integer_roots(tf.p.back());
  if (inf.empty()) return {};
  int degN = D.degree() + static_cast<int>(inf.back().first);
  if (degN < 0) return {};
  UPoly Dd = D.derivative();
  std::vector<UPoly> Dpow{UPoly(1)};
  for (int i = 1; i <= r; ++i) Dpow.push_back(Dpow.back() * D);
  std::vector<UPoly> cols;
  int maxdeg = 0;
  for (int k = 0; k <= degN; ++k) {
    UPoly n = UPoly::monomial(1, k), tot;
    for (int i = 0; i <= r; ++i) {
      if (i > 0) n = n.derivative() * D - Q(i) * n * Dd;
      if (!a[i].is_zero()) tot += a[i] * n * Dpow[r - i];
    }
    maxdeg = std::max(maxdeg, tot.degree());
    cols.push_back(tot);
  }
  QMat m(maxdeg + 1, QRow(degN + 1));
  for (int k = 0; k <= degN; ++k)
    for (int d = 0; d <= cols[k].degree(); ++d) m[d][k] = cols[k].coeff(d);
  std::vector<RatFunc> out;
  for (const auto& v : nullspace(m, degN + 1)) {
    std::vector<Q> nc(v.begin(), v.end());
    out.push_back(RatFunc(UPoly(nc), D));
  }
  return out;
}

// ---------------- exterior square ----------------

ExteriorSquare exterior_square(const DiffOp& L0) {
  if (L0.order() < 2) throw std::invalid_argument("exterior square needs order at least 2");
  DiffOp L = L0.normalized();
  std::vector<UPoly> a = L.poly_coeffs();
  const int n = L.order(), M = n * (n - 1) / 2;
  std::vector<std::vector<int>> idx(n, std::vector<int>(n, -1));
  int cnt = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) idx[i][j] = cnt++;
  const UPoly& an = a[n];
  UPoly and_ = an.derivative();
  std::vector<std::vector<UPoly>> V;
  std::vector<UPoly> cur(M);
  cur[idx[0][1]] = 1;
  V.push_back(cur);
  for (int m = 0; m < M; ++m) {
    std::vector<UPoly> nxt(M);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const UPoly& v = cur[idx[i][j]];
        if (v.is_zero()) continue;
        nxt[idx[i][j]] += an * v.derivative() - Q(m) * and_ * v;
        UPoly av = an * v;
        if (i + 1 < j) nxt[idx[i + 1][j]] += av;
        if (j + 1 < n) {
          nxt[idx[i][j + 1]] += av;
        } else {
          for (int k = 0; k < n; ++k) {
            if (k == i || a[k].is_zero()) continue;
            if (k > i) nxt[idx[i][k]] -= a[k] * v;
            else nxt[idx[k][i]] += a[k] * v;
          }
        }
      }
    cur = nxt;
    V.push_back(cur);
  }
  PMat rows(M, PRow(M + 1));
  for (int c = 0; c <= M; ++c)
    for (int r = 0; r < M; ++r) rows[r][c] = V[c][r];
  auto ns = nullspace(rows, M + 1);
  const auto& lam = ns.at(0);
  std::vector<UPoly> c(M + 1);
  UPoly anp(1);
  for (int k = 0; k <= M; ++k) {
    c[k] = lam[k] * anp;
    anp *= an;
  }
  ExteriorSquare out;
  out.op = DiffOp::from_polys(c).normalized();
  out.degenerate = out.op.order() < M;
  return out;
}

// ---------------- intertwiners ----------------

std::optional<Intertwiner> find_intertwiner(const DiffOp& source0, const DiffOp& target0, int max_deg) {
  if (source0.is_zero() || target0.is_zero()) throw std::invalid_argument("intertwiner search needs nonzero operators");
  DiffOp source = source0.normalized(), target = target0.normalized();
  const int r = source.order(), rt = target.order();
  if (r == 0) return std::nullopt;
  std::vector<UPoly> s = source.poly_coeffs(), t = target.poly_coeffs();
  const UPoly& sr = s[r];
  UPoly srd = sr.derivative();
  // D^k mod source = sum_m N[k][m] D^m / sr^e(k), e(k) = max(0, k - r + 1)
  const int kmax = rt + r - 1;
  std::vector<std::vector<UPoly>> N;
  auto e_of = [r](int k) { return std::max(0, k - r + 1); };
  for (int k = 0; k <= kmax; ++k) {
    std::vector<UPoly> row(r);
    if (k < r) {
      row[k] = 1;
    } else if (k == r) {
      for (int m = 0; m < r; ++m) row[m] = -s[m];
    } else {
      const auto& prev = N[k - 1];
      int e = e_of(k - 1);
      for (int m = 0; m < r; ++m) {
        UPoly v = prev[m].derivative() * sr - Q(e) * prev[m] * srd;
        if (m > 0) v += sr * prev[m - 1];
        v -= prev[r - 1] * s[m];
        row[m] = v;
      }
    }
    N.push_back(row);
  }
  const int E = e_of(kmax);
  std::vector<UPoly> srpow{UPoly(1)};
  for (int i = 1; i <= E; ++i) srpow.push_back(srpow.back() * sr);
  UPoly S = squarefree_part(sr * t[rt]).monic();
  // Common denominator S^e; reduced coefficients are then held to the degree bound.
  constexpr int kMaxDenPower = 3;
  for (int e = 0; e == 0 || (S.degree() > 0 && e <= std::min(kMaxDenPower, max_deg)); ++e) {
    const int per = max_deg + e * S.degree() + 1;
    UPoly den = S.pow(static_cast<unsigned>(e)), dend = den.derivative();
    std::vector<UPoly> denpow{UPoly(1)};
    for (int i = 1; i <= rt + 1; ++i) denpow.push_back(denpow.back() * den);
    // columns (i, j): unknown coefficient of x^j/den D^i
    std::vector<std::vector<UPoly>> cols;
    int maxdeg = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < per; ++j) {
        std::vector<UPoly> fa{UPoly::monomial(1, j)};
        for (int a = 1; a <= rt; ++a) fa.push_back(fa.back().derivative() * den - Q(a) * fa.back() * dend);
        std::vector<UPoly> col(r);
        for (int l = 0; l <= rt; ++l) {
          if (t[l].is_zero()) continue;
          for (int a = 0; a <= l; ++a) {
            UPoly base = Q(binomial(l, a)) * t[l] * fa[a] * denpow[rt - a];
            if (base.is_zero()) continue;
            int k = l - a + i;
            const UPoly& sp = srpow[E - e_of(k)];
            for (int m = 0; m < r; ++m)
              if (!N[k][m].is_zero()) col[m] += base * N[k][m] * sp;
          }
        }
        for (const auto& p : col) maxdeg = std::max(maxdeg, p.degree());
        cols.push_back(col);
      }
    const int ncols = r * per;
    QMat m;
    for (int mm = 0; mm < r; ++mm)
      for (int d = 0; d <= maxdeg; ++d) {
        QRow row(ncols);
        bool any = false;
        for (int c = 0; c < ncols; ++c) {
          row[c] = cols[c][mm].coeff(d);
          any = any || row[c] != 0;
        }
        if (any) m.push_back(row);
      }
    for (const auto& v : nullspace(m, ncols)) {
      std::vector<RatFunc> rc(r);
      bool within = true;
      for (int i = 0; i < r; ++i) {
        std::vector<Q> nc(per);
        for (int j = 0; j < per; ++j) nc[j] = Q(v[i * per + j]);
        rc[i] = RatFunc(UPoly(nc), den);
        within = within && rc[i].num().degree() <= max_deg && rc[i].den().degree() <= max_deg;
      }
      if (!within) continue;
      Intertwiner out;
      out.R = DiffOp(rc);
      auto [S2, rem] = right_divide(target * out.R, source);
      if (!rem.is_zero()) throw std::logic_error("intertwiner fails the operator identity");
      out.S = S2;
      return out;
    }
  }
  return std::nullopt;
}

std::optional<Intertwiner> selfdual_report(const DiffOp& L, int max_deg) { return find_intertwiner(adjoint(L), L, max_deg); }

}  // namespace dg
