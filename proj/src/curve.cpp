#include "dg/curve.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dg/linalg.hpp"

namespace dg {

namespace {

const std::string PVAR = "p";

using RP = std::vector<RatFunc>;  // polynomial in one variable over Q(p)

void trim(RP& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}
int deg(const RP& a) { return static_cast<int>(a.size()) - 1; }

RP add(RP a, const RP& b, const RatFunc& s = RatFunc(1)) {
  if (a.size() < b.size()) a.resize(b.size(), RatFunc(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
  trim(a);
  return a;
}

RP mul(const RP& a, const RP& b) {
  if (a.empty() || b.empty()) return {};
  RP r(a.size() + b.size() - 1, RatFunc(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

RP deriv(const RP& a) {
  RP r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(RatFunc(static_cast<long>(i)) * a[i]);
  trim(r);
  return r;
}

std::pair<RP, RP> divmod(RP a, const RP& b) {
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  RP q;
  if (deg(a) >= deg(b)) q.assign(deg(a) - deg(b) + 1, RatFunc(0));
  RatFunc inv = b.back().inverse();
  while (!a.empty() && deg(a) >= deg(b)) {
    int s = deg(a) - deg(b);
    RatFunc c = a.back() * inv;
    q[s] = c;
    for (size_t i = 0; i < b.size(); ++i) a[s + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

RP monic(RP a) {
  if (a.empty()) return a;
  RatFunc inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

RP gcd(RP a, RP b) {
  while (!b.empty()) {
    RP r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

RP exact_div(const RP& a, const RP& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw std::logic_error("inexact polynomial division over Q(p)");
  return q;
}

// Squarefree factors a_1, a_2, ... of monic f (Yun), f = prod a_i^i.
std::vector<RP> yun(const RP& f) {
  std::vector<RP> out;
  RP fp = deriv(f);
  RP b = gcd(f, fp);
  RP c = exact_div(f, b), d = add(exact_div(fp, b), deriv(c), RatFunc(-1));
  while (deg(c) > 0) {
    RP a = gcd(c, d);
    out.push_back(a);
    c = exact_div(c, a);
    d = add(exact_div(d, a), deriv(c), RatFunc(-1));
  }
  return out;
}

UPoly eval_upoly(const MPoly& f, const std::vector<UPoly>& vals) {
  UPoly r;
  for (const auto& [e, c] : f.terms()) {
    UPoly t(c);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= vals[i].pow(e[i]);
    r += t;
  }
  return r;
}

int index_of(const std::array<int, 3>& m) {
  const auto& ms = cubic_monomials();
  return static_cast<int>(std::find(ms.begin(), ms.end(), m) - ms.begin());
}

// Weight-zero polynomial of degree d in the cubic's coefficients annihilated by
// X d/dY and Y d/dW; unique up to scale for d = 4 and d = 6.
MPoly find_invariant(int d) {
  const auto& ms = cubic_monomials();
  std::vector<std::string> cv;
  for (int n = 0; n < 10; ++n) cv.push_back("c" + std::to_string(n));

  std::vector<MPoly> basis;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start, std::array<int, 3> w) -> void {
    if (static_cast<int>(pick.size()) == d) {
      if (w[0] == d && w[1] == d && w[2] == d) {
        Exps e(10, 0);
        for (int n : pick) ++e[n];
        basis.push_back(MPoly::monomial(cv, e));
      }
      return;
    }
    for (int n = start; n < 10; ++n) {
      auto w2 = w;
      for (int t = 0; t < 3; ++t) w2[t] += ms[n][t];
      if (w2[0] > d || w2[1] > d || w2[2] > d) continue;
      pick.push_back(n);
      self(self, n, w2);
      pick.pop_back();
    }
  };
  rec(rec, 0, {0, 0, 0});

  // images of the coefficients under the two derivations
  std::vector<MPoly> dxy(10, MPoly(cv)), dyw(10, MPoly(cv));
  for (int n = 0; n < 10; ++n) {
    auto [i, j, k] = ms[n];
    if (i >= 1) dxy[n] = MPoly::var(cv, cv[index_of({i - 1, j + 1, k})]) * Q(j + 1);
    if (j >= 1) dyw[n] = MPoly::var(cv, cv[index_of({i, j - 1, k + 1})]) * Q(k + 1);
  }
  std::map<std::pair<int, Exps>, int> row_of;
  QMat rows;
  for (size_t b = 0; b < basis.size(); ++b) {
    for (int which = 0; which < 2; ++which) {
      MPoly img(cv);
      for (int n = 0; n < 10; ++n) {
        const MPoly& dn = which ? dyw[n] : dxy[n];
        if (dn.is_zero()) continue;
        MPoly part = basis[b].derivative(n);
        if (!part.is_zero()) img += dn * part;
      }
      for (const auto& [e, c] : img.terms()) {
        auto key = std::make_pair(which, e);
        auto it = row_of.find(key);
        if (it == row_of.end()) {
          it = row_of.emplace(key, static_cast<int>(rows.size())).first;
          rows.emplace_back(basis.size(), Q(0));
        }
        rows[it->second][b] += c;
      }
    }
  }
  auto ns = nullspace(rows, static_cast<int>(basis.size()));
  if (ns.size() != 1) throw std::logic_error("cubic invariant space of degree " + std::to_string(d) + " is not one-dimensional");
  MPoly inv(cv);
  for (size_t b = 0; b < basis.size(); ++b)
    if (ns[0][b] != 0) inv += basis[b] * Q(ns[0][b]);
  return inv;
}

std::vector<UPoly> weierstrass(const Q& A, const Q& B) {
  std::vector<UPoly> c(10, UPoly());
  c[index_of({0, 2, 1})] = UPoly(Q(1));
  c[index_of({3, 0, 0})] = UPoly(Q(-1));
  c[index_of({1, 0, 2})] = UPoly(-A);
  c[index_of({0, 0, 3})] = UPoly(-B);
  return c;
}

MPoly calibrated(int d) {
  MPoly f = find_invariant(d);
  // S is proportional to A and T to B on the Weierstrass family
  UPoly on = eval_upoly(f, d == 4 ? weierstrass(1, 0) : weierstrass(0, 1));
  UPoly off = eval_upoly(f, d == 4 ? weierstrass(0, 1) : weierstrass(1, 0));
  if (!off.is_zero() || !on.is_constant() || on.is_zero()) throw std::logic_error("cubic invariant calibration failed");
  return f * (Q(1) / on.coeff(0));
}

HauptResult finish(const UPoly& num, const UPoly& den, HauptRoute route) {
  if (den.is_zero()) throw Error("SingularCurve", "the curve is singular for every p");
  if (num.is_zero()) throw Error("UndefinedHauptmodul", "j = 0 identically, so H = 1728/j is undefined");
  HauptResult r;
  r.j = RatFunc(num, den);
  r.H = RatFunc(1728) / r.j;
  r.route = route;
  if (r.j * r.H != RatFunc(1728)) throw std::logic_error("j * H != 1728");
  return r;
}

int curve_total_degree(const PlaneCurveQP& C) {
  int t = 0;
  for (const auto& [e, c] : C.poly.terms()) t = std::max(t, e[0] + e[1]);
  return t;
}

}  // namespace

const std::vector<std::array<int, 3>>& cubic_monomials() {
  static const std::vector<std::array<int, 3>> ms = [] {
    std::vector<std::array<int, 3>> v;
    for (int i = 3; i >= 0; --i)
      for (int j = 3 - i; j >= 0; --j) v.push_back({i, j, 3 - i - j});
    return v;
  }();
  return ms;
}

const MPoly& aronhold_S() {
  static const MPoly s = calibrated(4);
  return s;
}

const MPoly& aronhold_T() {
  static const MPoly t = calibrated(6);
  return t;
}

namespace {

std::string ascending_str(const UPoly& g, const std::string& var) {
  std::string out;
  for (int i = 0; i <= g.degree(); ++i) {
    Q c = g.coeff(i);
    if (c == 0) continue;
    bool neg = c < 0;
    Q a = neg ? Q(-c) : c;
    if (!out.empty() || neg) out += neg ? "-" : "+";
    if (i == 0 || a != 1) out += a.get_str();
    if (i > 0) out += (i == 0 || a != 1 ? "*" : "") + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

// Factors of a nonzero polynomial: constant, power of var, (factor, multiplicity) list.
struct Factored {
  Q c = 1;
  int k = 0;
  std::vector<std::pair<UPoly, int>> parts;
};

Factored factor_poly(const UPoly& P) {
  Factored f;
  f.k = P.valuation();
  std::vector<Q> rest(P.coeffs().begin() + f.k, P.coeffs().end());
  UPoly R(rest);
  f.c = R.coeff(0);
  if (R.degree() > 0) {
    auto sq = squarefree_decomposition(R);
    for (size_t i = 0; i < sq.size(); ++i) {
      if (sq[i].degree() <= 0) continue;
      UPoly g = sq[i].primitive();
      if (g.coeff(0) < 0) g = -g;
      int m = static_cast<int>(i) + 1;
      Q g0 = g.coeff(0);
      for (int t = 0; t < m; ++t) f.c /= g0;
      f.parts.push_back({g, m});
    }
  }
  std::stable_sort(f.parts.begin(), f.parts.end(), [](const auto& a, const auto& b) { return a.first.degree() < b.first.degree(); });
  return f;
}

std::string product_str(const Factored& f, const std::string& var, bool with_const, int& count) {
  std::string out;
  auto add = [&](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
    ++count;
  };
  if (with_const && f.c != 1) add(f.c.get_str());
  if (f.k > 0) add(var + (f.k > 1 ? "^" + std::to_string(f.k) : ""));
  for (const auto& [g, m] : f.parts) add("(" + ascending_str(g, var) + ")" + (m > 1 ? "^" + std::to_string(m) : ""));
  return out;
}

}  // namespace

std::string factored_str(const RatFunc& f, const std::string& var) {
  if (f.is_zero()) return "0";
  Factored n = factor_poly(f.num()), d = factor_poly(f.den());
  n.c /= d.c;
  int cn = 0, cd = 0;
  std::string top;
  if (n.c == -1 && (n.k > 0 || !n.parts.empty())) {
    n.c = 1;
    top = "-" + product_str(n, var, true, cn);
  } else {
    top = product_str(n, var, true, cn);
  }
  if (top.empty()) top = "1";
  std::string bottom = product_str(d, var, false, cd);
  if (bottom.empty()) return top;
  return top + "/" + (cd > 1 ? "(" + bottom + ")" : bottom);
}

std::string route_name(HauptRoute r) { return r == HauptRoute::Cubic ? "cubic" : "quadratic-fiber"; }

PlaneCurveQP eliminate_diag_curve(const MPoly& den) {
  if (den.vars().empty()) throw Error("InvalidInput", "no variables");
  return eliminate_diag_curve(den, den.vars(), den.vars().back());
}

PlaneCurveQP eliminate_diag_curve(const MPoly& den, const std::vector<std::string>& diag_vars, const std::string& elim) {
  const MPoly& Qd = den;
  const auto& vars = Qd.vars();
  if (Qd.var_index(PVAR) >= 0) throw Error("InvalidInput", "the variable name p is reserved for the diagonal parameter");
  int e = Qd.var_index(elim);
  if (e < 0 || std::find(diag_vars.begin(), diag_vars.end(), elim) == diag_vars.end())
    throw Error("InvalidInput", "eliminated variable " + elim + " must be a diagonal variable of Q");
  if (!Qd.depends_on(e)) throw Error("NotDependentOnEliminated", "Q does not involve " + elim);
  std::vector<int> curve;
  for (int i = 0; i < Qd.nvars(); ++i)
    if (i != e) curve.push_back(i);
  if (curve.size() > 2) throw Error("UnsupportedGenusShape", "elimination leaves a surface in " + std::to_string(curve.size()) + " variables");
  std::vector<bool> is_diag(Qd.nvars(), false);
  for (const auto& d : diag_vars) {
    int i = Qd.var_index(d);
    if (i < 0) throw Error("InvalidInput", "diagonal variable " + d + " does not occur in Q's variable list");
    is_diag[i] = true;
  }

  PlaneCurveQP C;
  C.u = curve.size() > 0 ? vars[curve[0]] : "_u";
  C.v = curve.size() > 1 ? vars[curve[1]] : "_v";
  std::vector<std::string> cv{C.u, C.v, PVAR};
  int dz = Qd.degree(e);
  MPoly out(cv);
  for (const auto& [ex, c] : Qd.terms()) {
    Exps ne(3, 0);
    int k = ex[e];
    ne[2] = k;
    for (size_t s = 0; s < curve.size(); ++s) {
      int i = curve[s];
      ne[s] = ex[i] + (is_diag[i] ? dz - k : 0);
    }
    out.add_term(ne, c);
  }

  // monomial factor in (u, v)
  Exps lo{1 << 30, 1 << 30, 0};
  for (const auto& [ex, c] : out.terms())
    for (int s = 0; s < 2; ++s) lo[s] = std::min(lo[s], ex[s]);
  // content in Q(p)
  std::map<std::pair<int, int>, UPoly> by_uv;
  for (const auto& [ex, c] : out.terms()) by_uv[{ex[0], ex[1]}] += UPoly::monomial(c, ex[2]);
  UPoly g;
  for (const auto& [k, f] : by_uv) g = gcd(g, f);
  MPoly reduced(cv);
  for (const auto& [k, f] : by_uv) {
    UPoly q = f / g;
    for (int i = 0; i <= q.degree(); ++i)
      if (q.coeff(i) != 0) reduced.add_term({k.first - lo[0], k.second - lo[1], i}, q.coeff(i));
  }
  C.degenerate = !out.depends_on(0) && !out.depends_on(1);
  C.poly = C.degenerate ? out : reduced * (Q(1) / reduced.content());
  return C;
}

HauptResult j_from_cubic(const PlaneCurveQP& C) {
  if (curve_total_degree(C) != 3) throw Error("WrongDegree", "cubic route needs total degree 3, found " + std::to_string(curve_total_degree(C)));
  std::vector<UPoly> c(10);
  for (const auto& [ex, q] : C.poly.terms()) c[index_of({ex[0], ex[1], 3 - ex[0] - ex[1]})] += UPoly::monomial(q, ex[2]);
  UPoly S = eval_upoly(aronhold_S(), c), T = eval_upoly(aronhold_T(), c);
  UPoly S3 = S * S * S;
  return finish(Q(6912) * S3, Q(4) * S3 + Q(27) * T * T, HauptRoute::Cubic);
}

HauptResult j_from_quadratic_fiber(const PlaneCurveQP& C, const std::string& fiber_var) {
  int fv = fiber_var == C.u ? 0 : fiber_var == C.v ? 1 : -1;
  if (fv < 0) throw Error("InvalidInput", "fiber variable " + fiber_var + " is not a curve variable");
  if (C.poly.degree(fv) != 2) throw Error("WrongDegree", "curve has degree " + std::to_string(C.poly.degree(fv)) + " in " + fiber_var);
  int ov = 1 - fv;
  std::vector<RP> abc(3);  // coefficients of fiber^2, fiber^1, fiber^0
  for (const auto& [ex, q] : C.poly.terms()) {
    RP& t = abc[2 - ex[fv]];
    if (static_cast<int>(t.size()) <= ex[ov]) t.resize(ex[ov] + 1, RatFunc(0));
    t[ex[ov]] += RatFunc(UPoly::monomial(q, ex[2]));
  }
  for (auto& t : abc) trim(t);
  RP f = add(mul(abc[1], abc[1]), mul(abc[0], abc[2]), RatFunc(-4));
  if (f.empty()) throw Error("RationalCurve", "the curve is reducible over Q(p)(" + C.poly.vars()[ov] + ")");
  RatFunc lead = f.back();
  RP g{lead};
  auto parts = yun(monic(f));
  for (size_t i = 0; i < parts.size(); i += 2) g = mul(g, parts[i]);
  int dg = deg(g);
  if (dg <= 2) throw Error("RationalCurve", "square-free part of the fiber discriminant has degree " + std::to_string(dg));
  if (dg > 4) throw Error("UnsupportedGenusShape", "square-free part of the fiber discriminant has degree " + std::to_string(dg));
  g.resize(5, RatFunc(0));
  const RatFunc &e = g[0], &d = g[1], &c = g[2], &b = g[3], &a = g[4];
  RatFunc I = RatFunc(12) * a * e - RatFunc(3) * b * d + c * c;
  RatFunc J = RatFunc(72) * a * c * e + RatFunc(9) * b * c * d - RatFunc(27) * a * d * d - RatFunc(27) * e * b * b - RatFunc(2) * c * c * c;
  RatFunc I3 = I * I * I, disc = RatFunc(4) * I3 - J * J;
  if (disc.is_zero()) throw Error("SingularCurve", "the curve is singular for every p");
  RatFunc j = RatFunc(6912) * I3 / disc;
  return finish(j.num(), j.den(), HauptRoute::QuadraticFiber);
}

HauptResult hauptmodul_of_curve(const PlaneCurveQP& C) {
  if (C.degenerate) throw Error("RationalCurve", "the eliminated curve does not involve the curve variables");
  if (C.u.starts_with("_") || C.v.starts_with("_")) throw Error("RationalCurve", "elimination leaves a curve in one variable");
  int t = curve_total_degree(C), du = C.poly.degree(0), dv = C.poly.degree(1);
  if (t <= 2) throw Error("RationalCurve", "conic or line (total degree " + std::to_string(t) + ")");
  if (t == 3) return j_from_cubic(C);
  if (dv == 2) return j_from_quadratic_fiber(C, C.v);
  if (du == 2) return j_from_quadratic_fiber(C, C.u);
  throw Error("UnsupportedGenusShape", "curve of total degree " + std::to_string(t) + " with degrees " + std::to_string(du) + " in " + C.u + " and " +
                                           std::to_string(dv) + " in " + C.v + "; neither the cubic nor the quadratic-fiber route applies");
}

HauptResult hauptmodul_of_denominator(const MPoly& den) { return hauptmodul_of_curve(eliminate_diag_curve(den)); }

}  // namespace dg
