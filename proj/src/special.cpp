#include "dg/special.hpp"

#include <algorithm>

namespace dg {

namespace {

bool nonpositive_integer(const Q& q) { return q.get_den() == 1 && q <= 0; }

// Coefficients of a series in t = scale * x^power, spread into x.
UniSeries spread(const std::vector<Q>& t, const Q& scale, int power, int N) {
  UniSeries s = UniSeries::zero(N);
  Q sp = 1;
  for (int m = 0; m * power <= N && m < static_cast<int>(t.size()); ++m) {
    s[m * power] = t[m] * sp;
    sp *= scale;
  }
  return s;
}

}  // namespace

UniSeries pfq_series(const PFQSpec& spec, int N) {
  if (spec.power < 1) throw std::invalid_argument("pFq power must be positive");
  for (const auto& b : spec.lower)
    if (nonpositive_integer(b)) throw Error("InvalidParameter", "lower parameter " + to_string(b) + " is a non-positive integer");
  const int M = N / spec.power;
  std::vector<Q> t(M + 1);
  t[0] = 1;
  for (int m = 0; m < M; ++m) {
    Q r = 1;
    for (const auto& a : spec.upper) r *= a + m;
    for (const auto& b : spec.lower) r /= b + m;
    t[m + 1] = t[m] * r / (m + 1);
  }
  return spread(t, spec.scale, spec.power, N);
}

DiffOp pfq_operator(const PFQSpec& spec) {
  if (spec.power < 1) throw std::invalid_argument("pFq power must be positive");
  UPoly th = UPoly::x() * UPoly(Q(1, spec.power));
  UPoly p0 = th, p1(Q(-spec.scale));
  for (const auto& b : spec.lower) p0 = p0 * (th + UPoly(b - 1));
  for (const auto& a : spec.upper) p1 = p1 * (th + UPoly(a));
  std::vector<UPoly> p(spec.power + 1, UPoly());
  p[0] = p0;
  p[spec.power] = p[spec.power] + p1;
  return from_theta(p).normalized();
}

UniSeries heun_series(const HeunSpec& h, int N) {
  if (h.power < 1) throw std::invalid_argument("HeunG power must be positive");
  if (nonpositive_integer(h.gamma)) throw Error("InvalidParameter", "gamma is a non-positive integer");
  if (h.a == 0) throw Error("InvalidParameter", "singular point a must be nonzero");
  const Q eps = h.alpha + h.beta + 1 - h.gamma - h.delta;
  const int M = N / h.power;
  std::vector<Q> c(M + 1);
  c[0] = 1;
  // a (n+1)(n+gamma) c_{n+1} = (Q_n + q) c_n - (n-1+alpha)(n-1+beta) c_{n-1}
  for (int n = 0; n < M; ++n) {
    Q Qn = Q(n) * ((n - 1 + h.gamma) * (1 + h.a) + h.a * h.delta + eps);
    Q rhs = (Qn + h.q) * c[n];
    if (n > 0) rhs -= (n - 1 + h.alpha) * (n - 1 + h.beta) * c[n - 1];
    c[n + 1] = rhs / (h.a * (n + 1) * (n + h.gamma));
  }
  return spread(c, h.scale, h.power, N);
}

UniSeries pullbacked_2f1(const RatFunc& base, const Q& exponent, const PFQSpec& spec, const RatFunc& pullback, int N) {
  if (spec.upper.size() != 2 || spec.lower.size() != 1) throw std::invalid_argument("pullbacked_2f1 expects a 2F1 specification");
  UniSeries pb = UniSeries::from_ratfunc(pullback, N);
  if (pb[0] != 0) throw Error("IllDefinedComposition", "pullback must vanish at 0");
  UniSeries f = pfq_series(spec, N).compose(pb);
  UniSeries pre = UniSeries::from_ratfunc(base, N);
  if (pre[0] != 1) throw Error("UnsupportedConstantTerm", "prefactor base must have constant term 1");
  return pre.pow(exponent) * f;
}

UniSeries eval_minpoly(const MPoly& minpoly, const std::string& s_var, const std::string& x_var, const UniSeries& s) {
  int si = minpoly.var_index(s_var), xi = minpoly.var_index(x_var);
  if (si < 0 || xi < 0) throw std::invalid_argument("minimal polynomial must be in " + s_var + " and " + x_var);
  if (minpoly.nvars() != 2) throw std::invalid_argument("minimal polynomial must be bivariate");
  const int N = s.bound();
  std::vector<UniSeries> spow{UniSeries::from_poly(UPoly(1), N)};
  UniSeries acc = UniSeries::zero(N);
  for (const auto& [e, c] : minpoly.terms()) {
    while (static_cast<int>(spow.size()) <= e[si]) spow.push_back(spow.back() * s);
    if (e[xi] > N) continue;
    UniSeries t = spow[e[si]].shift(e[xi]).truncate(N);
    acc = acc + c * t;
  }
  return acc;
}

UniSeries algebraic_root_series(const MPoly& minpoly, const std::string& s_var, const std::string& x_var, const Q& seed, int N) {
  int si = minpoly.var_index(s_var);
  if (si < 0) throw std::invalid_argument("unknown variable " + s_var);
  MPoly ds = minpoly.derivative(si);
  UniSeries s = UniSeries::zero(N);
  s[0] = seed;
  if (eval_minpoly(minpoly, s_var, x_var, s.truncate(0))[0] != 0) throw Error("SingularBranch", "seed is not a root at x = 0");
  if (eval_minpoly(ds, s_var, x_var, s.truncate(0))[0] == 0) throw Error("SingularBranch", "branch is not simple at x = 0");
  for (int prec = 1; prec < N + 1;) {
    prec = std::min(2 * prec, N + 1);
    UniSeries cur = s.truncate(prec - 1);
    UniSeries f = eval_minpoly(minpoly, s_var, x_var, cur), fd = eval_minpoly(ds, s_var, x_var, cur);
    UniSeries step = f / fd;
    for (int i = 0; i < prec; ++i) s[i] = cur[i] - step[i];
  }
  if (!eval_minpoly(minpoly, s_var, x_var, s).is_zero()) throw std::logic_error("Newton lifting failed");
  return s;
}

namespace {

UniSeries elementary(const std::string& f, const UniSeries& u, int N) {
  const Q c0 = u[0];
  if (f == "sqrt") {
    Q c;
    if (c0 == 0 || !rational_power(c0, Q(1, 2), c)) throw Error("UnsupportedConstantTerm", "sqrt needs a rational square root at 0");
    return c * (Q(1) / c0 * u).pow(Q(1, 2));
  }
  if (f == "log") {
    if (c0 != 1) throw Error("UnsupportedConstantTerm", "log needs an argument with constant term 1");
    UniSeries d = u.derivative() / u;
    UniSeries out = UniSeries::zero(N);
    for (int i = 1; i <= N; ++i) out[i] = d.coeff(i - 1) / i;
    return out;
  }
  if (c0 != 0) throw Error("UnsupportedConstantTerm", f + " needs an argument vanishing at 0");
  UniSeries g = UniSeries::zero(N);
  Q fact = 1;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) fact *= k;
    Q c;
    if (f == "exp") c = 1 / fact;
    else if (f == "cos") c = k % 2 ? Q(0) : Q(k % 4 == 0 ? 1 : -1) / fact;
    else if (f == "sin") c = k % 2 ? Q(k % 4 == 1 ? 1 : -1) / fact : Q(0);
    else throw Error("SemanticError", "unknown function " + f);
    g[k] = c;
  }
  return g.compose(u);
}

}  // namespace

UniSeries series_of_expr(const ExprPtr& e, const std::string& var, int N) {
  switch (e->kind) {
    case Expr::Num: {
      UniSeries s = UniSeries::zero(N);
      s[0] = e->value;
      return s;
    }
    case Expr::Var: {
      if (e->name != var) throw Error("SemanticError", "unexpected variable " + e->name);
      UniSeries s = UniSeries::zero(N);
      if (N >= 1) s[1] = 1;
      return s;
    }
    case Expr::Add: return series_of_expr(e->kids[0], var, N) + series_of_expr(e->kids[1], var, N);
    case Expr::Sub: return series_of_expr(e->kids[0], var, N) - series_of_expr(e->kids[1], var, N);
    case Expr::Mul: return series_of_expr(e->kids[0], var, N) * series_of_expr(e->kids[1], var, N);
    case Expr::Div: {
      UniSeries d = series_of_expr(e->kids[1], var, N);
      if (d[0] == 0) throw Error("NoMultiTaylorExpansion", "division by a series vanishing at 0");
      return series_of_expr(e->kids[0], var, N) / d;
    }
    case Expr::Neg: return -series_of_expr(e->kids[0], var, N);
    case Expr::Pow: {
      Q r = eval_constant(e->kids[1]);
      UniSeries b = series_of_expr(e->kids[0], var, N);
      if (r.get_den() == 1 && r >= 0) {
        UniSeries out = UniSeries::zero(N);
        out[0] = 1;
        for (long k = 0; k < r.get_num().get_si(); ++k) out = out * b;
        return out;
      }
      if (b[0] == 0) throw Error("UnsupportedConstantTerm", "negative or fractional power of a series vanishing at 0");
      Q c;
      if (!rational_power(b[0], r, c)) throw Error("UnsupportedConstantTerm", "constant term has no rational power");
      return c * (Q(1) / b[0] * b).pow(r);
    }
    case Expr::Call: {
      if (e->kids.size() != 1) throw Error("SemanticError", e->name + " takes one argument");
      return elementary(e->name, series_of_expr(e->kids[0], var, N), N);
    }
  }
  throw std::logic_error("unhandled expression kind");
}

}  // namespace dg
