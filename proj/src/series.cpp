#include "dg/series.hpp"

#include <algorithm>

#include "dg/expr.hpp"

namespace dg {

// ---------------- UniSeries ----------------

UniSeries UniSeries::from_poly(const UPoly& p, int bound, std::string var) {
  std::vector<Q> c(bound + 1);
  for (int i = 0; i <= std::min(bound, p.degree()); ++i) c[i] = p.coeff(i);
  return UniSeries(std::move(c), std::move(var));
}

UniSeries UniSeries::from_ratfunc(const RatFunc& f, int bound, std::string var) {
  UniSeries n = from_poly(f.num(), bound, var), d = from_poly(f.den(), bound, var);
  return n / d;
}

int UniSeries::valuation() const {
  for (int i = 0; i <= bound(); ++i)
    if (c_[i] != 0) return i;
  return -1;
}

UniSeries UniSeries::truncate(int b) const {
  UniSeries r = *this;
  r.c_.resize(std::min(b, bound()) + 1);
  return r;
}

UniSeries UniSeries::operator-() const {
  UniSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UniSeries operator+(const UniSeries& a, const UniSeries& b) {
  UniSeries r = a.truncate(std::min(a.bound(), b.bound()));
  for (int i = 0; i <= r.bound(); ++i) r.c_[i] += b.c_[i];
  return r;
}

UniSeries operator-(const UniSeries& a, const UniSeries& b) { return a + (-b); }

UniSeries operator*(const Q& s, const UniSeries& a) {
  UniSeries r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

UniSeries operator*(const UniSeries& a, const UniSeries& b) {
  int n = std::min(a.bound(), b.bound());
  UniSeries r = UniSeries::zero(n, a.var_);
  for (int i = 0; i <= n; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j)
      if (b.c_[j] != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return r;
}

UniSeries operator/(const UniSeries& a, const UniSeries& b) {
  if (b.bound() < 0 || b.c_[0] == 0) throw Error("IllDefinedComposition", "series division by a series with zero constant term");
  int n = std::min(a.bound(), b.bound());
  UniSeries r = UniSeries::zero(n, a.var_);
  Q inv = 1 / b.c_[0];
  for (int i = 0; i <= n; ++i) {
    Q acc = a.c_[i];
    for (int j = 1; j <= i; ++j)
      if (b.c_[j] != 0) acc -= b.c_[j] * r.c_[i - j];
    r.c_[i] = acc * inv;
  }
  return r;
}

bool operator==(const UniSeries& a, const UniSeries& b) {
  int n = std::min(a.bound(), b.bound());
  for (int i = 0; i <= n; ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

UniSeries UniSeries::derivative() const {
  if (bound() <= 0) return UniSeries(std::vector<Q>{}, var_);
  std::vector<Q> c(bound());
  for (int i = 1; i <= bound(); ++i) c[i - 1] = c_[i] * i;
  return UniSeries(std::move(c), var_);
}

UniSeries UniSeries::shift(int k) const {
  if (k >= 0) {
    std::vector<Q> c(k, Q(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return UniSeries(std::move(c), var_);
  }
  for (int i = 0; i < -k && i <= bound(); ++i)
    if (c_[i] != 0) throw Error("IllDefinedComposition", "negative shift of a series with low-order terms");
  if (-k > bound()) return UniSeries(std::vector<Q>{}, var_);
  return UniSeries(std::vector<Q>(c_.begin() - k, c_.end()), var_);
}

UniSeries UniSeries::substitute_power(int k) const {
  int n = bound() * k;
  UniSeries r = zero(n, var_);
  for (int i = 0; i <= bound(); ++i) r.c_[i * k] = c_[i];
  return r;
}

UniSeries UniSeries::compose(const UniSeries& inner) const {
  if (inner.bound() >= 0 && inner.c_[0] != 0) throw Error("IllDefinedComposition", "inner series must vanish at 0");
  int n = std::min(bound(), inner.bound());
  UniSeries r = zero(n, inner.var_);
  UniSeries in = inner.truncate(n);
  for (int k = n; k >= 0; --k) {
    r = r * in;
    r.c_[0] += c_[k];
  }
  return r;
}

UniSeries UniSeries::pow(const Q& r) const {
  if (bound() < 0 || c_[0] != 1) throw Error("UnsupportedConstantTerm", "series power needs constant term 1");
  int n = bound();
  UniSeries s = zero(n, var_);
  s.c_[0] = 1;
  Q r1 = r + 1;
  for (int e = 1; e <= n; ++e) {
    Q acc = 0;
    for (int f = 1; f <= e; ++f)
      if (c_[f] != 0) acc += c_[f] * (r1 * f - e) * s.c_[e - f];
    s.c_[e] = acc / e;
  }
  return s;
}

UniSeries UniSeries::inverse() const {
  UniSeries one = zero(bound(), var_);
  one.c_[0] = 1;
  return one / *this;
}

std::string UniSeries::str(int max_terms) const {
  std::string s;
  int shown = 0;
  for (int i = 0; i <= bound(); ++i) {
    if (c_[i] == 0) continue;
    if (max_terms >= 0 && shown++ >= max_terms) break;
    bool neg = c_[i] < 0;
    std::string mag = to_string(Q(abs(c_[i])));
    s += s.empty() ? (neg ? "-" : "") : (neg ? "-" : "+");
    if (i == 0) s += mag;
    else {
      if (mag != "1") s += mag + "*";
      s += var_ + (i > 1 ? "^" + std::to_string(i) : "");
    }
  }
  return (s.empty() ? "0" : s) + "+O(" + var_ + "^" + std::to_string(bound() + 1) + ")";
}

// ---------------- TruncSeries ----------------

TruncSeries::TruncSeries(std::vector<std::string> vars, int N) : vars_(std::move(vars)), n_(N) {
  if (vars_.size() > 4) throw std::invalid_argument("at most 4 series variables are supported");
  stride_.assign(vars_.size(), 1);
  size_t total = 1;
  for (size_t i = vars_.size(); i-- > 0;) {
    stride_[i] = total;
    total *= static_cast<size_t>(N + 1);
  }
  data_.assign(total, Q(0));
}

TruncSeries TruncSeries::from_poly(const MPoly& p, int N) {
  TruncSeries s(p.vars(), N);
  for (const auto& [e, c] : p.terms())
    if (s.in_box(e)) s.data_[s.index(e)] = c;
  return s;
}

size_t TruncSeries::index(const Exps& e) const {
  size_t idx = 0;
  for (size_t i = 0; i < e.size(); ++i) idx += stride_[i] * static_cast<size_t>(e[i]);
  return idx;
}

Exps TruncSeries::exps(size_t idx) const {
  Exps e(vars_.size());
  for (size_t i = 0; i < e.size(); ++i) {
    e[i] = static_cast<int>(idx / stride_[i]);
    idx %= stride_[i];
  }
  return e;
}

bool TruncSeries::in_box(const Exps& e) const {
  return std::all_of(e.begin(), e.end(), [&](int k) { return k >= 0 && k <= n_; });
}

size_t TruncSeries::nonzeros() const {
  return static_cast<size_t>(std::count_if(data_.begin(), data_.end(), [](const Q& q) { return q != 0; }));
}

void TruncSeries::check_same(const TruncSeries& o) const {
  if (vars_ != o.vars_ || n_ != o.n_) throw std::invalid_argument("series shape mismatch");
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (auto& c : r.data_) c = -c;
  return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  a.check_same(b);
  TruncSeries r = a;
  for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const Q& s, const TruncSeries& a) {
  TruncSeries r = a;
  for (auto& c : r.data_) c *= s;
  return r;
}

namespace {

struct Entry {
  size_t idx;
  Exps e;
  const Q* c;
};

std::vector<Entry> support(const TruncSeries& s) {
  std::vector<Entry> out;
  for (size_t i = 0; i < s.size(); ++i)
    if (s.data()[i] != 0) out.push_back({i, s.exps(i), &s.data()[i]});
  return out;
}

}  // namespace

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  a.check_same(b);
  TruncSeries r(a.vars_, a.n_);
  auto sa = support(a), sb = support(b);
  Exps e(a.vars_.size());
  for (const auto& x : sa)
    for (const auto& y : sb) {
      bool ok = true;
      for (size_t i = 0; i < e.size() && ok; ++i) ok = x.e[i] + y.e[i] <= a.n_;
      if (!ok) continue;
      r.data_[x.idx + y.idx] += *x.c * *y.c;
    }
  return r;
}

TruncSeries operator*(const TruncSeries& a, const MPoly& p) {
  if (p.vars() != a.vars_) throw std::invalid_argument("series/polynomial variable mismatch");
  TruncSeries r(a.vars_, a.n_);
  auto sa = support(a);
  for (const auto& [f, c] : p.terms()) {
    if (!a.in_box(f)) continue;
    size_t off = a.index(f);
    for (const auto& x : sa) {
      bool ok = true;
      for (size_t i = 0; i < f.size() && ok; ++i) ok = x.e[i] + f[i] <= a.n_;
      if (ok) r.data_[x.idx + off] += *x.c * c;
    }
  }
  return r;
}

namespace {

struct Shift {
  size_t off;
  std::vector<std::pair<int, int>> need;  // (variable, minimum exponent)
};

template <class T>
struct Term {
  Shift s;
  T c;
};

Shift make_shift(const TruncSeries& box, const Exps& f) {
  Shift s{box.index(f), {}};
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] > 0) s.need.push_back({static_cast<int>(i), f[i]});
  return s;
}

inline bool fits(const Shift& s, const Exps& e) {
  for (const auto& [v, m] : s.need)
    if (e[v] < m) return false;
  return true;
}

inline void odometer(Exps& e, int N) {
  for (size_t i = e.size(); i-- > 0;) {
    if (++e[i] <= N) return;
    e[i] = 0;
  }
}

void require_expansion(const MPoly& den) {
  if (den.constant_term() == 0) throw Error("NoMultiTaylorExpansion", "denominator " + den.str() + " vanishes at the origin");
}

bool integral(const MPoly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.second.get_den() == 1; });
}

// Integer recursion s = (L*P)/Q for Q integral with Q(0) = +-1; returns the box and L.
std::vector<Z> integer_expand(const MPoly& P, const MPoly& Qd, int N, const TruncSeries& shape, Z& L) {
  std::vector<Q> pc;
  for (const auto& [e, c] : P.terms()) pc.push_back(c);
  L = lcm_den(pc);
  std::vector<Z> s(shape.size());
  for (const auto& [e, c] : P.terms())
    if (shape.in_box(e)) s[shape.index(e)] = c.get_num() * (L / c.get_den());
  std::vector<Term<Z>> qt;
  for (const auto& [f, c] : Qd.terms()) {
    if (std::all_of(f.begin(), f.end(), [](int k) { return k == 0; })) continue;
    if (!shape.in_box(f)) continue;
    qt.push_back({make_shift(shape, f), c.get_num()});
  }
  bool neg = Qd.constant_term() < 0;
  Exps e(shape.nvars(), 0);
  for (size_t idx = 0; idx < s.size(); ++idx, odometer(e, N)) {
    Z& acc = s[idx];
    for (const auto& t : qt)
      if (fits(t.s, e)) mpz_submul(acc.get_mpz_t(), t.c.get_mpz_t(), s[idx - t.s.off].get_mpz_t());
    if (neg) mpz_neg(acc.get_mpz_t(), acc.get_mpz_t());
  }
  return s;
}

bool integer_path(const MPoly& Qd) {
  Q c0 = Qd.constant_term();
  return integral(Qd) && (c0 == 1 || c0 == -1);
}

}  // namespace

TruncSeries divide(const TruncSeries& num, const MPoly& Qd) {
  if (Qd.vars() != num.vars()) throw std::invalid_argument("series/polynomial variable mismatch");
  require_expansion(Qd);
  TruncSeries s = num;
  std::vector<Term<Q>> qt;
  for (const auto& [f, c] : Qd.terms()) {
    if (std::all_of(f.begin(), f.end(), [](int k) { return k == 0; })) continue;
    if (!s.in_box(f)) continue;
    qt.push_back({make_shift(s, f), c});
  }
  Q inv = 1 / Qd.constant_term();
  Exps e(s.nvars(), 0);
  auto& d = s.data();
  for (size_t idx = 0; idx < d.size(); ++idx, odometer(e, s.bound())) {
    Q acc = d[idx];
    for (const auto& t : qt)
      if (fits(t.s, e) && d[idx - t.s.off] != 0) acc -= t.c * d[idx - t.s.off];
    d[idx] = acc * inv;
  }
  return s;
}

TruncSeries divide(const TruncSeries& num, const TruncSeries& den) {
  if (num.vars() != den.vars() || num.bound() != den.bound()) throw std::invalid_argument("series shape mismatch");
  Q d0 = den.data()[0];
  if (d0 == 0) throw Error("IllDefinedComposition", "division by a series with zero constant term");
  std::vector<Term<Q>> qt;
  for (size_t i = 1; i < den.size(); ++i)
    if (den.data()[i] != 0) qt.push_back({make_shift(den, den.exps(i)), den.data()[i]});
  TruncSeries s = num;
  Q inv = 1 / d0;
  Exps e(s.nvars(), 0);
  auto& d = s.data();
  for (size_t idx = 0; idx < d.size(); ++idx, odometer(e, s.bound())) {
    Q acc = d[idx];
    for (const auto& t : qt)
      if (fits(t.s, e) && d[idx - t.s.off] != 0) acc -= t.c * d[idx - t.s.off];
    d[idx] = acc * inv;
  }
  return s;
}

TruncSeries expand_rational(const MPoly& P, const MPoly& Qd, int N) {
  if (P.vars() != Qd.vars()) throw std::invalid_argument("numerator/denominator variable mismatch");
  require_expansion(Qd);
  TruncSeries shape(Qd.vars(), N);
  if (integer_path(Qd)) {
    Z L;
    auto s = integer_expand(P, Qd, N, shape, L);
    for (size_t i = 0; i < s.size(); ++i) {
      if (sgn(s[i]) == 0) continue;
      Q q(s[i], L);
      q.canonicalize();
      shape.data()[i] = q;
    }
    return shape;
  }
  return divide(TruncSeries::from_poly(P, N), Qd);
}

UniSeries diag(const TruncSeries& S) {
  std::vector<Q> c(S.bound() + 1);
  for (int m = 0; m <= S.bound(); ++m) c[m] = S.coeff(Exps(S.nvars(), m));
  return UniSeries(std::move(c), "x");
}

UniSeries diag_rational(const MPoly& P, const MPoly& Qd, int N) {
  if (P.vars() != Qd.vars()) throw std::invalid_argument("numerator/denominator variable mismatch");
  require_expansion(Qd);
  if (!integer_path(Qd)) return diag(expand_rational(P, Qd, N));
  TruncSeries shape(Qd.vars(), N);
  Z L;
  auto s = integer_expand(P, Qd, N, shape, L);
  std::vector<Q> c(N + 1);
  for (int m = 0; m <= N; ++m) {
    c[m] = Q(s[shape.index(Exps(shape.nvars(), m))], L);
    c[m].canonicalize();
  }
  return UniSeries(std::move(c), "x");
}

TruncSeries expand_power(const MPoly& Qd, const Q& r, int N) {
  Q c0 = Qd.constant_term(), scale = 1;
  if (r != 0 && c0 != 1 && !rational_power(c0, r, scale))
    throw Error("UnsupportedConstantTerm", "base " + Qd.str() + " has constant term " + to_string(c0) + " whose power is not rational");
  TruncSeries s(Qd.vars(), N);
  auto& d = s.data();
  d[0] = scale;
  if (r == 0) return s;
  MPoly base = c0 == 1 ? Qd : (1 / c0) * Qd;
  std::vector<Term<Q>> qt;
  std::vector<Exps> fe;
  for (const auto& [f, c] : base.terms()) {
    if (std::all_of(f.begin(), f.end(), [](int k) { return k == 0; })) continue;
    if (!s.in_box(f)) continue;
    qt.push_back({make_shift(s, f), c});
    fe.push_back(f);
  }
  Q r1 = r + 1;
  Exps e(s.nvars(), 0);
  odometer(e, N);
  for (size_t idx = 1; idx < d.size(); ++idx, odometer(e, N)) {
    int v = 0;
    while (e[v] == 0) ++v;
    Q acc = 0;
    for (size_t k = 0; k < qt.size(); ++k) {
      const auto& t = qt[k];
      if (!fits(t.s, e) || d[idx - t.s.off] == 0) continue;
      acc += t.c * (r1 * fe[k][v] - e[v]) * d[idx - t.s.off];
    }
    d[idx] = acc / e[v];
  }
  return s;
}

namespace {

TruncSeries eval_poly(const MPoly& P, const std::vector<TruncSeries>& images, std::vector<std::vector<TruncSeries>>& cache) {
  const TruncSeries& t0 = images.at(0);
  TruncSeries r(t0.vars(), t0.bound());
  for (const auto& [e, c] : P.terms()) {
    TruncSeries m(t0.vars(), t0.bound());
    m.data()[0] = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = cache[i];
      if (pw.empty()) {
        TruncSeries one(t0.vars(), t0.bound());
        one.data()[0] = 1;
        pw.push_back(one);
      }
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      m = m * pw[e[i]];
    }
    r = r + m;
  }
  return r;
}

void check_images(const MPoly& src, const std::vector<TruncSeries>& images) {
  if (static_cast<int>(images.size()) != src.nvars()) throw std::invalid_argument("one image per source variable is required");
  for (const auto& im : images)
    if (im.vars() != images[0].vars() || im.bound() != images[0].bound()) throw std::invalid_argument("images must share variables and bound");
}

}  // namespace

TruncSeries series_substitute(const MPoly& P, const MPoly& Qd, const std::vector<TruncSeries>& images) {
  auto vars = merge_vars(P.vars(), Qd.vars());
  MPoly p = P.embed(vars), q = Qd.embed(vars);
  check_images(q, images);
  std::vector<std::vector<TruncSeries>> cache(vars.size());
  TruncSeries num = eval_poly(p, images, cache), den = eval_poly(q, images, cache);
  if (den.data()[0] == 0) throw Error("NoMultiTaylorExpansion", "substituted denominator vanishes at the origin");
  return divide(num, den);
}

TruncSeries series_substitute(const TruncSeries& S, const std::vector<TruncSeries>& images) {
  if (static_cast<int>(images.size()) != S.nvars()) throw std::invalid_argument("one image per source variable is required");
  const TruncSeries& t0 = images.at(0);
  if (S.bound() < t0.bound()) throw Error("IllDefinedComposition", "source series is truncated below the target bound");
  // each image must be divisible by some target variable so that the source truncation is harmless
  for (const auto& im : images) {
    bool ok = false;
    for (int v = 0; v < im.nvars() && !ok; ++v) {
      ok = true;
      for (size_t i = 0; i < im.size() && ok; ++i)
        if (im.data()[i] != 0 && im.exps(i)[v] == 0) ok = false;
    }
    if (!ok) throw Error("IllDefinedComposition", "substituted series must be divisible by a variable");
  }
  MPoly asPoly(S.vars());
  for (size_t i = 0; i < S.size(); ++i)
    if (S.data()[i] != 0) asPoly.add_term(S.exps(i), S.data()[i]);
  std::vector<std::vector<TruncSeries>> cache(S.nvars());
  return eval_poly(asPoly, images, cache);
}

TruncSeries expand_power_form(const PowerForm& f, int N) {
  TruncSeries acc = TruncSeries::from_poly(f.num, N);
  // bases sharing an exponent are merged before expansion
  std::vector<std::pair<MPoly, Q>> merged;
  for (const auto& [b, r] : f.powers) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.second == r; });
    if (it == merged.end()) merged.push_back({b, r});
    else it->first = it->first * b;
  }
  for (const auto& [b, r] : merged) {
    TruncSeries pw = expand_power(b.embed(f.num.vars()), r, N);
    acc = acc.nonzeros() == 1 && acc.data()[0] != 0 ? acc.data()[0] * pw : acc * pw;
  }
  return divide(acc, f.den);
}

UniSeries diag_of_power_form(const PowerForm& f, int N) {
  if (f.powers.empty()) return diag_rational(f.num, f.den, N);
  return diag(expand_power_form(f, N));
}

UniSeries diag_of_ratpower(const MPoly& P, const MPoly& Qd, const MPoly& base, const Q& r, int N) {
  auto vars = merge_vars(merge_vars(P.vars(), Qd.vars()), base.vars());
  PowerForm f{P.embed(vars), Qd.embed(vars), {}};
  if (r != 0) {
    Q c = base.constant_term(), scale;
    if (c != 1) {
      if (!rational_power(c, r, scale)) throw Error("UnsupportedConstantTerm", "base " + base.str() + " has constant term " + to_string(c) + " whose power is not rational");
      f.num = scale * f.num;
      f.powers.push_back({(1 / c) * base.embed(vars), r});
    } else {
      f.powers.push_back({base.embed(vars), r});
    }
  }
  return diag_of_power_form(f, N);
}

bool effective_grouping_check(const MPoly& P, const MPoly& Qd, const std::vector<MPoly>& grouping, int N) {
  auto vars = merge_vars(P.vars(), Qd.vars());
  MPoly p = P.embed(vars), q = Qd.embed(vars);
  const int k = static_cast<int>(vars.size());
  // owner[v] = index of the grouping monomial containing variable v
  std::vector<int> owner(k, -1);
  for (size_t g = 0; g < grouping.size(); ++g) {
    MPoly m = grouping[g].embed(vars);
    if (m.terms().size() != 1) throw Error("GroupingMismatch", "grouping entries must be monomials");
    const Exps& e = m.terms().begin()->first;
    for (int v = 0; v < k; ++v) {
      if (e[v] == 0) continue;
      if (e[v] != 1 || owner[v] >= 0) throw Error("GroupingMismatch", "grouping monomials must multiply to the product of all variables");
      owner[v] = static_cast<int>(g);
    }
  }
  if (std::count(owner.begin(), owner.end(), -1) > 0) throw Error("GroupingMismatch", "grouping monomials must multiply to the product of all variables");
  std::vector<std::string> fresh;
  for (size_t g = 0; g < grouping.size(); ++g) fresh.push_back("t" + std::to_string(g + 1));
  // keep the terms that are monomials in the grouping; the others never reach the diagonal pattern
  auto restrict = [&](const MPoly& f) {
    MPoly out(fresh);
    for (const auto& [e, c] : f.terms()) {
      Exps t(grouping.size(), -1);
      bool ok = true;
      for (int v = 0; v < k && ok; ++v) {
        int& slot = t[owner[v]];
        if (slot < 0) slot = e[v];
        else ok = slot == e[v];
      }
      if (ok) out.add_term(t, c);
    }
    return out;
  };
  MPoly pr = restrict(p), qr = restrict(q);
  if (qr.constant_term() == 0) return false;
  // identity check: substituting the monomials back reproduces the kept terms exactly
  auto lift = [&](const MPoly& f) {
    MPoly out(vars);
    for (const auto& [t, c] : f.terms()) {
      Exps e(k);
      for (int v = 0; v < k; ++v) e[v] = t[owner[v]];
      out.add_term(e, c);
    }
    return out;
  };
  MPoly ql = lift(qr), pl = lift(pr);
  for (const auto& [e, c] : ql.terms())
    if (q.coeff(e) != c) return false;
  for (const auto& [e, c] : pl.terms())
    if (p.coeff(e) != c) return false;
  return diag_rational(p, q, N) == diag_rational(pr, qr, N);
}

}  // namespace dg
