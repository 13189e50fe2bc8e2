#include "dg/mpoly.hpp"

#include <algorithm>
#include <numeric>

namespace dg {

MPoly::MPoly(std::vector<std::string> vars, const Q& c) : vars_(std::move(vars)) {
  if (c != 0) t_[Exps(vars_.size(), 0)] = c;
}

MPoly MPoly::var(const std::vector<std::string>& vars, const std::string& name) {
  MPoly r(vars);
  int i = r.var_index(name);
  if (i < 0) throw std::invalid_argument("unknown variable " + name);
  Exps e(vars.size(), 0);
  e[i] = 1;
  r.t_[e] = 1;
  return r;
}

MPoly MPoly::monomial(const std::vector<std::string>& vars, const Exps& e, const Q& c) {
  MPoly r(vars);
  if (c != 0) r.t_[e] = c;
  return r;
}

int MPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool MPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && std::all_of(t_.begin()->first.begin(), t_.begin()->first.end(), [](int e) { return e == 0; }));
}

Q MPoly::constant_term() const { return coeff(Exps(vars_.size(), 0)); }

Q MPoly::coeff(const Exps& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? Q(0) : it->second;
}

void MPoly::add_term(const Exps& e, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

int MPoly::degree(int v) const {
  int d = t_.empty() ? -1 : 0;
  for (const auto& [e, c] : t_) d = std::max(d, e[v]);
  return d;
}

int MPoly::total_degree() const {
  int d = t_.empty() ? -1 : 0;
  for (const auto& [e, c] : t_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void MPoly::check_same(const MPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("variable-list mismatch");
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.is_zero()) return *this;
  if (vars_.empty() && t_.empty()) vars_ = o.vars_;
  check_same(o);
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.is_zero()) return *this;
  if (vars_.empty() && t_.empty()) vars_ = o.vars_;
  check_same(o);
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Q& s) {
  if (s == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [e, c] : t_) c *= s;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly(a.vars_.empty() ? b.vars_ : a.vars_);
  a.check_same(b);
  MPoly r(a.vars_);
  Exps e(a.vars_.size());
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r(vars_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::vector<MPoly> MPoly::coeffs_in(int v) const {
  std::vector<MPoly> out(std::max(degree(v) + 1, 0), MPoly(vars_));
  for (const auto& [e, c] : t_) {
    Exps f = e;
    f[v] = 0;
    out[e[v]].t_[f] = c;
  }
  return out;
}

MPoly MPoly::from_coeffs_in(const std::vector<MPoly>& cs, int v, const std::vector<std::string>& vars) {
  MPoly r(vars);
  for (size_t k = 0; k < cs.size(); ++k)
    for (const auto& [e, c] : cs[k].t_) {
      Exps f = e;
      f[v] += static_cast<int>(k);
      r.add_term(f, c);
    }
  return r;
}

MPoly MPoly::derivative(int v) const {
  MPoly r(vars_);
  for (const auto& [e, c] : t_) {
    if (e[v] == 0) continue;
    Exps f = e;
    f[v] -= 1;
    r.add_term(f, c * e[v]);
  }
  return r;
}

MPoly MPoly::substitute(int v, const MPoly& value) const {
  auto cs = coeffs_in(v);
  MPoly r(vars_);
  for (size_t k = cs.size(); k-- > 0;) r = r * value + cs[k];
  return r;
}

MPoly MPoly::rename(const std::vector<std::string>& new_vars) const {
  if (new_vars.size() != vars_.size()) throw std::invalid_argument("rename arity mismatch");
  MPoly r = *this;
  r.vars_ = new_vars;
  return r;
}

MPoly MPoly::embed(const std::vector<std::string>& bigger) const {
  std::vector<int> pos(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(bigger.begin(), bigger.end(), vars_[i]);
    if (it == bigger.end()) throw std::invalid_argument("embed: missing variable " + vars_[i]);
    pos[i] = static_cast<int>(it - bigger.begin());
  }
  MPoly r(bigger);
  for (const auto& [e, c] : t_) {
    Exps f(bigger.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) f[pos[i]] = e[i];
    r.t_[f] = c;
  }
  return r;
}

UPoly MPoly::to_upoly(int v) const {
  std::vector<Q> c(std::max(degree(v) + 1, 0));
  for (const auto& [e, q] : t_) {
    for (int i = 0; i < nvars(); ++i)
      if (i != v && e[i] != 0) throw std::invalid_argument("to_upoly: polynomial involves other variables");
    c[e[v]] = q;
  }
  return UPoly(std::move(c));
}

MPoly MPoly::from_upoly(const UPoly& p, const std::vector<std::string>& vars, int v) {
  MPoly r(vars);
  Exps e(vars.size(), 0);
  for (int k = 0; k <= p.degree(); ++k) {
    e[v] = k;
    r.add_term(e, p.coeff(k));
  }
  return r;
}

Q MPoly::content() const {
  std::vector<Q> cs;
  for (const auto& [e, c] : t_) cs.push_back(c);
  if (cs.empty()) return 0;
  return Q(gcd_num(cs), lcm_den(cs));
}

MPoly MPoly::primitive() const {
  if (is_zero()) return *this;
  Q k = content();
  if (t_.rbegin()->second < 0) k = -k;
  MPoly r = *this;
  for (auto& [e, c] : r.t_) c /= k;
  return r;
}

std::string MPoly::str() const {
  if (t_.empty()) return "0";
  std::vector<std::pair<Exps, Q>> v(t_.begin(), t_.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::string s;
  for (const auto& [e, c] : v) {
    bool neg = c < 0;
    std::string mag = to_string(abs(c));
    s += s.empty() ? (neg ? "-" : "") : (neg ? "-" : "+");
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) s += mag;
    else if (mag == "1") s += mono;
    else s += mag + "*" + mono;
  }
  return s;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> r = a;
  for (const auto& v : b)
    if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
  return r;
}

bool try_divide(const MPoly& a, const MPoly& b, MPoly& q) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  q = MPoly(a.vars());
  if (a.is_zero()) return true;
  if (a.vars() != b.vars()) throw std::invalid_argument("variable-list mismatch");
  MPoly r = a;
  const auto& [lb, cb] = *b.terms().rbegin();
  while (!r.is_zero()) {
    const auto& [lr, cr] = *r.terms().rbegin();
    Exps d(lr.size());
    for (size_t i = 0; i < d.size(); ++i) {
      d[i] = lr[i] - lb[i];
      if (d[i] < 0) return false;
    }
    MPoly t = MPoly::monomial(a.vars(), d, cr / cb);
    q += t;
    r -= t * b;
  }
  return true;
}

MPoly divide_exact(const MPoly& a, const MPoly& b) {
  MPoly q;
  if (!try_divide(a, b, q)) throw std::domain_error("inexact multivariate division");
  return q;
}

namespace {

using Coeffs = std::vector<MPoly>;

int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

void trim(Coeffs& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
Coeffs prem(Coeffs a, const Coeffs& b) {
  const MPoly& l = b.back();
  int e = deg(a) - deg(b) + 1;
  while (!a.empty() && deg(a) >= deg(b)) {
    MPoly lead = a.back();
    int shift = deg(a) - deg(b);
    for (auto& c : a) c = c * l;
    for (int i = 0; i <= deg(b); ++i) a[shift + i] -= lead * b[i];
    trim(a);
    --e;
  }
  if (e > 0) {
    MPoly f = l.pow(e);
    for (auto& c : a) c = c * f;
  }
  return a;
}

}  // namespace

MPoly resultant(const MPoly& a0, const MPoly& b0, const std::string& var) {
  auto vars = merge_vars(a0.vars(), b0.vars());
  MPoly a = a0.embed(vars), b = b0.embed(vars);
  int v = a.var_index(var);
  if (v < 0 || (!a.depends_on(v) && !b.depends_on(v))) throw std::invalid_argument("resultant: variable absent from both inputs: " + var);
  if (a.is_zero() || b.is_zero()) return MPoly(vars);
  Coeffs A = a.coeffs_in(v), B = b.coeffs_in(v);
  if (deg(B) == 0) return B[0].pow(deg(A));
  if (deg(A) == 0) return A[0].pow(deg(B));
  MPoly s(vars, 1);
  if (deg(A) < deg(B)) {
    std::swap(A, B);
    if (deg(A) % 2 == 1 && deg(B) % 2 == 1) s = -s;
  }
  MPoly g(vars, 1), h(vars, 1);
  while (true) {
    int delta = deg(A) - deg(B);
    if (deg(A) % 2 == 1 && deg(B) % 2 == 1) s = -s;
    Coeffs R = prem(A, B);
    A = B;
    MPoly div = g * h.pow(delta);
    for (auto& c : R) c = divide_exact(c, div);
    B = R;
    if (B.empty()) return MPoly(vars);
    g = A.back();
    if (delta == 0) {
      // h unchanged
    } else {
      h = divide_exact(g.pow(delta), h.pow(delta - 1));
    }
    if (deg(B) == 0) {
      int dA = deg(A);
      MPoly hh = dA == 1 ? B[0] : divide_exact(B[0].pow(dA), h.pow(dA - 1));
      return s * hh;
    }
  }
}

}  // namespace dg
