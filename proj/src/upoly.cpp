#include <cmath>
#include "dg/upoly.hpp"

#include <algorithm>
#include <cstdint>

namespace dg {

namespace {

using ZVec = std::vector<Z>;

// p = (integer vector) / den with den > 0.
ZVec to_z(const UPoly& p, Z& den) {
  den = lcm_den(p.coeffs());
  ZVec r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.push_back(c.get_num() * (den / c.get_den()));
  return r;
}

ZVec zmul(const ZVec& a, const ZVec& b) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return r;
}

// ---- arithmetic modulo a word-size prime, used by the modular gcd ----

using u64 = std::uint64_t;
using Mod = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }  // p < 2^31

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void mtrim(Mod& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Mod reduce(const ZVec& a, u64 p) {
  Mod r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  mtrim(r);
  return r;
}

// a <- a mod b, b nonzero
void mrem(Mod& a, const Mod& b, u64 p) {
  u64 inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    u64 f = mulmod(a.back(), inv, p);
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] = (a[off + i] + p - mulmod(f, b[i], p)) % p;
    mtrim(a);
  }
}

Mod mgcd(Mod a, Mod b, u64 p) {
  while (!b.empty()) {
    mrem(a, b, p);
    std::swap(a, b);
  }
  if (a.empty()) return a;
  u64 inv = invmod(a.back(), p);
  for (auto& c : a) c = mulmod(c, inv, p);
  return a;
}

const std::vector<u64>& prime_table() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> ps;
    Z c = (Z(1) << 31) - 1;
    while (ps.size() < 4096) {
      if (mpz_probab_prime_p(c.get_mpz_t(), 30)) ps.push_back(c.get_ui());
      c -= 2;
    }
    return ps;
  }();
  return primes;
}

ZVec primitive_z(ZVec v) {
  Z g = 0;
  for (auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return v;
  if (sgn(v.back()) < 0) g = -g;
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return v;
}

bool divides(const ZVec& g, const ZVec& a) {
  // exact pseudo-free division over Z (g primitive): a = q g with q integral
  ZVec r = a;
  const Z& l = g.back();
  Z q;
  while (r.size() >= g.size()) {
    if (!mpz_divisible_p(r.back().get_mpz_t(), l.get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), r.back().get_mpz_t(), l.get_mpz_t());
    size_t off = r.size() - g.size();
    for (size_t i = 0; i < g.size(); ++i) mpz_submul(r[off + i].get_mpz_t(), q.get_mpz_t(), g[i].get_mpz_t());
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
  }
  return r.empty();
}

// Modular gcd of primitive integer polynomials, result primitive with positive lc.
ZVec zgcd(const ZVec& a, const ZVec& b) {
  Z gamma;
  mpz_gcd(gamma.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
  ZVec H;
  Z M = 0;
  int d = -1;
  for (u64 p : prime_table()) {
    if (mpz_divisible_ui_p(a.back().get_mpz_t(), p) || mpz_divisible_ui_p(b.back().get_mpz_t(), p)) continue;
    Mod g = mgcd(reduce(a, p), reduce(b, p), p);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg == 0) return {Z(1)};
    u64 gm = mpz_fdiv_ui(gamma.get_mpz_t(), p);
    for (auto& c : g) c = mulmod(c, gm, p);
    if (d >= 0 && dg > d) continue;
    if (d < 0 || dg < d) {
      d = dg;
      M = p;
      H.assign(g.size(), 0);
      for (size_t i = 0; i < g.size(); ++i) H[i] = g[i] > p / 2 ? Z(static_cast<long>(g[i])) - Z(static_cast<unsigned long>(p)) : Z(static_cast<unsigned long>(g[i]));
      continue;
    }
    // CRT: h = H + M * ((g - H) * M^{-1} mod p), symmetric mod M p
    u64 minv = invmod(mpz_fdiv_ui(M.get_mpz_t(), p), p);
    Z Mp = M * static_cast<unsigned long>(p);
    Z half = Mp / 2;
    bool same = true;
    ZVec Hn(H.size());
    for (size_t i = 0; i < H.size(); ++i) {
      u64 hm = mpz_fdiv_ui(H[i].get_mpz_t(), p);
      u64 t = mulmod((g[i] + p - hm) % p, minv, p);
      Hn[i] = H[i] + M * static_cast<unsigned long>(t);
      if (Hn[i] > half) Hn[i] -= Mp;
      if (Hn[i] != H[i]) same = false;
    }
    H = std::move(Hn);
    M = Mp;
    if (same) {
      ZVec G = primitive_z(H);
      if (divides(G, a) && divides(G, b)) return G;
    }
  }
  throw std::runtime_error("modular gcd: prime table exhausted");
}

}  // namespace

UPoly::UPoly(const Q& c0) {
  if (c0 != 0) c_.push_back(c0);
}

UPoly::UPoly(std::vector<Q> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

UPoly UPoly::monomial(const Q& c, int k) {
  UPoly r;
  if (c == 0) return r;
  r.c_.assign(k + 1, Q(0));
  r.c_[k] = c;
  return r;
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Q& UPoly::lc() const {
  static const Q zero(0);
  return c_.empty() ? zero : c_.back();
}

int UPoly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Q& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.c_.size() == 1) return b * a.c_[0];
  if (b.c_.size() == 1) return a * b.c_[0];
  Z da, db;
  ZVec r = zmul(to_z(a, da), to_z(b, db));
  Z den = da * db;
  UPoly out;
  out.c_.resize(r.size());
  for (size_t i = 0; i < r.size(); ++i) {
    out.c_[i] = Q(r[i], den);
    out.c_[i].canonicalize();
  }
  out.trim();
  return out;
}

UPoly UPoly::derivative() const {
  UPoly r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * static_cast<long>(i);
  r.trim();
  return r;
}

Q UPoly::eval(const Q& t) const {
  Q r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
  return r;
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly r;
  for (size_t i = c_.size(); i-- > 0;) r = r * inner + UPoly(c_[i]);
  return r;
}

UPoly UPoly::shift_up(int k) const {
  if (is_zero() || k == 0) return *this;
  UPoly r;
  r.c_.assign(k, Q(0));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

UPoly UPoly::truncate(int n) const {
  UPoly r = *this;
  if (static_cast<int>(r.c_.size()) > n) r.c_.resize(std::max(n, 0));
  r.trim();
  return r;
}

Q UPoly::content() const {
  if (is_zero()) return 0;
  return Q(gcd_num(c_), lcm_den(c_));
}

UPoly UPoly::primitive() const {
  if (is_zero()) return {};
  Q k = content();
  if (lc() < 0) k = -k;
  UPoly r = *this;
  for (auto& c : r.c_) c /= k;
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  Q inv = 1 / lc();
  return *this * inv;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    const Q& c = c_[i];
    if (c == 0) continue;
    std::string mag = to_string(abs(c));
    bool neg = c < 0;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? "-" : "+";
    }
    if (i == 0) {
      s += mag;
      continue;
    }
    if (mag != "1") s += mag + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Q> r = a.coeffs();
  std::vector<Q> q(a.degree() - b.degree() + 1);
  Q inv = 1 / b.lc();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Q f = r[k + b.degree()] * inv;
    q[k] = f;
    if (f == 0) continue;
    for (int i = 0; i <= b.degree(); ++i) r[k + i] -= f * bc[i];
  }
  r.resize(b.degree());
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator/(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return UPoly(1);
  int va = a.valuation(), vb = b.valuation();
  int v = std::min(va, vb);
  // strip powers of x first; cheap and common for operator coefficients
  UPoly as = va ? UPoly(std::vector<Q>(a.coeffs().begin() + va, a.coeffs().end())) : a;
  UPoly bs = vb ? UPoly(std::vector<Q>(b.coeffs().begin() + vb, b.coeffs().end())) : b;
  UPoly g(1);
  if (!as.is_constant() && !bs.is_constant()) {
    Z da, db;
    ZVec za = primitive_z(to_z(as, da)), zb = primitive_z(to_z(bs, db));
    ZVec zg = za.size() >= zb.size() ? zgcd(za, zb) : zgcd(zb, za);
    std::vector<Q> qc(zg.begin(), zg.end());
    g = UPoly(std::move(qc));
  }
  return g.shift_up(v).monic();
}

UPoly lcm(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (a / gcd(a, b) * b).monic();
}

UPoly squarefree_part(const UPoly& a) {
  if (a.is_zero()) throw std::domain_error("squarefree_part of zero");
  if (a.is_constant()) return UPoly(1);
  return (a / gcd(a, a.derivative())).monic();
}

std::vector<UPoly> squarefree_decomposition(const UPoly& a) {
  if (a.is_zero()) throw std::domain_error("squarefree decomposition of zero");
  std::vector<UPoly> out;
  UPoly am = a.monic();
  UPoly g = gcd(am, am.derivative());
  UPoly c = am / g, d = am.derivative() / g - c.derivative();
  while (!c.is_constant()) {
    UPoly f = gcd(c, d);
    out.push_back(f);
    c = c / f;
    d = d / f - c.derivative();
  }
  return out;
}

}  // namespace dg

namespace dg {

std::vector<std::pair<long, int>> integer_roots(const UPoly& a) {
  std::vector<std::pair<long, int>> out;
  if (a.is_zero()) throw std::invalid_argument("integer_roots of the zero polynomial");
  auto mult = [](UPoly p, const UPoly& f) {
    int m = 0;
    while (!p.is_zero() && (p % f).is_zero()) {
      p = p / f;
      ++m;
    }
    return m;
  };
  UPoly p = a.primitive();
  int v = p.valuation();
  if (v > 0) {
    out.push_back({0, v});
    p = UPoly(std::vector<Q>(p.coeffs().begin() + v, p.coeffs().end()));
  }
  if (p.degree() <= 0) return out;
  // roots divide the trailing coefficient and lie within the Fujiwara bound
  // 2 max |a_{n-i}/a_n|^(1/i), evaluated in log2 to stay clear of huge coefficients
  Z t = abs(p.coeff(0).get_num());
  auto log2abs = [](const Z& z) {
    long e;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log2(std::fabs(m)) + static_cast<double>(e);
  };
  const int n = p.degree();
  const double llc = log2abs(p.lc().get_num());
  double lb = -1e300;
  for (int i = 1; i <= n; ++i) {
    const Z c = p.coeff(n - i).get_num();
    if (sgn(c) == 0) continue;
    lb = std::max(lb, (log2abs(c) - llc) / i);
  }
  if (lb + 1 > 40) throw std::overflow_error("integer root bound too large");
  Z bound = static_cast<long>(std::ceil(std::exp2(lb + 1))) + 1;
  if (t < bound) bound = t;
  if (bound > 10000000) throw std::overflow_error("integer root bound too large");
  long b = bound.get_si();
  for (long r = -b; r <= b; ++r) {
    if (r == 0 || sgn(t % Z(r)) != 0) continue;
    if (p.eval(Q(r)) == 0) out.push_back({r, mult(a, UPoly(std::vector<Q>{Q(-r), Q(1)}))});
  }
  std::sort(out.begin(), out.end());
  return out;
}

UPoly interpolate(const std::vector<Q>& xs, const std::vector<Q>& ys) {
  // Newton divided differences
  const int n = static_cast<int>(xs.size());
  std::vector<Q> c = ys;
  for (int k = 1; k < n; ++k)
    for (int i = n - 1; i >= k; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - k]);
  UPoly p;
  for (int i = n - 1; i >= 0; --i) p = p * UPoly(std::vector<Q>{-xs[i], Q(1)}) + UPoly(c[i]);
  return p;
}

}  // namespace dg
