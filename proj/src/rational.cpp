#include "dg/rational.hpp"

#include <cstdlib>

namespace dg {

Q parse_rational(const std::string& s) {
  Q r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Q& q) { return q.get_str(); }

Z lcm_den(const std::vector<Q>& v) {
  Z l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

Z gcd_num(const std::vector<Q>& v) {
  Z g = 0;
  for (const auto& q : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  return g;
}

Z falling(long n, int k) {
  Z r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

Z binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

static Z exact_root(const Z& a, unsigned long b, bool& ok) {
  Z r;
  Z mag = abs(a);
  ok = mpz_root(r.get_mpz_t(), mag.get_mpz_t(), b) != 0;
  if (a < 0) {
    if (b % 2 == 0) ok = false;
    r = -r;
  }
  return r;
}

// c^r as a rational number if it is one.
bool rational_power(const Q& c, const Q& r, Q& out) {
  if (c == 0) return false;
  if (r.get_den() != 1 && !mpz_fits_ulong_p(r.get_den_mpz_t())) return false;
  unsigned long b = r.get_den().get_ui();
  bool ok1, ok2;
  Z n = exact_root(c.get_num(), b, ok1), d = exact_root(c.get_den(), b, ok2);
  if (!ok1 || !ok2) return false;
  Q base(n, d);
  Z a = r.get_num();
  if (!mpz_fits_slong_p(a.get_mpz_t())) return false;
  long e = a.get_si();
  Q res = 1;
  Q bb = e < 0 ? Q(1) / base : base;
  for (long k = 0; k < std::labs(e); ++k) res *= bb;
  out = res;
  return true;
}

}  // namespace dg
