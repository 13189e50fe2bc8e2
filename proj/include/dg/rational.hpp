#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace dg {

using Z = mpz_class;
using Q = mpq_class;

// Error carrying one of the stable names surfaced by the CLI
// (NoMultiTaylorExpansion, UnsupportedConstantTerm, NotFound, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

inline Q make_q(long n, long d = 1) {
  Q r(n, d);
  r.canonicalize();
  return r;
}

Q parse_rational(const std::string& s);
std::string to_string(const Q& q);

Z lcm_den(const std::vector<Q>& v);
Z gcd_num(const std::vector<Q>& v);

// Falling factorial n (n-1) ... (n-k+1) as an integer.
Z falling(long n, int k);
Z binomial(long n, long k);

// c^r as a rational number if it is one.
bool rational_power(const Q& c, const Q& r, Q& out);

}  // namespace dg
