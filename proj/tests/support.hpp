#pragma once

#include <random>

#include "dg/expr.hpp"
#include "dg/mpoly.hpp"
#include "dg/upoly.hpp"

namespace dgtest {

using namespace dg;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline long rint(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Q rq(long range = 9, long den = 4) {
  Q q(rint(-range, range), rint(1, den));
  q.canonicalize();
  return q;
}

inline UPoly rpoly(int deg, long range = 9, long den = 1) {
  std::vector<Q> c;
  for (int i = 0; i <= deg; ++i) c.push_back(rq(range, den));
  if (c.back() == 0) c.back() = 1;
  return UPoly(c);
}

inline MPoly rmpoly(const std::vector<std::string>& vars, int maxdeg, int nterms, long range = 5) {
  MPoly p(vars);
  for (int t = 0; t < nterms; ++t) {
    Exps e(vars.size());
    for (auto& k : e) k = static_cast<int>(rint(0, maxdeg));
    p.add_term(e, Q(rint(-range, range)));
  }
  return p;
}

inline MPoly P(const std::string& s, const std::vector<std::string>& vars = {"x", "y", "z"}) { return parse_poly(s, vars); }
inline UPoly U(const std::string& s, const std::string& v = "x") { return parse_poly(s, {v}).to_upoly(0); }

}  // namespace dgtest
