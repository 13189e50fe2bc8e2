#include "dg/ratfunc.hpp"

#include <algorithm>

namespace dg {

RatFunc::RatFunc(const UPoly& n, const UPoly& d) {
  if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (n.is_zero()) {
    den_ = UPoly(1);
    return;
  }
  UPoly g = gcd(n, d);
  num_ = g.is_one() ? n : n / g;
  den_ = g.is_one() ? d : d / g;
  Q l = den_.lc();
  if (l != 1) {
    num_ *= 1 / l;
    den_ *= 1 / l;
  }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ + b.num_, UPoly(1), true);
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  if (a.is_polynomial()) return RatFunc(a.num_ * b.den_ + b.num_, b.den_, true);
  if (b.is_polynomial()) return RatFunc(a.num_ + b.num_ * a.den_, a.den_, true);
  UPoly g = gcd(a.den_, b.den_);
  if (g.is_one()) return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, true);
  UPoly ad = a.den_ / g, bd = b.den_ / g;
  return RatFunc(a.num_ * bd + b.num_ * ad, ad * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_, UPoly(1), true);
  UPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  UPoly n = (g1.is_one() ? a.num_ : a.num_ / g1) * (g2.is_one() ? b.num_ : b.num_ / g2);
  UPoly d = (g2.is_one() ? a.den_ : a.den_ / g2) * (g1.is_one() ? b.den_ : b.den_ / g1);
  Q l = d.lc();
  if (l != 1) {
    n *= 1 / l;
    d *= 1 / l;
  }
  return RatFunc(std::move(n), std::move(d), true);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  UPoly n = den_, d = num_;
  Q l = d.lc();
  return RatFunc(n * (1 / l), d * (1 / l), true);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(num_.pow(e), den_.pow(e), true);
}

RatFunc RatFunc::derivative() const {
  if (is_polynomial()) return RatFunc(num_.derivative(), UPoly(1), true);
  // (n/d)' = (n' d - n d') / d^2; reduce against d only
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Q RatFunc::eval(const Q& t) const {
  Q d = den_.eval(t);
  if (d == 0) throw std::domain_error("rational function evaluated at a pole");
  return num_.eval(t) / d;
}

RatFunc RatFunc::compose(const RatFunc& inner) const {
  // homogenize: n(i)/d(i) with i = a/b
  auto hom = [&](const UPoly& p, int D) {
    UPoly r;
    UPoly bpow(1);
    std::vector<UPoly> apow{UPoly(1)};
    for (int k = 1; k <= p.degree(); ++k) apow.push_back(apow.back() * inner.num_);
    for (int k = p.degree(); k >= 0; --k) {
      if (p.coeff(k) != 0) r += apow[k] * inner.den_.pow(D - k) * p.coeff(k);
    }
    return r;
  };
  int D = std::max(num_.degree(), den_.degree());
  return RatFunc(hom(num_, D), hom(den_, D));
}

std::string RatFunc::str(const std::string& var) const {
  if (is_polynomial()) return num_.str(var);
  std::string n = num_.str(var), d = den_.str(var);
  bool nsimple = num_.is_constant() || (num_.coeffs().size() - std::count(num_.coeffs().begin(), num_.coeffs().end(), Q(0))) == 1;
  return (nsimple ? n : "(" + n + ")") + "/(" + d + ")";
}

}  // namespace dg
