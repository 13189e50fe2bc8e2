#pragma once

#include <string>

#include "dg/upoly.hpp"

namespace dg {

// Univariate rational function num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Q& c) : num_(c), den_(1) {}        // NOLINT
  RatFunc(long c) : RatFunc(Q(c)) {}               // NOLINT
  RatFunc(const UPoly& p) : num_(p), den_(1) {}    // NOLINT
  RatFunc(const UPoly& n, const UPoly& d);

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }

  RatFunc operator-() const { return RatFunc(-num_, den_, true); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc inverse() const;
  RatFunc pow(int e) const;
  RatFunc derivative() const;
  Q eval(const Q& t) const;
  RatFunc compose(const RatFunc& inner) const;

  std::string str(const std::string& var = "x") const;

 private:
  RatFunc(UPoly n, UPoly d, bool /*trusted*/) : num_(std::move(n)), den_(std::move(d)) {}
  UPoly num_, den_;
};

}  // namespace dg
