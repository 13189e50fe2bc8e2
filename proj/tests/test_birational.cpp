#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dg/birational.hpp"
#include "dg/special.hpp"
#include "support.hpp"

using namespace dgtest;

namespace {

const std::vector<std::string> XYZ{"x", "y", "z"};

MRat R(const std::string& num, const std::string& den) { return {P(num), P(den)}; }

bool same_images(const BiratMap& a, const BiratMap& b) {
  auto ia = map_images(a), ib = map_images(b);
  if (ia.size() != ib.size()) return false;
  for (size_t i = 0; i < ia.size(); ++i)
    if (!rat_equal(ia[i], ib[i])) return false;
  return true;
}

RatFunc rq_fn(int deg) {
  // q with q(0) != 0 and a denominator nonvanishing at 0
  UPoly n = rpoly(deg, 4), d = rpoly(static_cast<int>(rint(0, 1)), 4);
  if (n.coeff(0) == 0) n = n + UPoly(Q(1));
  if (d.coeff(0) == 0) d = d + UPoly(Q(1));
  return RatFunc(n, d);
}

BiratMap random_tri() {
  int piv = static_cast<int>(rint(0, 2));
  int up = (piv + 1) % 3, down = (piv + 2) % 3;
  if (rint(0, 1)) std::swap(up, down);
  return triangular_scale(XYZ, piv, up, down, rq_fn(static_cast<int>(rint(1, 2))));
}

// random denominator with constant term 1
MPoly random_den() {
  MPoly q = rmpoly(XYZ, 2, 4, 3);
  q += MPoly(XYZ, Q(1) - q.constant_term());
  return q;
}

const char* ONE = "1";
const char* SIMPLE = "1-x-y-z";

}  // namespace

TEST_CASE("apply to rational") {
  BiratMap B = parse_map("tri(x; y, z; 1+3*x+7*x^2)", XYZ);
  MRat img = apply_to_rational(B, P(ONE), P(SIMPLE));
  const std::string q = "(1+3*x+7*x^2)";
  CHECK(rat_equal(img, R(q, q + "-x*" + q + "-y*" + q + "^2-z")));

  MRat same = apply_to_rational(identity_map(XYZ), P("2+x"), P(SIMPLE));
  CHECK(rat_equal(same, R("2+x", SIMPLE)));

  BiratMap I = parse_map("hadamard(x, y; z; x^2*y^2)", XYZ);
  MRat hi = apply_to_rational(I, P(ONE), P(SIMPLE));
  CHECK(rat_equal(hi, R("-x*y", "x^3*y^3*z-x*y+x+y")));
  // the variant with x^2*y^3*z is not the image
  CHECK_FALSE(rat_equal(hi, R("-x*y", "x^2*y^3*z-x*y+x+y")));

  // collineation lift with the reference denominator
  BiratMap C = parse_map("colline(1-x+2*y; 2+x+3*y; 1+5*x+7*y)", XYZ);
  MRat cr = apply_to_rational(C, P(ONE), P(SIMPLE));
  MRat expect = R("(1-x+2*y)*(2+x+3*y)*(1+5*x+7*y)",
                  "x^4*y*z-6*x^3*y^2*z+12*x^2*y^3*z-8*x*y^4*z-3*x^3*y*z+12*x^2*y^2*z-12*x*y^3*z"
                  "+3*x^2*y*z-6*x*y^2*z-35*x^3-194*x^2*y-323*x*y^2-x*y*z-168*y^3-87*x^2"
                  "-251*x*y-178*y^2-36*x-50*y-4");
  CHECK(rat_equal(cr, expect));
  CHECK(diag_rational(cr.num, cr.den, 10) == UniSeries::from_ratfunc(RatFunc(UPoly(Q(-1, 2)), U("1+x/4")), 10));

  CHECK_THROWS_AS(apply_to_rational(parse_map("tri(x; y, z; cos(x))", XYZ), P(ONE), P(SIMPLE)), Error);
}

TEST_CASE("apply to series") {
  BiratMap B = parse_map("tri(x; y, z; 1+3*x+7*x^2)", XYZ);
  TruncSeries s = apply_to_series(B, P(ONE), P(SIMPLE), 8);
  CHECK(diag(s) == diag_rational(P(ONE), P(SIMPLE), 8));
  CHECK(apply_to_series(identity_map(XYZ), P(ONE), P(SIMPLE), 6) == expand_rational(P(ONE), P(SIMPLE), 6));
  BiratMap cosmap = parse_map("tri(x; y, z; cos(x))", XYZ, 12);
  CHECK(diag(apply_to_series(cosmap, P(ONE), P(SIMPLE), 8)) == diag_rational(P(ONE), P(SIMPLE), 8));
  try {
    apply_to_series(parse_map("hadamard(x, y; z; x^2*y^2)", XYZ), P(ONE), P(SIMPLE), 4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.name() == "OriginNotPreserved");
  }
}

TEST_CASE("product preservation") {
  CHECK(preserves_product(parse_map("tri(x; y, z; 1+3*x+7*x^2)", XYZ)) == 1);
  CHECK(preserves_product(identity_map(XYZ)) == 1);
  CHECK(preserves_product(parse_map("mono([[1,0,0],[2,2,0],[0,1,3]])", XYZ)) == 3);
  CHECK(preserves_product(parse_map("hadamard(x, y; z; x^2*y^2)", XYZ)) == 1);
  CHECK(preserves_product(parse_map("colline(1-x+2*y; 2+x+3*y; 1+5*x+7*y)", XYZ)) == 1);
  CHECK(preserves_product(parse_map("colline(1-x+2*y; x; y)", XYZ)) == 1);
  CHECK(preserves_product(parse_map("tri(y; x, z; cos(y))", XYZ)) == 1);
  CHECK(preserves_product(parse_map("compose(tri(x; y, z; 1+3*x); mono([[1,0,0],[2,2,0],[0,1,3]]))", XYZ)) == 3);
  CHECK_THROWS_AS(preserves_product(parse_map("mono([[1,0,0],[0,2,0],[0,0,1]])", XYZ)), Error);
  CHECK_THROWS_AS(preserves_product(parse_map("hadamard(x, y; z; x*y)", XYZ)), Error);
}

TEST_CASE("product preservation on random composites (property)") {
  for (int it = 0; it < 100; ++it) {
    std::vector<BiratMap> parts;
    int n = static_cast<int>(rint(1, 3)), want = 1;
    for (int i = 0; i < n; ++i) {
      if (rint(0, 3) == 0) {
        parts.push_back(parse_map("mono([[1,0,0],[2,2,0],[0,1,3]])", XYZ));
        want *= 3;
      } else {
        parts.push_back(random_tri());
      }
    }
    REQUIRE(preserves_product(compose(parts)) == want);
  }
}

TEST_CASE("compose and invert") {
  BiratMap B = parse_map("tri(x; y, z; 1+3*x+7*x^2)", XYZ);
  CHECK(same_images(invert(B), parse_map("tri(x; y, z; 1/(1+3*x+7*x^2))", XYZ)));
  CHECK(same_images(invert(identity_map(XYZ)), identity_map(XYZ)));
  for (int n = 1; n <= 3; ++n) {
    std::vector<BiratMap> rep(n, B);
    CHECK(same_images(compose(rep), parse_map("tri(x; y, z; (1+3*x+7*x^2)^" + std::to_string(n) + ")", XYZ)));
  }
  BiratMap I = parse_map("hadamard(x, y; z; x^2*y^2)", XYZ);
  CHECK(same_images(compose({I, I}), identity_map(XYZ)));
  CHECK_THROWS_AS(invert(parse_map("colline(1-x+2*y; x; y)", XYZ)), Error);
  CHECK_THROWS_AS(invert(parse_map("mono([[1,0,0],[2,2,0],[0,1,3]])", XYZ)), Error);
  BiratMap U3 = parse_map("mono([[1,1,0],[0,1,0],[0,0,1]])", XYZ);
  CHECK(same_images(compose({U3, invert(U3)}), identity_map(XYZ)));
}

TEST_CASE("compose with inverse fixes rational functions (property)") {
  for (int it = 0; it < 100; ++it) {
    BiratMap m;
    switch (rint(0, 2)) {
      case 0: m = compose({random_tri(), random_tri()}); break;
      case 1: m = parse_map("mono([[1,0,0],[" + std::to_string(rint(-2, 2)) + ",1,0],[0," + std::to_string(rint(-2, 2)) + ",1]])", XYZ); break;
      default: m = parse_map("hadamard(x; z; x^" + std::to_string(rint(1, 3)) + "*y^" + std::to_string(rint(0, 2)) + ")", XYZ); break;
    }
    BiratMap id = compose({m, invert(m)});
    for (int k = 0; k < 5; ++k) {
      MPoly num = rmpoly(XYZ, 2, 3, 4), den = random_den();
      if (num.is_zero()) num = P("1");
      REQUIRE(rat_equal(apply_to_rational(id, num, den), MRat{num, den}));
    }
  }
}

TEST_CASE("invariance reports") {
  auto r = invariance_report(P(ONE), P(SIMPLE), parse_map("tri(x; y, z; 1/(1-2*x))", XYZ), 10);
  CHECK(r.equal);
  CHECK_FALSE(r.first_divergence);
  CHECK(invariance_report(P(ONE), P(SIMPLE), identity_map(XYZ), 6).equal);

  BiratMap nb = parse_map("compose(tri(x; y, z; 1+3*x); mono([[1,0,0],[2,2,0],[0,1,3]]))", XYZ);
  auto rn = invariance_report(P(ONE), P(SIMPLE), nb, 12);
  CHECK(rn.equal);
  CHECK(rn.power == 3);
  CHECK(rn.image_diag == pfq_series(PFQSpec{{Q(1, 3), Q(2, 3)}, {Q(1)}, 27, 3}, 12));

  auto rm = invariance_report(P(ONE), P(SIMPLE), parse_map("mono([[1,0,0],[2,2,0],[0,1,3]])", XYZ), 12);
  CHECK(rm.equal);
  CHECK(rm.image_diag[3] == 6);
  CHECK(rm.image_diag[6] == 90);

  try {
    invariance_report(P(ONE), P(SIMPLE), parse_map("mono([[1,0,0],[0,1,0],[1,0,1]])", XYZ), 6);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.name() == "ProductNotPreserved");
  }
}

TEST_CASE("triangular maps preserve diagonals (property)") {
  for (int it = 0; it < 100; ++it) {
    std::vector<BiratMap> parts;
    int n = static_cast<int>(rint(1, 2));
    for (int i = 0; i < n; ++i) parts.push_back(random_tri());
    MPoly num = rmpoly(XYZ, 1, 2, 3);
    if (num.is_zero()) num = P("1");
    auto rep = invariance_report(num, random_den(), compose(parts), 6);
    REQUIRE(rep.equal);
  }
}

TEST_CASE("map text round trip") {
  for (std::string s : {"tri(x; y, z; 1+3*x+7*x^2)", "mono([[1,0,0],[2,2,0],[0,1,3]])", "hadamard(x, y; z; x^2*y^2)",
                        "colline(1-x+2*y; x; y)", "compose(tri(y; x, z; 1-y); tri(z; x, y; 2+z))"}) {
    BiratMap m = parse_map(s, XYZ);
    CHECK(same_images(parse_map(map_str(m), XYZ), m));
  }
  CHECK_THROWS_AS(parse_map("spin(x)", XYZ), Error);
  CHECK_THROWS_AS(parse_map("tri(x; y, z; 1+y)", XYZ), Error);
}
