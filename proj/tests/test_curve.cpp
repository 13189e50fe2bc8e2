#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dg/birational.hpp"
#include "dg/curve.hpp"
#include "support.hpp"

using namespace dgtest;

namespace {

const std::vector<std::string> XYZ{"x", "y", "z"};

RatFunc RF(const std::string& n, const std::string& d) { return RatFunc(U(n, "p"), U(d, "p")); }

const RatFunc& simplest_H() {
  static const RatFunc h = RF("1728*p^3*(1-27*p)", "(1-24*p)^3");
  return h;
}

PlaneCurveQP curve_xy(const MPoly& f) {
  PlaneCurveQP C;
  C.u = "x";
  C.v = "y";
  C.poly = f;
  return C;
}

MPoly Pxyp(const std::string& s) { return P(s, {"x", "y", "p"}); }

std::string qs(const Q& q) { return "(" + q.get_str() + ")"; }

std::string errname(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

}  // namespace

TEST_CASE("elimination") {
  auto C = eliminate_diag_curve(P("1-x-y-z"));
  CHECK(C.poly == Pxyp("-x^2*y-x*y^2+x*y-p"));
  CHECK(C.u == "x");
  CHECK(C.v == "y");
  CHECK_FALSE(C.degenerate);

  auto N = eliminate_diag_curve(P("z^2-(1-3*(x+y)+5*(x^2+y^2))"), {"x", "y"}, "y");
  MPoly want = P("5*x^4-x^2*z^2-3*x^3+5*p^2-3*p*x+x^2", {"x", "z", "p"});
  CHECK((N.poly == want || N.poly == -want));

  auto B = eliminate_diag_curve(P("(1+3*x+7*x^2)*(1-x-y*(1+3*x+7*x^2))-z"));
  CHECK(B.poly == Pxyp("-49*x^5*y^2-42*x^4*y^2-7*x^4*y-23*x^3*y^2+4*x^3*y-6*x^2*y^2+2*x^2*y-x*y^2+x*y-p"));

  auto Z = eliminate_diag_curve(P("z"));
  CHECK(Z.degenerate);
  CHECK(Z.poly == Pxyp("p"));

  CHECK(errname([] { eliminate_diag_curve(P("1-x-y"), XYZ, "z"); }) == "NotDependentOnEliminated");
}

TEST_CASE("cubic route") {
  auto r = j_from_cubic(eliminate_diag_curve(P("1-x-y-z")));
  CHECK(r.H == simplest_H());
  CHECK(r.j * r.H == RatFunc(1728));
  CHECK(r.route == HauptRoute::Cubic);

  auto w = j_from_cubic(curve_xy(Pxyp("y^2-x^3+x")));
  CHECK(w.j == RatFunc(1728));

  auto a = j_from_cubic(eliminate_diag_curve(P("z^2-(1-x-y)"), {"x", "y"}, "y"));
  CHECK(a.H == RF("27*p^2*(1-4*p)", "4*(1-3*p)^3"));

  CHECK(errname([] { j_from_cubic(curve_xy(Pxyp("y^2-x^4-p"))); }) == "WrongDegree");
  CHECK(errname([] { j_from_cubic(curve_xy(Pxyp("y^2-x^3"))); }) == "SingularCurve");
  CHECK(errname([] { j_from_cubic(curve_xy(Pxyp("y^2-x^3-p"))); }) == "UndefinedHauptmodul");
}

TEST_CASE("quadratic fiber route") {
  auto N = eliminate_diag_curve(P("z^2-(1-3*(x+y)+5*(x^2+y^2))"), {"x", "y"}, "y");
  auto r = j_from_quadratic_fiber(N, "z");
  CHECK(r.H == RF("27*p^2*(11-200*p)^2*(1-16*p+100*p^2)", "4*(1-27*p+300*p^2)^3"));
  CHECK(r.route == HauptRoute::QuadraticFiber);

  PlaneCurveQP e;
  e.u = "u";
  e.v = "v";
  e.poly = P("v^2-u^3-u", {"u", "v", "p"});
  CHECK(j_from_quadratic_fiber(e, "v").j == RatFunc(1728));

  auto B = eliminate_diag_curve(P("(1+3*x+7*x^2)*(1-x-y*(1+3*x+7*x^2))-z"));
  CHECK(j_from_quadratic_fiber(B, "y").H == simplest_H());
  CHECK(j_from_quadratic_fiber(eliminate_diag_curve(P("1-x-y-z")), "y").H == simplest_H());

  // z^3 = 1 - (x + y): genus two
  auto G = eliminate_diag_curve(P("z^3-(1-x-y)"), {"x", "y"}, "y");
  CHECK(errname([&] { j_from_quadratic_fiber(G, "x"); }) == "UnsupportedGenusShape");
  CHECK(errname([&] { hauptmodul_of_curve(G); }) == "UnsupportedGenusShape");
  CHECK(errname([] { j_from_quadratic_fiber(curve_xy(Pxyp("y^2-x^2-p")), "y"); }) == "RationalCurve");
}

TEST_CASE("hauptmodul of denominators") {
  CHECK(hauptmodul_of_denominator(P("1-x-y-z")).H == simplest_H());
  // denominator of the collineation image (1-x+2y)/D
  MRat img = apply_to_rational(parse_map("colline(1-x+2*y; x; y)", XYZ), P("1"), P("1-x-y-z"));
  CHECK(hauptmodul_of_denominator(img.den).H == simplest_H());
  CHECK(hauptmodul_of_denominator(P("1-2*x+y-z*(1-x+2*y)^3")).H == simplest_H());
  CHECK(errname([] { hauptmodul_of_denominator(P("1-x-y", {"x", "y"})); }) == "RationalCurve");
  CHECK(errname([] { hauptmodul_of_denominator(P("z")); }) == "RationalCurve");
}

TEST_CASE("Weierstrass calibration (property)") {
  for (int it = 0; it < 100; ++it) {
    Q A = rq(9, 4), B = rq(9, 4);
    // j = 0 leaves H undefined
    if (A == 0) A = Q(it + 1, 3);
    Q want = 6912 * A * A * A / (4 * A * A * A + 27 * B * B);
    auto f = Pxyp("y^2-x^3-" + qs(A) + "*x-" + qs(B));
    auto rc = j_from_cubic(curve_xy(f));
    REQUIRE(rc.j == RatFunc(want));
    REQUIRE(j_from_quadratic_fiber(curve_xy(f), "y").j == RatFunc(want));
  }
}

TEST_CASE("cubic j is invariant under affine changes of coordinates (property)") {
  for (int it = 0; it < 100; ++it) {
    Q A = rq(5, 2), B = rq(5, 2) + Q(1, 7);
    if (A == 0) A = 1;
    // x -> a x + b y + c, y -> d x + e y + f
    Q a = rq(3), b = rq(3), c = rq(3), d = rq(3), e = rq(3), f = rq(3);
    if (a * e - b * d == 0) continue;
    std::string X = "(" + qs(a) + "*x+" + qs(b) + "*y+" + qs(c) + ")", Y = "(" + qs(d) + "*x+" + qs(e) + "*y+" + qs(f) + ")";
    // coefficients of the curve family also move with p
    std::string s = Y + "^2-" + X + "^3-" + qs(A) + "*" + X + "-" + qs(B) + "-p";
    auto moved = j_from_cubic(curve_xy(Pxyp(s)));
    auto base = j_from_cubic(curve_xy(Pxyp("y^2-x^3-" + qs(A) + "*x-" + qs(B) + "-p")));
    REQUIRE(moved.j == base.j);
    REQUIRE(moved.j * moved.H == RatFunc(1728));
  }
}

TEST_CASE("Hauptmodul is invariant under triangular maps (property)") {
  for (int it = 0; it < 100; ++it) {
    // a pivot in z raises both curve degrees beyond the supported shapes
    int piv = static_cast<int>(rint(0, 1));
    int up = (piv + 1) % 3, down = (piv + 2) % 3;
    if (rint(0, 1)) std::swap(up, down);
    UPoly q = rpoly(static_cast<int>(rint(1, 2)), 5);
    if (q.coeff(0) == 0) q = q + UPoly(Q(1));
    if (q.is_constant()) q = q + UPoly::x();
    MRat img = apply_to_rational(triangular_scale(XYZ, piv, up, down, RatFunc(q)), P("1"), P("1-x-y-z"));
    auto r = hauptmodul_of_denominator(img.den);
    REQUIRE(r.H == simplest_H());
  }
}

TEST_CASE("factored printing") {
  CHECK(factored_str(simplest_H()) == "1728*p^3*(1-27*p)/(1-24*p)^3");
  CHECK(factored_str(RF("27*p^2*(11-200*p)^2*(1-16*p+100*p^2)", "4*(1-27*p+300*p^2)^3")) ==
        "27/4*p^2*(11-200*p)^2*(1-16*p+100*p^2)/(1-27*p+300*p^2)^3");
  CHECK(factored_str(RF("1", "p*(1-p)")) == "1/(p*(1-p))");
  CHECK(factored_str(RF("-3*(2-p)", "1")) == "-3*(2-p)");
  CHECK(factored_str(RF("-p", "1")) == "-p");
  CHECK(factored_str(RatFunc(1728)) == "1728");
  for (int it = 0; it < 100; ++it) {
    UPoly a = rpoly(3, 5), b = rpoly(2, 5);
    if (a.is_zero() || b.is_zero()) continue;
    RatFunc f(a * a * UPoly::x(), b);
    std::string s = factored_str(f);
    // reparse through the polynomial parser
    auto e = parse_expr(s);
    auto r = to_ratfn(e, {"p"});
    REQUIRE(RatFunc(r.num.to_upoly(0), r.den.to_upoly(0)) == f);
  }
}
