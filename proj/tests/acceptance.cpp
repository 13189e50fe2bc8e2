// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance               all criteria
//   acceptance --criterion N one criterion (exit status 1 on FAIL)

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dg/birational.hpp"
#include "dg/curve.hpp"
#include "dg/diffop.hpp"
#include "dg/expr.hpp"
#include "dg/guess.hpp"
#include "dg/series.hpp"
#include "dg/special.hpp"

using namespace dg;

namespace {

// Exact arithmetic throughout: every comparison is literal equality of rationals.
constexpr double kTolerance = 0.0;
constexpr unsigned long kSeed = 20240611;

const std::vector<std::string> XYZ{"x", "y", "z"};

MPoly P(const std::string& s, const std::vector<std::string>& v = XYZ) { return parse_poly(s, v); }
UPoly U(const std::string& s) { return parse_poly(s, {"x"}).to_upoly(0); }
DiffOp op(const std::string& s) { return parse_diffop(s); }

Q fact(long n) {
  Z r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Q(r);
}

Q poch(const Q& a, long n) {
  Q out = 1;
  for (long i = 0; i < n; ++i) out *= a + i;
  return out;
}

// pFq(a; b; c x^k) through x^N from the closed form
UniSeries pfq_oracle(const std::vector<Q>& a, const std::vector<Q>& b, const Q& c, int k, int N) {
  UniSeries s = UniSeries::zero(N);
  Q cp = 1;
  for (int m = 0; m * k <= N; ++m) {
    Q t = cp / fact(m);
    for (const auto& ai : a) t *= poch(ai, m);
    for (const auto& bi : b) t /= poch(bi, m);
    s[m * k] = t;
    cp *= c;
  }
  return s;
}

UniSeries from_list(const std::vector<std::string>& c) {
  std::vector<Q> v;
  for (const auto& s : c) v.push_back(parse_rational(s));
  return UniSeries(v);
}

// coefficients at x^start, x^(start+step), ...
bool matches_at(const UniSeries& s, int start, int step, const std::vector<std::string>& want) {
  for (size_t i = 0; i < want.size(); ++i)
    if (s.coeff(start + static_cast<int>(i) * step) != parse_rational(want[i])) return false;
  return true;
}

bool proportional(const RatFunc& a, const RatFunc& b) { return !a.is_zero() && !b.is_zero() && (a * b.inverse()).is_constant(); }

// a == c b for a nonzero constant c fixed by the first nonzero coefficient of b
bool series_proportional(const UniSeries& a, const UniSeries& b, int through, Q* ratio = nullptr) {
  int v = b.truncate(through).valuation();
  if (v < 0 || a.bound() < through || b.bound() < through) return false;
  Q c = a[v] / b[v];
  if (c == 0) return false;
  for (int i = 0; i <= through; ++i)
    if (a[i] != c * b[i]) return false;
  if (ratio) *ratio = c;
  return true;
}

std::string short_str(const std::string& s, size_t n = 160) { return s.size() <= n ? s : s.substr(0, n) + "..."; }

class Checks {
 public:
  void operator()(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failed_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool pass() const { return failed_.empty(); }
  std::string detail() const {
    std::ostringstream o;
    o << (total_ - failed_.size()) << "/" << total_ << " checks";
    for (const auto& f : failed_) o << "; FAILED " << f;
    for (const auto& n : notes_) o << "; " << n;
    return o.str();
  }

 private:
  size_t total_ = 0;
  std::vector<std::string> failed_, notes_;
};

#ifndef DG_BINARY
#define DG_BINARY "dg"
#endif

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string(DG_BINARY) + " --quiet " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) {
    status = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  int st = pclose(f);
  status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

// ---------------------------------------------------------------- 1
void c1_diagonal_fixture(Checks& ck) {
  int st = 0;
  std::string out = run_cli("diag \"1/(1-x-y-z)\" --terms 7", st);
  ck(st == 0, "cli exit status");
  ck(out.find("series = 1, 6, 90, 1680, 34650, 756756, 17153136\n") != std::string::npos, "cli series line");
  // (3n)!/(n!)^3
  UniSeries d = diag_rational(P("1"), P("1-x-y-z"), 6);
  bool oracle = true;
  for (int n = 0; n <= 6; ++n) oracle = oracle && d[n] == fact(3 * n) / (fact(n) * fact(n) * fact(n));
  ck(oracle, "multinomial oracle");
}

// ---------------------------------------------------------------- 2
void c2_guess_fixture(Checks& ck) {
  const int N = 23;
  UniSeries d = diag_rational(P("1"), P("1-x-y-z"), N);
  std::vector<Q> c;
  for (int n = 0; n <= N; ++n) c.push_back(fact(3 * n) / (fact(n) * fact(n) * fact(n)));
  ck(d == UniSeries(c), "24 terms equal (3n)!/(n!)^3");
  // term ratio (n+1)^2 c_{n+1} = 3(3n+1)(3n+2) c_n gives theta^2 - 3x(3theta+1)(3theta+2)
  bool ratio = true;
  for (int n = 0; n < N; ++n) ratio = ratio && Q(n + 1) * (n + 1) * c[n + 1] == Q(3) * (3 * n + 1) * (3 * n + 2) * c[n];
  ck(ratio, "hypergeometric term ratio");
  DiffOp oracle = from_theta({U("x^2"), U("-3*(3*x+1)*(3*x+2)")}).normalized();
  auto g = guess_ode(d, GuessConfig{});
  ck(g.has_value(), "guess found");
  if (!g) return;
  ck(g->order == 2, "order 2");
  ck(g->op == oracle, "primitive theta form equals the hypergeometric operator");
  ck(apply(g->op, d).is_zero(), "annihilates all 24 terms");
}

// ---------------------------------------------------------------- 3
void c3_four_variable(Checks& ck) {
  const std::vector<std::string> v{"x", "y", "z", "u"};
  auto g = guess_and_certify(P("1", v), P("1-(1+u)*(x+y+z)", v), GuessConfig{}, 19);
  ck(g.order == 4, "order 4");
  // 2x(3theta+2)^2(3theta+1)^2 - 81theta^3(2theta-1)
  DiffOp reference = from_theta({U("-81*x^3*(2*x-1)"), U("2*(3*x+2)^2*(3*x+1)^2")});
  bool literal = equal_normalized(g.op, reference);
  ck(literal, "guessed operator equals the reference operator");
  if (!literal) {
    ck.note("guessed theta form: " + g.op.theta_str());
    DiffOp derived = from_theta({U("-2*x^3*(2*x-1)"), U("9*(3*x+2)^2*(3*x+1)^2")});
    ck.note(std::string("equals 9x(3T+1)^2(3T+2)^2-2T^3(2T-1): ") + (equal_normalized(g.op, derived) ? "yes" : "no"));
  }
  auto sd = selfdual_report(g.op, 12);
  ck(sd.has_value(), "selfdual intertwiner found at hom-deg 12");
  if (!sd) return;
  ck(equal_normalized(sd->R, op("x*Dx+1/2")), "intertwiner is theta + 1/2");
  ck(g.op * sd->R == sd->S * adjoint(g.op), "L o R = S o adjoint(L) exactly");
  ck.note("R = " + sd->R.str());
}

// ---------------------------------------------------------------- 4
const char* kQ = "1+x*y+y*z+z*x+3*(x^2+y^2+z^2)";

void c4_power_ladder(Checks& ck) {
  const int N = 12;
  UniSeries d1 = diag_rational(P("1"), P(kQ), N), d2 = diag_rational(P("1"), P(kQ).pow(2), N),
            d3 = diag_rational(P("1"), P(kQ).pow(3), N);
  DiffOp t2 = op("3*x*Dx+2"), t4 = op("3*x*Dx+4");
  UniSeries r2 = apply(t2, d1), r3 = apply(t4 * t2, d1);
  ck(r2.bound() >= 10 && Q(2) * d2.truncate(10) == r2.truncate(10), "2 Diag(1/Q^2) = (3T+2) Diag(1/Q)");
  ck(r3.bound() >= 10 && Q(8) * d3.truncate(10) == r3.truncate(10), "8 Diag(1/Q^3) = (3T+4)(3T+2) Diag(1/Q)");
  const int M = 79;
  auto g1 = guess_ode(diag_rational(P("1"), P(kQ), M), GuessConfig{});
  auto g2 = guess_ode(diag_rational(P("1"), P(kQ).pow(2), M), GuessConfig{});
  ck(g1 && g1->order == 4, "telescoper of 1/Q has order 4");
  ck(g2 && g2->order == 4, "telescoper of 1/Q^2 has order 4");
  if (!g1 || !g2) return;
  auto h = find_intertwiner(g1->op, g2->op, 12);
  ck(h.has_value(), "intertwiner found");
  if (!h) return;
  ck(equal_normalized(h->R, t2), "intertwiner is 3xD+2");
  ck(g2->op * h->R == h->S * g1->op, "operator identity");
  ck.note("R = " + h->R.str());
}

// ---------------------------------------------------------------- 5
void c5_cross_relations(Checks& ck) {
  const int M = 79;
  UniSeries d1 = diag_rational(P("1"), P(kQ), M);
  UniSeries dxy = diag_rational(P("x*y"), P(kQ), M + 1).derivative().truncate(M);
  ck(matches_at(d1, 0, 2, {"1", "-195", "135225", "-143647728", "182699446545", "-252437965534755", "364803972334074000"}),
     "Diag(1/Q) reference coefficients");
  ck(matches_at(d1, 1, 2, {"0", "0", "0", "0", "0", "0"}), "Diag(1/Q) is even");
  ck(matches_at(dxy, 1, 2, {"16", "-38400", "71593536", "-126120445440", "218901889206000", "-378463218115207680"}),
     "Dx Diag(xy/Q) reference coefficients");
  auto L1 = guess_ode(d1, GuessConfig{}), Lxy = guess_ode(dxy, GuessConfig{});
  ck(L1 && L1->order == 4, "L4^(1) order 4");
  ck(Lxy && Lxy->order == 4, "L4^(xy) order 4");
  if (!L1 || !Lxy) return;
  const int through = 9;
  // J3 maps solutions of L4^(xy) to solutions of L4^(1); Q3 the other way
  auto J3 = find_intertwiner(Lxy->op, L1->op, 12);
  auto Q3 = find_intertwiner(L1->op, Lxy->op, 12);
  ck(J3.has_value(), "J3 found at degree 12");
  ck(Q3.has_value(), "Q3 found at degree 12");
  if (!J3 || !Q3) return;
  ck(L1->op * J3->R == J3->S * Lxy->op, "L4^(1) J3 = P3 L4^(xy)");
  ck(Lxy->op * Q3->R == Q3->S * L1->op, "L4^(xy) Q3 = K3 L4^(1)");
  Q cj, cq;
  ck(series_proportional(apply(J3->R, dxy), d1, through, &cj), "Diag(1/Q) = J3 Dx Diag(xy/Q) through order 9");
  ck(series_proportional(apply(Q3->R, d1), dxy, through, &cq), "Dx Diag(xy/Q) = Q3 Diag(1/Q) through order 9");
  ck.note("J3 scale " + to_string(cj) + ", Q3 scale " + to_string(cq));
  // with those scalings J3 Q3 fixes Diag(1/Q)
  UniSeries back = apply(J3->R, apply(Q3->R, d1));
  ck(back.truncate(through) == (cj * cq) * d1.truncate(through), "J3 Q3 fixes Diag(1/Q)");
}

// ---------------------------------------------------------------- 6
void c6_algebraic_diagonal(Checks& ck) {
  const int N = 40;
  UniSeries d = diag_of_ratpower(P("1"), P("1-x-y-z"), P("1-y-z"), Q(1, 3), N);
  ck(matches_at(d, 0, 1, {"1", "40/9", "5236/81", "7827820/6561", "1444588600/59049"}), "reference coefficients");
  ck(d == pfq_oracle({Q(2, 9), Q(5, 9), Q(8, 9)}, {Q(2, 3), Q(1)}, 27, 1, N), "3F2([2/9,5/9,8/9],[2/3,1],27x) through order 40");
  auto g = guess_ode(d, GuessConfig{});
  ck(g && g->order == 3, "order-3 operator");
  if (!g) return;
  auto sd = selfdual_report(g->op, 20);
  ck(!sd.has_value(), "selfdual_report NONE at hom-deg 20");
  if (sd) ck.note("unexpected R = " + short_str(sd->R.str()));
}

// ---------------------------------------------------------------- 7
void c7_exterior_squares(Checks& ck) {
  const int N = 60;
  UniSeries f43 = pfq_oracle({Q(1, 5), Q(2, 5), Q(3, 5), Q(4, 5)}, {Q(1), Q(1, 2), Q(1, 2)}, Q(3125, 16), 2, N);
  auto g4 = guess_ode(f43, GuessConfig{});
  ck(g4 && g4->order == 4, "order-4 operator of the 4F3 series");
  if (g4) {
    ck(equal_normalized(g4->op, pfq_operator(PFQSpec{{Q(1, 5), Q(2, 5), Q(3, 5), Q(4, 5)}, {Q(1), Q(1, 2), Q(1, 2)}, Q(3125, 16), 2})),
       "guessed operator equals the hypergeometric operator");
    auto e = exterior_square(g4->op);
    auto rs = rational_solutions(e.op);
    RatFunc want(U("1"), U("x*(3125*x^2-16)"));
    ck(rs.size() == 1 && proportional(rs[0], want), "rational solution 1/(x(5^5x^2-2^4))");
    ck.note("4F3 ext^2 order " + std::to_string(e.op.order()));
  }
  UniSeries l3 = pfq_oracle({Q(5, 9), Q(8, 9), Q(11, 9)}, {Q(2, 3), Q(1)}, 27, 3, N);
  UniSeries m3 = pfq_oracle({Q(7, 9), Q(10, 9), Q(13, 9)}, {Q(1, 3), Q(1)}, 27, 3, N);
  auto gl = guess_ode(l3, GuessConfig{}), gm = guess_ode(m3, GuessConfig{});
  ck(gl && gl->order == 3, "L3 order 3");
  ck(gm && gm->order == 3, "M3 order 3");
  if (!gl || !gm) return;
  DiffOp L6 = lclm({gl->op, gm->op});
  ck(L6.order() == 6, "lclm order 6");
  auto e6 = exterior_square(L6);
  auto rs6 = rational_solutions(e6.op);
  RatFunc want6(U("4+621*x^3"), U("(1-27*x^3)^3*x"));
  bool found = false;
  for (const auto& r : rs6) found = found || proportional(r, want6);
  ck(found, "rational solution (4+621x^3)/((1-27x^3)^3 x)");
  ck.note("L6 ext^2 order " + std::to_string(e6.op.order()) + ", " + std::to_string(rs6.size()) + " rational solution(s)");
}

// ---------------------------------------------------------------- 8
std::string rand_q(std::mt19937_64& g, const std::string& t) {
  std::uniform_int_distribution<int> d(-5, 5);
  int a = d(g), b = d(g);
  if (a == 0 && b == 0) a = 2;
  return "1+(" + std::to_string(a) + ")*" + t + "+(" + std::to_string(b) + ")*" + t + "^2";
}

void c8_birational_suite(Checks& ck) {
  const int N = 8;
  std::mt19937_64 g(kSeed);
  const MPoly one = P("1"), den = P("1-x-y-z");
  std::string B = "tri(x; y, z; 1+3*x+7*x^2)";
  std::string tx = "tri(x; y, z; " + rand_q(g, "x") + ")", ty = "tri(y; z, x; " + rand_q(g, "y") + ")",
              tz = "tri(z; x, y; " + rand_q(g, "z") + ")";
  std::vector<std::pair<std::string, std::string>> maps{
      {"simplest", B}, {"random x", tx}, {"random y", ty}, {"random z", tz},
      {"composite", "compose(" + B + "; " + tx + "; " + ty + "; " + tz + ")"}, {"cos", "tri(x; y, z; cos(x))"}};
  for (const auto& [name, text] : maps) {
    auto r = invariance_report(one, den, parse_map(text, XYZ, 12), N);
    ck(r.equal && r.power == 1, name + ": " + text);
  }
  // x -> x^3 reindexing against 2F1([1/3,2/3],[1],27x^3)
  auto r = invariance_report(one, den, parse_map("mono([[1,0,0],[2,2,0],[0,1,3]])", XYZ), 3 * N);
  ck(r.equal && r.power == 3, "monomial map, power 3");
  ck(r.image_diag.truncate(3 * N) == pfq_oracle({Q(1, 3), Q(2, 3)}, {Q(1)}, 27, 3, 3 * N), "monomial image is 2F1(27x^3)");
  ck(matches_at(r.image_diag, 0, 3, {"1", "6", "90", "1680", "34650", "756756", "17153136"}), "reference x^3 series");
  ck.note("random maps " + tx + ", " + ty + ", " + tz);
}

// ---------------------------------------------------------------- 9
RatFunc RFp(const std::string& n, const std::string& d) {
  return RatFunc(parse_poly(n, {"p"}).to_upoly(0), parse_poly(d, {"p"}).to_upoly(0));
}

bool same_curve(const PlaneCurveQP& c, const std::string& reference) {
  return c.poly.primitive() == parse_poly(reference, {c.u, c.v, "p"}).primitive();
}

void c9_hauptmodul_suite(Checks& ck) {
  const RatFunc simplest = RFp("1728*p^3*(1-27*p)", "(1-24*p)^3");
  auto h = hauptmodul_of_denominator(P("1-x-y-z"));
  ck(h.H == simplest, "1-x-y-z: 1728p^3(1-27p)/(1-24p)^3");
  ck(same_curve(eliminate_diag_curve(P("1-x-y-z")), "-x^2*y-x*y^2+x*y-p"), "1-x-y-z: reference curve");

  // z^2 = 1 - (x + y), y = p/x
  auto c41 = eliminate_diag_curve(P("z^2-(1-x-y)"), {"x", "y"}, "y");
  ck(same_curve(c41, "-x^2-x*z^2-p+x"), "first surface: reference curve");
  ck(hauptmodul_of_curve(c41).H == RFp("27*p^2*(1-4*p)", "4*(1-3*p)^3"), "first surface: 27/4 p^2(1-4p)/(1-3p)^3");

  auto c42 = eliminate_diag_curve(P("z^2-(1-3*(x+y)+5*(x^2+y^2))"), {"x", "y"}, "y");
  ck(same_curve(c42, "5*x^4-x^2*z^2-3*x^3+5*p^2-3*p*x+x^2"), "second surface: reference curve");
  ck(hauptmodul_of_curve(c42).H == RFp("27*p^2*(11-200*p)^2*(1-16*p+100*p^2)", "4*(1-27*p+300*p^2)^3"),
     "second surface: reference Hauptmodul");

  const char* D =
      "x^4*y*z-6*x^3*y^2*z+12*x^2*y^3*z-8*x*y^4*z-3*x^3*y*z+12*x^2*y^2*z-12*x*y^3*z+3*x^2*y*z-6*x*y^2*z"
      "-35*x^3-194*x^2*y-323*x*y^2-x*y*z-168*y^3-87*x^2-251*x*y-178*y^2-36*x-50*y-4";
  ck(hauptmodul_of_denominator(P(D)).H == simplest, "collineation denominator: same Hauptmodul");

  // image of 1-x-y-z under (x, y(1+3x+7x^2), z/(1+3x+7x^2)), denominator cleared
  MRat img = apply_to_rational(parse_map("tri(x; y, z; 1+3*x+7*x^2)", XYZ), P("1"), P("1-x-y-z"));
  auto cb = eliminate_diag_curve(img.den);
  ck(same_curve(cb, "-49*x^5*y^2-42*x^4*y^2-7*x^4*y-23*x^3*y^2+4*x^3*y-6*x^2*y^2+2*x^2*y-x*y^2+x*y-p"),
     "image curve equals the reference curve");
  ck(hauptmodul_of_curve(cb).H == simplest, "image curve: same H as the source");
  ck.note("H = " + factored_str(h.H));
}

// ---------------------------------------------------------------- 10
const char* kS2pol =
    "2847312*(243*x^2+35*x-1)^3*s^6+158184*(243*x^2+35*x-1)^2*s^4+5040*(243*x^2+35*x-1)^2*s^3"
    "+2197*(243*x^2+35*x-1)*s^2+140*(243*x^2+35*x-1)*s+4*x*(243*x+35)";

void c10_collineation_chain(Checks& ck) {
  const int N = 60;
  MRat img = apply_to_rational(parse_map("colline(1-x+2*y; x; y)", XYZ), P("1"), P("1-x-y-z"));
  ck(img.num.primitive() == P("1-x+2*y").primitive(), "numerator 1-x+2y");
  UniSeries delta = diag_rational(img.num, img.den, N);
  ck(matches_at(delta, 0, 1, {"1", "4", "108", "1960", "43240", "965664", "22377600", "528712272", "12698698320", "308814134200"}),
     "diagonal 1, 4, 108, 1960, 43240, ...");
  auto L4 = guess_ode(delta, GuessConfig{});
  ck(L4 && L4->order == 4, "order-4 telescoper");
  if (!L4) return;

  // G2 from the algebraic root s1 of the reference minimal polynomial
  MPoly pol = parse_poly(kS2pol, {"s", "x"});
  UniSeries s1a = algebraic_root_series(pol, "s", "x", 0, N);
  auto G2 = guess_ode(s1a, GuessConfig{});
  ck(G2 && G2->order == 2, "order-2 annihilator of s1");
  if (!G2) return;
  auto [F2, rem] = right_divide(L4->op, G2->op);
  ck(rem.is_zero() && F2.order() == 2, "L4 = F2 G2 with zero remainder");

  auto fg = analytic_solutions(G2->op, N), fl = analytic_solutions(L4->op, N);
  const UniSeries* g0 = nullptr;
  const UniSeries* g1 = nullptr;
  const UniSeries* l2 = nullptr;
  for (const auto& [e, s] : fg.sols) {
    if (e == 0) g0 = &s;
    if (e == 1) g1 = &s;
  }
  for (const auto& [e, s] : fl.sols)
    if (e == 2) l2 = &s;
  ck(g0 && g1 && l2, "analytic solutions at exponents 0, 1 (G2) and 2 (L4)");
  if (!g0 || !g1 || !l2) return;
  const UniSeries& s1 = *g1;
  const UniSeries& s2 = *l2;
  ck(matches_at(s1, 0, 1, {"0", "1", "105/4", "7385/8", "2111725/64", "155849463/128"}), "s1 reference coefficients");
  ck(matches_at(s2, 0, 1, {"0", "0", "1", "93/2", "31185/16", "2488035/32", "1953542437/640"}), "s2 reference coefficients");
  // The exponent-0 solution is fixed only modulo s1. The reference s0 is the member whose
  // x coefficient is 105/4; the remaining reference coefficients are then predictions.
  Q c = Q(105, 4) - g0->coeff(1);
  UniSeries s0 = *g0 + c * s1;
  ck(matches_at(s0, 0, 1, {"1", "105/4", "12753/16", "876225/32", "251403765/256"}), "s0 reference coefficients");
  ck.note("s0 = frobenius s0 + (" + to_string(c) + ") s1");
  ck(delta == s0 - Q(89, 4) * s1 - Q(105) * s2, "delta = s0 - 89/4 s1 - 105 s2 through order 60");
  ck(s1 == s1a, "G2 solution s1 is the algebraic root");
  ck(eval_minpoly(pol, "s", "x", s1.truncate(20)).is_zero(), "s1 satisfies the minimal polynomial to order 20");

  // first collineation: (1-x+2y)(2+x+3y)(1+5x+7y)/D
  const char* D =
      "x^4*y*z-6*x^3*y^2*z+12*x^2*y^3*z-8*x*y^4*z-3*x^3*y*z+12*x^2*y^2*z-12*x*y^3*z+3*x^2*y*z-6*x*y^2*z"
      "-35*x^3-194*x^2*y-323*x*y^2-x*y*z-168*y^3-87*x^2-251*x*y-178*y^2-36*x-50*y-4";
  MPoly num = P("(1-x+2*y)*(2+x+3*y)*(1+5*x+7*y)");
  MRat first = apply_to_rational(parse_map("colline(1-x+2*y; 2+x+3*y; 1+5*x+7*y)", XYZ), P("1"), P("1-x-y-z"));
  ck(rat_equal(first, MRat{num, P(D)}), "reference R equals the transformed function");
  const int M = 12;
  UniSeries dr = diag_rational(num, P(D), M);
  UniSeries want = UniSeries::from_ratfunc(RatFunc(U("-2"), U("4+x")), M);
  ck(dr == want, "Diag(R) = -(1/2)/(1+x/4) through order 12");
}

// ---------------------------------------------------------------- 11
void c11_power_ladder(Checks& ck) {
  UniSeries a2 = diag_rational(P("x^3"), P("(1-x^3-y^3-z^3)^4"), 12);
  bool literal = matches_at(a2, 3, 3, {"-20", "-1680", "-92400", "-4204200"});
  ck(literal, "reference -20x^3 - 1680x^6 - 92400x^9 - 4204200x^12");
  // x^{3n} y^{3n} z^{3n} in x^3 sum_m C(m+3,3)(x^3+y^3+z^3)^m
  bool oracle = true;
  for (int n = 1; 3 * n <= 12; ++n) {
    Z b;
    mpz_bin_uiui(b.get_mpz_t(), 3 * n + 2, 3);
    oracle = oracle && a2[3 * n] == Q(b) * fact(3 * n - 1) / (fact(n - 1) * fact(n) * fact(n));
  }
  ck(oracle, "multinomial oracle");
  if (!literal) ck.note("computed " + a2.str());

  UniSeries a4 = diag_rational(P("x^4"), P("(1-x^4-y^4-z^4)^5"), 16);
  ck(a4 == UniSeries::from_poly(U("30*x^4+3780*x^8+277200*x^12+15765750*x^16"), 16), "30x^4 + 3780x^8 + 277200x^12 + 15765750x^16");

  // HeunG(9/8, 97/32; 7/6, 5/6, 1, -1; 27x) against 2F1([1/6,5/6],[1],27x), with the sign of 9x restored
  const int N = 20;
  HeunSpec hs{Q(9, 8), Q(97, 32), Q(7, 6), Q(5, 6), Q(1), Q(-1), Q(27), 1};
  UniSeries h = heun_series(hs, N);
  UniSeries f = pfq_oracle({Q(1, 6), Q(5, 6)}, {Q(1)}, 27, 1, N);
  UniSeries thf = f.derivative().shift(1).truncate(N);
  UniSeries inv = UniSeries::from_ratfunc(RatFunc(U("1"), U("(1-24*x)^2")), N);
  UniSeries rhs = UniSeries::from_poly(U("4*(1-27*x)*(27*x+2)"), N) * inv * thf + UniSeries::from_poly(U("1-9*x-486*x^2"), N) * inv * f;
  ck(h == rhs, "HeunG identity through order 20");
}

// ---------------------------------------------------------------- 12
std::mt19937_64& prng() {
  static std::mt19937_64 g(kSeed);
  return g;
}
long ri(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(prng()); }
Q rq(long range = 9, long den = 4) {
  Q q(ri(-range, range), ri(1, den));
  q.canonicalize();
  return q;
}
UPoly rpoly(int deg) {
  std::vector<Q> c;
  for (int i = 0; i <= deg; ++i) c.push_back(rq());
  if (c.back() == 0) c.back() = 1;
  return UPoly(c);
}
DiffOp rop(int order, int deg) {
  std::vector<UPoly> c;
  for (int i = 0; i <= order; ++i) c.push_back(rpoly(static_cast<int>(ri(0, deg))));
  return DiffOp::from_polys(c);
}
MPoly rmpoly(int maxdeg, int nterms) {
  MPoly p(XYZ);
  for (int t = 0; t < nterms; ++t) {
    Exps e(3);
    for (auto& k : e) k = static_cast<int>(ri(0, maxdeg));
    p.add_term(e, Q(ri(-5, 5)));
  }
  return p;
}

void c12_properties(Checks& ck) {
  const int cases = 100;
  int ok = 0;
  for (int i = 0; i < cases; ++i) {
    DiffOp A = rop(static_cast<int>(ri(0, 3)), 3), B = rop(static_cast<int>(ri(0, 3)), 3);
    if (adjoint(A * B) == adjoint(B) * adjoint(A) && adjoint(adjoint(A)) == A) ++ok;
  }
  ck(ok == cases, "adjoint anti-homomorphism and involution (" + std::to_string(ok) + "/100)");

  ok = 0;
  for (int i = 0; i < cases; ++i) {
    DiffOp A = rop(static_cast<int>(ri(1, 2)), 2), B = rop(static_cast<int>(ri(1, 2)), 2);
    DiffOp L = lclm({A, B});
    if (right_divide(L, A).second.is_zero() && right_divide(L, B).second.is_zero() && L.order() <= A.order() + B.order()) ++ok;
  }
  ck(ok == cases, "lclm right-divisible by each input (" + std::to_string(ok) + "/100)");

  ok = 0;
  for (int i = 0; i < cases; ++i) {
    DiffOp A = rop(static_cast<int>(ri(0, 3)), 3), B = rop(static_cast<int>(ri(0, 3)), 3);
    std::vector<Q> c;
    for (int k = 0; k <= 20; ++k) c.push_back(rq(20, 7));
    UniSeries s(c);
    if (apply(A * B, s) == apply(A, apply(B, s))) ++ok;
  }
  ck(ok == cases, "apply(A*B) = apply(A, apply(B)) (" + std::to_string(ok) + "/100)");

  // R1 (1 - a x)^r + R2, R1 of degree (1, 1), R2 linear: holonomic of order <= 2
  ok = 0;
  int found = 0;
  const int N = 40, extra = 30;
  for (int i = 0; i < cases; ++i) {
    RatFunc R1(rpoly(static_cast<int>(ri(0, 1))), UPoly(std::vector<Q>{Q(1), rq(3, 2)})), R2(rpoly(1));
    Q a = rq(3, 2), r = rq(5, 3);
    auto make = [&](int n) {
      UniSeries base = UniSeries::from_poly(UPoly(std::vector<Q>{Q(1), -a}), n).pow(r);
      return UniSeries::from_ratfunc(R1, n) * base + UniSeries::from_ratfunc(R2, n);
    };
    auto g = guess_ode(make(N), GuessConfig{3, 8, 10});
    if (!g) continue;
    ++found;
    if (apply(g->op, make(N + extra)).is_zero()) ++ok;
  }
  ck(found == cases && ok == cases, "guess soundness on held-out terms (" + std::to_string(ok) + "/" + std::to_string(found) + " found of 100)");

  ok = 0;
  for (int i = 0; i < cases; ++i) {
    MPoly Qd = P("1") + P("x") * rmpoly(1, 3) + P("y*z") * rmpoly(1, 2);
    MPoly P1 = rmpoly(2, 3), P2 = rmpoly(2, 3);
    Q a = rq(), b = rq();
    UniSeries lhs = diag_rational(a * P1 + b * P2, Qd, 6);
    UniSeries rhs = a * diag_rational(P1, Qd, 6) + b * diag_rational(P2, Qd, 6);
    if (lhs == rhs) ++ok;
  }
  ck(ok == cases, "diag linearity (" + std::to_string(ok) + "/100)");

  // product of the images as polynomials, compared with (xyz)^k
  ok = 0;
  for (int i = 0; i < cases; ++i) {
    std::vector<BiratMap> parts;
    int nparts = static_cast<int>(ri(1, 3));
    bool mono_ok = true;
    for (int k = 0; k < nparts; ++k) {
      if (ri(0, 1)) {
        int piv = static_cast<int>(ri(0, 2)), up = (piv + 1) % 3, dn = (piv + 2) % 3;
        parts.push_back(triangular_scale(XYZ, piv, up, dn, RatFunc(UPoly(std::vector<Q>{Q(1), rq(5, 1)}))));
      } else {
        std::vector<std::vector<int>> m(3, std::vector<int>(3));
        int top = 0;
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 3; ++c) m[r][c] = static_cast<int>(ri(0, 2));
        for (int c = 0; c < 3; ++c) top = std::max(top, m[0][c] + m[1][c]);
        int s = top + static_cast<int>(ri(0, 2));
        bool equal_sums = ri(0, 3) != 0;
        for (int c = 0; c < 3; ++c) m[2][c] = s - m[0][c] - m[1][c] + (!equal_sums && c == 0 ? 1 : 0);
        long det = static_cast<long>(m[0][0]) * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   static_cast<long>(m[0][1]) * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   static_cast<long>(m[0][2]) * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (det == 0) {
          --k;
          continue;
        }
        mono_ok = mono_ok && equal_sums;
        parts.push_back(monomial_map(XYZ, m));
      }
    }
    BiratMap mp = compose(parts);
    auto imgs = map_images(mp);
    MPoly num = P("1"), den = P("1");
    for (const auto& im : imgs) {
      num = num * im.num;
      den = den * im.den;
    }
    int expect = -1;
    int k = (num.total_degree() - den.total_degree()) / 3;
    if (k > 0 && num == den * P("x*y*z").pow(static_cast<unsigned>(k))) expect = k;
    int got = -1;
    try {
      got = preserves_product(mp);
    } catch (const Error& e) {
      if (e.name() != "ProductNotPreserved") throw;
    }
    if (got == expect && (expect > 0) == mono_ok) ++ok;

  }
  ck(ok == cases, "preserves_product against the symbolic image product (" + std::to_string(ok) + "/100)");
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Checks&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "diagonal fixture", 1, c1_diagonal_fixture},
      {2, "guessing fixture", 5, c2_guess_fixture},
      {3, "four-variable telescoper", 300, c3_four_variable},
      {4, "P/Q^k ladder", 600, c4_power_ladder},
      {5, "cross-relations", 900, c5_cross_relations},
      {6, "algebraic diagonals", 600, c6_algebraic_diagonal},
      {7, "exterior squares", 1200, c7_exterior_squares},
      {8, "birational invariance", 300, c8_birational_suite},
      {9, "Hauptmodul suite", 120, c9_hauptmodul_suite},
      {10, "collineation chain", 1800, c10_collineation_chain},
      {11, "power ladder and HeunG", 900, c11_power_ladder},
      {12, "property suites", 300, c12_properties},
  };
  return c;
}

bool run_one(const Criterion& c) {
  Checks ck;
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(ck);
  } catch (const std::exception& e) {
    ck(false, std::string("exception: ") + e.what());
  }
  double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ck(t <= c.budget_s, "runtime budget");
  std::printf("criterion %2d %-26s %s  %.2fs/%.0fs  %s\n", c.id, c.name, ck.pass() ? "PASS" : "FAIL", t, c.budget_s, ck.detail().c_str());
  std::fflush(stdout);
  return ck.pass();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);
  std::printf("tolerance %g (exact), seed %lu\n", kTolerance, kSeed);
  bool all = true;
  for (const auto& c : criteria())
    if (only == 0 || only == c.id) all = run_one(c) && all;
  return all ? 0 : 1;
}
