// dg: command-line front end for the diagonals library.
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dg/birational.hpp"
#include "dg/curve.hpp"
#include "dg/diffop.hpp"
#include "dg/guess.hpp"
#include "dg/special.hpp"

using namespace dg;
using Json = nlohmann::ordered_json;

namespace {

constexpr int FORMAT_VERSION = 1;

struct Config {
  int terms = 24;
  int max_order = 6;
  int max_deg = 8;
  int hom_deg = 12;
  int margin = 10;
  std::string format = "text";
  unsigned long seed = 20240611;
  bool quiet = false;
};

Config cfg;

void progress(const std::string& msg) {
  if (!cfg.quiet) std::cerr << "[dg] " << msg << std::endl;
}

std::string read_arg(const std::string& a) {
  if (a.empty() || a[0] != '@') return a;
  std::ifstream in(a.substr(1));
  if (!in) throw Error("InvalidInput", "cannot read file " + a.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  std::string out;
  for (char c : s)
    if (c != '\n' && c != '\r') out += c;
  return out;
}

DiffOp read_op(const std::string& a) { return parse_diffop(read_arg(a)); }

Json op_json(const DiffOp& L) {
  Json j;
  j["D"] = L.str();
  j["theta"] = L.is_zero() ? "0" : L.theta_str();
  j["order"] = L.order();
  return j;
}

Json series_json(const UniSeries& s) {
  Json a = Json::array();
  for (const auto& c : s.coeffs()) a.push_back(to_string(c));
  return a;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Q> parse_list(const std::string& s) {
  std::vector<Q> v;
  for (const auto& t : split(read_arg(s), ',')) v.push_back(parse_rational(t));
  return v;
}

struct Input {
  MPoly num, den;
  std::optional<PowerForm> power;
  std::vector<std::string> vars;
};

Input read_function(const std::string& text, std::vector<std::string> extra_vars = {}) {
  ExprPtr e = parse_expr(read_arg(text));
  auto vs = expr_vars(e);
  for (const auto& v : extra_vars)
    if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
  Input in;
  in.vars = canonical_vars(vs);
  if (in.vars.empty()) in.vars = {"x"};
  try {
    RatFn r = to_ratfn(e, in.vars);
    in.num = r.num;
    in.den = r.den;
  } catch (const Error& err) {
    if (err.name() != "SemanticError") throw;
    in.power = to_power_form(e, in.vars);
  }
  return in;
}

UniSeries diagonal(const Input& in, int N) {
  progress("expanding in " + std::to_string(in.vars.size()) + " variables through order " + std::to_string(N));
  return in.power ? diag_of_power_form(*in.power, N) : diag_rational(in.num, in.den, N);
}

GuessConfig guess_cfg() { return GuessConfig{cfg.max_order, cfg.max_deg, cfg.margin}; }

Json guessed_json(const GuessedOperator& g) {
  Json j;
  j["found"] = true;
  j["operator"] = op_json(g.op);
  j["coeff_degree"] = g.coeff_degree;
  j["terms_used"] = g.terms_used;
  j["terms_verified"] = g.terms_verified;
  return j;
}

Json not_found() {
  Json j;
  j["found"] = false;
  j["operator"] = "NONE";
  return j;
}

// Series from --series (coefficient list) or --expr (diagonal of a function).
UniSeries series_input(const std::string& series, const std::string& expr) {
  if (!series.empty()) return UniSeries(parse_list(series));
  if (!expr.empty()) return diagonal(read_function(expr), cfg.terms - 1);
  throw Error("InvalidInput", "give --series or --expr");
}

Json config_json() {
  Json c;
  c["terms"] = cfg.terms;
  c["max_order"] = cfg.max_order;
  c["max_deg"] = cfg.max_deg;
  c["hom_deg"] = cfg.hom_deg;
  c["seed"] = cfg.seed;
  return c;
}

void print_text(const Json& j, const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      print_text(v, key);
    } else if (v.is_array()) {
      bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        std::string line;
        for (const auto& e : v) line += (line.empty() ? "" : ", ") + (e.is_string() ? e.get<std::string>() : e.dump());
        std::cout << key << " = " << line << "\n";
      } else {
        for (size_t i = 0; i < v.size(); ++i) {
          if (v[i].is_object())
            print_text(v[i], key + "[" + std::to_string(i) + "]");
          else
            std::cout << key << "[" << i << "] = " << v[i].dump() << "\n";
        }
      }
    } else {
      std::cout << key << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const std::string& command, const Json& result) {
  if (cfg.format == "json") {
    Json doc;
    doc["format_version"] = FORMAT_VERSION;
    doc["command"] = command;
    doc["config"] = config_json();
    doc["result"] = result;
    std::cout << doc.dump(2) << "\n";
  } else {
    print_text(result, "");
  }
}

int fail(const std::string& command, const std::string& name, const std::string& detail) {
  std::cerr << "error: " << name << ": " << detail << "\n";
  if (cfg.format == "json") {
    Json doc;
    doc["format_version"] = FORMAT_VERSION;
    doc["command"] = command;
    doc["error"] = {{"name", name}, {"detail", detail}};
    std::cout << doc.dump(2) << "\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonals of rational functions and their differential operators"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--terms", cfg.terms, "series terms (coefficients x^0 .. x^(terms-1))")->envname("DG_TERMS")->check(CLI::PositiveNumber);
  app.add_option("--max-order", cfg.max_order, "largest operator order tried by guessing")->envname("DG_MAX_ORDER")->check(CLI::PositiveNumber);
  app.add_option("--max-deg", cfg.max_deg, "largest theta-form coefficient degree tried by guessing")->envname("DG_MAX_DEG")->check(CLI::NonNegativeNumber);
  app.add_option("--hom-deg", cfg.hom_deg, "coefficient degree bound for intertwiners")->envname("DG_HOM_DEG")->check(CLI::NonNegativeNumber);
  app.add_option("--margin", cfg.margin, "held-out terms for guess verification")->envname("DG_MARGIN")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")->envname("DG_FORMAT")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "seed recorded for randomized checks")->envname("DG_SEED");
  app.add_flag("--quiet", cfg.quiet, "no progress messages");

  std::string command;
  std::function<Json()> run;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };

  std::string a1, a2, series, expr, grouping, upper, lower, scale = "1", diag_vars, elim;
  std::vector<std::string> ops;
  int power = 1, local_deg = -1;
  bool want_ops = false, want_ratsols = false;
  std::string ha, hq, halpha, hbeta, hgamma, hdelta;

  auto* c_diag = sub("diag", "diagonal series of a rational or algebraic function");
  c_diag->add_option("expr", a1, "function, e.g. 1/(1-x-y-z)")->required();

  auto* c_guess = sub("guess", "guess a differential operator annihilating a series");
  c_guess->add_option("--series", series, "comma-separated coefficients or @file");
  c_guess->add_option("--expr", expr, "use the diagonal of this function");

  auto* c_tel = sub("telescoper", "guessed and certified annihilator of a diagonal");
  c_tel->add_option("expr", a1)->required();

  auto* c_apply = sub("apply-op", "apply an operator to a series");
  c_apply->add_option("op", a1, "operator in x and Dx (or T), or @file")->required();
  c_apply->add_option("--series", series);
  c_apply->add_option("--expr", expr);

  auto* c_adj = sub("adjoint", "formal adjoint");
  c_adj->add_option("op", a1)->required();

  auto* c_lclm = sub("lclm", "least common left multiple");
  c_lclm->add_option("ops", ops)->required()->expected(1, -1);

  auto* c_gcrd = sub("gcrd", "greatest common right divisor");
  c_gcrd->add_option("a", a1)->required();
  c_gcrd->add_option("b", a2)->required();

  auto* c_rdiv = sub("rightdiv", "right division a = q*b + r");
  c_rdiv->add_option("a", a1)->required();
  c_rdiv->add_option("b", a2)->required();

  auto* c_rat = sub("ratsols", "rational solutions");
  c_rat->add_option("op", a1)->required();

  auto* c_ext = sub("extsq", "exterior square");
  c_ext->add_option("op", a1)->required();
  c_ext->add_flag("--ratsols", want_ratsols, "also list its rational solutions");

  auto* c_hom = sub("hom", "intertwiner R with target*R = S*source");
  c_hom->add_option("source", a1)->required();
  c_hom->add_option("target", a2)->required();
  c_hom->add_option("--max-deg", local_deg, "degree bound (overrides --hom-deg)");

  auto* c_sd = sub("selfdual", "intertwiner from the adjoint to the operator");
  c_sd->add_option("op", a1)->required();
  c_sd->add_option("--max-deg", local_deg, "degree bound (overrides --hom-deg)");

  auto* c_an = sub("analytic-sols", "analytic solutions at 0 with integer exponents");
  c_an->add_option("op", a1)->required();

  auto* c_pfq = sub("pfq", "generalized hypergeometric series");
  c_pfq->add_option("--upper", upper, "comma-separated upper parameters")->required();
  c_pfq->add_option("--lower", lower, "comma-separated lower parameters");
  c_pfq->add_option("--scale", scale, "argument scale c in c*x^k");
  c_pfq->add_option("--power", power, "argument power k")->check(CLI::PositiveNumber);
  c_pfq->add_flag("--operator", want_ops, "also print the annihilating operator");

  auto* c_heun = sub("heun", "Heun general series");
  for (auto [n, v] : std::vector<std::pair<std::string, std::string*>>{{"--a", &ha}, {"--q", &hq}, {"--alpha", &halpha}, {"--beta", &hbeta}, {"--gamma", &hgamma}, {"--delta", &hdelta}})
    c_heun->add_option(n, *v)->required();
  c_heun->add_option("--scale", scale);
  c_heun->add_option("--power", power)->check(CLI::PositiveNumber);

  auto* c_ba = sub("birat-apply", "apply a variable map to a rational function");
  c_ba->add_option("map", a1, "tri(...), mono([[..]]), hadamard(...), colline(...), compose(...)")->required();
  c_ba->add_option("expr", a2)->required();

  auto* c_bc = sub("birat-check", "compare diagonals before and after a map");
  c_bc->add_option("map", a1)->required();
  c_bc->add_option("expr", a2)->required();

  auto* c_haupt = sub("hauptmodul", "j-invariant and Hauptmodul of the diagonal curve of a denominator");
  c_haupt->add_option("poly", a1)->required();
  c_haupt->add_option("--diag-vars", diag_vars, "comma-separated diagonal variables (default: all)");
  c_haupt->add_option("--elim", elim, "eliminated variable (default: last)");

  auto* c_eff = sub("effective-vars", "check a grouping of variables into effective variables");
  c_eff->add_option("expr", a1)->required();
  c_eff->add_option("--grouping", grouping, "comma-separated monomials, e.g. x*y,z")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  int hom_bound = local_deg >= 0 ? local_deg : cfg.hom_deg;
  int N = cfg.terms - 1;

  try {
    Json r;
    if (command == "diag") {
      Input in = read_function(a1);
      UniSeries d = diagonal(in, N);
      r["variable"] = "x";
      r["eliminated"] = static_cast<int>(in.vars.size()) - 1;
      r["terms"] = cfg.terms;
      r["series"] = series_json(d);
    } else if (command == "guess") {
      UniSeries s = series_input(series, expr);
      progress("guessing from " + std::to_string(s.bound() + 1) + " terms");
      auto g = guess_ode(s, guess_cfg());
      r = g ? guessed_json(*g) : not_found();
    } else if (command == "telescoper") {
      Input in = read_function(a1);
      progress("guessing from " + std::to_string(cfg.terms) + " terms, certifying on " + std::to_string(cfg.terms + cfg.margin));
      try {
        auto g = in.power ? guess_and_certify(*in.power, guess_cfg(), N) : guess_and_certify(in.num, in.den, guess_cfg(), N);
        r = guessed_json(g);
      } catch (const Error& e) {
        if (e.name() != "NotFound") throw;
        r = not_found();
        r["detail"] = e.what();
      }
    } else if (command == "apply-op") {
      DiffOp L = read_op(a1);
      r["operator"] = op_json(L);
      r["series"] = series_json(apply(L, series_input(series, expr)));
    } else if (command == "adjoint") {
      r["operator"] = op_json(adjoint(read_op(a1)));
    } else if (command == "lclm") {
      std::vector<DiffOp> L;
      for (const auto& o : ops) L.push_back(read_op(o));
      r["operator"] = op_json(lclm(L).normalized());
    } else if (command == "gcrd") {
      r["operator"] = op_json(gcrd(read_op(a1), read_op(a2)));
    } else if (command == "rightdiv") {
      auto [q, rem] = right_divide(read_op(a1), read_op(a2));
      r["quotient"] = op_json(q);
      r["remainder"] = op_json(rem);
      r["exact"] = rem.is_zero();
    } else if (command == "ratsols") {
      Json a = Json::array();
      for (const auto& f : rational_solutions(read_op(a1))) a.push_back(f.str("x"));
      r["solutions"] = a;
    } else if (command == "extsq") {
      DiffOp L = read_op(a1);
      progress("exterior square of an order-" + std::to_string(L.order()) + " operator");
      auto E = exterior_square(L);
      r["operator"] = op_json(E.op.normalized());
      r["degenerate"] = E.degenerate;
      if (want_ratsols) {
        progress("rational solutions of the exterior square");
        Json a = Json::array();
        for (const auto& f : rational_solutions(E.op)) a.push_back(f.str("x"));
        r["rational_solutions"] = a;
      }
    } else if (command == "hom" || command == "selfdual") {
      // intertwiners refer to the primitive normalization (left content removed)
      DiffOp L = read_op(a1).normalized();
      progress("searching intertwiners up to degree " + std::to_string(hom_bound));
      auto t = command == "hom" ? find_intertwiner(L, read_op(a2).normalized(), hom_bound) : selfdual_report(L, hom_bound);
      r["max_deg"] = hom_bound;
      r["found"] = t.has_value();
      if (t) {
        r["R"] = op_json(t->R);
        r["S"] = op_json(t->S);
      } else {
        r["R"] = "NONE";
      }
    } else if (command == "analytic-sols") {
      auto B = analytic_solutions(read_op(a1), N);
      Json a = Json::array();
      for (const auto& [e, s] : B.sols) a.push_back({{"exponent", e}, {"series", series_json(s)}});
      r["solutions"] = a;
    } else if (command == "pfq") {
      PFQSpec sp{parse_list(upper), lower.empty() ? std::vector<Q>{} : parse_list(lower), parse_rational(scale), power};
      r["series"] = series_json(pfq_series(sp, N));
      if (want_ops) r["operator"] = op_json(pfq_operator(sp));
    } else if (command == "heun") {
      HeunSpec sp{parse_rational(ha), parse_rational(hq), parse_rational(halpha), parse_rational(hbeta), parse_rational(hgamma), parse_rational(hdelta), parse_rational(scale), power};
      r["series"] = series_json(heun_series(sp, N));
    } else if (command == "birat-apply" || command == "birat-check") {
      Input in = read_function(a2, {"x", "y", "z"});
      if (in.power) throw Error("SemanticError", "maps act on rational functions only");
      BiratMap m = parse_map(read_arg(a1), in.vars, N);
      r["map"] = map_str(m);
      if (command == "birat-apply") {
        MRat img = apply_to_rational(m, in.num, in.den);
        r["numerator"] = img.num.str();
        r["denominator"] = img.den.str();
        try {
          r["product_power"] = preserves_product(m);
        } catch (const Error& e) {
          r["product_power"] = e.name();
        }
      } else {
        progress("comparing diagonals through order " + std::to_string(N));
        try {
          auto rep = invariance_report(in.num, in.den, m, N);
          r["equal"] = rep.equal;
          r["first_divergence"] = rep.first_divergence ? Json(*rep.first_divergence) : Json(nullptr);
          r["power"] = rep.power;
          r["source_diag"] = series_json(rep.source_diag);
          r["image_diag"] = series_json(rep.image_diag);
        } catch (const Error& e) {
          if (e.name() != "OriginNotPreserved") throw;
          std::string what = e.what();
          throw Error(e.name(), what.substr(e.name().size() + 2) + "; compare telescopers of supplied operators with apply-op or rightdiv instead");
        }
      }
    } else if (command == "hauptmodul") {
      ExprPtr e = parse_expr(read_arg(a1));
      auto vs = canonical_vars(expr_vars(e));
      MPoly den = to_ratfn(e, vs).num;
      PlaneCurveQP C;
      if (diag_vars.empty() && elim.empty()) {
        C = eliminate_diag_curve(den);
      } else {
        auto dv = diag_vars.empty() ? vs : split(diag_vars, ',');
        C = eliminate_diag_curve(den, dv, elim.empty() ? dv.back() : elim);
      }
      r["curve"] = C.poly.str();
      auto h = hauptmodul_of_curve(C);
      r["route"] = route_name(h.route);
      r["j"] = factored_str(h.j);
      r["H"] = factored_str(h.H);
      r["j_expanded"] = h.j.str("p");
      r["H_expanded"] = h.H.str("p");
    } else if (command == "effective-vars") {
      Input in = read_function(a1);
      if (in.power) throw Error("SemanticError", "grouping check needs a rational function");
      std::vector<MPoly> g;
      for (const auto& t : split(grouping, ',')) g.push_back(parse_poly(t, in.vars));
      r["grouping"] = grouping;
      r["effective"] = effective_grouping_check(in.num, in.den, g, N);
    }
    emit(command, r);
    return 0;
  } catch (const Error& e) {
    std::string what = e.what();
    std::string prefix = e.name() + ": ";
    return fail(command, e.name(), what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what);
  } catch (const std::exception& e) {
    return fail(command, "InvalidInput", e.what());
  }
}
