#include "dg/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace dg {

namespace {

ExprPtr node(Expr::Kind k, std::vector<ExprPtr> kids = {}, Q v = 0, std::string name = {}) {
  return std::make_shared<const Expr>(Expr{k, std::move(v), std::move(name), std::move(kids)});
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("SyntaxError", msg + " at position " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr l = term();
    while (true) {
      if (eat('+')) l = node(Expr::Add, {l, term()});
      else if (eat('-')) l = node(Expr::Sub, {l, term()});
      else return l;
    }
  }
  ExprPtr term() {
    ExprPtr l = unary();
    while (true) {
      if (eat('*')) l = node(Expr::Mul, {l, unary()});
      else if (eat('/')) l = node(Expr::Div, {l, unary()});
      else return l;
    }
  }
  ExprPtr unary() {
    if (eat('-')) return node(Expr::Neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }
  ExprPtr power() {
    ExprPtr b = primary();
    while (eat('^')) {
      ExprPtr ex;
      if (eat('(')) {
        ex = expr();
        if (!eat(')')) fail("expected ')'");
      } else if (eat('-')) {
        ex = node(Expr::Neg, {number()});
      } else {
        ex = number();
      }
      b = node(Expr::Pow, {b, ex});
    }
    return b;
  }
  ExprPtr number() {
    skip();
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected number");
    if (i_ < s_.size() && s_[i_] == '.') fail("decimal literals are not exact; use a/b");
    return node(Expr::Num, {}, Q(Z(s_.substr(st, i_ - st))));
  }
  ExprPtr primary() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string id = s_.substr(st, i_ - st);
      if (eat('(')) {
        std::vector<ExprPtr> args{expr()};
        while (eat(',')) args.push_back(expr());
        if (!eat(')')) fail("expected ')'");
        return node(Expr::Call, std::move(args), 0, id);
      }
      return node(Expr::Var, {}, 0, id);
    }
    if (eat('(')) {
      ExprPtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  size_t i_ = 0;
};

int prec(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Add:
    case Expr::Sub: return 1;
    case Expr::Mul:
    case Expr::Div: return 2;
    case Expr::Neg: return 3;
    case Expr::Pow: return 4;
    default: return 5;
  }
}

void collect_vars(const ExprPtr& e, std::vector<std::string>& out) {
  if (e->kind == Expr::Var && std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
  for (const auto& k : e->kids) collect_vars(k, out);
}

RatFn rat_mul(const RatFn& a, const RatFn& b) { return {a.num * b.num, a.den * b.den}; }

RatFn rat_pow(const RatFn& a, long n) {
  if (n < 0) {
    if (a.num.is_zero()) throw Error("SemanticError", "division by zero");
    return rat_pow(RatFn{a.den, a.num}, -n);
  }
  return {a.num.pow(static_cast<unsigned>(n)), a.den.pow(static_cast<unsigned>(n))};
}

long integer_exponent(const ExprPtr& e) {
  Q v = eval_constant(e);
  if (v.get_den() != 1 || !mpz_fits_slong_p(v.get_num_mpz_t())) throw Error("SemanticError", "expected an integer exponent, got " + v.get_str());
  return v.get_num().get_si();
}

// Cancel a common constant and, when cheap, an exact common polynomial factor.
RatFn tidy(RatFn r) {
  if (r.den.is_zero()) throw Error("SemanticError", "division by zero");
  MPoly q;
  if (!r.den.is_constant() && try_divide(r.num, r.den, q)) return {q, MPoly(r.num.vars(), 1)};
  if (r.den.is_constant()) {
    Q c = r.den.constant_term();
    return {r.num * (1 / c), MPoly(r.num.vars(), 1)};
  }
  return r;
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const ExprPtr& e) {
  auto wrap = [](const ExprPtr& k, bool p) { return p ? "(" + print_expr(k) + ")" : print_expr(k); };
  switch (e->kind) {
    case Expr::Num: return e->value.get_den() == 1 && e->value >= 0 ? e->value.get_str() : "(" + e->value.get_str() + ")";
    case Expr::Var: return e->name;
    case Expr::Add:
    case Expr::Sub:
    case Expr::Mul:
    case Expr::Div: {
      static const char* ops = "+-*/";
      char op = ops[e->kind - Expr::Add];
      int p = prec(e);
      return wrap(e->kids[0], prec(e->kids[0]) < p) + op + wrap(e->kids[1], prec(e->kids[1]) <= p);
    }
    case Expr::Neg: return "-" + wrap(e->kids[0], prec(e->kids[0]) < 3);
    case Expr::Pow: {
      const ExprPtr& ex = e->kids[1];
      bool plain = ex->kind == Expr::Num && ex->value.get_den() == 1 && ex->value >= 0;
      return wrap(e->kids[0], prec(e->kids[0]) < 4) + "^" + (plain ? print_expr(ex) : "(" + print_expr(ex) + ")");
    }
    case Expr::Call: {
      std::string s = e->name + "(";
      for (size_t i = 0; i < e->kids.size(); ++i) s += (i ? "," : "") + print_expr(e->kids[i]);
      return s + ")";
    }
  }
  return {};
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind || a->value != b->value || a->name != b->name || a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!expr_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

std::vector<std::string> expr_vars(const ExprPtr& e) {
  std::vector<std::string> out;
  collect_vars(e, out);
  return out;
}

std::vector<std::string> canonical_vars(std::vector<std::string> vs) {
  static const std::vector<std::string> order{"x", "y", "z", "u", "w"};
  auto rank = [&](const std::string& v) {
    auto it = std::find(order.begin(), order.end(), v);
    return it == order.end() ? static_cast<int>(order.size()) : static_cast<int>(it - order.begin());
  };
  std::sort(vs.begin(), vs.end(), [&](const std::string& a, const std::string& b) {
    int ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a < b;
  });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

Q eval_constant(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Num: return e->value;
    case Expr::Neg: return -eval_constant(e->kids[0]);
    case Expr::Add: return eval_constant(e->kids[0]) + eval_constant(e->kids[1]);
    case Expr::Sub: return eval_constant(e->kids[0]) - eval_constant(e->kids[1]);
    case Expr::Mul: return eval_constant(e->kids[0]) * eval_constant(e->kids[1]);
    case Expr::Div: {
      Q d = eval_constant(e->kids[1]);
      if (d == 0) throw Error("SemanticError", "division by zero");
      return eval_constant(e->kids[0]) / d;
    }
    case Expr::Pow: {
      Q b = eval_constant(e->kids[0]), r = eval_constant(e->kids[1]), out;
      if (!rational_power(b, r, out)) throw Error("SemanticError", "power is not rational");
      return out;
    }
    default: throw Error("SemanticError", "expected a constant, found " + print_expr(e));
  }
}

RatFn to_ratfn(const ExprPtr& e, const std::vector<std::string>& vars) {
  switch (e->kind) {
    case Expr::Num: return {MPoly(vars, e->value), MPoly(vars, 1)};
    case Expr::Var: {
      if (std::find(vars.begin(), vars.end(), e->name) == vars.end()) throw Error("SemanticError", "unexpected variable " + e->name);
      return {MPoly::var(vars, e->name), MPoly(vars, 1)};
    }
    case Expr::Neg: {
      RatFn a = to_ratfn(e->kids[0], vars);
      return {-a.num, a.den};
    }
    case Expr::Add:
    case Expr::Sub: {
      RatFn a = to_ratfn(e->kids[0], vars), b = to_ratfn(e->kids[1], vars);
      MPoly bn = e->kind == Expr::Add ? b.num : -b.num;
      if (a.den == b.den) return tidy({a.num + bn, a.den});
      return tidy({a.num * b.den + bn * a.den, a.den * b.den});
    }
    case Expr::Mul: return tidy(rat_mul(to_ratfn(e->kids[0], vars), to_ratfn(e->kids[1], vars)));
    case Expr::Div: {
      RatFn b = to_ratfn(e->kids[1], vars);
      if (b.num.is_zero()) throw Error("SemanticError", "division by zero");
      return tidy(rat_mul(to_ratfn(e->kids[0], vars), RatFn{b.den, b.num}));
    }
    case Expr::Pow: return tidy(rat_pow(to_ratfn(e->kids[0], vars), integer_exponent(e->kids[1])));
    case Expr::Call: throw Error("SemanticError", "function " + e->name + " has no rational-function value");
  }
  throw Error("SemanticError", "bad expression");
}

PowerForm to_power_form(const ExprPtr& e, const std::vector<std::string>& vars) {
  auto plain = [&](const RatFn& r) { return PowerForm{r.num, r.den, {}}; };
  switch (e->kind) {
    case Expr::Num:
    case Expr::Var: return plain(to_ratfn(e, vars));
    case Expr::Neg: {
      PowerForm a = to_power_form(e->kids[0], vars);
      a.num = -a.num;
      return a;
    }
    case Expr::Add:
    case Expr::Sub: {
      PowerForm a = to_power_form(e->kids[0], vars), b = to_power_form(e->kids[1], vars);
      if (!a.powers.empty() || !b.powers.empty()) throw Error("SemanticError", "sums of algebraic terms are not supported");
      MPoly bn = e->kind == Expr::Add ? b.num : -b.num;
      RatFn r = a.den == b.den ? tidy({a.num + bn, a.den}) : tidy({a.num * b.den + bn * a.den, a.den * b.den});
      return plain(r);
    }
    case Expr::Mul:
    case Expr::Div: {
      PowerForm a = to_power_form(e->kids[0], vars), b = to_power_form(e->kids[1], vars);
      if (e->kind == Expr::Div) {
        if (b.num.is_zero()) throw Error("SemanticError", "division by zero");
        std::swap(b.num, b.den);
        for (auto& [base, r] : b.powers) r = -r;
      }
      RatFn r = tidy({a.num * b.num, a.den * b.den});
      PowerForm out{r.num, r.den, a.powers};
      out.powers.insert(out.powers.end(), b.powers.begin(), b.powers.end());
      return out;
    }
    case Expr::Pow: {
      Q r = eval_constant(e->kids[1]);
      if (r.get_den() == 1) {
        PowerForm a = to_power_form(e->kids[0], vars);
        long n = r.get_num().get_si();
        RatFn base = rat_pow(RatFn{a.num, a.den}, n);
        PowerForm out{base.num, base.den, {}};
        for (auto& [b, s] : a.powers) out.powers.push_back({b, s * r});
        return out;
      }
      RatFn b = to_ratfn(e->kids[0], vars);
      if (!b.den.is_constant()) throw Error("UnsupportedConstantTerm", "rational exponent needs a polynomial base: " + print_expr(e->kids[0]));
      MPoly base = b.num * (1 / b.den.constant_term());
      Q c = base.constant_term(), cr;
      if (c == 0 || !rational_power(c, r, cr)) throw Error("UnsupportedConstantTerm", "constant term of " + print_expr(e->kids[0]) + " has no rational power " + r.get_str());
      return PowerForm{MPoly(vars, cr), MPoly(vars, 1), {{base * (1 / c), r}}};
    }
    case Expr::Call: throw Error("SemanticError", "function " + e->name + " is only allowed in series contexts");
  }
  throw Error("SemanticError", "bad expression");
}

MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  RatFn r = to_ratfn(parse_expr(text), vars);
  if (!r.den.is_constant()) throw Error("SemanticError", "expected a polynomial: " + text);
  return r.num * (1 / r.den.constant_term());
}

RatFn parse_ratfn(const std::string& text, const std::vector<std::string>& vars) { return to_ratfn(parse_expr(text), vars); }

}  // namespace dg
