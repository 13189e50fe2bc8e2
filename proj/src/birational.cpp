#include "dg/birational.hpp"

#include <algorithm>
#include <functional>

#include "dg/expr.hpp"
#include "dg/special.hpp"
#include "json.hpp"

namespace dg {

namespace {

MPoly one(const std::vector<std::string>& vars) { return MPoly(vars, Q(1)); }

// prod x_j^e_j split into positive and negative parts
MRat laurent_monomial(const std::vector<std::string>& vars, const std::vector<int>& e) {
  Exps pos(vars.size()), neg(vars.size());
  for (size_t j = 0; j < e.size(); ++j) (e[j] >= 0 ? pos[j] : neg[j]) = std::abs(e[j]);
  return {MPoly::monomial(vars, pos), MPoly::monomial(vars, neg)};
}

void normalize(MRat& r) {
  if (r.den.is_zero()) throw Error("DivisionByZero", "rational map has a zero denominator");
  MPoly p = r.den.primitive();
  // p = s * den for a rational s; carry the same factor to the numerator
  Q s = p.terms().begin()->second / r.den.terms().begin()->second;
  r.num *= s;
  r.den = p;
}

// Strip factors shared by num and den among the candidates.
void cancel(MRat& r, const std::vector<MPoly>& candidates) {
  for (const auto& f : candidates) {
    if (f.is_constant() || f.is_zero()) continue;
    MPoly qn, qd;
    while (!r.num.is_zero() && try_divide(r.num, f, qn) && try_divide(r.den, f, qd)) {
      r.num = qn;
      r.den = qd;
    }
  }
  if (r.num.is_zero()) r.den = one(r.den.vars());
  normalize(r);
}

std::vector<MPoly> factor_candidates(const std::vector<MRat>& imgs) {
  std::vector<MPoly> c;
  const auto& vars = imgs.front().num.vars();
  for (const auto& v : vars) c.push_back(MPoly::var(vars, v));
  for (const auto& im : imgs) {
    c.push_back(im.num);
    c.push_back(im.den);
  }
  return c;
}

// f(images) over prod den_i^D_i with D_i = bound[i]
MPoly substitute_num(const MPoly& f, const std::vector<MRat>& imgs, const std::vector<int>& bound) {
  const auto& vars = imgs.front().num.vars();
  MPoly out(vars);
  std::vector<std::vector<MPoly>> npow(imgs.size()), dpow(imgs.size());
  for (size_t i = 0; i < imgs.size(); ++i) {
    npow[i].push_back(one(vars));
    dpow[i].push_back(one(vars));
    for (int k = 1; k <= bound[i]; ++k) {
      npow[i].push_back(npow[i].back() * imgs[i].num);
      dpow[i].push_back(dpow[i].back() * imgs[i].den);
    }
  }
  for (const auto& [e, c] : f.terms()) {
    MPoly t(vars, c);
    for (size_t i = 0; i < imgs.size(); ++i) t = t * npow[i][e[i]] * dpow[i][bound[i] - e[i]];
    out += t;
  }
  return out;
}

MRat substitute_pair(const MPoly& a, const MPoly& b, const std::vector<MRat>& imgs) {
  std::vector<int> bound(imgs.size());
  for (size_t i = 0; i < imgs.size(); ++i) bound[i] = std::max(a.degree(static_cast<int>(i)), b.degree(static_cast<int>(i)));
  MRat r{substitute_num(a, imgs, bound), substitute_num(b, imgs, bound)};
  cancel(r, factor_candidates(imgs));
  return r;
}

bool has_series(const BiratMap& m) {
  if (m.kind == MapKind::TriangularScale) return m.q_series.has_value();
  if (m.kind == MapKind::Composite)
    return std::any_of(m.parts.begin(), m.parts.end(), [](const BiratMap& p) { return has_series(p); });
  return false;
}

std::vector<MRat> leaf_images(const BiratMap& m, const std::vector<std::string>& vars) {
  const int k = static_cast<int>(vars.size());
  std::vector<MRat> img;
  for (const auto& v : vars) img.push_back({MPoly::var(vars, v), one(vars)});
  switch (m.kind) {
    case MapKind::TriangularScale: {
      if (m.q_series) throw Error("IncompatibleMapKind", "series-valued q has no rational images");
      MPoly n = MPoly::from_upoly(m.q.num(), vars, m.pivot), d = MPoly::from_upoly(m.q.den(), vars, m.pivot);
      img[m.up] = {img[m.up].num * n, d};
      img[m.down] = {img[m.down].num * d, n};
      break;
    }
    case MapKind::Monomial:
      for (int i = 0; i < k; ++i) img[i] = laurent_monomial(vars, m.matrix[i]);
      break;
    case MapKind::HadamardLift: {
      for (int i : m.inverted) img[i] = {one(vars), MPoly::var(vars, vars[i])};
      MRat c = laurent_monomial(vars, m.comp_mono);
      img[m.comp] = {MPoly::var(vars, vars[m.comp]) * c.num, c.den};
      break;
    }
    case MapKind::CollineationLift: {
      MPoly xyz = MPoly::var(vars, vars[0]) * MPoly::var(vars, vars[1]) * MPoly::var(vars, vars[2]);
      img[0] = {m.l1, m.l0};
      img[1] = {m.l2, m.l0};
      img[2] = {xyz * m.l0 * m.l0, m.l1 * m.l2};
      break;
    }
    case MapKind::Composite: break;
  }
  for (auto& r : img) normalize(r);
  return img;
}

UniSeries q_as_series(const BiratMap& m, int N) {
  if (m.q_series) {
    if (m.q_series->bound() < N) throw std::invalid_argument("series-valued q is known only through order " + std::to_string(m.q_series->bound()));
    return m.q_series->truncate(N);
  }
  return UniSeries::from_ratfunc(m.q, N);
}

TruncSeries lift_pivot(const UniSeries& q, const std::vector<std::string>& vars, int pivot, int N) {
  TruncSeries s(vars, N);
  Exps e(vars.size());
  for (int i = 0; i <= N; ++i) {
    e[pivot] = i;
    s.set(e, q[i]);
  }
  return s;
}

std::vector<TruncSeries> leaf_series_images(const BiratMap& m, int N) {
  const auto& vars = m.vars;
  if (m.kind == MapKind::TriangularScale) {
    UniSeries q = q_as_series(m, N);
    if (q[0] == 0) throw Error("NoMultiTaylorExpansion", "q vanishes at 0");
    TruncSeries qs = lift_pivot(q, vars, m.pivot, N);
    std::vector<TruncSeries> img;
    for (const auto& v : vars) img.push_back(TruncSeries::from_poly(MPoly::var(vars, v), N));
    img[m.up] = img[m.up] * qs;
    img[m.down] = divide(img[m.down], qs);
    return img;
  }
  std::vector<TruncSeries> img;
  for (const auto& r : map_images(m)) {
    if (r.den.constant_term() == 0) throw Error("OriginNotPreserved", "an image has a pole at the origin");
    if (r.num.constant_term() != 0) throw Error("OriginNotPreserved", "an image does not vanish at the origin");
    img.push_back(expand_rational(r.num, r.den, N));
  }
  return img;
}

Q det_of(std::vector<std::vector<Q>> a) {
  const int n = static_cast<int>(a.size());
  Q d = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (int i = c + 1; i < n; ++i) {
      Q f = a[i][c] / a[c][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

}  // namespace

BiratMap identity_map(const std::vector<std::string>& vars) {
  BiratMap m;
  m.kind = MapKind::Composite;
  m.vars = vars;
  return m;
}

BiratMap triangular_scale(const std::vector<std::string>& vars, int pivot, int up, int down, const RatFunc& q) {
  const int k = static_cast<int>(vars.size());
  if (pivot < 0 || up < 0 || down < 0 || pivot >= k || up >= k || down >= k || pivot == up || pivot == down || up == down)
    throw std::invalid_argument("triangular scale needs three distinct variables");
  if (q.den().eval(0) == 0 || q.eval(0) == 0) throw Error("InvalidMap", "q must be finite and nonzero at 0");
  BiratMap m;
  m.kind = MapKind::TriangularScale;
  m.vars = vars;
  m.pivot = pivot;
  m.up = up;
  m.down = down;
  m.q = q;
  return m;
}

BiratMap triangular_scale(const std::vector<std::string>& vars, int pivot, int up, int down, const UniSeries& q) {
  BiratMap m = triangular_scale(vars, pivot, up, down, RatFunc(1));
  if (q[0] == 0) throw Error("InvalidMap", "q must be nonzero at 0");
  m.q_series = q;
  return m;
}

BiratMap monomial_map(const std::vector<std::string>& vars, const std::vector<std::vector<int>>& mat) {
  const size_t k = vars.size();
  if (mat.size() != k) throw std::invalid_argument("monomial matrix must be square in the variable count");
  std::vector<std::vector<Q>> a;
  for (const auto& row : mat) {
    if (row.size() != k) throw std::invalid_argument("monomial matrix must be square in the variable count");
    a.emplace_back(row.begin(), row.end());
  }
  if (det_of(a) == 0) throw Error("InvalidMap", "monomial matrix is singular");
  BiratMap m;
  m.kind = MapKind::Monomial;
  m.vars = vars;
  m.matrix = mat;
  return m;
}

BiratMap hadamard_lift(const std::vector<std::string>& vars, const std::vector<int>& inverted, int comp, const std::vector<int>& mono) {
  const int k = static_cast<int>(vars.size());
  if (comp < 0 || comp >= k || static_cast<int>(mono.size()) != k || mono[comp] != 0)
    throw std::invalid_argument("compensating monomial must not involve its own variable");
  for (int i : inverted)
    if (i < 0 || i >= k || i == comp) throw std::invalid_argument("bad inverted variable");
  BiratMap m;
  m.kind = MapKind::HadamardLift;
  m.vars = vars;
  m.inverted = inverted;
  m.comp = comp;
  m.comp_mono = mono;
  return m;
}

BiratMap collineation_lift(const std::vector<std::string>& vars, const MPoly& l0, const MPoly& l1, const MPoly& l2) {
  if (vars.size() != 3) throw std::invalid_argument("collineation lifts act on three variables");
  for (const MPoly* l : {&l0, &l1, &l2}) {
    if (l->vars() != vars || l->total_degree() > 1 || l->depends_on(2)) throw std::invalid_argument("collineation forms must be affine in the first two variables");
  }
  if (l0.constant_term() == 0) throw Error("InvalidMap", "l0 must not vanish at the origin");
  BiratMap m;
  m.kind = MapKind::CollineationLift;
  m.vars = vars;
  m.l0 = l0;
  m.l1 = l1;
  m.l2 = l2;
  return m;
}

std::vector<MRat> map_images(const BiratMap& m) {
  if (m.kind != MapKind::Composite) return leaf_images(m, m.vars);
  std::vector<MRat> acc = leaf_images(identity_map(m.vars), m.vars);
  for (auto it = m.parts.rbegin(); it != m.parts.rend(); ++it) {
    std::vector<MRat> part = map_images(*it), next;
    for (const auto& r : part) next.push_back(substitute_pair(r.num, r.den, acc));
    acc = next;
  }
  return acc;
}

MRat apply_to_rational(const BiratMap& m, const MPoly& P, const MPoly& Qd) {
  if (P.vars() != m.vars || Qd.vars() != m.vars) throw std::invalid_argument("function and map use different variables");
  return substitute_pair(P, Qd, map_images(m));
}

bool rat_equal(const MRat& a, const MRat& b) { return a.num * b.den == b.num * a.den; }

TruncSeries apply_to_series(const BiratMap& m, const MPoly& P, const MPoly& Qd, int N) {
  if (!has_series(m)) {
    return series_substitute(P, Qd, leaf_series_images(m, N));
  }
  return apply_to_series(m, expand_rational(P, Qd, N));
}

TruncSeries apply_to_series(const BiratMap& m, const TruncSeries& S) {
  if (m.kind == MapKind::Composite && !m.parts.empty() && has_series(m)) {
    // R o p0 o p1 ...: substitute the parts from the first
    TruncSeries cur = S;
    for (const auto& p : m.parts) cur = apply_to_series(p, cur);
    return cur;
  }
  return series_substitute(S, leaf_series_images(m, S.bound()));
}

int preserves_product(const BiratMap& m) {
  if (m.kind == MapKind::Composite && has_series(m)) {
    // the product power of a composite is the product of the parts' powers
    int d = 1;
    for (const auto& p : m.parts) d *= preserves_product(p);
    return d;
  }
  std::vector<std::string> vars = m.vars;
  std::vector<MRat> img;
  if (m.kind == MapKind::TriangularScale && m.q_series) {
    // q as a formal symbol
    vars.push_back("q#");
    img = leaf_images(identity_map(vars), vars);
    MPoly qv = MPoly::var(vars, "q#");
    img[m.up] = {img[m.up].num * qv, one(vars)};
    img[m.down] = {img[m.down].num, qv};
  } else {
    img = map_images(m);
  }
  const int k = static_cast<int>(m.vars.size());
  MRat prod{one(vars), one(vars)};
  for (int i = 0; i < k; ++i) {
    prod.num = prod.num * img[i].num;
    prod.den = prod.den * img[i].den;
  }
  MPoly quo;
  if (!try_divide(prod.num, prod.den, quo) || quo.terms().size() != 1)
    throw Error("ProductNotPreserved", "the product of the images is not a monomial");
  const auto& [e, c] = *quo.terms().begin();
  int d = e[0];
  bool ok = c == 1 && d > 0;
  for (int i = 0; i < k; ++i) ok = ok && e[i] == d;
  for (size_t i = k; i < e.size(); ++i) ok = ok && e[i] == 0;
  if (!ok) throw Error("ProductNotPreserved", "the product of the images is " + quo.str());
  return d;
}

BiratMap compose(const std::vector<BiratMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("compose needs at least one map");
  BiratMap m = identity_map(maps.front().vars);
  for (const auto& p : maps) {
    if (p.vars != m.vars) throw std::invalid_argument("composed maps use different variables");
    if (p.kind == MapKind::Composite) m.parts.insert(m.parts.end(), p.parts.begin(), p.parts.end());
    else m.parts.push_back(p);
  }
  return m;
}

BiratMap invert(const BiratMap& m) {
  switch (m.kind) {
    case MapKind::TriangularScale: {
      BiratMap r = m;
      if (m.q_series) r.q_series = m.q_series->inverse();
      else r.q = m.q.inverse();
      return r;
    }
    case MapKind::Monomial: {
      const int k = static_cast<int>(m.matrix.size());
      std::vector<std::vector<Q>> a(k, std::vector<Q>(2 * k));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) a[i][j] = m.matrix[i][j];
        a[i][k + i] = 1;
      }
      std::vector<std::vector<Q>> sq(k);
      for (int i = 0; i < k; ++i) sq[i].assign(a[i].begin(), a[i].begin() + k);
      Q d = det_of(sq);
      if (d != 1 && d != -1) throw Error("NotInvertible", "monomial matrix has determinant " + d.get_str());
      for (int c = 0; c < k; ++c) {
        int p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        Q iv = 1 / a[c][c];
        for (auto& v : a[c]) v *= iv;
        for (int i = 0; i < k; ++i) {
          if (i == c || a[i][c] == 0) continue;
          Q f = a[i][c];
          for (int j = 0; j < 2 * k; ++j) a[i][j] -= f * a[c][j];
        }
      }
      std::vector<std::vector<int>> inv(k, std::vector<int>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) inv[i][j] = static_cast<int>(a[i][k + j].get_num().get_si());
      return monomial_map(m.vars, inv);
    }
    case MapKind::HadamardLift: {
      std::vector<int> mono = m.comp_mono;
      for (size_t j = 0; j < mono.size(); ++j)
        if (std::find(m.inverted.begin(), m.inverted.end(), static_cast<int>(j)) == m.inverted.end()) mono[j] = -mono[j];
      return hadamard_lift(m.vars, m.inverted, m.comp, mono);
    }
    case MapKind::CollineationLift: throw Error("NotInvertible", "collineation lifts are not inverted");
    case MapKind::Composite: {
      BiratMap r = identity_map(m.vars);
      for (auto it = m.parts.rbegin(); it != m.parts.rend(); ++it) r.parts.push_back(invert(*it));
      return r;
    }
  }
  throw std::logic_error("unhandled map kind");
}

InvarianceReport invariance_report(const MPoly& P, const MPoly& Qd, const BiratMap& m, int N) {
  InvarianceReport rep;
  rep.power = preserves_product(m);
  rep.source_diag = diag_rational(P, Qd, N);
  rep.image_diag = diag(apply_to_series(m, P, Qd, N));
  UniSeries expect = rep.source_diag.substitute_power(rep.power).truncate(N);
  for (int i = 0; i <= N; ++i)
    if (expect[i] != rep.image_diag[i]) {
      rep.first_divergence = i;
      break;
    }
  rep.equal = !rep.first_divergence;
  return rep;
}

// ---------------- text form ----------------

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n"), b = s.find_last_not_of(" \t\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

int var_at(const std::vector<std::string>& vars, const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), trim(name));
  if (it == vars.end()) throw Error("SyntaxError", "unknown variable '" + trim(name) + "' in map");
  return static_cast<int>(it - vars.begin());
}

std::string mono_str(const std::vector<std::string>& vars, const std::vector<int>& e) {
  std::string s;
  for (size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[j];
    if (e[j] != 1) s += e[j] > 0 ? "^" + std::to_string(e[j]) : "^(" + std::to_string(e[j]) + ")";
  }
  return s.empty() ? "1" : s;
}

}  // namespace

BiratMap parse_map(const std::string& text, const std::vector<std::string>& vars, int series_bound) {
  std::string t = trim(text);
  size_t open = t.find('(');
  if (open == std::string::npos || t.back() != ')') throw Error("SyntaxError", "map must look like name(...): " + t);
  std::string name = trim(t.substr(0, open));
  std::vector<std::string> args = split_top(t.substr(open + 1, t.size() - open - 2), ';');
  if (name == "id") return identity_map(vars);
  if (name == "tri") {
    if (args.size() != 3) throw Error("SyntaxError", "tri(pivot; up, down; q)");
    int piv = var_at(vars, args[0]);
    auto ud = split_top(args[1], ',');
    if (ud.size() != 2) throw Error("SyntaxError", "tri needs two scaled variables");
    int up = var_at(vars, ud[0]), down = var_at(vars, ud[1]);
    ExprPtr qe = parse_expr(args[2]);
    for (const auto& v : expr_vars(qe))
      if (v != vars[piv]) throw Error("SemanticError", "q may depend only on the pivot " + vars[piv]);
    try {
      RatFn r = to_ratfn(qe, vars);
      return triangular_scale(vars, piv, up, down, RatFunc(r.num.to_upoly(piv), r.den.to_upoly(piv)));
    } catch (const Error& e) {
      if (e.name() != "SemanticError") throw;
      return triangular_scale(vars, piv, up, down, series_of_expr(qe, vars[piv], series_bound));
    }
  }
  if (name == "mono") {
    if (args.size() != 1) throw Error("SyntaxError", "mono([[...],...])");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(args[0]);
      return monomial_map(vars, j.get<std::vector<std::vector<int>>>());
    } catch (const nlohmann::json::exception& e) {
      throw Error("SyntaxError", std::string("monomial matrix: ") + e.what());
    }
  }
  if (name == "hadamard") {
    if (args.size() != 3) throw Error("SyntaxError", "hadamard(inverted vars; comp var; monomial)");
    std::vector<int> inv;
    for (const auto& v : split_top(args[0], ',')) inv.push_back(var_at(vars, v));
    int comp = var_at(vars, args[1]);
    MPoly mono = parse_poly(args[2], vars);
    if (mono.terms().size() != 1 || mono.terms().begin()->second != 1) throw Error("SemanticError", "compensating factor must be a monomial");
    const Exps& e = mono.terms().begin()->first;
    return hadamard_lift(vars, inv, comp, std::vector<int>(e.begin(), e.end()));
  }
  if (name == "colline") {
    if (args.size() != 3) throw Error("SyntaxError", "colline(l0; l1; l2)");
    return collineation_lift(vars, parse_poly(args[0], vars), parse_poly(args[1], vars), parse_poly(args[2], vars));
  }
  if (name == "compose") {
    std::vector<BiratMap> ms;
    for (const auto& a : args) ms.push_back(parse_map(a, vars, series_bound));
    return compose(ms);
  }
  throw Error("SyntaxError", "unknown map kind '" + name + "'");
}

std::string map_str(const BiratMap& m) {
  const auto& v = m.vars;
  switch (m.kind) {
    case MapKind::TriangularScale: {
      std::string q = m.q_series ? m.q_series->str() : m.q.str(v[m.pivot]);
      return "tri(" + v[m.pivot] + "; " + v[m.up] + ", " + v[m.down] + "; " + q + ")";
    }
    case MapKind::Monomial: return "mono(" + nlohmann::json(m.matrix).dump() + ")";
    case MapKind::HadamardLift: {
      std::string s = "hadamard(";
      for (size_t i = 0; i < m.inverted.size(); ++i) s += (i ? ", " : "") + v[m.inverted[i]];
      return s + "; " + v[m.comp] + "; " + mono_str(v, m.comp_mono) + ")";
    }
    case MapKind::CollineationLift: return "colline(" + m.l0.str() + "; " + m.l1.str() + "; " + m.l2.str() + ")";
    case MapKind::Composite: {
      if (m.parts.empty()) return "id()";
      std::string s = "compose(";
      for (size_t i = 0; i < m.parts.size(); ++i) s += (i ? "; " : "") + map_str(m.parts[i]);
      return s + ")";
    }
  }
  return "";
}

}  // namespace dg
