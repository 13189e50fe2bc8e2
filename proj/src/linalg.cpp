#include "dg/linalg.hpp"

#include <algorithm>

namespace dg {

namespace {

struct Echelon {
  ZMat a;
  std::vector<int> pivots;  // pivot column of row k
};

// Fraction-free Gauss-Jordan: after it, every pivot entry equals the same
// determinant and pivot columns are zero elsewhere.
Echelon reduce(ZMat a, int ncols) {
  a.erase(std::remove_if(a.begin(), a.end(), [](const ZRow& r) { return std::all_of(r.begin(), r.end(), [](const Z& z) { return sgn(z) == 0; }); }), a.end());
  Echelon e;
  const int m = static_cast<int>(a.size());
  Z prev = 1, t;
  int r = 0;
  for (int c = 0; c < ncols && r < m; ++c) {
    int best = -1;
    size_t best_size = 0;
    for (int i = r; i < m; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      size_t s = mpz_size(a[i][c].get_mpz_t());
      if (best < 0 || s < best_size) {
        best = i;
        best_size = s;
      }
    }
    if (best < 0) continue;
    std::swap(a[r], a[best]);
    const ZRow& pr = a[r];
    const Z piv = pr[c];
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      ZRow& row = a[i];
      const Z f = row[c];
      for (int j = 0; j < ncols; ++j) {
        if (j == c) continue;
        mpz_mul(t.get_mpz_t(), piv.get_mpz_t(), row[j].get_mpz_t());
        if (sgn(f) != 0) mpz_submul(t.get_mpz_t(), f.get_mpz_t(), pr[j].get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    // rows already reduced keep their pivot equal to the running determinant
    for (int k = 0; k < r; ++k) a[k][e.pivots[k]] = piv;
    e.pivots.push_back(c);
    prev = piv;
    ++r;
  }
  a.resize(r);
  e.a = std::move(a);
  return e;
}

}  // namespace

ZRow clear_row(const QRow& r) {
  Z l = lcm_den(r);
  ZRow out(r.size());
  for (size_t i = 0; i < r.size(); ++i) out[i] = r[i].get_num() * (l / r[i].get_den());
  return out;
}

std::vector<ZRow> nullspace(ZMat a, int ncols) {
  Echelon e = reduce(std::move(a), ncols);
  std::vector<bool> is_piv(ncols, false);
  for (int c : e.pivots) is_piv[c] = true;
  std::vector<ZRow> basis;
  Z d = e.pivots.empty() ? Z(1) : e.a[0][e.pivots[0]];
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    ZRow v(ncols, 0);
    v[f] = d;
    for (size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.a[k][f];
    Z g = 0;
    for (const auto& z : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (v[f] < 0) g = -g;
    for (auto& z : v) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<ZRow> nullspace(const QMat& a, int ncols) {
  ZMat z;
  z.reserve(a.size());
  for (const auto& r : a) z.push_back(clear_row(r));
  return nullspace(std::move(z), ncols);
}

int rank(ZMat a, int ncols) { return static_cast<int>(reduce(std::move(a), ncols).pivots.size()); }

Q det(QMat a) {
  const int n = static_cast<int>(a.size());
  Q d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n && piv < 0; ++i)
      if (a[i][c] != 0) piv = i;
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      d = -d;
    }
    d *= a[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Q f = a[i][c] / a[c][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

int rank_mod(const ZMat& a, int ncols, unsigned long p) {
  using u64 = unsigned long long;
  std::vector<std::vector<u64>> m;
  m.reserve(a.size());
  for (const auto& row : a) {
    std::vector<u64> r(ncols);
    for (int j = 0; j < ncols; ++j) r[j] = mpz_fdiv_ui(row[j].get_mpz_t(), p);
    m.push_back(std::move(r));
  }
  auto inv = [p](u64 v) {
    u64 r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * v % p;
      v = v * v % p;
      e >>= 1;
    }
    return r;
  };
  int r = 0;
  const int rows = static_cast<int>(m.size());
  for (int c = 0; c < ncols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows && piv < 0; ++i)
      if (m[i][c]) piv = i;
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    u64 iv = inv(m[r][c]);
    for (int j = c; j < ncols; ++j) m[r][j] = m[r][j] * iv % p;
    for (int i = r + 1; i < rows; ++i) {
      u64 f = m[i][c];
      if (!f) continue;
      for (int j = c; j < ncols; ++j) m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
    }
    ++r;
  }
  return r;
}

std::vector<PRow> nullspace(PMat a, int ncols) {
  a.erase(std::remove_if(a.begin(), a.end(), [](const PRow& r) { return std::all_of(r.begin(), r.end(), [](const UPoly& z) { return z.is_zero(); }); }), a.end());
  const int m = static_cast<int>(a.size());
  std::vector<int> pivots;
  UPoly prev(1);
  int r = 0;
  for (int c = 0; c < ncols && r < m; ++c) {
    int best = -1;
    for (int i = r; i < m; ++i)
      if (!a[i][c].is_zero() && (best < 0 || a[i][c].degree() < a[best][c].degree())) best = i;
    if (best < 0) continue;
    std::swap(a[r], a[best]);
    const UPoly piv = a[r][c];
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      PRow& row = a[i];
      const UPoly f = row[c];
      for (int j = 0; j < ncols; ++j) {
        if (j == c) continue;
        UPoly t = piv * row[j];
        if (!f.is_zero() && !a[r][j].is_zero()) t -= f * a[r][j];
        row[j] = prev.is_one() ? t : t / prev;
      }
      row[c] = UPoly();
    }
    for (int k = 0; k < r; ++k) a[k][pivots[k]] = piv;
    pivots.push_back(c);
    prev = piv;
    ++r;
  }
  std::vector<bool> is_piv(ncols, false);
  for (int c : pivots) is_piv[c] = true;
  UPoly d = pivots.empty() ? UPoly(1) : a[0][pivots[0]];
  std::vector<PRow> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    PRow v(ncols);
    v[f] = d;
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][f];
    UPoly g;
    for (const auto& z : v) g = gcd(g, z);
    std::vector<Q> all;
    for (auto& z : v) {
      z = z / g;
      all.insert(all.end(), z.coeffs().begin(), z.coeffs().end());
    }
    Q scale(lcm_den(all), gcd_num(all));
    scale.canonicalize();
    if (v[f].lc() < 0) scale = -scale;
    for (auto& z : v) z *= scale;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dg
