#pragma once

#include <vector>

#include "dg/rational.hpp"
#include "dg/upoly.hpp"

namespace dg {

using ZRow = std::vector<Z>;
using ZMat = std::vector<ZRow>;
using QRow = std::vector<Q>;
using QMat = std::vector<QRow>;

// Right nullspace basis of an integer matrix with ncols columns, by
// fraction-free Gauss-Jordan elimination. Each basis vector is primitive
// with a positive entry at its free column.
std::vector<ZRow> nullspace(ZMat a, int ncols);
std::vector<ZRow> nullspace(const QMat& a, int ncols);
int rank(ZMat a, int ncols);
// Determinant of a square matrix.
Q det(QMat a);

ZRow clear_row(const QRow& r);

// Rank of an integer matrix modulo a word-size prime; a cheap filter before exact work.
int rank_mod(const ZMat& a, int ncols, unsigned long p);

using PRow = std::vector<UPoly>;
using PMat = std::vector<PRow>;
// Right nullspace over Q(x), returned with polynomial entries free of common
// factors. Columns are eliminated left to right, so the first vector is the
// dependency with the smallest last column.
std::vector<PRow> nullspace(PMat a, int ncols);

}  // namespace dg
