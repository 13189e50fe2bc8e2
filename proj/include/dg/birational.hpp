#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dg/mpoly.hpp"
#include "dg/ratfunc.hpp"
#include "dg/series.hpp"

namespace dg {

// Multivariate rational function num/den.
struct MRat {
  MPoly num, den;
};

enum class MapKind { TriangularScale, Monomial, HadamardLift, CollineationLift, Composite };

// A transformation of the variable tuple, acting on functions by R -> R(images).
struct BiratMap {
  MapKind kind = MapKind::Composite;
  std::vector<std::string> vars;

  // TriangularScale: x_up -> x_up * q(x_pivot), x_down -> x_down / q(x_pivot)
  int pivot = 0, up = 1, down = 2;
  RatFunc q{1};
  std::optional<UniSeries> q_series;  // used instead of q when set

  // Monomial: image i is prod_j x_j^matrix[i][j]
  std::vector<std::vector<int>> matrix;

  // HadamardLift: x_i -> 1/x_i for i in inverted, x_comp -> x_comp * prod x_j^comp_mono[j]
  std::vector<int> inverted;
  int comp = 2;
  std::vector<int> comp_mono;

  // CollineationLift on (vars[0], vars[1], vars[2]) with affine forms in the first two:
  // (l1/l0, l2/l0, x y z l0^2 / (l1 l2))
  MPoly l0, l1, l2;

  // Composite: R -> R o parts[0] o parts[1] o ...
  std::vector<BiratMap> parts;
};

BiratMap identity_map(const std::vector<std::string>& vars);
BiratMap triangular_scale(const std::vector<std::string>& vars, int pivot, int up, int down, const RatFunc& q);
BiratMap triangular_scale(const std::vector<std::string>& vars, int pivot, int up, int down, const UniSeries& q);
BiratMap monomial_map(const std::vector<std::string>& vars, const std::vector<std::vector<int>>& m);
BiratMap hadamard_lift(const std::vector<std::string>& vars, const std::vector<int>& inverted, int comp, const std::vector<int>& mono);
BiratMap collineation_lift(const std::vector<std::string>& vars, const MPoly& l0, const MPoly& l1, const MPoly& l2);

// Images of the variables as rational functions; IncompatibleMapKind for series-valued q.
std::vector<MRat> map_images(const BiratMap& m);
std::string map_str(const BiratMap& m);

// R(images) with denominators cleared and known common factors removed.
MRat apply_to_rational(const BiratMap& m, const MPoly& P, const MPoly& Qd);
// Equality as rational functions (cross multiplication).
bool rat_equal(const MRat& a, const MRat& b);

// Expansion of R(images) through per-variable bound N. OriginNotPreserved when
// some image does not vanish at the origin.
TruncSeries apply_to_series(const BiratMap& m, const MPoly& P, const MPoly& Qd, int N);
TruncSeries apply_to_series(const BiratMap& m, const TruncSeries& S);

// d with prod(images) = (prod vars)^d, by exact symbolic computation; ProductNotPreserved otherwise.
int preserves_product(const BiratMap& m);

BiratMap compose(const std::vector<BiratMap>& maps);
// NotInvertible for collineation lifts and monomial maps of determinant other than +-1.
BiratMap invert(const BiratMap& m);

struct InvarianceReport {
  bool equal = false;
  std::optional<int> first_divergence;
  int power = 1;  // diagonals compared as diag(image)(x) vs diag(source)(x^power)
  UniSeries source_diag, image_diag;
};
InvarianceReport invariance_report(const MPoly& P, const MPoly& Qd, const BiratMap& m, int N);

// Text syntax:
//   tri(x; y, z; 1+3*x+7*x^2)   series-valued q allowed, e.g. tri(x; y, z; cos(x))
//   mono([[1,0,0],[2,2,0],[0,1,3]])
//   hadamard(x, y; z; x^2*y^2)
//   colline(1-x+2*y; x; y)
//   compose(map; map; ...)
BiratMap parse_map(const std::string& text, const std::vector<std::string>& vars, int series_bound = 20);

}  // namespace dg
