// Closed-form reconstruction from exact coefficients, equation verification,
// and the dependence-graph growth heuristic.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opseries/eqsys.hpp"
#include "opseries/series.hpp"

namespace opseries {

// p/q with q(0) = 1, gcd(p, q) = 1 (polynomials in z).
struct RationalFunction {
  Poly num;
  Poly den;
};

// sum_j coeffs[j](z) * y^j = 0, primitive integer coefficients.
struct AlgebraicEquation {
  int deg_y = 0;
  std::vector<Poly> coeffs;  // size deg_y + 1
};

// Least-degree rational function matching f through z^N, where the fit must
// leave at least max_deg spare matched coefficients as certification margin.
// Requires N >= 2*max_deg + 2; exponential input is converted to ordinary.
std::optional<RationalFunction> guess_rational(const Series& f, int max_deg);

// Least-degree polynomial P(z, y) with P(z, f) = 0 through z^N, searching
// y-degree then z-degree; at least `margin` spare coefficients are required.
// The input must be free of the weight variable.
std::optional<AlgebraicEquation> guess_algebraic(const Series& f, int deg_y,
                                                 int deg_z, int margin = 5);

// Does sum_j coeffs[j](z) f^j vanish through z^N?
bool verify_equation(const Series& f, const AlgebraicEquation& eq);

// Truncated expansion of a rational function (t-free, ordinary flavor).
Series rational_series(const RationalFunction& rf, int n);

std::string rational_json(const RationalFunction& rf);
std::string algebraic_json(const AlgebraicEquation& eq);
std::string rational_text(const RationalFunction& rf);
std::string algebraic_text(const AlgebraicEquation& eq);

// Dependence graph of a truncation-built system: an edge b -> b' when some
// term of b's equation contains b', nonlinear when that term has another
// factor that is not known to be finite.
struct DependenceGraph {
  int nvars = 0;
  std::vector<bool> finite;                       // per variable
  std::vector<std::vector<int>> linear;           // adjacency: 0 none, 1 linear, 2 nonlinear
  bool has_nonlinear_cycle = false;
};

DependenceGraph dependence_graph(const EqSystem& s);

struct GrowthReport {
  bool nonlinear_cycle = false;
  std::string expectation;  // what the graph shape suggests
  std::string observed;     // coarse ratio behavior of the dimensions
  std::string note;
};

GrowthReport classify_growth(const EqSystem& s, const Series& total);

}  // namespace opseries
