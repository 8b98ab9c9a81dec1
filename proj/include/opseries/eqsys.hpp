// Equation systems for the generating series of a monomial operad's basis:
//   - truncation (stump) systems, non-symmetric and shuffle,
//   - the inclusion-exclusion system on left-multiple closures (non-symmetric),
//   - the symmetrized algebraic system for symmetric-regular shuffle operads,
// together with an exact coefficient solver and text/JSON/ODE emission.
#pragma once

#include <string>
#include <vector>

#include "opseries/presentation.hpp"
#include "opseries/series.hpp"

namespace opseries {

enum class SystemKind { nonsym_product, shuffle_c, symmetric_algebraic };

// One monomial term `sign * (count/divisor) * t^{t_exp} * <factors>`.
// Factors are variable indices; -1 denotes the literal series z.  Product
// systems multiply the factors in order; shuffle-C systems nest them as
// C(f1, C(f2, ...)); symmetric systems multiply (order irrelevant).
struct Term {
  int sign = 1;
  int t_exp = 0;
  std::vector<int> factors;
  Int count = 1;
  Int divisor = 1;
};

struct Equation {
  int target = -1;
  std::vector<Term> terms;
};

struct EqVariable {
  std::string id;
  std::string descriptor;     // human-readable shape / monomial text
  Int multiplicity = 1;       // weight of the variable in the total series
  bool is_ground = false;     // the variable pinned to the series z
  bool finite = false;        // known to be a polynomial (singleton class)
  Tree shape;
};

struct EqSystem {
  SystemKind kind = SystemKind::nonsym_product;
  Flavor flavor = Flavor::ordinary;
  std::vector<Generator> gens;
  std::vector<EqVariable> vars;
  std::vector<Equation> eqs;       // one per non-ground variable
  std::vector<int> total;          // the full series is sum of these variables
  int ground = -1;                 // index of the ground variable, or -1
  int depth = 2;                   // truncation depth d (stump systems)
};

// Truncation system over stumps of depth d = max(2, max relation leaf level).
EqSystem build_stump_system_nonsym(const Presentation& p);

// Same over planar skeletons of stumps; requires a shuffle-regular
// presentation.
EqSystem build_stump_system_shuffle(const Presentation& p);

// Inclusion-exclusion system on the closure of the generators under left
// common multiples with relations.
EqSystem build_incl_excl_system_nonsym(const Presentation& p);

// Symmetrized system over tree-skeleton classes of stumps; requires a
// symmetric-regular presentation.
EqSystem build_symmetric_regular_system(const Presentation& p);

struct Solution {
  std::vector<Series> vars;
  Series total;
};

// Exact coefficient recursion up to z^n_max.
// weighted == false drops the t-grading (every coefficient stays a scalar),
// which is much faster when only plain dimensions are needed
Solution solve_coefficients(const EqSystem& s, int n_max, bool weighted = true);

// format: "text", "json", or "ode" (shuffle-C systems only).  When weighted
// is false the grading variable is suppressed (t = 1).
std::string emit_system(const EqSystem& s, const std::string& format,
                        bool weighted = false);

}  // namespace opseries
