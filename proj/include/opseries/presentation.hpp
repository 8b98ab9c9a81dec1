// Finitely presented monomial operads: the input DSL, skeleton-class
// expansion, regularity checks, and a catalog of builtin presentations.
#pragma once

#include <string>
#include <vector>

#include "opseries/tree.hpp"

namespace opseries {

enum class SkeletonFlavor { planar, tree };

struct SkeletonClass {
  SkeletonFlavor flavor;
  Tree shape;  // placeholder leaves
};

struct Presentation {
  OperadKind kind = OperadKind::nonsym;
  std::vector<Generator> gens;
  std::vector<Tree> relations;            // reduced: no relation divides another
  std::vector<SkeletonClass> skeletons;   // skeleton lines, as written

  int gen_index(const std::string& name) const;  // -1 when absent
};

// Parse the DSL:
//   operad (nonsym|shuffle)
//   gen NAME : ARITY [weight W]
//   rel MONOMIAL
//   skeleton (planar|tree) MONOMIAL     (shuffle mode; placeholder leaves)
// Monomials are name(child,...), leaves x1..xn (shuffle) or "-".
// '#' starts a comment.  Raises parse_error with a 1-based position.
Presentation parse_presentation(const std::string& text);

// All valid shuffle labelings of a planar shape (placeholder leaves).
std::vector<Tree> expand_planar_skeleton(const Tree& shape,
                                         const std::vector<Generator>& gens);

// All valid shuffle monomials whose underlying non-planar tree matches the
// shape: every planar reordering of the shape, each with all its labelings.
std::vector<Tree> expand_tree_skeleton(const Tree& shape,
                                       const std::vector<Generator>& gens);

struct RegularityReport {
  bool regular = true;
  std::string missing;  // text of one absent monomial when not regular
};

// Is the relation set a union of full planar-skeleton (resp. tree-skeleton)
// classes?
RegularityReport check_shuffle_regular(const Presentation& p);
RegularityReport check_symmetric_regular(const Presentation& p);

// Builtin presentations; names() lists the catalog.  Parametrized families
// are accepted as "q_k:K" or "q_k(K)" for K >= 2.
std::vector<std::string> builtin_names();
Presentation builtin_presentation(const std::string& name);

// Nested-array JSON rendering of the presentation.
std::string presentation_json(const Presentation& p);

}  // namespace opseries
