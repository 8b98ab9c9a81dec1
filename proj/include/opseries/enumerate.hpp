// Direct basis enumeration: build all basis tree monomials arity by arity,
// rejecting any candidate whose root composition is left-divisible by a
// relation.  Serves as the independent oracle for the equation systems.
#pragma once

#include <vector>

#include "opseries/presentation.hpp"

namespace opseries {

struct EnumOptions {
  long long max_candidates = 50'000'000;  // resource guard
};

// Basis dimensions for arity 1..n_max.
std::vector<Int> basis_dims(const Presentation& p, int n_max,
                            const EnumOptions& opt = {});

// Weighted count per arity: polynomial in t collecting t^{weight}.
std::vector<Poly> basis_dims_weighted(const Presentation& p, int n_max,
                                      const EnumOptions& opt = {});

// The basis monomials of one arity.
std::vector<Tree> basis_monomials(const Presentation& p, int n,
                                  const EnumOptions& opt = {});

}  // namespace opseries
