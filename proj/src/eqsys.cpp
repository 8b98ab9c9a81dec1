#include "opseries/eqsys.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "json.hpp"

namespace opseries {

namespace {

// ---------------------------------------------------------------------------
// Shared machinery

int truncation_depth(const std::vector<Tree>& relation_shapes) {
  int d = 2;
  for (const Tree& r : relation_shapes) d = std::max(d, max_leaf_level(r));
  return d;
}

// All shapes with internal vertices at level <= d-2 (so leaves at level
// <= d-1), including the trivial shape.
std::vector<Tree> shape_universe(int d, const std::vector<Generator>& gens) {
  // options[l] = all shapes a subtree rooted at level l may take
  std::vector<std::vector<Tree>> options(d);
  for (int l = d - 1; l >= 0; --l) {
    std::vector<Tree>& out = options[l];
    out.push_back(Tree::make_leaf());
    if (l > d - 2) continue;
    const std::vector<Tree>& child = options[l + 1];
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      std::vector<size_t> pick(gens[gi].arity, 0);
      while (true) {
        Tree t = Tree::make_node(static_cast<int>(gi), {});
        for (size_t v : pick) t.children.push_back(child[v]);
        out.push_back(std::move(t));
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == child.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  }
  return options[0];
}

Int shape_universe_count(int d, const std::vector<Generator>& gens) {
  std::vector<Int> count(d + 1);
  count[d - 1] = 1;
  for (int l = d - 2; l >= 0; --l) {
    count[l] = 1;
    for (const Generator& g : gens) {
      Int prod = 1;
      for (int i = 0; i < g.arity; ++i) prod *= count[l + 1];
      count[l] += prod;
    }
  }
  return count[0];
}

bool divisible_by_any(const Tree& t, const std::vector<Tree>& shapes) {
  for (const Tree& r : shapes)
    if (divides(r, t, OperadKind::nonsym)) return true;
  return false;
}

bool left_divisible_by_any(const Tree& t, const std::vector<Tree>& shapes) {
  for (const Tree& r : shapes)
    if (left_divides(r, t, OperadKind::nonsym)) return true;
  return false;
}

bool is_corolla(const Tree& t) {
  if (t.leaf()) return false;
  for (const Tree& c : t.children)
    if (!c.leaf()) return false;
  return true;
}

// A stump with no leaf at the cut level is never a proper truncation, so its
// variable collects exactly one monomial.
bool stump_is_finite(const Tree& shape, int d) {
  return max_leaf_level(shape) < d - 1 || shape.leaf();
}

void name_variables(EqSystem& s, const std::string& ground_id) {
  for (size_t i = 0; i < s.vars.size(); ++i) {
    EqVariable& v = s.vars[i];
    if (v.is_ground)
      v.id = ground_id;
    else if (is_corolla(v.shape))
      v.id = "y_" + s.gens[v.shape.gen].name;
    else
      v.id = "y" + std::to_string(i + 1);
  }
}

// Drop variables not reachable from the total series through equation terms.
// The builders only ever create reachable variables, so this is expected to
// be a no-op; it is kept as a safety net and is asserted trivial in tests.
void prune_unreachable(EqSystem& s) {
  std::vector<bool> keep(s.vars.size(), false);
  std::queue<int> bfs;
  for (int v : s.total) {
    if (!keep[v]) {
      keep[v] = true;
      bfs.push(v);
    }
  }
  std::vector<int> eq_of(s.vars.size(), -1);
  for (size_t i = 0; i < s.eqs.size(); ++i) eq_of[s.eqs[i].target] = static_cast<int>(i);
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    if (eq_of[v] < 0) continue;
    for (const Term& t : s.eqs[eq_of[v]].terms)
      for (int f : t.factors)
        if (f >= 0 && !keep[f]) {
          keep[f] = true;
          bfs.push(f);
        }
  }
  if (std::all_of(keep.begin(), keep.end(), [](bool b) { return b; })) return;
  std::vector<int> remap(s.vars.size(), -1);
  std::vector<EqVariable> vars;
  for (size_t i = 0; i < s.vars.size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<int>(vars.size());
    vars.push_back(s.vars[i]);
  }
  std::vector<Equation> eqs;
  for (Equation& e : s.eqs) {
    if (!keep[e.target]) continue;
    e.target = remap[e.target];
    for (Term& t : e.terms)
      for (int& f : t.factors)
        if (f >= 0) f = remap[f];
    eqs.push_back(std::move(e));
  }
  s.vars = std::move(vars);
  s.eqs = std::move(eqs);
  for (int& v : s.total) v = remap[v];
  if (s.ground >= 0) s.ground = remap[s.ground];
}

// Truncation system over a set of relation shapes (labels already erased).
EqSystem build_truncation_system(const Presentation& p,
                                 const std::vector<Tree>& rel_shapes,
                                 SystemKind kind) {
  EqSystem s;
  s.kind = kind;
  s.flavor = kind == SystemKind::nonsym_product ? Flavor::ordinary
                                                : Flavor::exponential;
  s.gens = p.gens;
  s.depth = truncation_depth(rel_shapes);

  std::vector<Tree> shapes;
  for (Tree& t : shape_universe(s.depth, p.gens))
    if (!divisible_by_any(t, rel_shapes)) shapes.push_back(std::move(t));
  std::sort(shapes.begin(), shapes.end(), TreeLess{});

  std::map<Tree, int, TreeLess> index;
  for (const Tree& t : shapes) {
    EqVariable v;
    v.shape = t;
    v.descriptor = tree_text(t, p.gens);
    v.is_ground = t.leaf();
    v.finite = stump_is_finite(t, s.depth);
    index[t] = static_cast<int>(s.vars.size());
    s.vars.push_back(std::move(v));
  }
  s.ground = 0;  // the trivial shape sorts first
  name_variables(s, "z");
  for (size_t i = 0; i < s.vars.size(); ++i) s.total.push_back(static_cast<int>(i));

  std::vector<Equation> eqs(s.vars.size());
  for (size_t i = 0; i < s.vars.size(); ++i) eqs[i].target = static_cast<int>(i);

  for (size_t gi = 0; gi < p.gens.size(); ++gi) {
    int m = p.gens[gi].arity;
    std::vector<int> tuple(m, 0);
    while (true) {
      Tree composite = Tree::make_node(static_cast<int>(gi), {});
      for (int v : tuple) composite.children.push_back(s.vars[v].shape);
      if (!left_divisible_by_any(composite, rel_shapes)) {
        Tree target = stump(composite, s.depth).shape;
        auto it = index.find(target);
        if (it == index.end())
          throw std::logic_error("truncation left the stump set");
        Term t;
        t.t_exp = p.gens[gi].weight;
        t.factors = tuple;
        eqs[it->second].terms.push_back(std::move(t));
      }
      int i = m - 1;
      while (i >= 0 && ++tuple[i] == static_cast<int>(s.vars.size()))
        tuple[i--] = 0;
      if (i < 0) break;
    }
  }
  for (Equation& e : eqs)
    if (e.target != s.ground) s.eqs.push_back(std::move(e));
  prune_unreachable(s);
  return s;
}

}  // namespace

EqSystem build_stump_system_nonsym(const Presentation& p) {
  if (p.kind != OperadKind::nonsym)
    throw usage_error("build_stump_system_nonsym requires a non-symmetric operad");
  return build_truncation_system(p, p.relations, SystemKind::nonsym_product);
}

EqSystem build_stump_system_shuffle(const Presentation& p) {
  if (p.kind != OperadKind::shuffle)
    throw usage_error("build_stump_system_shuffle requires a shuffle operad");
  RegularityReport rep = check_shuffle_regular(p);
  if (!rep.regular)
    throw usage_error(
        "the relation set is not shuffle-regular; a full planar-skeleton "
        "class requires the absent monomial " +
        rep.missing);
  std::set<Tree, TreeLess> skels;
  for (const Tree& r : p.relations) skels.insert(planar_skeleton(r));
  std::vector<Tree> rel_shapes(skels.begin(), skels.end());
  return build_truncation_system(p, rel_shapes, SystemKind::shuffle_c);
}

EqSystem build_incl_excl_system_nonsym(const Presentation& p) {
  if (p.kind != OperadKind::nonsym)
    throw usage_error("build_incl_excl_system_nonsym requires a non-symmetric operad");
  EqSystem s;
  s.kind = SystemKind::nonsym_product;
  s.flavor = Flavor::ordinary;
  s.gens = p.gens;
  s.depth = truncation_depth(p.relations);
  // every closure element keeps its leaves at level <= depth-1
  const Int guard = shape_universe_count(s.depth, p.gens);

  std::map<Tree, int, TreeLess> index;
  auto add_var = [&](const Tree& shape) {
    auto it = index.find(shape);
    if (it != index.end()) return it->second;
    if (static_cast<Int>(s.vars.size()) >= guard)
      throw std::logic_error("left-multiple closure exceeded its growth bound");
    EqVariable v;
    v.shape = shape;
    v.descriptor = tree_text(shape, p.gens);
    int id = static_cast<int>(s.vars.size());
    index[shape] = id;
    s.vars.push_back(std::move(v));
    return id;
  };

  add_var(Tree::make_leaf());  // the identity; its series is z + sum of corollas
  std::queue<int> work;
  std::vector<int> corollas;
  for (size_t gi = 0; gi < p.gens.size(); ++gi) {
    Tree corolla = Tree::make_node(static_cast<int>(gi),
                                   std::vector<Tree>(p.gens[gi].arity, Tree::make_leaf()));
    if (divisible_by_any(corolla, p.relations)) continue;
    corollas.push_back(add_var(corolla));
    work.push(corollas.back());
  }

  while (!work.empty()) {
    int vi = work.front();
    work.pop();
    const Tree shape = s.vars[vi].shape;  // copy: s.vars may reallocate
    int m = static_cast<int>(shape.children.size());

    // relations overlayable onto the root of this shape
    std::vector<const Tree*> overlayable;
    for (const Tree& r : p.relations) {
      if (r.gen != shape.gen) continue;
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        ok = left_common_multiple({shape.children[i], r.children[i]}).has_value();
      if (ok) overlayable.push_back(&r);
    }
    if (overlayable.size() > 30)
      throw usage_error("too many overlapping relations at one root");

    Equation eq;
    eq.target = vi;
    for (unsigned mask = 0; mask < (1u << overlayable.size()); ++mask) {
      std::vector<Tree> comp(shape.children);
      bool ok = true;
      for (size_t b = 0; b < overlayable.size() && ok; ++b) {
        if (!(mask & (1u << b))) continue;
        for (int i = 0; i < m && ok; ++i) {
          auto merged = left_common_multiple({comp[i], overlayable[b]->children[i]});
          if (merged)
            comp[i] = std::move(*merged);
          else
            ok = false;
        }
      }
      if (!ok) continue;  // the overlay of this subset clashes
      // a component divisible by a relation names the zero series
      for (int i = 0; i < m && ok; ++i)
        ok = !divisible_by_any(comp[i], p.relations);
      if (!ok) continue;
      Term t;
      t.sign = (std::popcount(mask) % 2 == 0) ? 1 : -1;
      t.t_exp = p.gens[shape.gen].weight;
      for (int i = 0; i < m; ++i) {
        bool fresh = !index.count(comp[i]);
        int fi = add_var(comp[i]);
        if (fresh) work.push(fi);
        t.factors.push_back(fi);
      }
      eq.terms.push_back(std::move(t));
    }
    s.eqs.push_back(std::move(eq));
  }

  // the identity's equation: z plus the corolla variables
  Equation id_eq;
  id_eq.target = 0;
  Term zt;
  zt.factors = {-1};
  id_eq.terms.push_back(std::move(zt));
  for (int c : corollas) {
    Term t;
    t.factors = {c};
    id_eq.terms.push_back(std::move(t));
  }
  s.eqs.insert(s.eqs.begin(), std::move(id_eq));

  s.total = {0};
  s.ground = -1;
  for (size_t i = 0; i < s.vars.size(); ++i) {
    EqVariable& v = s.vars[i];
    if (i == 0)
      v.id = "y1";
    else if (is_corolla(v.shape))
      v.id = "y_" + s.gens[v.shape.gen].name;
    else
      v.id = "y" + std::to_string(i + 1);
  }
  prune_unreachable(s);
  return s;
}

EqSystem build_symmetric_regular_system(const Presentation& p) {
  if (p.kind != OperadKind::shuffle)
    throw usage_error("build_symmetric_regular_system requires a shuffle operad");
  RegularityReport rep = check_symmetric_regular(p);
  if (!rep.regular)
    throw usage_error(
        "the relation set is not symmetric-regular; a full tree-skeleton "
        "class requires the absent monomial " +
        rep.missing);

  EqSystem s;
  s.kind = SystemKind::symmetric_algebraic;
  s.flavor = Flavor::exponential;
  s.gens = p.gens;

  std::set<Tree, TreeLess> skels;
  for (const Tree& r : p.relations) skels.insert(planar_skeleton(r));
  std::vector<Tree> rel_shapes(skels.begin(), skels.end());
  s.depth = truncation_depth(rel_shapes);

  // group the valid planar stump shapes into tree-skeleton classes
  std::map<Tree, std::vector<Tree>, TreeLess> classes;
  for (Tree& t : shape_universe(s.depth, p.gens)) {
    if (divisible_by_any(t, rel_shapes)) continue;
    classes[tree_skeleton(t)].push_back(std::move(t));
  }
  std::vector<Tree> reps;  // lexicographically least planar member
  std::map<Tree, int, TreeLess> index;  // keyed by tree skeleton
  for (auto& [skel, members] : classes) {
    std::sort(members.begin(), members.end(), TreeLess{});
    EqVariable v;
    v.shape = members.front();
    v.descriptor = tree_text(v.shape, p.gens);
    v.multiplicity = static_cast<long>(members.size());
    v.is_ground = v.shape.leaf();
    v.finite = stump_is_finite(v.shape, s.depth);
    index[skel] = static_cast<int>(s.vars.size());
    reps.push_back(v.shape);
    s.vars.push_back(std::move(v));
  }
  s.ground = index.at(Tree::make_leaf());
  name_variables(s, "z");
  for (size_t i = 0; i < s.vars.size(); ++i) s.total.push_back(static_cast<int>(i));

  std::vector<Equation> eqs(s.vars.size());
  for (size_t i = 0; i < s.vars.size(); ++i) eqs[i].target = static_cast<int>(i);

  for (size_t gi = 0; gi < p.gens.size(); ++gi) {
    int m = p.gens[gi].arity;
    // accumulate over ordered class tuples, merged by sorted key; acceptance
    // and target must agree across reorderings of a tuple
    std::map<std::vector<int>, std::pair<int, Int>> merged;  // key -> (target, count)
    std::vector<int> tuple(m, 0);
    while (true) {
      Tree composite = Tree::make_node(static_cast<int>(gi), {});
      for (int v : tuple) composite.children.push_back(reps[v]);
      int target = -1;
      if (!left_divisible_by_any(composite, rel_shapes)) {
        Tree tskel = tree_skeleton(stump(composite, s.depth).shape);
        auto it = index.find(tskel);
        if (it == index.end())
          throw std::logic_error("truncation left the stump set");
        target = it->second;
      }
      std::vector<int> key = tuple;
      std::sort(key.begin(), key.end());
      Int count = 1;
      for (int v : tuple) count *= s.vars[v].multiplicity;
      auto [it, fresh] = merged.try_emplace(key, target, Int(0));
      if (!fresh && it->second.first != target)
        throw std::logic_error("tree-skeleton classes are not closed under reordering");
      if (target >= 0) it->second.second += count;
      int i = m - 1;
      while (i >= 0 && ++tuple[i] == static_cast<int>(s.vars.size()))
        tuple[i--] = 0;
      if (i < 0) break;
    }
    Int mfact = factorial(m);
    for (auto& [key, tc] : merged) {
      auto& [target, count] = tc;
      if (target < 0 || count == 0) continue;
      Term t;
      t.t_exp = p.gens[gi].weight;
      t.factors = key;
      t.count = count;
      t.divisor = s.vars[target].multiplicity * mfact;
      eqs[target].terms.push_back(std::move(t));
    }
  }
  for (Equation& e : eqs)
    if (e.target != s.ground) s.eqs.push_back(std::move(e));
  prune_unreachable(s);
  return s;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

// Suffix chains shared between terms: value of f_{j} * (suffix of j+1), as a
// product or as a C-chain depending on the system kind.
struct SuffixStore {
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> tuples;       // suffix id -> factor list
  std::vector<std::vector<Poly>> values;      // suffix id -> per-order values

  int intern(const std::vector<int>& tuple) {
    auto [it, fresh] = ids.try_emplace(tuple, static_cast<int>(tuples.size()));
    if (fresh) {
      tuples.push_back(tuple);
      values.emplace_back();
    }
    return it->second;
  }
};

}  // namespace

Solution solve_coefficients(const EqSystem& s, int n_max, bool weighted) {
  const int nvars = static_cast<int>(s.vars.size());
  std::vector<Series> y(nvars, Series::zero(s.flavor, n_max));
  if (s.ground >= 0) y[s.ground] = Series::z(s.flavor, n_max);

  // Same-order dependencies between variables come only from single-factor
  // terms; order the variables so those resolve, or report the cycle.
  std::vector<int> eq_of(nvars, -1);
  for (size_t i = 0; i < s.eqs.size(); ++i) eq_of[s.eqs[i].target] = static_cast<int>(i);
  std::vector<std::vector<int>> needs(nvars);
  std::vector<int> indegree(nvars, 0);
  for (const Equation& e : s.eqs)
    for (const Term& t : e.terms)
      if (t.factors.size() == 1 && t.factors[0] >= 0 && t.factors[0] != s.ground &&
          eq_of[t.factors[0]] >= 0) {
        needs[t.factors[0]].push_back(e.target);
        ++indegree[e.target];
      }
  std::vector<int> order;
  {
    std::queue<int> q;
    for (const Equation& e : s.eqs)
      if (indegree[e.target] == 0) q.push(e.target);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      for (int w : needs[v])
        if (--indegree[w] == 0) q.push(w);
    }
    if (order.size() != s.eqs.size()) {
      std::string who;
      for (const Equation& e : s.eqs)
        if (indegree[e.target] > 0) {
          who = s.vars[e.target].id;
          break;
        }
      throw solver_error("recursion not well-founded at variable '" + who + "'");
    }
  }

  // Suffix chains of length >= 1 for every multi-factor term.
  SuffixStore store;
  std::vector<std::vector<std::pair<const Term*, int>>> term_suffix(s.eqs.size());
  for (size_t ei = 0; ei < s.eqs.size(); ++ei)
    for (const Term& t : s.eqs[ei].terms)
      if (t.factors.size() >= 2)
        term_suffix[ei].push_back(
            {&t, store.intern({t.factors.begin() + 1, t.factors.end()})});
  // register sub-suffixes so each can be computed from the next
  for (size_t i = 0; i < store.tuples.size(); ++i) {
    std::vector<int> tail = store.tuples[i];
    while (tail.size() > 1) {
      tail.erase(tail.begin());
      store.intern(tail);
    }
  }
  std::vector<int> next_suffix(store.tuples.size(), -1);
  for (size_t i = 0; i < store.tuples.size(); ++i) {
    if (store.tuples[i].size() >= 2)
      next_suffix[i] =
          store.ids.at({store.tuples[i].begin() + 1, store.tuples[i].end()});
    store.values[i].assign(n_max + 1, Poly{});
  }
  // order suffixes short-to-long so dependencies are ready
  std::vector<int> suffix_order(store.tuples.size());
  for (size_t i = 0; i < suffix_order.size(); ++i) suffix_order[i] = static_cast<int>(i);
  std::sort(suffix_order.begin(), suffix_order.end(), [&](int a, int b) {
    return store.tuples[a].size() < store.tuples[b].size();
  });

  auto factor_coeff = [&](int f, int k) -> const Poly& {
    static const Poly zero{};
    if (f >= 0) return y[f].c[k];
    if (k == 1) {
      static const Poly one{Rat(1)};
      return one;
    }
    return zero;
  };
  // with weighted == false the t-grading is dropped, keeping every
  // coefficient a plain rational instead of a polynomial in t
  auto shift = [&](Poly p, int e) {
    return weighted && e > 0 ? poly_shift(std::move(p), e) : std::move(p);
  };

  const bool c_chain = s.kind == SystemKind::shuffle_c;
  for (int n = 1; n <= n_max; ++n) {
    // phase 1: contributions that are fully known at this order (multi-factor
    // terms see only coefficients below n, since every series vanishes at 0)
    std::vector<Poly> base(nvars);
    for (size_t ei = 0; ei < s.eqs.size(); ++ei) {
      int target = s.eqs[ei].target;
      Poly acc;
      for (const auto& [t, si] : term_suffix[ei]) {
        Poly head;
        for (int k = 1; k < n; ++k) {
          const Poly& fk = factor_coeff(t->factors[0], k);
          if (fk.empty()) continue;
          Poly prod = poly_mul(fk, store.values[si][n - k]);
          if (c_chain) prod = poly_scale(prod, Rat(k));
          poly_add_inplace(head, prod);
        }
        if (c_chain) head = poly_scale(head, Rat(1, n));
        if (head.empty()) continue;
        Rat coef(t->count, t->divisor);
        coef.canonicalize();
        if (t->sign < 0) coef = -coef;
        poly_add_inplace(acc, shift(poly_scale(head, coef), t->t_exp));
      }
      for (const Term& t : s.eqs[ei].terms) {
        if (t.factors.size() != 1) continue;
        int f = t.factors[0];
        if (f >= 0 && f != s.ground && eq_of[f] >= 0) continue;  // phase 2
        Poly head = factor_coeff(f, n);
        if (head.empty()) continue;
        Rat coef(t.count, t.divisor);
        coef.canonicalize();
        if (t.sign < 0) coef = -coef;
        poly_add_inplace(acc, shift(poly_scale(head, coef), t.t_exp));
      }
      base[target] = std::move(acc);
    }
    // phase 2: same-order single-factor chains in topological order
    for (int v : order) {
      Poly acc = std::move(base[v]);
      for (const Term& t : s.eqs[eq_of[v]].terms) {
        if (t.factors.size() != 1) continue;
        int f = t.factors[0];
        if (!(f >= 0 && f != s.ground && eq_of[f] >= 0)) continue;
        const Poly& head = y[f].c[n];
        if (head.empty()) continue;
        Rat coef(t.count, t.divisor);
        coef.canonicalize();
        if (t.sign < 0) coef = -coef;
        poly_add_inplace(acc, shift(poly_scale(head, coef), t.t_exp));
      }
      y[v].c[n] = std::move(acc);
    }
    // suffix values at this order, now that every variable is settled here
    for (int si : suffix_order) {
      const std::vector<int>& tuple = store.tuples[si];
      Poly acc;
      if (tuple.size() == 1) {
        acc = factor_coeff(tuple[0], n);
      } else {
        int tail = next_suffix[si];
        for (int k = 1; k < n; ++k) {
          const Poly& fk = factor_coeff(tuple[0], k);
          if (fk.empty()) continue;
          Poly prod = poly_mul(fk, store.values[tail][n - k]);
          if (c_chain) prod = poly_scale(prod, Rat(k));
          poly_add_inplace(acc, prod);
        }
        if (c_chain) acc = poly_scale(acc, Rat(1, n));
      }
      store.values[si][n] = std::move(acc);
    }
  }

  Solution sol;
  sol.total = Series::zero(s.flavor, n_max);
  for (int v : s.total) {
    Series part = scale(y[v], Rat(s.vars[v].multiplicity));
    sol.total = add(sol.total, part);
  }
  sol.vars = std::move(y);
  return sol;
}

// ---------------------------------------------------------------------------
// Emission

namespace {

std::string coeff_prefix(const Term& t) {
  Rat c(t.count, t.divisor);
  c.canonicalize();
  if (c == 1) return "";
  return "(" + rat_str(c) + ")*";
}

std::string factor_name(const EqSystem& s, int f) {
  return f < 0 ? "z" : s.vars[f].id;
}

std::string term_body(const EqSystem& s, const Term& t, bool weighted) {
  std::string out = coeff_prefix(t);
  if (weighted && t.t_exp > 0) {
    out += t.t_exp == 1 ? "t*" : "t^" + std::to_string(t.t_exp) + "*";
  }
  if (s.kind == SystemKind::shuffle_c && t.factors.size() >= 2) {
    out += "C(";
    for (size_t i = 0; i < t.factors.size(); ++i) {
      if (i) out += ",";
      out += factor_name(s, t.factors[i]);
    }
    out += ")";
    return out;
  }
  // product: collapse consecutive equal factors into powers
  std::string prod;
  for (size_t i = 0; i < t.factors.size();) {
    size_t j = i;
    while (j < t.factors.size() && t.factors[j] == t.factors[i]) ++j;
    if (!prod.empty()) prod += "*";
    prod += factor_name(s, t.factors[i]);
    if (j - i > 1) prod += "^" + std::to_string(j - i);
    i = j;
  }
  return out + prod;
}

std::string total_name(const EqSystem& s) {
  return s.kind == SystemKind::nonsym_product ? "G" : "E";
}

std::string emit_text(const EqSystem& s, bool weighted) {
  std::string out;
  for (const Equation& e : s.eqs) {
    out += s.vars[e.target].id + " = ";
    if (e.terms.empty()) out += "0";
    for (size_t i = 0; i < e.terms.size(); ++i) {
      const Term& t = e.terms[i];
      if (i == 0) {
        if (t.sign < 0) out += "-";
      } else {
        out += t.sign < 0 ? " - " : " + ";
      }
      out += term_body(s, t, weighted);
    }
    out += "\n";
  }
  out += total_name(s) + " =";
  bool first = true;
  for (int v : s.total) {
    out += first ? " " : " + ";
    first = false;
    if (s.vars[v].multiplicity != 1)
      out += s.vars[v].multiplicity.get_str() + "*";
    out += s.vars[v].id;
  }
  out += "\n";
  return out;
}

std::string emit_json(const EqSystem& s) {
  nlohmann::json j;
  switch (s.kind) {
    case SystemKind::nonsym_product: j["kind"] = "nonsym-product"; break;
    case SystemKind::shuffle_c: j["kind"] = "shuffle-C"; break;
    case SystemKind::symmetric_algebraic: j["kind"] = "symmetric-algebraic"; break;
  }
  j["variables"] = nlohmann::json::array();
  for (const EqVariable& v : s.vars)
    j["variables"].push_back({{"id", v.id},
                              {"descriptor", v.descriptor},
                              {"multiplicity", v.multiplicity.get_si()}});
  j["equations"] = nlohmann::json::array();
  for (const Equation& e : s.eqs) {
    nlohmann::json je;
    je["target"] = s.vars[e.target].id;
    je["terms"] = nlohmann::json::array();
    for (const Term& t : e.terms) {
      nlohmann::json jt;
      jt["sign"] = t.sign;
      jt["t_exp"] = t.t_exp;
      jt["factors"] = nlohmann::json::array();
      for (int f : t.factors) jt["factors"].push_back(factor_name(s, f));
      if (t.count != 1 || t.divisor != 1) {
        jt["count"] = t.count.get_si();
        jt["divisor"] = t.divisor.get_si();
      }
      je["terms"].push_back(std::move(jt));
    }
    j["equations"].push_back(std::move(je));
  }
  j["total"] = nlohmann::json::array();
  for (int v : s.total)
    j["total"].push_back(
        {{"id", s.vars[v].id}, {"multiplicity", s.vars[v].multiplicity.get_si()}});
  return j.dump(2);
}

std::string emit_ode(const EqSystem& s, bool weighted) {
  if (s.kind != SystemKind::shuffle_c)
    throw usage_error("ODE emission applies to shuffle-C systems");
  // ghost variables for C-chain suffixes of length >= 2
  std::map<std::vector<int>, std::string> ghosts;
  std::vector<std::vector<int>> ghost_order;
  std::function<std::string(const std::vector<int>&)> suffix_name =
      [&](const std::vector<int>& tuple) -> std::string {
    if (tuple.size() == 1) return factor_name(s, tuple[0]);
    auto it = ghosts.find(tuple);
    if (it != ghosts.end()) return it->second;
    std::string name = "h" + std::to_string(ghosts.size() + 1);
    ghosts[tuple] = name;
    ghost_order.push_back(tuple);
    // make sure the tail is named too
    suffix_name({tuple.begin() + 1, tuple.end()});
    return name;
  };
  std::string out = "z' = 1\n";
  for (const Equation& e : s.eqs) {
    out += s.vars[e.target].id + "' = ";
    if (e.terms.empty()) out += "0";
    for (size_t i = 0; i < e.terms.size(); ++i) {
      const Term& t = e.terms[i];
      if (i == 0) {
        if (t.sign < 0) out += "-";
      } else {
        out += t.sign < 0 ? " - " : " + ";
      }
      out += coeff_prefix(t);
      if (weighted && t.t_exp > 0)
        out += t.t_exp == 1 ? "t*" : "t^" + std::to_string(t.t_exp) + "*";
      out += factor_name(s, t.factors[0]) + "'";
      if (t.factors.size() >= 2)
        out += "*" + suffix_name({t.factors.begin() + 1, t.factors.end()});
    }
    out += "\n";
  }
  for (size_t i = 0; i < ghost_order.size(); ++i) {
    const std::vector<int>& tuple = ghost_order[i];
    out += ghosts.at(tuple) + "' = " + factor_name(s, tuple[0]) + "'";
    out += "*" + suffix_name({tuple.begin() + 1, tuple.end()});
    out += "\n";
  }
  // initial conditions
  out += "z(0) = 0\n";
  for (const Equation& e : s.eqs) out += s.vars[e.target].id + "(0) = 0\n";
  for (const std::vector<int>& tuple : ghost_order)
    out += ghosts.at(tuple) + "(0) = 0\n";
  out += total_name(s) + " =";
  bool first = true;
  for (int v : s.total) {
    out += first ? " " : " + ";
    first = false;
    if (s.vars[v].multiplicity != 1)
      out += s.vars[v].multiplicity.get_str() + "*";
    out += s.vars[v].id;
  }
  out += "\n";
  return out;
}

}  // namespace

std::string emit_system(const EqSystem& s, const std::string& format,
                        bool weighted) {
  if (format == "text") return emit_text(s, weighted);
  if (format == "json") return emit_json(s);
  if (format == "ode") return emit_ode(s, weighted);
  throw usage_error("unknown emission format '" + format + "'");
}

}  // namespace opseries
