#include "opseries/enumerate.hpp"

#include <algorithm>
#include <functional>

namespace opseries {

namespace {

struct Worker {
  const Presentation& p;
  const EnumOptions& opt;
  long long candidates = 0;

  // relations grouped by root generator for a fast reject
  std::vector<std::vector<const Tree*>> rels_by_root;

  explicit Worker(const Presentation& pres, const EnumOptions& o)
      : p(pres), opt(o) {
    rels_by_root.resize(p.gens.size());
    for (const Tree& r : p.relations) rels_by_root[r.gen].push_back(&r);
  }

  void count_candidate() {
    if (++candidates > opt.max_candidates)
      throw enumeration_limit_error(
          "candidate limit exceeded (" + std::to_string(opt.max_candidates) +
          "); raise the enumeration limit to continue");
  }

  bool is_basis(const Tree& t) const {
    for (const Tree* r : rels_by_root[t.gen])
      if (left_divides(*r, t, p.kind)) return false;
    return true;
  }

  // Replace label k by block[k-1] throughout (blocks are sorted, so this is
  // the increasing relabeling and preserves shuffle validity).
  Tree relabel(const Tree& t, const std::vector<int>& block) const {
    if (t.leaf()) return Tree::make_leaf(block[t.label - 1]);
    Tree r = Tree::make_node(t.gen, {});
    r.children.reserve(t.children.size());
    for (const Tree& c : t.children) r.children.push_back(relabel(c, block));
    return r;
  }

  // Apply f to every root composition g(b_1,...,b_m) of arity n with children
  // drawn from the lower-arity bases, plus (in shuffle mode) every admissible
  // label distribution.  Unary generators are handled by the caller.
  template <typename F>
  void compositions(const std::vector<std::vector<Tree>>& basis, int n, F&& f) {
    for (size_t gi = 0; gi < p.gens.size(); ++gi) {
      int m = p.gens[gi].arity;
      if (m < 2 || m > n) continue;
      std::vector<int> parts(m, 1);
      // iterate compositions of n into m positive parts
      std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == m - 1) {
          parts[idx] = left;
          emit_tuples(basis, static_cast<int>(gi), parts, f);
          return;
        }
        for (int a = 1; a <= left - (m - 1 - idx); ++a) {
          parts[idx] = a;
          rec(idx + 1, left - a);
        }
      };
      rec(0, n);
    }
  }

  template <typename F>
  void emit_tuples(const std::vector<std::vector<Tree>>& basis, int gi,
                   const std::vector<int>& parts, F&& f) {
    int m = static_cast<int>(parts.size());
    std::vector<const Tree*> pick(m);
    std::function<void(int)> rec = [&](int idx) {
      if (idx == m) {
        if (p.kind == OperadKind::nonsym) {
          Tree t = Tree::make_node(gi, {});
          for (const Tree* b : pick) t.children.push_back(*b);
          count_candidate();
          f(std::move(t));
        } else {
          distribute_labels(gi, parts, pick, f);
        }
        return;
      }
      for (const Tree& b : basis[parts[idx]]) {
        pick[idx] = &b;
        rec(idx + 1);
      }
    };
    rec(0);
  }

  // All splittings of {1..n} into blocks of the given sizes with increasing
  // minima; each block takes the smallest remaining label.
  template <typename F>
  void distribute_labels(int gi, const std::vector<int>& parts,
                         const std::vector<const Tree*>& pick, F&& f) {
    int n = 0;
    for (int a : parts) n += a;
    std::vector<int> remaining(n);
    for (int i = 0; i < n; ++i) remaining[i] = i + 1;
    std::vector<Tree> children(parts.size());
    std::function<void(size_t, std::vector<int>&)> rec =
        [&](size_t idx, std::vector<int>& labels) {
          if (idx == parts.size()) {
            Tree t = Tree::make_node(gi, {});
            t.children = children;
            count_candidate();
            f(std::move(t));
            return;
          }
          int need = parts[idx] - 1;
          std::vector<int> rest(labels.begin() + 1, labels.end());
          std::vector<int> block(parts[idx]);
          block[0] = labels[0];
          std::vector<int> chosen(need);
          std::function<void(int, int)> choose = [&](int from, int got) {
            if (got == need) {
              for (int i = 0; i < need; ++i) block[i + 1] = chosen[i];
              std::vector<int> next;
              int ci = 0;
              for (int x : rest) {
                if (ci < need && chosen[ci] == x)
                  ++ci;
                else
                  next.push_back(x);
              }
              children[idx] = relabel(*pick[idx], block);
              rec(idx + 1, next);
              return;
            }
            for (int i = from; i < static_cast<int>(rest.size()); ++i) {
              chosen[got] = rest[i];
              choose(i + 1, got + 1);
            }
          };
          choose(0, 0);
        };
    rec(0, remaining);
  }

  // Close one arity layer under unary generators.
  template <typename F>
  void unary_closure(const std::vector<Tree>& layer0, F&& f) {
    std::vector<Tree> layer = layer0;
    while (!layer.empty()) {
      std::vector<Tree> next;
      for (size_t gi = 0; gi < p.gens.size(); ++gi) {
        if (p.gens[gi].arity != 1) continue;
        for (const Tree& b : layer) {
          Tree t = Tree::make_node(static_cast<int>(gi), {b});
          count_candidate();
          if (is_basis(t)) {
            next.push_back(t);
            f(next.back());
          }
        }
      }
      layer = std::move(next);
    }
  }

  bool has_unary() const {
    for (const Generator& g : p.gens)
      if (g.arity == 1) return true;
    return false;
  }

  // Run the enumeration; `sink(n, tree)` sees every basis monomial of arity
  // 1..n_max in a deterministic order.  Bases of arity < n_max are stored;
  // arity n_max is streamed unless `materialize_top` is set.
  template <typename Sink>
  void run(int n_max, bool materialize_top, Sink&& sink) {
    std::vector<std::vector<Tree>> basis(n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
      bool store = n < n_max || materialize_top || has_unary();
      std::vector<Tree>& layer = basis[n];
      auto accept = [&](Tree&& t) {
        if (!is_basis(t)) return;
        sink(n, t);
        if (store) layer.push_back(std::move(t));
      };
      if (n == 1) {
        Tree id = Tree::make_leaf(p.kind == OperadKind::shuffle ? 1 : 0);
        sink(1, id);
        if (store) layer.push_back(id);
      } else {
        compositions(basis, n, accept);
      }
      if (has_unary()) {
        unary_closure(layer, [&](const Tree& t) {
          sink(n, t);
          layer.push_back(t);
        });
      }
    }
  }
};

}  // namespace

std::vector<Int> basis_dims(const Presentation& p, int n_max,
                            const EnumOptions& opt) {
  std::vector<Int> out(n_max, 0);
  Worker w(p, opt);
  w.run(n_max, false, [&](int n, const Tree&) { out[n - 1] += 1; });
  return out;
}

std::vector<Poly> basis_dims_weighted(const Presentation& p, int n_max,
                                      const EnumOptions& opt) {
  std::vector<Poly> out(n_max);
  Worker w(p, opt);
  w.run(n_max, false, [&](int n, const Tree& t) {
    int wt = tree_weight(t, p.gens);
    Poly& poly = out[n - 1];
    if (static_cast<int>(poly.size()) <= wt) poly.resize(wt + 1, Rat(0));
    poly[wt] += 1;
  });
  return out;
}

std::vector<Tree> basis_monomials(const Presentation& p, int n,
                                  const EnumOptions& opt) {
  std::vector<Tree> out;
  Worker w(p, opt);
  w.run(n, true, [&](int k, const Tree& t) {
    if (k == n) out.push_back(t);
  });
  return out;
}

}  // namespace opseries
