#include "opseries/tree.hpp"

#include <algorithm>

namespace opseries {

int tree_compare(const Tree& a, const Tree& b) {
  if (a.leaf() != b.leaf()) return a.leaf() ? -1 : 1;
  if (a.leaf()) return a.label - b.label;
  if (a.gen != b.gen) return a.gen - b.gen;
  for (size_t i = 0; i < a.children.size(); ++i) {
    int c = tree_compare(a.children[i], b.children[i]);
    if (c != 0) return c;
  }
  return 0;
}

int tree_arity(const Tree& t) {
  if (t.leaf()) return 1;
  int n = 0;
  for (const Tree& c : t.children) n += tree_arity(c);
  return n;
}

int tree_size(const Tree& t) {
  if (t.leaf()) return 0;
  int n = 1;
  for (const Tree& c : t.children) n += tree_size(c);
  return n;
}

int tree_weight(const Tree& t, const std::vector<Generator>& gens) {
  if (t.leaf()) return 0;
  int w = gens[t.gen].weight;
  for (const Tree& c : t.children) w += tree_weight(c, gens);
  return w;
}

int max_leaf_level(const Tree& t) {
  if (t.leaf()) return 0;
  int m = 0;
  for (const Tree& c : t.children) m = std::max(m, 1 + max_leaf_level(c));
  return m;
}

int min_label(const Tree& t) {
  if (t.leaf()) return t.label;
  int m = min_label(t.children.front());
  for (size_t i = 1; i < t.children.size(); ++i)
    m = std::min(m, min_label(t.children[i]));
  return m;
}

std::string tree_text(const Tree& t, const std::vector<Generator>& gens) {
  if (t.leaf())
    return t.label > 0 ? "x" + std::to_string(t.label) : std::string("-");
  std::string out = gens[t.gen].name + "(";
  for (size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ",";
    out += tree_text(t.children[i], gens);
  }
  return out + ")";
}

namespace {

void collect_labels(const Tree& t, std::vector<int>& out) {
  if (t.leaf()) {
    out.push_back(t.label);
    return;
  }
  for (const Tree& c : t.children) collect_labels(c, out);
}

bool labels_are_permutation(const Tree& t) {
  std::vector<int> labels;
  collect_labels(t, labels);
  std::sort(labels.begin(), labels.end());
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1) return false;
  return true;
}

bool minima_increasing(const Tree& t) {
  if (t.leaf()) return true;
  int prev = 0;
  for (const Tree& c : t.children) {
    int m = min_label(c);
    if (m <= prev) return false;
    prev = m;
    if (!minima_increasing(c)) return false;
  }
  return true;
}

Tree sort_by_min(const Tree& t) {
  if (t.leaf()) return t;
  Tree r = t;
  for (Tree& c : r.children) c = sort_by_min(c);
  std::stable_sort(r.children.begin(), r.children.end(),
                   [](const Tree& a, const Tree& b) {
                     return min_label(a) < min_label(b);
                   });
  return r;
}

}  // namespace

Tree canonical_realization(const Tree& t) {
  if (!labels_are_permutation(t))
    throw usage_error("labels must be exactly {1..n} with no repeats");
  return sort_by_min(t);
}

bool is_valid_shuffle(const Tree& t) {
  return labels_are_permutation(t) && minima_increasing(t);
}

namespace {

// Match w against the subtree of v rooted at v's root.  In shuffle mode
// record, for each leaf of w in planar order, the pair (leaf label of w,
// minimal label of the attached subtree of v).
bool match_rooted(const Tree& w, const Tree& v, OperadKind kind,
                  std::vector<std::pair<int, int>>* pairs) {
  if (w.leaf()) {
    if (pairs) pairs->push_back({w.label, min_label(v)});
    return true;
  }
  if (v.leaf() || v.gen != w.gen) return false;
  for (size_t i = 0; i < w.children.size(); ++i)
    if (!match_rooted(w.children[i], v.children[i], kind, pairs)) return false;
  return true;
}

bool order_isomorphic(std::vector<std::pair<int, int>>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  for (size_t i = 1; i < pairs.size(); ++i)
    if (pairs[i].second <= pairs[i - 1].second) return false;
  return true;
}

}  // namespace

bool left_divides(const Tree& w, const Tree& v, OperadKind kind) {
  if (kind == OperadKind::nonsym) return match_rooted(w, v, kind, nullptr);
  std::vector<std::pair<int, int>> pairs;
  if (!match_rooted(w, v, kind, &pairs)) return false;
  return order_isomorphic(pairs);
}

bool divides(const Tree& w, const Tree& v, OperadKind kind) {
  if (left_divides(w, v, kind)) return true;
  if (v.leaf()) return false;
  for (const Tree& c : v.children)
    if (divides(w, c, kind)) return true;
  return false;
}

namespace {

bool overlay(const Tree& a, const Tree& b, Tree& out) {
  if (a.leaf()) {
    out = b;
    return true;
  }
  if (b.leaf()) {
    out = a;
    return true;
  }
  if (a.gen != b.gen) return false;
  out = Tree::make_node(a.gen, {});
  out.children.resize(a.children.size());
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!overlay(a.children[i], b.children[i], out.children[i])) return false;
  return true;
}

}  // namespace

std::optional<Tree> left_common_multiple(const std::vector<Tree>& ms) {
  Tree acc = Tree::make_leaf();
  for (const Tree& m : ms) {
    Tree next;
    if (!overlay(acc, m, next)) return std::nullopt;
    acc = std::move(next);
  }
  return acc;
}

namespace {

Tree truncate(const Tree& v, int level, int d) {
  if (v.leaf() || level > d - 2) return Tree::make_leaf();
  Tree r = Tree::make_node(v.gen, {});
  r.children.reserve(v.children.size());
  for (const Tree& c : v.children) r.children.push_back(truncate(c, level + 1, d));
  return r;
}

}  // namespace

Stump stump(const Tree& v, int d) {
  if (d < 2) throw usage_error("truncation depth must be at least 2");
  return Stump{truncate(v, 0, d), d};
}

Tree planar_skeleton(const Tree& t) {
  if (t.leaf()) return Tree::make_leaf();
  Tree r = Tree::make_node(t.gen, {});
  r.children.reserve(t.children.size());
  for (const Tree& c : t.children) r.children.push_back(planar_skeleton(c));
  return r;
}

Tree tree_skeleton(const Tree& t) {
  if (t.leaf()) return Tree::make_leaf();
  Tree r = Tree::make_node(t.gen, {});
  r.children.reserve(t.children.size());
  for (const Tree& c : t.children) r.children.push_back(tree_skeleton(c));
  std::sort(r.children.begin(), r.children.end(), TreeLess{});
  return r;
}

}  // namespace opseries
