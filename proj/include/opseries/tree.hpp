// Tree monomials of an operad: planar rooted trees whose internal vertices
// carry generators.  In shuffle mode the leaves carry the labels 1..n; in
// non-symmetric mode (and for plain shapes/skeletons) every leaf label is 0.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opseries/common.hpp"

namespace opseries {

enum class OperadKind { nonsym, shuffle };

struct Generator {
  std::string name;
  int arity = 2;
  int weight = 1;
};

struct Tree {
  int gen = -1;    // index into the generator table; -1 for a leaf
  int label = 0;   // shuffle leaf label; 0 for placeholders / internal nodes
  std::vector<Tree> children;

  bool leaf() const { return gen < 0; }
  static Tree make_leaf(int label = 0) { return Tree{-1, label, {}}; }
  static Tree make_node(int gen, std::vector<Tree> ch) {
    return Tree{gen, 0, std::move(ch)};
  }
};

// Total order on trees (leaves first, then by generator, then childwise);
// used for canonical forms and as a map key.  Returns <0, 0, >0.
int tree_compare(const Tree& a, const Tree& b);

inline bool operator==(const Tree& a, const Tree& b) {
  return tree_compare(a, b) == 0;
}
inline bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

struct TreeLess {
  bool operator()(const Tree& a, const Tree& b) const {
    return tree_compare(a, b) < 0;
  }
};

// Number of leaves.
int tree_arity(const Tree& t);

// Number of internal vertices.
int tree_size(const Tree& t);

// Total grading weight: sum of the generators' weights over internal vertices.
int tree_weight(const Tree& t, const std::vector<Generator>& gens);

// Maximal leaf level, counting edges from the root (the root has level 0).
int max_leaf_level(const Tree& t);

// Smallest leaf label in the subtree (shuffle trees only).
int min_label(const Tree& t);

// Render as text: generators by name, leaves as x<label> or "-".
std::string tree_text(const Tree& t, const std::vector<Generator>& gens);

// Sort children by their minimal leaf labels, recursively.  The labels must
// be exactly {1..n}; otherwise a usage_error is raised.
Tree canonical_realization(const Tree& t);

// True iff the labels are {1..n} and, at every internal vertex, the minimal
// labels of the child subtrees increase from left to right.
bool is_valid_shuffle(const Tree& t);

// Divisibility: w occurs in v as a connected planar subtree rooted anywhere
// (left_divides: rooted at v's root).  In shuffle mode the occurrence must in
// addition respect labels: the subtrees of v hanging off the occurrence's
// leaves must have their minimal labels in the same relative order as the
// corresponding leaf labels of w.
bool divides(const Tree& w, const Tree& v, OperadKind kind);
bool left_divides(const Tree& w, const Tree& v, OperadKind kind);

// Smallest shape left-divisible by every input, obtained by overlaying the
// inputs at the root; empty when two inputs disagree at a shared vertex.
// Non-symmetric shapes only.
std::optional<Tree> left_common_multiple(const std::vector<Tree>& ms);

struct Stump {
  Tree shape;  // internal vertices at level <= d-2, leaves at level <= d-1
  int d = 2;
};

// Truncate: keep internal vertices of level <= d-2, cut everything below a
// vertex of level d-1 (which becomes a leaf).  Leaf labels are erased, so in
// shuffle mode the result is the planar skeleton of the truncation.
Stump stump(const Tree& v, int d);

// Erase leaf labels.
Tree planar_skeleton(const Tree& t);

// Erase leaf labels and forget the planar order (children sorted canonically).
Tree tree_skeleton(const Tree& t);

}  // namespace opseries
