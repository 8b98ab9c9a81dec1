#include "opseries/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace opseries {

int Presentation::gen_index(const std::string& name) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Cursor {
  const std::string& s;
  int line;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size() || s[pos] == '#';
  }
  int col() const { return static_cast<int>(pos) + 1; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, line, col());
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected a name");
    return s.substr(start, pos - start);
  }
  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected a number");
    return std::stoi(s.substr(start, pos - start));
  }
};

bool is_leaf_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x') return false;
  for (size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

Tree parse_monomial(Cursor& cur, const Presentation& p) {
  if (cur.peek() == '-') {
    ++cur.pos;
    return Tree::make_leaf();
  }
  int col = cur.col();
  std::string name = cur.ident();
  if (is_leaf_name(name)) return Tree::make_leaf(std::stoi(name.substr(1)));
  int g = p.gen_index(name);
  if (g < 0) throw parse_error("unknown generator '" + name + "'", cur.line, col);
  Tree t = Tree::make_node(g, {});
  cur.expect('(');
  for (int i = 0; i < p.gens[g].arity; ++i) {
    if (i) cur.expect(',');
    t.children.push_back(parse_monomial(cur, p));
  }
  cur.expect(')');
  return t;
}

// Leaves of a relation must be uniformly placeholders or labels.  Placeholder
// relations in nonsym mode stay as shapes; labeled nonsym relations must read
// x1..xn left to right and are normalized to shapes.
enum class LeafStyle { none, placeholder, labeled, mixed };

void leaf_style(const Tree& t, LeafStyle& style) {
  if (t.leaf()) {
    LeafStyle here = t.label > 0 ? LeafStyle::labeled : LeafStyle::placeholder;
    if (style == LeafStyle::none)
      style = here;
    else if (style != here)
      style = LeafStyle::mixed;
    return;
  }
  for (const Tree& c : t.children) leaf_style(c, style);
}

void labels_in_planar_order(const Tree& t, std::vector<int>& out) {
  if (t.leaf()) {
    out.push_back(t.label);
    return;
  }
  for (const Tree& c : t.children) labels_in_planar_order(c, out);
}

void reduce_relations(std::vector<Tree>& rels, OperadKind kind) {
  std::vector<Tree> kept;
  for (size_t i = 0; i < rels.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < rels.size() && !redundant; ++j) {
      if (i == j) continue;
      if (rels[j] == rels[i]) {
        redundant = j < i;  // keep the first of an exact duplicate pair
      } else if (divides(rels[j], rels[i], kind)) {
        redundant = true;
      }
    }
    if (!redundant) kept.push_back(rels[i]);
  }
  rels = std::move(kept);
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  Presentation p;
  bool have_kind = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    Cursor cur{raw, lineno};
    if (cur.done()) continue;
    int col = cur.col();
    std::string word = cur.ident();
    if (word == "operad") {
      if (have_kind) cur.fail("duplicate operad declaration");
      std::string kind = cur.ident();
      if (kind == "nonsym")
        p.kind = OperadKind::nonsym;
      else if (kind == "shuffle")
        p.kind = OperadKind::shuffle;
      else
        cur.fail("operad kind must be nonsym or shuffle");
      have_kind = true;
      if (!cur.done()) cur.fail("trailing input");
      continue;
    }
    if (!have_kind)
      throw parse_error("the operad declaration must come first", lineno, col);
    if (word == "gen") {
      Generator g;
      int namecol = cur.col();
      g.name = cur.ident();
      if (is_leaf_name(g.name) || g.name == "x")
        throw parse_error("generator name '" + g.name + "' is reserved for leaves",
                          lineno, namecol);
      if (p.gen_index(g.name) >= 0)
        throw parse_error("duplicate generator '" + g.name + "'", lineno, namecol);
      cur.expect(':');
      g.arity = cur.integer();
      if (g.arity < 1) cur.fail("arity must be at least 1");
      if (!cur.done()) {
        std::string kw = cur.ident();
        if (kw != "weight") cur.fail("expected 'weight'");
        g.weight = cur.integer();
        if (g.weight < 1) cur.fail("weight must be at least 1");
        if (!cur.done()) cur.fail("trailing input");
      }
      p.gens.push_back(g);
      continue;
    }
    if (word == "rel") {
      int mcol = cur.col();
      Tree m = parse_monomial(cur, p);
      if (!cur.done()) cur.fail("trailing input");
      if (m.leaf()) throw parse_error("a relation must be non-trivial", lineno, mcol);
      LeafStyle style = LeafStyle::none;
      leaf_style(m, style);
      if (style == LeafStyle::mixed)
        throw parse_error("mix of labeled and placeholder leaves", lineno, mcol);
      if (p.kind == OperadKind::shuffle) {
        if (style != LeafStyle::labeled || !is_valid_shuffle(m))
          throw parse_error("invalid shuffle labeling", lineno, mcol);
      } else if (style == LeafStyle::labeled) {
        std::vector<int> labels;
        labels_in_planar_order(m, labels);
        for (size_t i = 0; i < labels.size(); ++i)
          if (labels[i] != static_cast<int>(i) + 1)
            throw parse_error("non-symmetric leaves must read x1..xn left to right",
                              lineno, mcol);
        m = planar_skeleton(m);
      }
      p.relations.push_back(m);
      continue;
    }
    if (word == "skeleton") {
      if (p.kind != OperadKind::shuffle)
        throw parse_error("skeleton relations require a shuffle operad", lineno, col);
      std::string flavor = cur.ident();
      SkeletonFlavor f;
      if (flavor == "planar")
        f = SkeletonFlavor::planar;
      else if (flavor == "tree")
        f = SkeletonFlavor::tree;
      else
        cur.fail("skeleton flavor must be planar or tree");
      int mcol = cur.col();
      Tree m = parse_monomial(cur, p);
      if (!cur.done()) cur.fail("trailing input");
      LeafStyle style = LeafStyle::none;
      leaf_style(m, style);
      if (m.leaf() || style != LeafStyle::placeholder)
        throw parse_error("a skeleton must be non-trivial with '-' leaves",
                          lineno, mcol);
      p.skeletons.push_back({f, m});
      std::vector<Tree> expanded =
          f == SkeletonFlavor::planar ? expand_planar_skeleton(m, p.gens)
                                      : expand_tree_skeleton(m, p.gens);
      p.relations.insert(p.relations.end(), expanded.begin(), expanded.end());
      continue;
    }
    throw parse_error("unknown directive '" + word + "'", lineno, col);
  }
  if (!have_kind) throw parse_error("missing operad declaration", 1, 1);
  reduce_relations(p.relations, p.kind);
  return p;
}

// ---------------------------------------------------------------------------
// Skeleton expansion

namespace {

// Distribute the sorted label set into child blocks of the given sizes so
// that the blocks' minima increase; the relabeled children are assembled by
// the callback.
void distribute(const std::vector<int>& labels, const std::vector<int>& sizes,
                size_t idx, std::vector<std::vector<int>>& blocks,
                const std::function<void(const std::vector<std::vector<int>>&)>& f) {
  if (idx == sizes.size()) {
    f(blocks);
    return;
  }
  // The block takes the smallest remaining label plus a subset of the rest.
  std::vector<int> rest(labels.begin() + 1, labels.end());
  int need = sizes[idx] - 1;
  std::vector<int> pick(need);
  std::function<void(size_t, int)> choose = [&](size_t from, int got) {
    if (got == need) {
      std::vector<int> block{labels[0]};
      block.insert(block.end(), pick.begin(), pick.end());
      std::vector<int> remaining;
      size_t pi = 0;
      for (int x : rest) {
        if (pi < pick.size() && pick[pi] == x) {
          ++pi;
        } else {
          remaining.push_back(x);
        }
      }
      blocks.push_back(block);
      distribute(remaining, sizes, idx + 1, blocks, f);
      blocks.pop_back();
      return;
    }
    for (size_t i = from; i < rest.size(); ++i) {
      pick[got] = rest[i];
      choose(i + 1, got + 1);
    }
  };
  choose(0, 0);
}

// Replace label k by block[k-1] throughout.
Tree relabel(const Tree& t, const std::vector<int>& block) {
  if (t.leaf()) return Tree::make_leaf(block[t.label - 1]);
  Tree r = Tree::make_node(t.gen, {});
  r.children.reserve(t.children.size());
  for (const Tree& c : t.children) r.children.push_back(relabel(c, block));
  return r;
}

std::vector<Tree> labelings(const Tree& shape, const std::vector<int>& labels) {
  if (shape.leaf()) return {Tree::make_leaf(labels[0])};
  std::vector<int> sizes;
  for (const Tree& c : shape.children) sizes.push_back(tree_arity(c));
  std::vector<Tree> out;
  std::vector<std::vector<int>> blocks;
  distribute(labels, sizes, 0, blocks,
             [&](const std::vector<std::vector<int>>& bs) {
               // Labelings of each child over 1..|block|, then pushed forward.
               std::vector<std::vector<Tree>> child_options;
               for (size_t i = 0; i < shape.children.size(); ++i) {
                 std::vector<int> local(bs[i].size());
                 for (size_t k = 0; k < local.size(); ++k)
                   local[k] = static_cast<int>(k) + 1;
                 std::vector<Tree> opts = labelings(shape.children[i], local);
                 for (Tree& o : opts) o = relabel(o, bs[i]);
                 child_options.push_back(std::move(opts));
               }
               std::vector<size_t> pick(child_options.size(), 0);
               while (true) {
                 Tree t = Tree::make_node(shape.gen, {});
                 for (size_t i = 0; i < pick.size(); ++i)
                   t.children.push_back(child_options[i][pick[i]]);
                 out.push_back(std::move(t));
                 size_t i = 0;
                 while (i < pick.size() && ++pick[i] == child_options[i].size())
                   pick[i++] = 0;
                 if (i == pick.size()) break;
               }
             });
  return out;
}

void planar_reorderings(const Tree& shape, std::set<Tree, TreeLess>& out);

}  // namespace

std::vector<Tree> expand_planar_skeleton(const Tree& shape,
                                         const std::vector<Generator>&) {
  int n = tree_arity(shape);
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i + 1;
  return labelings(shape, labels);
}

namespace {

void planar_reorderings(const Tree& shape, std::set<Tree, TreeLess>& out) {
  // All trees obtained by permuting children at every vertex, deduplicated.
  if (shape.leaf()) {
    out.insert(shape);
    return;
  }
  std::vector<std::vector<Tree>> child_variants;
  for (const Tree& c : shape.children) {
    std::set<Tree, TreeLess> sub;
    planar_reorderings(c, sub);
    child_variants.emplace_back(sub.begin(), sub.end());
  }
  std::vector<size_t> order(shape.children.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end());
  do {
    std::vector<size_t> pick(order.size(), 0);
    while (true) {
      Tree t = Tree::make_node(shape.gen, {});
      for (size_t i = 0; i < order.size(); ++i)
        t.children.push_back(child_variants[order[i]][pick[i]]);
      out.insert(std::move(t));
      size_t i = 0;
      while (i < pick.size() && ++pick[i] == child_variants[order[i]].size())
        pick[i++] = 0;
      if (i == pick.size()) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace

std::vector<Tree> expand_tree_skeleton(const Tree& shape,
                                       const std::vector<Generator>& gens) {
  std::set<Tree, TreeLess> shapes;
  planar_reorderings(shape, shapes);
  std::vector<Tree> out;
  for (const Tree& s : shapes) {
    std::vector<Tree> part = expand_planar_skeleton(s, gens);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Regularity

namespace {

RegularityReport check_regular(const Presentation& p, bool symmetric) {
  RegularityReport rep;
  if (p.kind != OperadKind::shuffle)
    throw usage_error("regularity checks apply to shuffle operads");
  std::set<Tree, TreeLess> have;
  for (const Tree& r : p.relations) have.insert(r);
  std::set<Tree, TreeLess> seen_skeletons;
  for (const Tree& r : p.relations) {
    Tree skel = symmetric ? tree_skeleton(r) : planar_skeleton(r);
    if (!seen_skeletons.insert(skel).second) continue;
    std::vector<Tree> cls = symmetric ? expand_tree_skeleton(skel, p.gens)
                                      : expand_planar_skeleton(skel, p.gens);
    for (const Tree& m : cls) {
      if (!have.count(m)) {
        rep.regular = false;
        rep.missing = tree_text(m, p.gens);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace

RegularityReport check_shuffle_regular(const Presentation& p) {
  return check_regular(p, false);
}

RegularityReport check_symmetric_regular(const Presentation& p) {
  return check_regular(p, true);
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

std::string q_k_source(int k) {
  // The right comb with a final left turn: k internal vertices, one path.
  std::string m = "mu(mu(-,-),-)";
  for (int i = 2; i < k; ++i) m = "mu(-," + m + ")";
  return "operad nonsym\ngen mu : 2\nrel " + m + "\n";
}

const std::map<std::string, std::string>& builtin_sources() {
  static const std::map<std::string, std::string> table = {
      {"assoc",
       "operad nonsym\n"
       "gen mu : 2\n"
       "rel mu(mu(-,-),-)\n"},
      {"free_binary",
       "operad nonsym\n"
       "gen mu : 2\n"},
      {"asw",
       "operad nonsym\n"
       "gen mu : 2\n"
       "rel mu(mu(mu(-,-),-),-)\n"
       "rel mu(-,mu(-,mu(mu(-,-),-)))\n"},
      {"alia",
       "operad shuffle\n"
       "gen a : 2\n"
       "gen b : 2\n"
       "rel b(x1,a(x2,x3))\n"},
      {"nu2",
       "operad shuffle\n"
       "gen mu : 2\n"
       "gen a : 2\n"
       "skeleton planar mu(a(-,-),a(-,-))\n"
       "skeleton planar a(a(-,-),a(-,-))\n"},
      {"nu3",
       "operad shuffle\n"
       "gen a : 2\n"
       "gen b : 2\n"
       "skeleton tree a(a(a(-,-),a(-,-)),a(-,-))\n"
       "skeleton tree a(b(a(-,-),a(-,-)),a(-,-))\n"
       "skeleton tree b(a(a(-,-),a(-,-)),a(-,-))\n"
       "skeleton tree b(b(a(-,-),a(-,-)),a(-,-))\n"},
      {"lieadm",
       "operad shuffle\n"
       "gen a : 2\n"
       "gen b : 2\n"
       "rel a(x1,a(x2,x3))\n"
       "skeleton planar b(a(-,-),a(-,-))\n"},
  };
  return table;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : builtin_sources()) names.push_back(name);
  names.push_back("q_k:K");
  return names;
}

Presentation builtin_presentation(const std::string& name) {
  auto it = builtin_sources().find(name);
  if (it != builtin_sources().end()) return parse_presentation(it->second);
  // q_k:K or q_k(K)
  if (name.rfind("q_k", 0) == 0 && name.size() > 4) {
    std::string arg;
    if (name[3] == ':')
      arg = name.substr(4);
    else if (name[3] == '(' && name.back() == ')')
      arg = name.substr(4, name.size() - 5);
    if (!arg.empty() &&
        std::all_of(arg.begin(), arg.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int k = std::stoi(arg);
      if (k >= 2) return parse_presentation(q_k_source(k));
      throw usage_error("q_k requires K >= 2");
    }
  }
  throw usage_error("unknown builtin presentation '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json tree_json(const Tree& t, const std::vector<Generator>& gens) {
  if (t.leaf())
    return t.label > 0 ? nlohmann::json("x" + std::to_string(t.label))
                       : nlohmann::json("-");
  nlohmann::json arr = nlohmann::json::array();
  arr.push_back(gens[t.gen].name);
  for (const Tree& c : t.children) arr.push_back(tree_json(c, gens));
  return arr;
}

}  // namespace

std::string presentation_json(const Presentation& p) {
  nlohmann::json j;
  j["kind"] = p.kind == OperadKind::nonsym ? "nonsym" : "shuffle";
  j["generators"] = nlohmann::json::array();
  for (const Generator& g : p.gens)
    j["generators"].push_back(
        {{"name", g.name}, {"arity", g.arity}, {"weight", g.weight}});
  j["relations"] = nlohmann::json::array();
  for (const Tree& r : p.relations) j["relations"].push_back(tree_json(r, p.gens));
  return j.dump(2);
}

}  // namespace opseries
