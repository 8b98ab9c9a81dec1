#include <set>

#include "doctest.h"
#include "json.hpp"
#include "opseries/enumerate.hpp"
#include "opseries/eqsys.hpp"

using namespace opseries;

namespace {

std::vector<Int> system_dims(const EqSystem& s, int n) {
  Solution sol = solve_coefficients(s, n, false);
  return dims(collapse_t(sol.total));
}

bool same_prefix(const std::vector<Int>& a, const std::vector<Int>& b) {
  size_t k = std::min(a.size(), b.size());
  for (size_t i = 0; i < k; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("the associative truncation system is the textbook one") {
  Presentation p = builtin_presentation("assoc");
  EqSystem s = build_stump_system_nonsym(p);
  CHECK(s.depth == 2);
  REQUIRE(s.vars.size() == 2);
  CHECK(s.vars[0].id == "z");
  CHECK(s.vars[1].id == "y_mu");
  std::string text = emit_system(s, "text");
  CHECK(text.find("y_mu = z^2 + z*y_mu") != std::string::npos);
  CHECK(text.find("G = z + y_mu") != std::string::npos);
  std::vector<Int> d = system_dims(s, 15);
  for (const Int& v : d) CHECK(v == 1);
  // weighted: arity n carries t^(n-1)
  Solution sol = solve_coefficients(s, 6);
  std::vector<Poly> w = dims_weighted(sol.total);
  CHECK(w[4] == poly_shift(Poly{Rat(1)}, 4));
}

TEST_CASE("the free binary system squares the total series") {
  Presentation p = builtin_presentation("free_binary");
  EqSystem s = build_stump_system_nonsym(p);
  std::string text = emit_system(s, "text");
  CHECK(text.find("y_mu = z^2 + z*y_mu + y_mu*z + y_mu^2") != std::string::npos);
  std::vector<Int> d = system_dims(s, 10);
  CHECK(same_prefix(d, basis_dims(p, 10)));
}

TEST_CASE("two chained relations: the inclusion-exclusion system") {
  Presentation p = builtin_presentation("asw");
  EqSystem s = build_incl_excl_system_nonsym(p);
  REQUIRE(s.vars.size() == 5);
  CHECK(s.vars[0].id == "y1");
  std::string text = emit_system(s, "text");
  CHECK(text.find("y1 = z + y_mu") != std::string::npos);
  CHECK(text.find("y_mu = y1^2 - y3*y1 - y1*y4 + y3*y4") != std::string::npos);
  CHECK(text.find("G = y1") != std::string::npos);

  EqSystem stump = build_stump_system_nonsym(p);
  CHECK(stump.depth == 4);
  CHECK(stump.vars.size() == 16);

  std::vector<Int> oracle = basis_dims(p, 10);
  CHECK(same_prefix(oracle, {Int(1), Int(1), Int(2), Int(4), Int(8), Int(15)}));
  CHECK(same_prefix(system_dims(s, 12), oracle));
  CHECK(same_prefix(system_dims(stump, 12), oracle));
}

TEST_CASE("the simple-overlap system for a single left-comb relation") {
  Presentation p = builtin_presentation("assoc");
  EqSystem s = build_incl_excl_system_nonsym(p);
  std::string text = emit_system(s, "text");
  CHECK(text.find("y1 = z + y_mu") != std::string::npos);
  CHECK(text.find("y_mu = y1^2 - y_mu*y1") != std::string::npos);
  std::vector<Int> d = system_dims(s, 15);
  for (const Int& v : d) CHECK(v == 1);
}

TEST_CASE("systems agree with the oracle on non-symmetric builtins") {
  for (const char* name : {"assoc", "free_binary", "asw", "q_k:3", "q_k:4"}) {
    CAPTURE(name);
    Presentation p = builtin_presentation(name);
    std::vector<Int> oracle = basis_dims(p, 9);
    EqSystem stump = build_stump_system_nonsym(p);
    CHECK(same_prefix(system_dims(stump, 9), oracle));
    EqSystem ie = build_incl_excl_system_nonsym(p);
    CHECK(same_prefix(system_dims(ie, 9), oracle));
  }
}

TEST_CASE("systems agree with the oracle on shuffle builtins") {
  for (const char* name : {"alia", "nu2", "nu3", "lieadm"}) {
    CAPTURE(name);
    Presentation p = builtin_presentation(name);
    int n = std::string(name) == "nu3" ? 6 : 6;
    std::vector<Int> oracle = basis_dims(p, n);
    EqSystem stump = build_stump_system_shuffle(p);
    CHECK(same_prefix(system_dims(stump, n), oracle));
  }
  Presentation tern = parse_presentation("operad shuffle\ngen g : 3\n");
  std::vector<Int> oracle = basis_dims(tern, 7);
  EqSystem stump = build_stump_system_shuffle(tern);
  CHECK(same_prefix(system_dims(stump, 7), oracle));
}

TEST_CASE("the symmetrized system matches the planar one and the oracle") {
  for (const char* name : {"nu2", "nu3"}) {
    CAPTURE(name);
    Presentation p = builtin_presentation(name);
    EqSystem sym = build_symmetric_regular_system(p);
    EqSystem stump = build_stump_system_shuffle(p);
    CHECK(sym.vars.size() <= stump.vars.size());
    std::vector<Int> ds = system_dims(sym, 10);
    CHECK(same_prefix(ds, system_dims(stump, 10)));
    CHECK(same_prefix(ds, basis_dims(p, 6)));
  }
}

TEST_CASE("builder preconditions") {
  Presentation assoc = builtin_presentation("assoc");
  Presentation alia = builtin_presentation("alia");
  CHECK_THROWS_AS(build_stump_system_nonsym(alia), usage_error);
  CHECK_THROWS_AS(build_stump_system_shuffle(assoc), usage_error);
  CHECK_THROWS_AS(build_incl_excl_system_nonsym(alia), usage_error);
  CHECK_THROWS_AS(build_symmetric_regular_system(assoc), usage_error);
  // shuffle-regular but not symmetric-regular
  CHECK_THROWS_AS(build_symmetric_regular_system(alia), usage_error);
  // not even shuffle-regular
  Presentation partial = parse_presentation(
      "operad shuffle\ngen f : 2\nrel f(f(x1,x2),x3)\n");
  CHECK_THROWS_AS(build_stump_system_shuffle(partial), usage_error);
}

TEST_CASE("truncation systems have non-negative integral structure") {
  for (const char* name : {"assoc", "asw", "free_binary"}) {
    Presentation p = builtin_presentation(name);
    EqSystem s = build_stump_system_nonsym(p);
    Solution sol = solve_coefficients(s, 10, false);
    for (const Series& v : sol.vars)
      for (int k = 0; k <= v.N; ++k)
        for (const Rat& c : v.c[k]) {
          CHECK(c >= 0);
          CHECK(c.get_den() == 1);
        }
  }
  for (const char* name : {"alia", "nu2"}) {
    Presentation p = builtin_presentation(name);
    EqSystem s = build_stump_system_shuffle(p);
    Solution sol = solve_coefficients(s, 9, false);
    for (const Series& v : sol.vars)
      for (int k = 1; k <= v.N; ++k)
        for (const Rat& c : v.c[k]) {
          CHECK(c >= 0);
          Rat scaled = c * Rat(factorial(k));
          scaled.canonicalize();
          CHECK(scaled.get_den() == 1);
        }
  }
}

TEST_CASE("weighted and unweighted solves agree at t = 1") {
  for (const char* name : {"asw", "nu2"}) {
    Presentation p = builtin_presentation(name);
    EqSystem s = p.kind == OperadKind::nonsym ? build_stump_system_nonsym(p)
                                              : build_stump_system_shuffle(p);
    Solution w = solve_coefficients(s, 8, true);
    Solution u = solve_coefficients(s, 8, false);
    std::vector<Int> dw = dims(collapse_t(w.total));
    std::vector<Int> du = dims(collapse_t(u.total));
    CHECK(dw == du);
  }
}

TEST_CASE("generator weights scale the grading") {
  Presentation heavy = parse_presentation(
      "operad nonsym\ngen mu : 2 weight 2\nrel mu(mu(-,-),-)\n");
  EqSystem s = build_stump_system_nonsym(heavy);
  Solution sol = solve_coefficients(s, 5);
  std::vector<Poly> w = dims_weighted(sol.total);
  CHECK(w[3] == poly_shift(Poly{Rat(1)}, 6));  // three vertices, weight 2 each
}

TEST_CASE("a unary generator without a bounding relation is reported") {
  Presentation p = parse_presentation("operad nonsym\ngen u : 1\n");
  EqSystem s = build_stump_system_nonsym(p);
  CHECK_THROWS_AS(solve_coefficients(s, 3), solver_error);

  Presentation ok = parse_presentation("operad nonsym\ngen u : 1\nrel u(u(-))\n");
  EqSystem s2 = build_stump_system_nonsym(ok);
  std::vector<Int> d = system_dims(s2, 3);
  CHECK(d[0] == 2);
  CHECK(same_prefix(d, basis_dims(ok, 3)));
}

TEST_CASE("hand-built cyclic chains are reported, not looped on") {
  EqSystem s;
  s.kind = SystemKind::nonsym_product;
  s.flavor = Flavor::ordinary;
  s.vars.resize(3);
  s.vars[0].id = "z";
  s.vars[0].is_ground = true;
  s.vars[1].id = "a";
  s.vars[2].id = "b";
  s.ground = 0;
  s.total = {0, 1, 2};
  Equation ea;
  ea.target = 1;
  Term ta;
  ta.factors = {2};
  ea.terms.push_back(ta);
  Equation eb;
  eb.target = 2;
  Term tb;
  tb.factors = {1};
  eb.terms.push_back(tb);
  s.eqs = {ea, eb};
  try {
    solve_coefficients(s, 4);
    FAIL("expected solver_error");
  } catch (const solver_error& e) {
    CHECK(std::string(e.what()).find("not well-founded") != std::string::npos);
  }
}

TEST_CASE("JSON emission is well-formed") {
  Presentation p = builtin_presentation("assoc");
  EqSystem s = build_stump_system_nonsym(p);
  nlohmann::json j = nlohmann::json::parse(emit_system(s, "json"));
  CHECK(j["kind"] == "nonsym-product");
  CHECK(j["variables"].size() == 2);
  CHECK(j["equations"].size() == 1);
  CHECK(j["equations"][0]["target"] == "y_mu");
  CHECK(j["equations"][0]["terms"].size() == 2);
  CHECK(j["total"].size() == 2);

  Presentation nu2 = builtin_presentation("nu2");
  nlohmann::json js = nlohmann::json::parse(
      emit_system(build_symmetric_regular_system(nu2), "json"));
  CHECK(js["kind"] == "symmetric-algebraic");
}

TEST_CASE("ODE emission for integral systems") {
  Presentation tern = parse_presentation("operad shuffle\ngen g : 3\n");
  EqSystem s = build_stump_system_shuffle(tern);
  std::string ode = emit_system(s, "ode");
  CHECK(ode.find("z' = 1") != std::string::npos);
  CHECK(ode.find("h1") != std::string::npos);
  CHECK(ode.find("h1' = ") != std::string::npos);
  CHECK(ode.find("y_g(0) = 0") != std::string::npos);
  CHECK(ode.find("E = z + y_g") != std::string::npos);

  Presentation assoc = builtin_presentation("assoc");
  CHECK_THROWS_AS(
      emit_system(build_stump_system_nonsym(assoc), "ode"), usage_error);
  CHECK_THROWS_AS(
      emit_system(build_stump_system_nonsym(assoc), "dot"), usage_error);
}

TEST_CASE("C-chain text emission") {
  Presentation sh = parse_presentation("operad shuffle\ngen f : 2\n");
  EqSystem s = build_stump_system_shuffle(sh);
  std::string text = emit_system(s, "text");
  CHECK(text.find("y_f = C(z,z) + C(z,y_f) + C(y_f,z) + C(y_f,y_f)") !=
        std::string::npos);
  CHECK(text.find("E = z + y_f") != std::string::npos);
}
