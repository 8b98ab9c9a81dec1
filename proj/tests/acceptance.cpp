// End-to-end gate: ten checks, one line each, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "opseries/analysis.hpp"
#include "opseries/enumerate.hpp"
#include "opseries/eqsys.hpp"

using namespace opseries;

namespace {

struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void acc(bool ok, const std::string& what) {
  if (!ok) throw check_failure(what);
}

Poly P(std::initializer_list<long> v) {
  Poly p;
  for (long c : v) p.push_back(Rat(c));
  poly_trim(p);
  return p;
}

Rat R(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

bool poly_eq(const Poly& a, const Poly& b) {
  return poly_is_zero(poly_add(a, poly_scale(b, Rat(-1))));
}

Rat coeff(const Series& f, int n) {
  if (n > f.N || f.c[n].empty()) return Rat(0);
  acc(f.c[n].size() == 1, "coefficient involves the grading variable");
  return f.c[n][0];
}

void check_coeffs(const Series& f, const std::vector<Rat>& expected,
                  const std::string& who) {
  for (size_t i = 0; i < expected.size(); ++i) {
    Rat got = coeff(f, static_cast<int>(i) + 1);
    got.canonicalize();
    if (got != expected[i])
      throw check_failure(who + ": coefficient of z^" + std::to_string(i + 1) +
                          " is " + rat_str(got) + ", expected " +
                          rat_str(expected[i]));
  }
}

void check_dims(const std::vector<Int>& got, const std::vector<Int>& expected,
                const std::string& who) {
  size_t k = std::min(got.size(), expected.size());
  for (size_t i = 0; i < k; ++i)
    if (got[i] != expected[i])
      throw check_failure(who + ": dimension at arity " + std::to_string(i + 1) +
                          " is " + got[i].get_str() + ", expected " +
                          expected[i].get_str());
}

Series solved(const EqSystem& s, int n) {
  return collapse_t(solve_coefficients(s, n, false).total);
}

Series from_poly(const Poly& p, int n) {
  Series s = Series::zero(Flavor::ordinary, n);
  for (size_t i = 0; i < p.size() && i <= static_cast<size_t>(n); ++i)
    s.c[i] = Poly{p[i]};
  return s;
}

// ---------------------------------------------------------------------------
// 1..7: named studies

void criterion_assoc() {
  Presentation p = builtin_presentation("assoc");
  EqSystem s = build_stump_system_nonsym(p);
  acc(s.vars.size() == 2, "expected exactly two variables");
  acc(s.vars[0].id == "z" && s.vars[1].id == "y_mu", "unexpected variable ids");
  std::string text = emit_system(s, "text");
  acc(text.find("y_mu = z^2 + z*y_mu") != std::string::npos,
      "unexpected equation text");
  Series g = solved(s, 20);
  std::vector<Int> d = dims(g);
  acc(d.size() == 20, "expected twenty dimensions");
  for (const Int& v : d) acc(v == 1, "a dimension differs from 1");
  auto rf = guess_rational(g, 4);
  acc(rf.has_value(), "no rational form found");
  acc(poly_eq(rf->num, P({0, 1})) && poly_eq(rf->den, P({1, -1})),
      "rational form is not z/(1-z)");
}

void criterion_asw() {
  Presentation p = builtin_presentation("asw");
  EqSystem ie = build_incl_excl_system_nonsym(p);
  acc(ie.vars.size() == 5, "expected a five-variable system, got " +
                               std::to_string(ie.vars.size()));
  EqSystem st = build_stump_system_nonsym(p);
  Series g_ie = solved(ie, 20);
  Series g_st = solved(st, 20);
  std::vector<Int> d_ie = dims(g_ie);
  std::vector<Int> d_st = dims(g_st);
  check_dims(d_st, d_ie, "stump vs inclusion-exclusion");
  std::vector<Int> oracle = basis_dims(p, 20);
  check_dims(d_ie, oracle, "system vs oracle");
  check_dims(d_ie, {Int(1), Int(1), Int(2), Int(4), Int(8), Int(15), Int(28)},
             "leading dimensions");
  auto rf = guess_rational(g_ie, 8);
  acc(rf.has_value(), "no rational form found");
  acc(poly_eq(rf->num, P({0, 1, -1, -1, 1, 1})),
      "numerator is not z - z^2 - z^3 + z^4 + z^5");
  acc(poly_eq(rf->den, P({1, -2, -1, 2, 1})),
      "denominator is not (1 - z - z^2)^2");
  // the same function written as z + z^2 (1 - z^2) / (1 - z - z^2)^2
  Poly den = P({1, -2, -1, 2, 1});
  Poly num_alt = poly_add(poly_mul(P({0, 1}), den), P({0, 0, 1, 0, -1}));
  acc(poly_eq(poly_mul(rf->num, den), poly_mul(num_alt, rf->den)),
      "reduced form disagrees with the split form");
}

void criterion_alia() {
  Presentation p = builtin_presentation("alia");
  EqSystem s = build_stump_system_shuffle(p);
  Series e = solved(s, 12);
  check_coeffs(e,
               {R(1, 1), R(1, 1), R(11, 6), R(25, 6), R(127, 12), R(259, 9),
                R(1475, 18), R(17369, 72), R(943855, 1296), R(2906189, 1296)},
               "exponential series");
  auto eq = guess_algebraic(e, 3, 3);
  acc(eq.has_value(), "no cubic found");
  acc(eq->deg_y == 3, "equation degree is not 3");
  acc(poly_eq(eq->coeffs[3], P({1})) && poly_eq(eq->coeffs[2], P({-6})) &&
          poly_eq(eq->coeffs[1], P({6})) && poly_eq(eq->coeffs[0], P({0, -6})),
      "cubic differs from y^3 - 6y^2 + 6y - 6z");
  acc(verify_equation(e, *eq), "cubic fails verification at order 12");
  std::vector<Int> oracle = basis_dims(p, 7);
  check_dims(oracle,
             {Int(1), Int(2), Int(11), Int(100), Int(1270), Int(20720),
              Int(413000)},
             "oracle");
  check_dims(oracle, dims(e), "oracle vs system");
}

void criterion_nu2() {
  Presentation p = builtin_presentation("nu2");
  acc(check_shuffle_regular(p).regular, "not shuffle-regular");
  acc(check_symmetric_regular(p).regular, "not symmetric-regular");
  EqSystem s = build_stump_system_shuffle(p);
  Series e = solved(s, 12);
  check_coeffs(e,
               {R(1, 1), R(1, 1), R(2, 1), R(19, 4), R(25, 2), R(281, 8),
                R(413, 4), R(20071, 64), R(31249, 32), R(396887, 128)},
               "exponential series");
  AlgebraicEquation quad;
  quad.deg_y = 2;
  quad.coeffs = {P({0, 4, -1}), P({-4, 2}), P({3})};
  acc(verify_equation(e, quad), "quadratic certificate fails");
  std::vector<Int> oracle = basis_dims(p, 7);
  check_dims(oracle,
             {Int(1), Int(2), Int(12), Int(114), Int(1500), Int(25290),
              Int(520380)},
             "oracle");
  check_dims(oracle, dims(e), "oracle vs system");
}

void criterion_nu3() {
  Presentation p = builtin_presentation("nu3");
  acc(p.relations.size() == 180, "expected 180 relations");
  EqSystem s = build_symmetric_regular_system(p);
  Series e = solved(s, 11);
  check_coeffs(e,
               {R(1, 1), R(1, 1), R(2, 1), R(5, 1), R(14, 1), R(167, 4),
                R(130, 1), R(26745, 64), R(44045, 32), R(36969, 8)},
               "exponential series");
  AlgebraicEquation quartic;
  quartic.deg_y = 4;
  quartic.coeffs = {P({0, 64, 16, -8, 9}), P({-64, -32, 24, -36}),
                    P({80, 8, 30}), P({-24, 12}), P({1})};
  acc(verify_equation(e, quartic), "quartic certificate fails at order 11");
  std::vector<Int> oracle = basis_dims(p, 7);
  check_dims(oracle,
             {Int(1), Int(2), Int(12), Int(120), Int(1680), Int(30060),
              Int(655200)},
             "oracle");
  check_dims(oracle, dims(e), "oracle vs system");
}

void criterion_lieadm() {
  Presentation p = builtin_presentation("lieadm");
  EqSystem s = build_stump_system_shuffle(p);
  Series e = solved(s, 12);
  check_coeffs(e,
               {R(1, 1), R(1, 1), R(11, 6), R(49, 12), R(1219, 120),
                R(811, 30), R(75919, 1008), R(97175, 448),
                R(25827439, 40320), R(116679221, 60480)},
               "exponential series");
  std::vector<Int> oracle = basis_dims(p, 7);
  check_dims(oracle, dims(e), "oracle vs system");
}

void criterion_q3() {
  Presentation p = builtin_presentation("q_k:3");
  EqSystem s = build_stump_system_nonsym(p);
  acc(s.vars.size() == 5, "expected five variables, got " +
                              std::to_string(s.vars.size()));
  Series g = solved(s, 14);
  check_dims(dims(g), basis_dims(p, 12), "system vs oracle");
  auto rf = guess_rational(g, 3);
  acc(rf.has_value() && poly_eq(rf->num, P({0, 1, -1})) &&
          poly_eq(rf->den, P({1, -2})),
      "closed form is not z(1-z)/(1-2z)");
  Series inv = reversion(g);
  // the inverse demonstrably satisfies u^2 - (1+2z)u + z = 0
  Series corr = add(mul(inv, inv), mul(inv, from_poly(P({-1, -2}), 14)));
  corr = add(corr, from_poly(P({0, 1}), 14));
  for (int n = 0; n <= 13; ++n)
    acc(poly_is_zero(corr.c[n]),
        "u^2 - (1+2z)u + z fails at z^" + std::to_string(n));
  // the required identity, checked as stated
  Series lhs = mul(mul(inv, inv), from_poly(P({0, -1, 1}), 14));
  lhs = add(lhs, mul(inv, from_poly(P({1, -1, 3, -4, 1}), 14)));
  lhs = add(lhs, from_poly(P({0, -1, 2, -3, 3, -1}), 14));
  int first_bad = -1;
  for (int n = 0; n <= 11 && first_bad < 0; ++n)
    if (!poly_is_zero(lhs.c[n])) first_bad = n;
  if (first_bad < 0) return;
  acc(first_bad == 6 && lhs.c[6].size() == 1 && lhs.c[6][0] == Rat(-1),
      "identity fails at z^" + std::to_string(first_bad) +
          " with an unexpected residual");
  throw check_failure(
      "the required quadratic fails at z^6 (residual -z^6 + ...); the series "
      "is oracle-verified to arity 12, equals z(1-z)/(1-2z), and its inverse "
      "satisfies u^2 - (1+2z)u + z = 0 through z^13 instead (see notes)");
}

// ---------------------------------------------------------------------------
// 8: randomized builder/oracle equivalence

Tree random_rel_shape(std::mt19937& rng, const std::vector<Generator>& gens,
                      int max_level, int max_arity) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::function<Tree(int)> grow = [&](int level) -> Tree {
      if (level == max_level || (level > 0 && rng() % 100 < 55))
        return Tree::make_leaf();
      int gi = static_cast<int>(rng() % gens.size());
      std::vector<Tree> ch;
      for (int i = 0; i < gens[gi].arity; ++i) ch.push_back(grow(level + 1));
      return Tree::make_node(gi, std::move(ch));
    };
    Tree t = grow(0);
    if (!t.leaf() && tree_arity(t) <= max_arity) return t;
  }
  // fall back to a corolla of the first generator
  return Tree::make_node(
      0, std::vector<Tree>(gens[0].arity, Tree::make_leaf()));
}

std::string random_gens(std::mt19937& rng, std::vector<Generator>& gens,
                        bool allow_ternary) {
  int ngens = (rng() % 2 == 0) ? 1 : 2;
  std::string text;
  const char* names[2] = {"f", "g"};
  for (int i = 0; i < ngens; ++i) {
    int arity = (allow_ternary && rng() % 4 == 0) ? 3 : 2;
    gens.push_back({names[i], arity, 1});
    text += std::string("gen ") + names[i] + " : " + std::to_string(arity) + "\n";
  }
  return text;
}

void criterion_random() {
  const long long oracle_cap = 1'500'000;
  // non-symmetric draws, cross-checked to arity 10
  {
    std::mt19937 rng(20250817);
    int done = 0, attempts = 0;
    while (done < 200) {
      acc(++attempts < 2000, "too many draws were rejected by the resource cap");
      std::vector<Generator> gens;
      std::string text = "operad nonsym\n" + random_gens(rng, gens, true);
      int nrels = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < nrels; ++i)
        text += "rel " + tree_text(random_rel_shape(rng, gens, 3, 8), gens) + "\n";
      Presentation p = parse_presentation(text);
      EnumOptions opt;
      opt.max_candidates = oracle_cap;
      std::vector<Int> oracle;
      try {
        oracle = basis_dims(p, 10, opt);
      } catch (const enumeration_limit_error&) {
        continue;  // too free to enumerate cheaply; draw again
      }
      EqSystem s = build_stump_system_nonsym(p);
      std::vector<Int> ds = dims(solved(s, 10));
      if (ds != oracle)
        throw check_failure("mismatch for:\n" + text);
      ++done;
    }
  }
  // shuffle draws from planar-skeleton classes, cross-checked to arity 6
  {
    std::mt19937 rng(20250818);
    int done = 0, attempts = 0;
    while (done < 100) {
      acc(++attempts < 1000, "too many draws were rejected by the resource cap");
      std::vector<Generator> gens;
      std::string text = "operad shuffle\n" + random_gens(rng, gens, false);
      int nskel = 1 + static_cast<int>(rng() % 2);
      for (int i = 0; i < nskel; ++i)
        text += "skeleton planar " +
                tree_text(random_rel_shape(rng, gens, 3, 5), gens) + "\n";
      Presentation p = parse_presentation(text);
      EnumOptions opt;
      opt.max_candidates = oracle_cap;
      std::vector<Int> oracle;
      try {
        oracle = basis_dims(p, 6, opt);
      } catch (const enumeration_limit_error&) {
        continue;
      }
      EqSystem s = build_stump_system_shuffle(p);
      std::vector<Int> ds = dims(solved(s, 6));
      if (ds != oracle)
        throw check_failure("mismatch for:\n" + text);
      ++done;
    }
  }
}

// ---------------------------------------------------------------------------
// 9, 10: series property suites

Series random_poly_series(std::mt19937& rng, Flavor f, int n, bool unit_linear) {
  Series s = Series::zero(f, n);
  for (int k = 1; k <= n; ++k) {
    int num = static_cast<int>(rng() % 9) - 4;
    int den = 1 + static_cast<int>(rng() % 4);
    Rat c(num, den);
    c.canonicalize();
    s.c[k] = Poly{c};
  }
  if (unit_linear && s.c[1][0] == 0) s.c[1] = Poly{Rat(1)};
  return s;
}

bool series_eq(const Series& a, const Series& b) {
  for (int k = 0; k <= a.N; ++k)
    if (!poly_is_zero(poly_add(a.c[k], poly_scale(b.c[k], Rat(-1)))))
      return false;
  return true;
}

void criterion_c_identities() {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 50; ++trial) {
    Series f = random_poly_series(rng, Flavor::exponential, 15, false);
    Series g = random_poly_series(rng, Flavor::exponential, 15, false);
    Series h = random_poly_series(rng, Flavor::exponential, 15, false);
    acc(series_eq(add(c_op(f, g), c_op(g, f)), mul(f, g)),
        "pairwise identity fails");
    Series lhs = c_multi({f, c_op(g, h)});
    lhs = add(lhs, c_multi({f, c_op(h, g)}));
    lhs = add(lhs, c_multi({g, c_op(f, h)}));
    lhs = add(lhs, c_multi({g, c_op(h, f)}));
    lhs = add(lhs, c_multi({h, c_op(f, g)}));
    lhs = add(lhs, c_multi({h, c_op(g, f)}));
    acc(series_eq(lhs, mul(mul(f, g), h)), "permutation sum fails at n = 3");
    acc(series_eq(c_multi({f, f}), scale(mul(f, f), Rat(1, 2))),
        "divided square fails");
    acc(series_eq(c_multi({f, f, f}), scale(mul(mul(f, f), f), Rat(1, 6))),
        "divided cube fails");
    acc(series_eq(c_multi({f, f, f, f}),
                  scale(mul(mul(f, f), mul(f, f)), Rat(1, 24))),
        "divided fourth power fails");
  }
}

void criterion_reversion() {
  std::mt19937 rng(515151);
  Series z = Series::z(Flavor::ordinary, 12);
  for (int trial = 0; trial < 50; ++trial) {
    Series f = random_poly_series(rng, Flavor::ordinary, 12, true);
    Series inv = reversion(f);
    acc(series_eq(compose(f, inv), z), "compose(f, rev(f)) is not z");
    acc(series_eq(compose(inv, f), z), "compose(rev(f), f) is not z");
    Series e = random_poly_series(rng, Flavor::exponential, 12, false);
    acc(series_eq(ord_to_exp(exp_to_ord(e)), e), "flavor round-trip fails");
  }
}

// ---------------------------------------------------------------------------

struct Criterion {
  const char* name;
  double budget_s;
  std::function<void()> body;
};

}  // namespace

int main() {
  std::vector<Criterion> list = {
      {"assoc: textbook system and rational series", 0.1, criterion_assoc},
      {"asw: overlap system, stump system, oracle, closed form", 1.0,
       criterion_asw},
      {"alia: cubic certificate for the exponential series", 5.0,
       criterion_alia},
      {"nu2: regularity, coefficients, quadratic certificate", 30.0,
       criterion_nu2},
      {"nu3: symmetrized system and quartic certificate", 60.0, criterion_nu3},
      {"lieadm: mixed relations against the oracle", 30.0, criterion_lieadm},
      {"q3: inverse-series polynomial identity", 1.0, criterion_q3},
      {"random presentations: system dims equal oracle dims", 300.0,
       criterion_random},
      {"integral-transform identities", 1.0, criterion_c_identities},
      {"reversion and flavor contracts", 1.0, criterion_reversion},
  };
  int failures = 0;
  for (size_t i = 0; i < list.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      list[i].body();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    if (verdict == "PASS" && dt > list[i].budget_s) {
      verdict = "FAIL";
      detail = "exceeded the time budget of " +
               std::to_string(list[i].budget_s) + " s";
    }
    std::printf("[%2zu/10] %-55s %s (%.2f s)\n", i + 1, list[i].name,
                verdict.c_str(), dt);
    if (!detail.empty()) std::printf("        %s\n", detail.c_str());
    if (verdict != "PASS") ++failures;
  }
  if (failures) std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
