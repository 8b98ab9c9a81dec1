#include "opseries/analysis.hpp"

#include <algorithm>

#include "json.hpp"

namespace opseries {

namespace {

// Solve A x = b exactly; A row-major, may be overdetermined.  Returns the
// empty optional when inconsistent; free variables are set to zero.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_of_col(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rat inv = Rat(1) / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat m = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= m * a[r][j];
      b[i] -= m * b[r];
    }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] >= 0) x[c] = b[pivot_of_col[c]];
  return x;
}

// One kernel vector of A (nonzero), if any.
std::optional<std::vector<Rat>> kernel_vector(std::vector<std::vector<Rat>> a) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rat inv = Rat(1) / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat m = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= m * a[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  // find a free column
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = -1;
  for (size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) {
      free_col = static_cast<int>(c);
      break;
    }
  if (free_col < 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  x[free_col] = 1;
  for (size_t k = 0; k < pivot_col.size(); ++k)
    x[pivot_col[k]] = -a[k][free_col];
  return x;
}

std::vector<Rat> scalar_coeffs(const Series& f) {
  std::vector<Rat> c(f.N + 1, Rat(0));
  for (int n = 0; n <= f.N; ++n) {
    if (f.c[n].size() > 1)
      throw usage_error("the series must be free of the weight variable");
    if (!f.c[n].empty()) c[n] = f.c[n][0];
  }
  return c;
}

Poly poly_gcd(Poly a, Poly b) {
  // plain Euclid over Q, result monic
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // a mod b
    while (a.size() >= b.size() && !a.empty()) {
      Rat q = a.back() / b.back();
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
      poly_trim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (Rat& c : a) c /= lead;
  }
  return a;
}

Poly poly_divide_exact(const Poly& a, const Poly& b) {
  Poly rem = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (rem.size() >= b.size() && !rem.empty()) {
    Rat f = rem.back() / b.back();
    size_t off = rem.size() - b.size();
    q[off] = f;
    for (size_t i = 0; i < b.size(); ++i) rem[off + i] -= f * b[i];
    poly_trim(rem);
    if (off == 0) break;
  }
  return q;
}

}  // namespace

Series rational_series(const RationalFunction& rf, int n) {
  // c_k from num = den * f
  if (rf.den.empty() || rf.den[0] == 0)
    throw usage_error("the denominator must not vanish at 0");
  Series f = Series::zero(Flavor::ordinary, n);
  for (int k = 0; k <= n; ++k) {
    Rat v = k < static_cast<int>(rf.num.size()) ? rf.num[k] : Rat(0);
    for (int j = 1; j <= k && j < static_cast<int>(rf.den.size()); ++j) {
      const Poly& prev = f.c[k - j];
      if (!prev.empty()) v -= rf.den[j] * prev[0];
    }
    v /= rf.den[0];
    if (v != 0) f.c[k] = Poly{v};
  }
  return f;
}

std::optional<RationalFunction> guess_rational(const Series& input, int max_deg) {
  Series f = input.flavor == Flavor::exponential ? exp_to_ord(input) : input;
  int n = f.N;
  if (n < 2 * max_deg + 2)
    throw usage_error("guess_rational needs at least 2*max_deg + 2 coefficients");
  std::vector<Rat> c = scalar_coeffs(f);
  for (int dq = 0; dq <= max_deg; ++dq) {
    for (int dp = 0; dp <= max_deg; ++dp) {
      // require spare matched coefficients beyond the unknowns
      if (n - dp - dq < max_deg) continue;
      // unknowns p_0..p_dp, q_1..q_dq with q_0 = 1:
      // for each k <= N: sum_j q_j c_{k-j} = p_k (0 for k > dp)
      std::vector<std::vector<Rat>> a;
      std::vector<Rat> b;
      for (int k = 0; k <= n; ++k) {
        std::vector<Rat> row(dp + 1 + dq, Rat(0));
        if (k <= dp) row[k] = -1;
        for (int j = 1; j <= dq; ++j)
          if (k - j >= 0) row[dp + j] = c[k - j];
        a.push_back(std::move(row));
        b.push_back(-c[k]);
      }
      auto x = solve_linear(std::move(a), std::move(b));
      if (!x) continue;
      RationalFunction rf;
      rf.num.assign(x->begin(), x->begin() + dp + 1);
      rf.den.assign(1, Rat(1));
      rf.den.insert(rf.den.end(), x->begin() + dp + 1, x->end());
      poly_trim(rf.num);
      poly_trim(rf.den);
      if (rf.den.empty()) continue;
      // reduce
      Poly g = poly_gcd(rf.num, rf.den);
      if (g.size() > 1) {
        rf.num = poly_divide_exact(rf.num, g);
        rf.den = poly_divide_exact(rf.den, g);
      }
      if (rf.den.empty() || rf.den[0] == 0) continue;
      Rat norm = Rat(1) / rf.den[0];
      rf.num = poly_scale(rf.num, norm);
      rf.den = poly_scale(rf.den, norm);
      return rf;
    }
  }
  return std::nullopt;
}

namespace {

// scale to integer coefficients with content 1; sign so that the leading
// coefficient of the highest y-power (then highest z-power) is positive
void normalize_algebraic(AlgebraicEquation& eq) {
  Int lcm_den = 1;
  for (const Poly& p : eq.coeffs)
    for (const Rat& c : p) {
      Rat q = c;
      q.canonicalize();
      Int d = q.get_den();
      lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
  Int content = 0;
  for (Poly& p : eq.coeffs)
    for (Rat& c : p) {
      c *= Rat(lcm_den);
      c.canonicalize();
      content = gcd(content, c.get_num());
    }
  if (content == 0) content = 1;
  if (content < 0) content = -content;
  for (Poly& p : eq.coeffs)
    for (Rat& c : p) c /= Rat(content);
  for (int j = eq.deg_y; j >= 0; --j) {
    Poly p = eq.coeffs[j];
    poly_trim(p);
    if (p.empty()) continue;
    if (p.back() < 0)
      for (Poly& q : eq.coeffs)
        for (Rat& c : q) c = -c;
    break;
  }
}

}  // namespace

std::optional<AlgebraicEquation> guess_algebraic(const Series& f, int deg_y,
                                                 int deg_z, int margin) {
  if (deg_y < 1) throw usage_error("guess_algebraic needs deg_y >= 1");
  int n = f.N;
  // deg_y/deg_z bound the search; at least the smallest candidate must be
  // certifiable within the available coefficients
  if (2 + margin > n + 1)
    throw usage_error("guess_algebraic needs more coefficients for this degree");
  std::vector<Rat> c = scalar_coeffs(f);
  // powers of f
  std::vector<std::vector<Rat>> pow(deg_y + 1, std::vector<Rat>(n + 1, Rat(0)));
  pow[0][0] = 1;
  for (int j = 1; j <= deg_y; ++j)
    for (int k = 0; k <= n; ++k)
      for (int i = 0; i <= k; ++i) pow[j][k] += pow[j - 1][i] * c[k - i];
  for (int dy = 1; dy <= deg_y; ++dy) {
    for (int dz = 0; dz <= deg_z; ++dz) {
      int cols = (dy + 1) * (dz + 1);
      if (n + 1 - cols < margin) continue;
      std::vector<std::vector<Rat>> a(n + 1, std::vector<Rat>(cols, Rat(0)));
      for (int j = 0; j <= dy; ++j)
        for (int i = 0; i <= dz; ++i) {
          int col = j * (dz + 1) + i;
          for (int k = i; k <= n; ++k) a[k][col] = pow[j][k - i];
        }
      auto x = kernel_vector(std::move(a));
      if (!x) continue;
      AlgebraicEquation eq;
      eq.deg_y = dy;
      eq.coeffs.assign(dy + 1, Poly{});
      for (int j = 0; j <= dy; ++j) {
        Poly p(dz + 1, Rat(0));
        for (int i = 0; i <= dz; ++i) p[i] = (*x)[j * (dz + 1) + i];
        poly_trim(p);
        eq.coeffs[j] = std::move(p);
      }
      // reject the trivial all-in-y^0 kernel and require y to appear
      bool uses_y = false;
      for (int j = 1; j <= dy; ++j)
        if (!poly_is_zero(eq.coeffs[j])) uses_y = true;
      if (!uses_y) continue;
      normalize_algebraic(eq);
      return eq;
    }
  }
  return std::nullopt;
}

bool verify_equation(const Series& f, const AlgebraicEquation& eq) {
  int n = f.N;
  std::vector<Rat> c = scalar_coeffs(f);
  std::vector<Rat> acc(n + 1, Rat(0));
  std::vector<Rat> pw(n + 1, Rat(0));
  pw[0] = 1;
  for (int j = 0; j <= eq.deg_y; ++j) {
    if (j > 0) {
      std::vector<Rat> next(n + 1, Rat(0));
      for (int k = 0; k <= n; ++k) {
        if (pw[k] == 0) continue;
        for (int i = 0; k + i <= n; ++i) next[k + i] += pw[k] * c[i];
      }
      pw = std::move(next);
    }
    if (j >= static_cast<int>(eq.coeffs.size())) break;
    const Poly& p = eq.coeffs[j];
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      for (int k = 0; k + static_cast<int>(i) <= n; ++k)
        acc[k + i] += p[i] * pw[k];
    }
  }
  for (const Rat& v : acc)
    if (v != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string signed_poly_text(const Poly& p, const std::string& var) {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    Rat c = abs(p[i]);
    std::string term;
    if (i == 0) {
      term = rat_str(c);
    } else {
      if (c != 1) term = rat_str(c) + "*";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (out.empty())
      out = (p[i] < 0 ? "-" : "") + term;
    else
      out += (p[i] < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

nlohmann::json poly_json_array(const Poly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Rat& c : p) arr.push_back(rat_str(c));
  return arr;
}

}  // namespace

std::string rational_json(const RationalFunction& rf) {
  nlohmann::json j;
  j["num"] = poly_json_array(rf.num);
  j["den"] = poly_json_array(rf.den);
  return j.dump(2);
}

std::string algebraic_json(const AlgebraicEquation& eq) {
  nlohmann::json j;
  j["deg_y"] = eq.deg_y;
  j["coeffs"] = nlohmann::json::array();
  for (const Poly& p : eq.coeffs) j["coeffs"].push_back(poly_json_array(p));
  return j.dump(2);
}

std::string rational_text(const RationalFunction& rf) {
  return "(" + signed_poly_text(rf.num, "z") + ") / (" +
         signed_poly_text(rf.den, "z") + ")";
}

std::string algebraic_text(const AlgebraicEquation& eq) {
  std::string out;
  for (int j = eq.deg_y; j >= 0; --j) {
    if (j >= static_cast<int>(eq.coeffs.size())) continue;
    Poly p = eq.coeffs[j];
    poly_trim(p);
    if (p.empty()) continue;
    if (!out.empty()) out += " + ";
    std::string c = "(" + signed_poly_text(p, "z") + ")";
    if (j == 0)
      out += c;
    else if (j == 1)
      out += c + "*y";
    else
      out += c + "*y^" + std::to_string(j);
  }
  if (out.empty()) out = "0";
  return out + " = 0";
}

// ---------------------------------------------------------------------------
// Dependence graph

DependenceGraph dependence_graph(const EqSystem& s) {
  for (const Equation& e : s.eqs)
    for (const Term& t : e.terms)
      if (t.sign < 0)
        throw usage_error(
            "the dependence graph is defined for truncation-built systems "
            "with non-negative terms");
  DependenceGraph g;
  g.nvars = static_cast<int>(s.vars.size());
  g.finite.resize(g.nvars);
  for (int i = 0; i < g.nvars; ++i) g.finite[i] = s.vars[i].finite;
  g.linear.assign(g.nvars, std::vector<int>(g.nvars, 0));
  for (const Equation& e : s.eqs) {
    for (const Term& t : e.terms) {
      int infinite_factors = 0;
      for (int f : t.factors)
        if (f >= 0 && !g.finite[f]) ++infinite_factors;
      for (int f : t.factors) {
        if (f < 0) continue;
        bool nonlinear = infinite_factors >= (g.finite[f] ? 1 : 2);
        int& slot = g.linear[e.target][f];
        slot = std::max(slot, nonlinear ? 2 : 1);
      }
    }
  }
  // nonlinear cycle: some nonlinear edge (b, b') with b reachable from b'
  auto reaches = [&](int from, int to) {
    std::vector<bool> seen(g.nvars, false);
    std::vector<int> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (int w = 0; w < g.nvars; ++w)
        if (g.linear[v][w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    return false;
  };
  for (int b = 0; b < g.nvars && !g.has_nonlinear_cycle; ++b)
    for (int b2 = 0; b2 < g.nvars && !g.has_nonlinear_cycle; ++b2)
      if (g.linear[b][b2] == 2 && reaches(b2, b)) g.has_nonlinear_cycle = true;
  return g;
}

GrowthReport classify_growth(const EqSystem& s, const Series& total) {
  GrowthReport r;
  DependenceGraph g = dependence_graph(s);
  r.nonlinear_cycle = g.has_nonlinear_cycle;
  r.expectation = g.has_nonlinear_cycle
                      ? "a nonlinear cycle: expect faster-than-polynomial "
                        "coefficient growth (algebraic rather than rational)"
                      : "no nonlinear cycle: expect rational-style growth";
  std::vector<Int> d;
  try {
    d = dims(total);
  } catch (const usage_error&) {
    r.observed = "dimension sequence unavailable";
    return r;
  }
  // coarse: compare the growth of successive ratios near the tail
  int n = static_cast<int>(d.size());
  if (n < 6 || d[n - 2] == 0 || d[n - 3] == 0) {
    r.observed = "too few terms to judge";
    return r;
  }
  double r1 = Rat(d[n - 2], d[n - 3]).get_d();
  double r2 = Rat(d[n - 1], d[n - 2]).get_d();
  if (r2 <= 1.0 + 1e-9) {
    r.observed = "bounded or sub-exponential dimensions";
  } else if (r2 > r1 * 1.05) {
    r.observed = "accelerating ratios (super-exponential trend)";
  } else {
    r.observed = "roughly geometric dimensions (ratio near " +
                 std::to_string(r2) + ")";
  }
  r.note = "heuristic only: ratios at truncation order " + std::to_string(n);
  return r;
}

}  // namespace opseries
