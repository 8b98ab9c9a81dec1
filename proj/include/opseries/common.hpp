// Shared basics: error types, exact rationals, and dense polynomials in the
// grading variable t (used as z-coefficients of two-variable series).
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace opseries {

using Rat = mpq_class;
using Int = mpz_class;

// A dense polynomial c[0] + c[1]*t + ... with exact rational coefficients.
using Poly = std::vector<Rat>;

// ---------------------------------------------------------------------------
// Errors

// Malformed DSL input; carries a 1-based source position.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

// Precondition violations: kind mismatches, wrong flavor, truncation-order
// mismatch, invalid labelings, unknown builtin names, ...
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The enumeration resource guard tripped.
class enumeration_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coefficient recursion that cannot be carried out (e.g. a cyclic chain of
// single-factor terms in a hand-written system).
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small integer helpers

inline Int factorial(int n) {
  Int r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;  // exact at every step: r is binomial(n, i+1) * (i+1)! / ...
  }
  return r;
}

// ---------------------------------------------------------------------------
// Polynomial helpers (coefficients in Q, variable written t)

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool poly_is_zero(const Poly& p) {
  for (const Rat& c : p)
    if (c != 0) return false;
  return true;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

inline void poly_add_inplace(Poly& a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  poly_trim(a);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

inline Poly poly_scale(const Poly& a, const Rat& s) {
  if (s == 0) return {};
  Poly r = a;
  for (Rat& c : r) c *= s;
  return r;
}

// Multiply by t^k.
inline Poly poly_shift(const Poly& a, int k) {
  if (poly_is_zero(a)) return {};
  Poly r(a.size() + k, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
  return r;
}

// Evaluate at t = 1.
inline Rat poly_at_one(const Poly& p) {
  Rat s = 0;
  for (const Rat& c : p) s += c;
  return s;
}

inline std::string rat_str(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

// Render c0 + c1*t + c2*t^2 ... skipping zero terms; "0" when zero.
inline std::string poly_str(const Poly& p, const std::string& var = "t") {
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    std::string term;
    if (i == 0) {
      term = rat_str(p[i]);
    } else {
      if (p[i] != 1) term = rat_str(p[i]) + "*";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace opseries
