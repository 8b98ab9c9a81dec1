// Truncated power series in z with polynomial coefficients in the grading
// variable t, exact over Q.  A series always stores the analytic
// coefficients c_n = [z^n] f; the flavor records whether dimensions are read
// off as c_n (ordinary) or c_n * n! (exponential).
#pragma once

#include <vector>

#include "opseries/common.hpp"

namespace opseries {

enum class Flavor { ordinary, exponential };

struct Series {
  Flavor flavor = Flavor::ordinary;
  int N = 12;                 // truncation order: coefficients of z^0..z^N
  std::vector<Poly> c;        // size N+1

  static Series zero(Flavor f, int n) {
    Series s;
    s.flavor = f;
    s.N = n;
    s.c.assign(n + 1, Poly{});
    return s;
  }
  // The series z.
  static Series z(Flavor f, int n) {
    Series s = zero(f, n);
    s.c[1] = Poly{Rat(1)};
    return s;
  }
};

Series add(const Series& f, const Series& g);
Series sub(const Series& f, const Series& g);
Series mul(const Series& f, const Series& g);
Series scale(const Series& f, const Rat& s);

// The integral transform C(f,g) = int_0^z f'(w) g(w) dw, i.e.
// [z^n] C(f,g) = (1/n) sum_k k f_k g_{n-k}.  Exponential flavor with zero
// constant terms required.
Series c_op(const Series& f, const Series& g);

// C(f1, C(f2, ... C(f_{m-1}, f_m))); with a single argument, the argument.
Series c_multi(const std::vector<Series>& fs);

// f(g(z)); requires g(0) = 0.
Series compose(const Series& f, const Series& g);

// The compositional inverse; requires f(0) = 0 and [z] f a nonzero constant.
Series reversion(const Series& f);

Series exp_to_ord(const Series& f);
Series ord_to_exp(const Series& f);

// Substitute t = 1.
Series collapse_t(const Series& f);

// True when no coefficient involves t.
bool t_free(const Series& f);

// Dimension sequence for n = 1..N: c_n at t = 1, times n! when exponential.
// Raises usage_error if any value is negative or non-integral.
std::vector<Int> dims(const Series& f);

// Weighted dimension polynomials in t for n = 1..N (times n! when
// exponential).
std::vector<Poly> dims_weighted(const Series& f);

// JSON: {"flavor": ..., "N": ..., "coefficients": [...]} with each
// coefficient a "p/q" string, or an array of such strings when t appears.
std::string series_json(const Series& f);

}  // namespace opseries
