#include "opseries/series.hpp"

#include "json.hpp"

namespace opseries {

namespace {

void check_compatible(const Series& f, const Series& g) {
  if (f.N != g.N) throw usage_error("truncation orders differ");
  if (f.flavor != g.flavor) throw usage_error("series flavors differ");
}

}  // namespace

Series add(const Series& f, const Series& g) {
  check_compatible(f, g);
  Series r = f;
  for (int n = 0; n <= r.N; ++n) poly_add_inplace(r.c[n], g.c[n]);
  return r;
}

Series sub(const Series& f, const Series& g) {
  return add(f, scale(g, Rat(-1)));
}

Series scale(const Series& f, const Rat& s) {
  Series r = f;
  for (Poly& p : r.c) p = poly_scale(p, s);
  return r;
}

Series mul(const Series& f, const Series& g) {
  check_compatible(f, g);
  Series r = Series::zero(f.flavor, f.N);
  for (int i = 0; i <= f.N; ++i) {
    if (poly_is_zero(f.c[i])) continue;
    for (int j = 0; i + j <= f.N; ++j)
      poly_add_inplace(r.c[i + j], poly_mul(f.c[i], g.c[j]));
  }
  return r;
}

Series c_op(const Series& f, const Series& g) {
  check_compatible(f, g);
  if (f.flavor != Flavor::exponential)
    throw usage_error("the C operator acts on exponential series");
  if (!poly_is_zero(f.c[0]) || !poly_is_zero(g.c[0]))
    throw usage_error("the C operator requires zero constant terms");
  Series r = Series::zero(f.flavor, f.N);
  for (int n = 1; n <= f.N; ++n) {
    Poly acc;
    for (int k = 1; k < n; ++k)
      poly_add_inplace(acc, poly_scale(poly_mul(f.c[k], g.c[n - k]), Rat(k)));
    r.c[n] = poly_scale(acc, Rat(1, n));
  }
  return r;
}

Series c_multi(const std::vector<Series>& fs) {
  if (fs.empty()) throw usage_error("C requires at least one argument");
  Series r = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) r = c_op(fs[i], r);
  return r;
}

Series compose(const Series& f, const Series& g) {
  if (f.N != g.N) throw usage_error("truncation orders differ");
  if (!poly_is_zero(g.c[0]))
    throw usage_error("composition requires a series with zero constant term");
  Series r = Series::zero(f.flavor, f.N);
  for (int k = f.N; k >= 0; --k) {
    // Horner: r <- r*g + f_k.
    Series next = Series::zero(f.flavor, f.N);
    for (int i = 0; i <= f.N; ++i) {
      if (poly_is_zero(r.c[i])) continue;
      for (int j = 0; i + j <= f.N; ++j)
        poly_add_inplace(next.c[i + j], poly_mul(r.c[i], g.c[j]));
    }
    poly_add_inplace(next.c[0], f.c[k]);
    r = std::move(next);
  }
  return r;
}

Series reversion(const Series& f) {
  if (!poly_is_zero(f.c[0]))
    throw usage_error("reversion requires a series with zero constant term");
  if (!t_free(f))
    throw usage_error("reversion requires a series free of the weight variable");
  if (f.c[1].empty() || f.c[1][0] == 0)
    throw usage_error("reversion requires an invertible linear coefficient");
  Rat f1 = f.c[1][0];
  // Fixed point of g = (z - (f - f1 z) o g) / f1; each pass settles one more
  // coefficient, so N passes suffice.
  Series tail = f;
  tail.c[1] = Poly{};
  Series g = Series::zero(f.flavor, f.N);
  g.c[1] = Poly{Rat(1) / f1};
  for (int pass = 0; pass < f.N; ++pass) {
    Series h = compose(tail, g);
    Series next = Series::zero(f.flavor, f.N);
    next.c[1] = Poly{Rat(1)};
    next = sub(next, h);
    // divide by f1 and fix the z^1 slot (next.c[1] currently 1 - h_1)
    next = scale(next, Rat(1) / f1);
    g = std::move(next);
  }
  return g;
}

Series exp_to_ord(const Series& f) {
  if (f.flavor != Flavor::exponential)
    throw usage_error("exp_to_ord requires an exponential series");
  Series r = f;
  r.flavor = Flavor::ordinary;
  Rat fact = 1;
  for (int n = 1; n <= r.N; ++n) {
    fact *= n;
    r.c[n] = poly_scale(r.c[n], fact);
  }
  return r;
}

Series ord_to_exp(const Series& f) {
  if (f.flavor != Flavor::ordinary)
    throw usage_error("ord_to_exp requires an ordinary series");
  Series r = f;
  r.flavor = Flavor::exponential;
  Rat fact = 1;
  for (int n = 1; n <= r.N; ++n) {
    fact *= n;
    r.c[n] = poly_scale(r.c[n], Rat(1) / fact);
  }
  return r;
}

Series collapse_t(const Series& f) {
  Series r = f;
  for (Poly& p : r.c) {
    Rat v = poly_at_one(p);
    p = v == 0 ? Poly{} : Poly{v};
  }
  return r;
}

bool t_free(const Series& f) {
  for (const Poly& p : f.c)
    if (p.size() > 1) return false;
  return true;
}

std::vector<Int> dims(const Series& f) {
  std::vector<Int> out;
  Int fact = 1;
  for (int n = 1; n <= f.N; ++n) {
    fact *= n;
    Rat v = poly_at_one(f.c[n]);
    if (f.flavor == Flavor::exponential) v *= Rat(fact);
    v.canonicalize();
    if (v.get_den() != 1 || v < 0)
      throw usage_error("dimension at arity " + std::to_string(n) +
                        " is not a non-negative integer: " + rat_str(v));
    out.push_back(v.get_num());
  }
  return out;
}

std::vector<Poly> dims_weighted(const Series& f) {
  std::vector<Poly> out;
  Int fact = 1;
  for (int n = 1; n <= f.N; ++n) {
    fact *= n;
    Poly p = f.c[n];
    if (f.flavor == Flavor::exponential) p = poly_scale(p, Rat(fact));
    for (const Rat& coef : p) {
      Rat v = coef;
      v.canonicalize();
      if (v.get_den() != 1 || v < 0)
        throw usage_error("weighted dimension at arity " + std::to_string(n) +
                          " is not a non-negative integer");
    }
    out.push_back(p);
  }
  return out;
}

std::string series_json(const Series& f) {
  nlohmann::json j;
  j["flavor"] = f.flavor == Flavor::ordinary ? "ordinary" : "exponential";
  j["N"] = f.N;
  j["coefficients"] = nlohmann::json::array();
  for (const Poly& p : f.c) {
    if (p.size() <= 1) {
      j["coefficients"].push_back(rat_str(p.empty() ? Rat(0) : p[0]));
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const Rat& c : p) arr.push_back(rat_str(c));
      j["coefficients"].push_back(arr);
    }
  }
  return j.dump(2);
}

}  // namespace opseries
