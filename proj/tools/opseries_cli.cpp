// Command-line front end: dims / solve / guess / check / crosscheck over a
// presentation file or a builtin name.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "opseries/analysis.hpp"
#include "opseries/enumerate.hpp"
#include "opseries/eqsys.hpp"
#include "opseries/presentation.hpp"

using namespace opseries;

namespace {

Presentation load_presentation(const std::string& input) {
  if (std::filesystem::exists(input)) {
    std::ifstream in(input);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
  }
  return builtin_presentation(input);
}

EqSystem build_system(const Presentation& p, const std::string& which) {
  if (which == "stump")
    return p.kind == OperadKind::nonsym ? build_stump_system_nonsym(p)
                                        : build_stump_system_shuffle(p);
  if (which == "incl-excl") return build_incl_excl_system_nonsym(p);
  if (which == "symmetric") return build_symmetric_regular_system(p);
  throw usage_error("unknown system '" + which + "' (stump, incl-excl, symmetric)");
}

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw usage_error("cannot write to '" + out_path + "'");
    out << text;
  }
}

std::string join_dims(const std::vector<Int>& d) {
  std::string out;
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) out += ",";
    out += d[i].get_str();
  }
  return out;
}

std::string series_text(const Series& f) {
  std::string out;
  for (int n = 1; n <= f.N; ++n) {
    const Poly& p = f.c[n];
    if (poly_is_zero(p)) continue;
    std::string c = p.size() <= 1 ? rat_str(p[0]) : "(" + poly_str(p, "t") + ")";
    if (!out.empty()) out += " + ";
    if (c == "1")
      out += "";
    else
      out += c + "*";
    out += "z";
    if (n > 1) out += "^" + std::to_string(n);
  }
  return out.empty() ? "0" : out;
}

nlohmann::json dims_json_array(const std::vector<Int>& d) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Int& v : d) arr.push_back(v.get_str());
  return arr;
}

struct SolveForDims {
  std::vector<Int> plain;
  std::vector<Poly> weighted;
};

SolveForDims system_dims(const Presentation& p, const std::string& system,
                         int n, bool weighted) {
  EqSystem s = build_system(p, system);
  Solution sol = solve_coefficients(s, n, weighted);
  SolveForDims out;
  if (weighted) {
    out.weighted = dims_weighted(sol.total);
    for (const Poly& q : out.weighted) {
      Rat v = poly_at_one(q);
      v.canonicalize();
      out.plain.push_back(v.get_num());
    }
  } else {
    out.plain = dims(collapse_t(sol.total));
  }
  return out;
}

int cmd_dims(const std::string& input, int n, bool oracle, bool have_system,
             const std::string& system, bool weighted, long long limit,
             bool json, const std::string& out) {
  if (oracle && have_system)
    throw usage_error("choose either --oracle or --system");
  Presentation p = load_presentation(input);
  std::vector<Int> d;
  std::vector<Poly> w;
  if (oracle) {
    EnumOptions opt;
    opt.max_candidates = limit;
    if (weighted) {
      w = basis_dims_weighted(p, n, opt);
      for (const Poly& q : w) {
        Rat v = poly_at_one(q);
        v.canonicalize();
        d.push_back(v.get_num());
      }
    } else {
      d = basis_dims(p, n, opt);
    }
  } else {
    SolveForDims r = system_dims(p, system, n, weighted);
    d = std::move(r.plain);
    w = std::move(r.weighted);
  }
  if (json) {
    nlohmann::json j;
    j["dims"] = dims_json_array(d);
    if (weighted) {
      nlohmann::json jw = nlohmann::json::array();
      for (const Poly& q : w) {
        nlohmann::json row = nlohmann::json::array();
        for (const Rat& c : q) row.push_back(rat_str(c));
        jw.push_back(std::move(row));
      }
      j["weighted"] = std::move(jw);
    }
    write_out(j.dump(2), out);
  } else if (weighted) {
    std::string text;
    for (size_t i = 0; i < w.size(); ++i)
      text += std::to_string(i + 1) + ": " + poly_str(w[i], "t") + "\n";
    write_out(text, out);
  } else {
    write_out(join_dims(d) + "\n", out);
  }
  return 0;
}

int cmd_solve(const std::string& input, int n, const std::string& system,
              const std::string& emit, bool weighted, bool json,
              const std::string& out) {
  Presentation p = load_presentation(input);
  EqSystem s = build_system(p, system);
  Solution sol = solve_coefficients(s, n, weighted);
  Series total = weighted ? sol.total : collapse_t(sol.total);
  if (json || emit == "json") {
    nlohmann::json j;
    j["system"] = nlohmann::json::parse(emit_system(s, "json"));
    j["total"] = nlohmann::json::parse(series_json(total));
    write_out(j.dump(2), out);
    return 0;
  }
  std::string text = emit_system(s, emit, weighted);
  if (emit == "text") {
    text += (s.kind == SystemKind::nonsym_product ? "G" : "E");
    text += std::string("(z) = ") + series_text(total) + " + O(z^" +
            std::to_string(n + 1) + ")\n";
  }
  write_out(text, out);
  return 0;
}

int cmd_guess(const std::string& input, bool algebraic, int max_deg, int deg_y,
              int deg_z, int margin, int n_user, const std::string& system,
              bool json, const std::string& out) {
  Presentation p = load_presentation(input);
  int n = n_user;
  if (n <= 0) n = algebraic ? (deg_y + 1) * (deg_z + 1) + margin - 1
                            : 3 * max_deg + 2;
  EqSystem s = build_system(p, system);
  Solution sol = solve_coefficients(s, n, false);
  Series total = collapse_t(sol.total);
  if (algebraic) {
    auto eq = guess_algebraic(total, deg_y, deg_z, margin);
    if (!eq) {
      std::cout << "no algebraic equation with y-degree <= " << deg_y
                << " and z-degree <= " << deg_z << " matches through z^" << n
                << "\n";
      return 3;
    }
    write_out(json ? algebraic_json(*eq) : algebraic_text(*eq) + "\n", out);
    return 0;
  }
  auto rf = guess_rational(total, max_deg);
  if (!rf) {
    std::cout << "no rational function of degree <= " << max_deg
              << " matches through z^" << n << "\n";
    return 3;
  }
  write_out(json ? rational_json(*rf) : rational_text(*rf) + "\n", out);
  return 0;
}

int cmd_check(const std::string& input, int n, bool json,
              const std::string& out) {
  Presentation p = load_presentation(input);
  nlohmann::json j;
  std::string text;
  j["kind"] = p.kind == OperadKind::nonsym ? "nonsym" : "shuffle";
  text += std::string("kind: ") +
          (p.kind == OperadKind::nonsym ? "nonsym" : "shuffle") + "\n";
  j["generators"] = p.gens.size();
  j["relations"] = p.relations.size();
  text += "generators: " + std::to_string(p.gens.size()) + "\n";
  text += "relations (reduced): " + std::to_string(p.relations.size()) + "\n";
  bool can_build = true;
  std::string system = "stump";
  if (p.kind == OperadKind::shuffle) {
    RegularityReport sh = check_shuffle_regular(p);
    RegularityReport sym = check_symmetric_regular(p);
    j["shuffle_regular"] = sh.regular;
    j["symmetric_regular"] = sym.regular;
    text += std::string("shuffle-regular: ") + (sh.regular ? "yes" : "no");
    if (!sh.regular) text += " (missing " + sh.missing + ")";
    text += "\n";
    text += std::string("symmetric-regular: ") + (sym.regular ? "yes" : "no");
    if (!sym.regular) text += " (missing " + sym.missing + ")";
    text += "\n";
    can_build = sh.regular;
  }
  if (can_build) {
    EqSystem s = build_system(p, system);
    j["depth"] = s.depth;
    j["variables"] = s.vars.size();
    text += "truncation depth: " + std::to_string(s.depth) + "\n";
    text += "system variables: " + std::to_string(s.vars.size()) + "\n";
    Solution sol = solve_coefficients(s, n, false);
    GrowthReport g = classify_growth(s, sol.total);
    j["nonlinear_cycle"] = g.nonlinear_cycle;
    j["expectation"] = g.expectation;
    j["observed"] = g.observed;
    text += std::string("dependence graph: ") + g.expectation + "\n";
    text += "observed: " + g.observed + "\n";
    std::vector<Int> d = dims(collapse_t(sol.total));
    j["dims"] = dims_json_array(d);
    text += "dims: " + join_dims(d) + "\n";
  } else {
    text += "the truncation system requires a shuffle-regular relation set\n";
  }
  write_out(json ? j.dump(2) : text, out);
  return 0;
}

int cmd_crosscheck(const std::string& input, int n_oracle, int n_system,
                   const std::string& system, long long limit, bool json,
                   const std::string& out) {
  Presentation p = load_presentation(input);
  EnumOptions opt;
  opt.max_candidates = limit;
  std::vector<Int> oracle = basis_dims(p, n_oracle, opt);
  SolveForDims sys = system_dims(p, system, n_system, false);
  int upto = std::min(n_oracle, n_system);
  bool ok = true;
  int bad = -1;
  for (int i = 0; i < upto; ++i)
    if (oracle[i] != sys.plain[i]) {
      ok = false;
      bad = i + 1;
      break;
    }
  if (json) {
    nlohmann::json j;
    j["oracle"] = dims_json_array(oracle);
    j["system"] = dims_json_array(sys.plain);
    j["agree"] = ok;
    if (!ok) j["first_mismatch"] = bad;
    write_out(j.dump(2), out);
  } else {
    std::string text = "oracle:  " + join_dims(oracle) + "\n" +
                       "system:  " + join_dims(sys.plain) + "\n";
    if (ok)
      text += "agree through arity " + std::to_string(upto) + "\n";
    else
      text += "MISMATCH at arity " + std::to_string(bad) + "\n";
    write_out(text, out);
  }
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generating series of finitely presented monomial operads"};
  app.require_subcommand(1);
  std::string out_path;
  bool as_json = false;
  app.add_flag("--json", as_json, "emit JSON");
  app.add_option("--out", out_path, "write the result to a file");

  std::string input, system = "stump", emit = "text";
  int dims_n = 10, solve_n = 12, guess_n = 0, check_n = 12;
  int n_oracle = 6, n_system = 12;
  int max_deg = 8, deg_y = 3, deg_z = 3, margin = 5;
  long long limit = 50'000'000;
  bool oracle = false, weighted = false, algebraic = false, rational = false;

  CLI::App* dims_cmd = app.add_subcommand("dims", "dimension sequence");
  dims_cmd->add_option("input", input, "presentation file or builtin name")
      ->required();
  dims_cmd->add_option("--n", dims_n, "maximal arity")->capture_default_str();
  dims_cmd->add_flag("--oracle", oracle, "enumerate the basis directly");
  CLI::Option* sys_opt =
      dims_cmd->add_option("--system", system, "stump | incl-excl | symmetric");
  dims_cmd->add_flag("--weighted", weighted, "grade by generator weight");
  dims_cmd->add_option("--limit", limit, "enumeration candidate limit");

  CLI::App* solve_cmd = app.add_subcommand("solve", "build and solve a system");
  solve_cmd->add_option("input", input, "presentation file or builtin name")
      ->required();
  solve_cmd->add_option("--n", solve_n, "truncation order")
      ->capture_default_str();
  solve_cmd->add_option("--system", system, "stump | incl-excl | symmetric");
  solve_cmd->add_option("--emit", emit, "text | json | ode");
  solve_cmd->add_flag("--weighted", weighted, "grade by generator weight");

  CLI::App* guess_cmd = app.add_subcommand("guess", "closed-form reconstruction");
  guess_cmd->add_option("input", input, "presentation file or builtin name")
      ->required();
  guess_cmd->add_flag("--rational", rational, "rational reconstruction (default)");
  guess_cmd->add_flag("--algebraic", algebraic, "algebraic equation search");
  guess_cmd->add_option("--max-deg", max_deg, "rational degree bound");
  guess_cmd->add_option("--deg-y", deg_y, "algebraic y-degree bound");
  guess_cmd->add_option("--deg-z", deg_z, "algebraic z-degree bound");
  guess_cmd->add_option("--margin", margin, "certification margin");
  guess_cmd->add_option("--n", guess_n, "truncation order (default from degrees)");
  guess_cmd->add_option("--system", system, "stump | incl-excl | symmetric");

  CLI::App* check_cmd = app.add_subcommand("check", "presentation report");
  check_cmd->add_option("input", input, "presentation file or builtin name")
      ->required();
  check_cmd->add_option("--n", check_n, "truncation order")
      ->capture_default_str();

  CLI::App* cross_cmd =
      app.add_subcommand("crosscheck", "oracle vs. system dimensions");
  cross_cmd->add_option("input", input, "presentation file or builtin name")
      ->required();
  cross_cmd->add_option("--n-oracle", n_oracle, "oracle arity bound");
  cross_cmd->add_option("--n-system", n_system, "system truncation order");
  cross_cmd->add_option("--system", system, "stump | incl-excl | symmetric");
  cross_cmd->add_option("--limit", limit, "enumeration candidate limit");

  try {
    app.parse(argc, argv);
    if (dims_cmd->parsed())
      return cmd_dims(input, dims_n, oracle, sys_opt->count() > 0, system,
                      weighted, limit, as_json, out_path);
    if (solve_cmd->parsed())
      return cmd_solve(input, solve_n, system, emit, weighted, as_json,
                       out_path);
    if (guess_cmd->parsed()) {
      if (rational && algebraic)
        throw usage_error("choose either --rational or --algebraic");
      return cmd_guess(input, algebraic, max_deg, deg_y, deg_z, margin,
                       guess_n, system, as_json, out_path);
    }
    if (check_cmd->parsed())
      return cmd_check(input, check_n, as_json, out_path);
    if (cross_cmd->parsed())
      return cmd_crosscheck(input, n_oracle, n_system, system, limit, as_json,
                            out_path);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const enumeration_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
