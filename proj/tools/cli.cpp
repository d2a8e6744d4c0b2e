// mapgen: batch front end. JSON is canonical; --emit csv flattens the same
// document into path,value rows.

#include "mapgen/asymptotics.hpp"
#include "mapgen/equilibrium.hpp"
#include "mapgen/genus.hpp"
#include "mapgen/json_io.hpp"
#include "mapgen/motzkin.hpp"
#include "mapgen/numeric.hpp"
#include "mapgen/oracle.hpp"
#include "mapgen/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mapgen;
using nlohmann::json;

namespace {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invariant_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_digits() {
  if (const char* env = std::getenv("MAPGEN_DIGITS")) {
    try {
      int d = std::stoi(env);
      if (d >= 20 && d <= 2000) return static_cast<unsigned>(d);
    } catch (...) {
    }
    throw config_error(std::string("MAPGEN_DIGITS must be an integer in [20, 2000], got '") + env + "'");
  }
  return 50;
}

std::string real_str(const Real& x, unsigned digits) { return str(x, static_cast<int>(digits)); }

json complex_json(const Complex& z, unsigned digits) { return {real_str(z.re, digits), real_str(z.im, digits)}; }

void flatten(const json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path + "/" + it.key(), os);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), os);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    bool quote = v.find_first_of(",\"\n") != std::string::npos;
    if (quote) {
      std::string q = "\"";
      for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      v = q + "\"";
    }
    os << (path.empty() ? "/" : path) << "," << v << "\n";
  }
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw config_error(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw config_error(std::string("empty ") + what);
  return out;
}

json series_table(const PowerSeries& a) { return to_json(a); }

// --- subcommands ----------------------------------------------------------

json run_series(const std::string& name, int order) {
  if (order < 0) throw config_error("--order must be non-negative");
  EquilibriumSeries eq = equilibrium_series(order);
  PowerSeries out;
  if (name == "z0") out = eq.z0;
  else if (name == "u0") out = eq.u0;
  else if (name == "u1") out = u1_from_u0(eq.u0);
  else if (name == "z1") out = z1_closed_in_z0(eq.z0, order);
  else if (name == "u2") out = h2_f1_closed(eq.u0, eq.z0).first;
  else if (name == "log-z0") out = log(eq.z0);
  else if (name == "e0" || name == "e1" || name == "e2") out = eg_closed(name[1] - '0', eq.z0);
  else throw config_error("unknown series '" + name + "'");
  return {{"name", name}, {"series", series_table(out)}};
}

json run_motzkin(int length, int m1, int m2, const std::string& system, int nu) {
  if (!system.empty()) {
    if (nu < 1) throw config_error("--nu must be at least 1");
    auto sys = system == "string" ? difference_string_system(nu)
               : system == "toda" ? toda_system(nu)
                                  : throw config_error("--system must be string or toda");
    auto eq_json = [](const EquationSystem& e) {
      json j;
      j["valence"] = e.valence;
      j["inv_n"] = to_string(e.inv_n);
      if (e.left_derivative)
        j["left_derivative"] = std::string(e.left_derivative->kind == Symbol::a ? "a" : "b2") + "[" +
                               std::to_string(e.left_derivative->offset) + "]";
      for (auto& [p, poly] : e.left) j["left"][std::to_string(p)] = to_json(poly);
      for (auto& [p, poly] : e.right) j["right"][std::to_string(p)] = to_json(poly);
      return j;
    };
    return {{"system", system}, {"nu", nu}, {"first", eq_json(sys.first)}, {"second", eq_json(sys.second)}};
  }
  if (length < 0) throw config_error("--length must be non-negative");
  json j;
  j["length"] = length;
  j["from"] = m1;
  j["to"] = m2;
  j["paths"] = enumerate_motzkin(length, m1, m2).size();
  j["path_count"] = motzkin_count(length, m1, m2).str();
  OperatorPolynomial entry = operator_entry(length, m1, m2);
  j["entry"] = to_json(entry);
  j["entry_text"] = entry.str();
  return j;
}

json run_equilibrium(const std::string& t3_text, int order, int grid, unsigned digits) {
  Precision p(digits);
  json j;
  if (order >= 0) {
    EquilibriumSeries eq = equilibrium_series(order);
    auto [r1, r2] = ideal_residuals(eq.u0, eq.z0);
    j["series"] = {{"u0", series_table(eq.u0)}, {"z0", series_table(eq.z0)}};
    j["series_residuals_zero"] = r1.is_zero() && r2.is_zero();
  }
  if (!t3_text.empty()) {
    Real t3;
    try {
      t3 = Real(t3_text);
    } catch (const std::exception&) {
      throw config_error("bad --t3 '" + t3_text + "'");
    }
    EquilibriumData d = equilibrium_numeric(t3);
    auto [e1, e2] = endpoint_moment_check(t3);
    j["numeric"] = {{"t3", t3_text},
                    {"u0", real_str(d.u0, digits)},
                    {"z0", real_str(d.z0, digits)},
                    {"A", real_str(d.A, digits)},
                    {"B", real_str(d.B, digits)},
                    {"endpoint_residuals", {real_str(e1, 6), real_str(e2, 6)}},
                    {"critical_coupling", real_str(critical_coupling(), digits)}};
    if (grid > 0) {
      json samples = json::array();
      for (int i = 0; i <= grid; ++i) {
        Real lam = d.A + (d.B - d.A) * i / grid;
        samples.push_back({real_str(lam, 20), real_str(equilibrium_density(lam, d).value, 20)});
      }
      j["density"] = samples;
      j["mass"] = real_str(density_mass(d, pow10(-static_cast<int>(digits) / 2)), 30);
    }
  }
  if (j.is_null()) throw config_error("equilibrium needs --order and/or --t3");
  return j;
}

json run_hierarchy(int gmax, int order) {
  if (gmax < 0 || gmax > 3) throw config_error("--gmax must lie in 0..3");
  if (order < 4 * gmax) throw config_error("--order must be at least 4*gmax to reach the resonant constants");
  HierarchySolution sol = solve_hierarchy(gmax, order, oracle_z_source());
  json j;
  for (auto& [g, u] : sol.h.coeffs) j["u"][std::to_string(g)] = series_table(u);
  for (auto& [g, z] : sol.f.coeffs) j["z"][std::to_string(g)] = series_table(z);
  for (auto& c : sol.injected)
    j["injected"].push_back({{"family", std::string(1, c.family)},
                             {"g", c.g},
                             {"order", c.order},
                             {"value", to_string(c.value.value)},
                             {"provenance", c.value.provenance}});
  // residual certificates; the top h coefficient is padded with zero, it
  // only enters the last order through differences
  const int top = 2 * gmax + 1;
  SelfSimilarFamily h = sol.h;
  h.coeffs.emplace(top, PowerSeries("s", sol.h.s_order()));
  auto [sa, sb] = string_residual(h, sol.f, top);
  auto [ta, tb] = toda_residual(h, sol.f, top);
  j["certificates"] = {{"string_subdiagonal", sa.vanishing_through()},
                       {"string_diagonal", sb.vanishing_through()},
                       {"toda_a", ta.vanishing_through()},
                       {"toda_b", tb.vanishing_through()},
                       {"target", top}};
  return j;
}

json run_genus(int gmax, int order) {
  if (gmax < 0 || gmax > 2) throw config_error("--gmax must lie in 0..2 (closed forms and oracle reach genus 2)");
  if (order < 4 * gmax || order % 2) throw config_error("--order must be even and at least 4*gmax");
  GenusTables T = compute_genus_tables(gmax, order, oracle_z_source(), default_free_energy_source(order));
  json j;
  EquilibriumSeries eq = equilibrium_series(order);
  for (auto& e : T.e) {
    json row;
    row["source"] = e.source;
    row["series"] = series_table(e.series);
    for (auto& [k, tag] : e.provenance) row["provenance"][std::to_string(k)] = tag;
    row["matches_closed_form"] = e.series == eg_closed(e.g, eq.z0);
    j["e"][std::to_string(e.g)] = row;
  }
  for (auto& d : T.drivers) {
    json row;
    row["H"] = series_table(d.H);
    for (auto& [k, v] : d.injected) row["injected"][std::to_string(k)] = {to_string(v.value), v.provenance};
    j["drivers"][std::to_string(d.g)] = row;
  }
  json rec = json::array();
  for (int jj = 1; 2 * jj <= order; ++jj) {
    ContourReconciliation r = reconcile_e1(jj);
    rec.push_back({{"j", jj},
                   {"contour", to_string(r.contour)},
                   {"closed_form", to_string(r.closed_form)},
                   {"discrepancy", !r.agree}});
  }
  j["e1_contour_report"] = rec;
  return j;
}

json run_count_maps(const std::string& profile_text, int genus, bool all) {
  std::vector<int> profile = parse_int_list(profile_text, "profile");
  for (int v : profile)
    if (v < 1) throw config_error("valences must be positive");
  if (all) {
    GenusPartition p = count_all_genera(profile);
    json j = json::object();
    for (auto& [g, n] : p.by_genus) j[std::to_string(g)] = std::stoll(n.str());
    return j;
  }
  if (genus < 0) throw config_error("give --genus or --all-genera");
  MapCountRecord r = count_maps(profile, genus);
  return {{"profile", profile}, {"genus", genus}, {"count", std::stoll(r.count.str())}, {"method", r.method}};
}

json run_numeric(const std::string& t3_text, const std::string& N_text, int nmax, unsigned digits,
                 const std::string& compare) {
  if (nmax < 1 || nmax > 64) throw config_error("--nmax must lie in 1..64");
  Precision p(digits);
  Real t3, N;
  try {
    t3 = Real(t3_text);
    N = Real(N_text);
  } catch (const std::exception&) {
    throw config_error("bad --t3 or --bigN");
  }
  if (N <= 0) throw config_error("--bigN must be positive");
  if (abs(t3) >= critical_coupling()) throw config_error("|t3| must stay below the critical coupling");
  json j;
  ContourSpec spec = default_contour(t3, N, digits);
  MomentTable m = contour_moments(spec, 2 * nmax + 2);
  j["contour"] = {{"t3", t3_text},
                  {"N", N_text},
                  {"kink", real_str(spec.kink, 20)},
                  {"angle", real_str(spec.angle, 20)},
                  {"level", m.level},
                  {"nodes", m.nodes},
                  {"doubling_change", real_str(m.doubling_change, 4)},
                  {"end_decay", real_str(m.end_decay, 4)}};
  DualRecurrence d = recurrence_extract(spec, nmax);
  json rows = json::array();
  for (size_t n = 0; n < d.stieltjes.a.size(); ++n)
    rows.push_back({{"n", n}, {"a", complex_json(d.stieltjes.a[n], digits)}, {"b2", complex_json(d.stieltjes.b2[n], digits)}});
  j["recurrence"] = rows;
  j["route_agreement_digits"] = real_str(d.agreement_digits, 6);
  j["max_imag"] = real_str(std::max(d.stieltjes.max_imag, d.hankel.max_imag), 4);
  if (d.hankel.gap) j["hankel_gap"] = *d.hankel.gap;
  if (nmax >= 2) {
    json h = json::array();
    for (auto& r : hirota_check(t3, N, 1, nmax - 1, digits))
      h.push_back({{"n", r.n}, {"lhs", real_str(r.lhs, 30)}, {"rhs", real_str(r.rhs, 30)}, {"residual", real_str(r.residual, 4)}});
    j["hirota"] = h;
  }
  if (!compare.empty()) {
    std::vector<int> ns = parse_int_list(compare, "--compare");
    ComparisonReport rep = asymptotic_comparison(t3, ns, digits);
    json c = json::array();
    for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
      auto& r = rep.rows[i];
      auto& s = rep.rows[i + 1];
      c.push_back({{"n", r.n},
                   {"b_error", real_str(r.b_error, 8)},
                   {"a_error", real_str(r.a_error, 8)},
                   {"b_ratio_to_next", real_str(Real(r.b_error / s.b_error), 8)},
                   {"a_ratio_to_next", real_str(Real(r.a_error / s.a_error), 8)}});
    }
    if (!rep.rows.empty()) {
      auto& r = rep.rows.back();
      c.push_back({{"n", r.n}, {"b_error", real_str(r.b_error, 8)}, {"a_error", real_str(r.a_error, 8)}});
    }
    j["comparison"] = {{"rows", c},
                       {"b_exponent", real_str(rep.b_exponent, 8)},
                       {"a_exponent", real_str(rep.a_exponent, 8)},
                       {"route_agreement_digits", real_str(rep.min_agreement_digits, 6)}};
  }
  return j;
}

json run_verify_cmd(bool skip_numeric, unsigned digits, bool quiet) {
  VerifyOptions opt;
  opt.numeric = !skip_numeric;
  opt.digits = digits;
  if (!quiet)
    opt.on_result = [](const CheckResult& r) {
      std::cerr << (r.passed ? "ok   " : "FAIL ") << r.name << "\n";
    };
  auto results = run_verify(opt);
  json j = json::array();
  const CheckResult* first_bad = nullptr;
  for (auto& r : results) {
    j.push_back({{"criterion", r.criterion}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    if (!r.passed && !first_bad) first_bad = &r;
  }
  if (first_bad) {
    std::cout << j.dump(2) << "\n";
    throw invariant_failure(first_bad->name + ": " + first_bad->detail);
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus expansion of the cubic matrix model: series, hierarchy, map counts, numerics"};
  app.require_subcommand(1);
  app.fallthrough();  // --emit and --output may follow the subcommand
  std::string emit = "json", output;
  app.add_option("--emit", emit, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", output, "write here instead of standard output");

  unsigned digits = 50;
  int order = 12, gmax = 2, length = 3, m1 = 1, m2 = 0, nu = 1, grid = 0, genus = -1, nmax = 8;
  std::string name = "z0", system, t3 = "", bigN = "16", profile, compare;
  bool all_genera = false, skip_numeric = false, quiet = false;

  auto* series = app.add_subcommand("series", "exact series: z0 u0 u1 u2 z1 log-z0 e0 e1 e2");
  series->add_option("--name", name);
  series->add_option("--order", order);

  auto* motzkin = app.add_subcommand("motzkin", "Motzkin operator entries or equation systems");
  motzkin->add_option("--length", length);
  motzkin->add_option("--from", m1);
  motzkin->add_option("--to", m2);
  motzkin->add_option("--system", system, "string or toda");
  motzkin->add_option("--nu", nu);

  auto* equilibrium = app.add_subcommand("equilibrium", "equilibrium series and numerics");
  int eq_order = -1;
  equilibrium->add_option("--order", eq_order);
  equilibrium->add_option("--t3", t3);
  equilibrium->add_option("--grid", grid, "density samples across [A, B]");
  equilibrium->add_option("--digits", digits);

  auto* hierarchy = app.add_subcommand("hierarchy", "u_g, z_g and residual certificates");
  hierarchy->add_option("--gmax", gmax);
  hierarchy->add_option("--order", order);

  auto* genus_cmd = app.add_subcommand("genus", "free-energy coefficients e_g with provenance");
  genus_cmd->add_option("--gmax", gmax);
  genus_cmd->add_option("--order", order);

  auto* count = app.add_subcommand("count-maps", "brute-force map counts");
  count->add_option("--profile", profile)->required();
  count->add_option("--genus", genus);
  count->add_flag("--all-genera", all_genera);

  auto* numeric = app.add_subcommand("numeric", "contour moments, recurrences, Hirota residuals");
  numeric->add_option("--t3", t3);
  numeric->add_option("--bigN", bigN);
  numeric->add_option("--nmax", nmax);
  numeric->add_option("--digits", digits);
  numeric->add_option("--compare", compare, "n list (n = N) for the asymptotic comparison, e.g. 8,12,16,24");

  auto* verify = app.add_subcommand("verify", "run every cross-check; exit 1 on the first mismatch");
  verify->add_flag("--skip-numeric", skip_numeric);
  verify->add_option("--digits", digits);
  verify->add_flag("--quiet", quiet);

  try {
    digits = default_digits();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const char* module = app.get_subcommands().front()->get_name().c_str();
  try {
    if (digits < 20 || digits > 2000) throw config_error("--digits must lie in 20..2000");
    json doc;
    if (series->parsed()) doc = run_series(name, order);
    else if (motzkin->parsed()) doc = run_motzkin(length, m1, m2, system, nu);
    else if (equilibrium->parsed()) doc = run_equilibrium(t3, eq_order, grid, digits);
    else if (hierarchy->parsed()) doc = run_hierarchy(gmax, order);
    else if (genus_cmd->parsed()) doc = run_genus(gmax, order);
    else if (count->parsed()) doc = run_count_maps(profile, genus, all_genera);
    else if (numeric->parsed()) doc = run_numeric(t3.empty() ? "0" : t3, bigN, nmax, digits, compare);
    else if (verify->parsed()) doc = run_verify_cmd(skip_numeric, digits, quiet);

    std::ofstream file;
    if (!output.empty()) {
      file.open(output);
      if (!file) throw config_error("cannot open " + output);
    }
    std::ostream& os = output.empty() ? std::cout : file;
    if (emit == "csv") {
      os << "path,value\n";
      flatten(doc, "", os);
    } else {
      os << doc.dump(2) << "\n";
    }
    return 0;
  } catch (const config_error& e) {
    std::cerr << module << ": config error: " << e.what() << "\n";
    return 2;
  } catch (const invariant_failure& e) {
    std::cerr << "verify: first failing invariant: " << e.what() << "\n";
    return 1;
  } catch (const equilibrium_error& e) {
    std::cerr << module << ": " << e.what() << "\n";
    return 2;
  } catch (const oracle_error& e) {
    std::cerr << module << ": " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << module << " (t3 = " << t3 << ", N = " << bigN << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << module << ": " << e.what() << "\n";
    return 1;
  }
}
