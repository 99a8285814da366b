#include "trajquad/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "trajquad/coulomb.hpp"
#include "trajquad/errors.hpp"
#include "trajquad/excited.hpp"
#include "trajquad/gexpand.hpp"
#include "trajquad/greens.hpp"
#include "trajquad/oracle.hpp"
#include "trajquad/oscpert.hpp"
#include "trajquad/trajectory.hpp"

namespace trajquad::cli {

namespace {

enum class Kind { number, integer, string, int_list, num_list };

struct Param {
  std::string key;
  Kind kind;
  Json def;
  double lo = -1e300, hi = 1e300;
  bool open_lo = false;  // lo itself is excluded
  std::vector<std::string> choices;
  std::string doc;
};

Param num(std::string key, double def, double lo, double hi, bool open_lo, std::string doc) {
  return {std::move(key), Kind::number, def, lo, hi, open_lo, {}, std::move(doc)};
}
Param integer(std::string key, long def, long lo, long hi, std::string doc) {
  return {std::move(key), Kind::integer, def, static_cast<double>(lo), static_cast<double>(hi), false, {},
          std::move(doc)};
}
Param text(std::string key, std::string def, std::vector<std::string> choices, std::string doc) {
  return {std::move(key), Kind::string, def, 0, 0, false, std::move(choices), std::move(doc)};
}

Param g_param() { return num("g", 1.0, 0.0, 1e6, true, "coupling g > 0"); }
Param eps_param() { return num("eps", 0.0, -1e6, 1e6, false, "perturbation strength"); }

const std::map<std::string, std::vector<Param>>& schemas() {
  static const std::map<std::string, std::vector<Param>> s = [] {
    std::map<std::string, std::vector<Param>> m;
    m["gexpand"] = {text("potential", "1/2*x^2 + 1/10*x^4", {}, "v(x), polynomial with a quadratic zero at origin"),
                    num("origin", 0.0, -1e6, 1e6, false, "location of the minimum"),
                    num("extent", 2.0, 0.0, 1e4, true, "trajectory length from the origin"),
                    integer("points", 401, 41, 2000001, "grid nodes"),
                    integer("direction", 1, -1, 1, "+1 or -1"),
                    integer("order", 3, 0, 3, "highest k"),
                    g_param(),
                    text("table", "energies", {"energies", "terms", "grid"}, "what to tabulate")};
    m["perturb"] = {text("parity", "even", {"even", "odd"}, "x^(2p) or x^(2p+1) perturbation"),
                    integer("p", 2, 0, 20, "perturbation index"),
                    integer("order", 4, 1, 40, "highest power of eps"),
                    g_param(),
                    eps_param()};
    m["coulomb"] = {text("potential", "r^2", {}, "U(r), polynomial vanishing at r = 0"),
                    integer("order", 8, 0, 40, "highest n"), g_param(), eps_param()};
    m["stark"] = {integer("order", 12, 2, 40, "highest n"), g_param(), eps_param()};
    m["greens-check"] = {g_param(),
                         num("half_width", 0.0, 0.0, 1e4, false, "grid half-width; 0 picks max(6/sqrt(g), 6)"),
                         integer("points", 4001, 17, 2000001, "odd node count")};
    m["excited"] = {Param{"freqs", Kind::num_list, Json::array({1}), 0.0, 1e6, true, {}, "harmonic frequencies"},
                    Param{"occupation", Kind::int_list, Json::array({1}), 0, 1000, false, {}, "quanta per mode"},
                    text("potential", "", {}, "1-D v(x); when set, E1 is extracted numerically per level"),
                    Param{"levels", Kind::int_list, Json::array({1, 2, 3}), 1, 50, false, {}, "levels for the 1-D run"},
                    num("extent", 1.0, 0.0, 1e4, true, "trajectory length for the 1-D run"),
                    integer("points", 2001, 41, 2000001, "grid nodes for the 1-D run"),
                    g_param()};
    m["oracle"] = {text("mode", "line", {"line", "radial"}, "V(x) on [a, b] or the radial Coulomb problem"),
                   text("potential", "1/2*x^2", {}, "V(x) for line, U(r) for radial"),
                   num("a", -8.0, -1e6, 1e6, false, "left wall (line)"),
                   num("b", 8.0, -1e6, 1e6, false, "right wall (line)"),
                   integer("n", 400, 200, 2000000, "interior points of the coarse grid"),
                   integer("levels", 3, 1, 100, "eigenvalues to report (line)"),
                   g_param(),
                   eps_param(),
                   num("r_max", 40.0, 0.0, 1e6, true, "outer wall (radial)")};
    for (auto& [name, list] : m) {
      list.push_back(text("format", "csv", {"csv", "json"}, "output format"));
      list.push_back(text("out", "", {}, "output path; empty writes to stdout"));
    }
    return m;
  }();
  return s;
}

const std::vector<Param>& schema(const std::string& command) {
  auto it = schemas().find(command);
  if (it == schemas().end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

void check_range(const Param& p, double v) {
  bool low = p.open_lo ? v > p.lo : v >= p.lo;
  if (!std::isfinite(v) || !low || v > p.hi) {
    std::ostringstream msg;
    msg << p.key << " = " << v << " outside " << (p.open_lo ? "(" : "[") << p.lo << ", " << p.hi << "]";
    throw ConfigError(msg.str());
  }
}

Json validate(const Param& p, const Json& v) {
  switch (p.kind) {
    case Kind::number:
      if (!v.is_number()) throw ConfigError(p.key + " must be a number");
      check_range(p, v.get<double>());
      return v;
    case Kind::integer:
      if (!v.is_number_integer()) throw ConfigError(p.key + " must be an integer");
      check_range(p, static_cast<double>(v.get<long>()));
      return v;
    case Kind::string:
      if (!v.is_string()) throw ConfigError(p.key + " must be a string");
      if (!p.choices.empty() &&
          std::find(p.choices.begin(), p.choices.end(), v.get<std::string>()) == p.choices.end())
        throw ConfigError(p.key + " must be one of its listed choices, got '" + v.get<std::string>() + "'");
      return v;
    case Kind::int_list:
    case Kind::num_list:
      if (!v.is_array() || v.empty()) throw ConfigError(p.key + " must be a non-empty list");
      for (const auto& e : v) {
        if (p.kind == Kind::int_list ? !e.is_number_integer() : !e.is_number())
          throw ConfigError(p.key + " entries must be " + (p.kind == Kind::int_list ? "integers" : "numbers"));
        check_range(p, e.get<double>());
      }
      return v;
  }
  return v;
}

// Exact value of a JSON number through its shortest decimal rendering.
Rational exact(const Json& v) { return Rational::parse(v.dump()); }

struct Output {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  Json extras = Json::object();
  int status = 0;
};

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void emit(const RunConfig& cfg, const Output& o, std::ostream& os) {
  if (cfg.params.at("format") == "json") {
    Json doc;
    doc["trajquad_version"] = TRAJQUAD_VERSION;
    doc["config"] = cfg.to_json();
    Json rows = Json::array();
    for (const auto& r : o.rows) {
      Json row;
      for (std::size_t i = 0; i < o.columns.size(); ++i) row[o.columns[i]] = r[i];
      rows.push_back(row);
    }
    doc["results"] = rows;
    for (const auto& [k, v] : o.extras.items()) doc[k] = v;
    os << doc.dump(2) << '\n';
    return;
  }
  os << "# trajquad " << TRAJQUAD_VERSION << '\n';
  os << "# config: " << cfg.to_json().dump() << '\n';
  for (const auto& [k, v] : o.extras.items()) os << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  for (std::size_t i = 0; i < o.columns.size(); ++i) os << (i ? "," : "") << o.columns[i];
  os << '\n';
  for (const auto& r : o.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << '\n';
  }
}

Output run_gexpand(const Json& p) {
  auto pot = Potential1D::polynomial(MultiPoly::parse(p["potential"].get<std::string>()), p["origin"].get<double>());
  int dir = p["direction"].get<int>();
  if (dir == 0) throw ConfigError("direction must be +1 or -1");
  auto grid = build_grid(pot, p["extent"].get<double>(), p["points"].get<std::size_t>(), dir);
  const int order = p["order"].get<int>();
  auto sol = hierarchy(grid, order);
  Output o;
  const std::string table = p["table"];
  if (table == "grid") {
    o.columns = {"x", "s0", "grad2", "lap_s0", "time"};
    for (std::size_t i = 0; i < grid.size(); ++i)
      o.rows.push_back({grid.nodes[i], grid.s0[i], grid.grad2[i], grid.lap_s0[i],
                        std::isfinite(grid.time[i]) ? Json(grid.time[i]) : Json("inf")});
  } else if (table == "terms") {
    o.columns = {"x"};
    for (int k = 1; k <= order; ++k) o.columns.push_back("S_" + std::to_string(k));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<Json> row{grid.nodes[i]};
      for (int k = 1; k <= order; ++k) {
        double v = sol.s(k)[i];
        row.push_back(std::isfinite(v) ? Json(v) : Json(nullptr));
      }
      o.rows.push_back(row);
    }
  } else {
    o.columns = {"k", "E_k"};
    for (std::size_t k = 0; k < sol.e_terms.size(); ++k) o.rows.push_back({k, sol.e_terms[k]});
  }
  o.extras["assembled_energy"] = assemble_energy(sol, p["g"].get<double>());
  Json res = Json::array();
  for (int k = 1; k <= order; ++k) {
    double worst = 0.0;
    for (double v : pde_residual(grid, sol, k)) worst = std::max(worst, std::abs(v));
    res.push_back(worst);
  }
  o.extras["pde_residual_max"] = res;
  if (!grid.kink_positions.empty()) o.extras["first_kink"] = grid.kink_positions.front();
  return o;
}

Output run_perturb(const Json& p) {
  const bool even = p["parity"] == "even";
  const int pw = p["p"].get<int>(), order = p["order"].get<int>();
  auto ser = even ? solve_even(pw, order) : solve_odd(pw, order);
  const Rational g = exact(p["g"]), eps = exact(p["eps"]);
  const Rational ghat = Rational(1) / g;
  Output o;
  o.columns = {"k", "delta", "delta_at_g", "delta_decimal"};
  Rational shift(0);
  for (int k = 1; k <= order; ++k) {
    const auto& d = ser.delta[static_cast<std::size_t>(k - 1)];
    Rational v = d.substitute(sym::ghat, ghat).constant_term();
    shift += eps.pow(k) * v;
    o.rows.push_back({k, d.to_string(), v.to_string(), v.to_double()});
  }
  o.extras["shift_exact"] = shift.to_string();
  o.extras["shift"] = shift.to_double();
  return o;
}

Output coulomb_output(const CoulombSolution& sol, const Json& p) {
  Output o;
  o.columns = {"quantity", "n", "expression"};
  for (int n = 0; n <= sol.order; ++n)
    o.rows.push_back({"S", n, sol.s_terms[static_cast<std::size_t>(n)].to_string()});
  for (int n = 0; n <= sol.order; ++n)
    o.rows.push_back({"E", n, sol.e_terms[static_cast<std::size_t>(n)].to_string()});
  MultiPoly e = assembled_energy(sol, sol.order);
  o.extras["assembled_energy"] = e.to_string();
  Rational v = e.substitute(sym::ghat, Rational(1) / exact(p["g"])).substitute(sym::eps, exact(p["eps"])).constant_term();
  o.extras["energy_exact"] = v.to_string();
  o.extras["energy"] = v.to_double();
  return o;
}

Output run_coulomb(const Json& p) {
  return coulomb_output(solve_isotropic(MultiPoly::parse(p["potential"].get<std::string>()), p["order"]), p);
}

Output run_stark(const Json& p) { return coulomb_output(solve_stark(p["order"]), p); }

Output run_greens(const Json& p) {
  const double g = p["g"];
  double L = p["half_width"];
  if (L == 0.0) L = default_half_width(g);
  auto reports = run_identity_checks(g, L, p["points"].get<std::size_t>());
  Output o;
  o.columns = {"identity", "grid_size", "max_residual", "tolerance", "passed"};
  for (const auto& r : reports) {
    o.rows.push_back({r.identity, r.grid_size, r.max_residual, r.tolerance, r.passed()});
    if (!r.passed()) o.status = 3;
  }
  o.extras["half_width"] = L;
  return o;
}

std::string occupation_label(const std::vector<int>& occ) {
  std::string s;
  for (std::size_t i = 0; i < occ.size(); ++i) s += (i ? " " : "") + std::to_string(occ[i]);
  return s;
}

Output run_excited(const Json& p) {
  Output o;
  const std::string potential = p["potential"];
  if (potential.empty()) {
    ExcitedSpec spec;
    for (const auto& f : p["freqs"]) spec.freqs.push_back(exact(f));
    spec.occupation = p["occupation"].get<std::vector<int>>();
    auto lead = chi0_e0(spec);
    auto multiplet = degenerate_multiplet(spec);
    o.columns = {"occupation", "E0", "E1", "chi0", "chi1", "multiplet_size"};
    o.rows.push_back({occupation_label(spec.occupation), lead.e0.to_string(), "0", lead.chi0.to_string(),
                      chi1_harmonic(spec).to_string(), multiplet.size()});
    Json members = Json::array();
    for (const auto& m : multiplet) members.push_back(occupation_label(m));
    o.extras["multiplet"] = members;
    return o;
  }
  auto pot = Potential1D::polynomial(MultiPoly::parse(potential));
  auto grid = build_grid(pot, p["extent"].get<double>(), p["points"].get<std::size_t>(), 1);
  auto sol = hierarchy(grid, 1);
  const double nu = grid.lap_s0.front(), g = p["g"];
  o.columns = {"occupation", "E0", "E1", "gap_at_g"};
  for (int n : p["levels"].get<std::vector<int>>()) {
    double e1 = excited_e1_numeric(grid, sol.s(1), n);
    o.rows.push_back({n, n * nu, e1, g * n * nu + e1});
  }
  return o;
}

Output run_oracle(const Json& p) {
  const MultiPoly pot = MultiPoly::parse(p["potential"].get<std::string>());
  const std::size_t n = p["n"];
  EigenResult r;
  if (p["mode"] == "line") {
    for (const auto& v : pot.variables())
      if (pot.has_variable(v) && v != sym::x) throw VariableMismatch("line oracle potential must depend on x only");
    if (!(p["a"].get<double>() < p["b"].get<double>())) throw ConfigError("need a < b");
    r = solve_1d([&](double x) { return pot.evaluate({{sym::x, x}}); }, p["a"], p["b"], n, p["levels"]);
  } else {
    for (const auto& v : pot.variables())
      if (pot.has_variable(v) && v != sym::r) throw VariableMismatch("radial oracle potential must depend on r only");
    r = solve_radial(p["g"], [&](double x) { return pot.evaluate({{sym::r, x}}); }, p["eps"], p["r_max"], n);
  }
  Output o;
  o.columns = {"a", "b", "points", "k", "eigenvalue", "error_estimate"};
  for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
    o.rows.push_back({r.a, r.b, r.points, k, r.eigenvalues[k], r.convergence[k]});
  return o;
}

}  // namespace

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  for (const auto& [k, v] : params.items()) j[k] = v;
  return j;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"gexpand", "perturb", "coulomb", "stark",
                                             "greens-check", "excited", "oracle"};
  return c;
}

RunConfig resolve(const Json& raw) {
  if (!raw.is_object()) throw ConfigError("config must be a JSON object");
  if (!raw.contains("command") || !raw["command"].is_string()) throw ConfigError("config needs a \"command\" string");
  RunConfig cfg;
  cfg.command = raw["command"];
  const auto& sch = schema(cfg.command);
  for (const auto& [k, v] : raw.items()) {
    if (k == "command") continue;
    if (std::none_of(sch.begin(), sch.end(), [&](const Param& p) { return p.key == k; }))
      throw ConfigError("unknown key '" + k + "' for command " + cfg.command);
  }
  for (const auto& p : sch) cfg.params[p.key] = validate(p, raw.contains(p.key) ? raw[p.key] : p.def);
  return cfg;
}

RunConfig parse_echo(const std::string& document) {
  auto first = document.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && document[first] == '{') return resolve(Json::parse(document).at("config"));
  const std::string tag = "# config: ";
  auto at = document.find(tag);
  if (at == std::string::npos) throw ConfigError("document carries no config echo");
  auto end = document.find('\n', at);
  return resolve(Json::parse(document.substr(at + tag.size(), end - at - tag.size())));
}

int run(const RunConfig& cfg, std::ostream& out) {
  const Json& p = cfg.params;
  Output o;
  if (cfg.command == "gexpand") o = run_gexpand(p);
  else if (cfg.command == "perturb") o = run_perturb(p);
  else if (cfg.command == "coulomb") o = run_coulomb(p);
  else if (cfg.command == "stark") o = run_stark(p);
  else if (cfg.command == "greens-check") o = run_greens(p);
  else if (cfg.command == "excited") o = run_excited(p);
  else if (cfg.command == "oracle") o = run_oracle(p);
  else throw ConfigError("unknown command '" + cfg.command + "'");

  const std::string path = p["out"];
  if (path.empty()) {
    emit(cfg, o, out);
  } else {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    emit(cfg, o, f);
  }
  return o.status;
}

std::string help_text() {
  std::ostringstream os;
  os << "Command keys (config file, explicit flags, or --set key=value):\n";
  for (const auto& c : commands()) {
    os << "  " << c << '\n';
    for (const auto& p : schema(c)) {
      if (p.key == "format" || p.key == "out") continue;
      os << "    " << p.key << " = " << p.def.dump();
      if (!p.choices.empty()) {
        os << " {";
        for (std::size_t i = 0; i < p.choices.size(); ++i) os << (i ? "," : "") << p.choices[i];
        os << '}';
      }
      os << "  " << p.doc << '\n';
    }
  }
  os << "Exit codes: 0 ok, 1 config error, 2 method breakdown, 3 tolerance failure.\n";
  return os.str();
}

namespace {

// Flag text to JSON: numbers and lists parse as JSON, anything else is a string.
Json flag_value(const std::string& s) {
  try {
    Json j = Json::parse(s);
    if (j.is_number() || j.is_array() || j.is_boolean()) return j;
  } catch (const Json::parse_error&) {
  }
  return s;
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"trajquad: trajectory quadrature series and checks"};
  app.footer(help_text());
  std::string config_path, command;
  std::map<std::string, std::string> flags;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--command", command, "gexpand|perturb|coulomb|stark|greens-check|excited|oracle");
  const std::vector<std::pair<std::string, std::string>> direct = {
      {"g", "coupling g"},         {"eps", "perturbation strength"}, {"order", "series order"},
      {"out", "output path"},      {"format", "csv or json"},        {"potential", "polynomial potential"},
      {"parity", "even or odd"},   {"p", "perturbation index"},      {"points", "grid nodes"},
      {"n", "oracle grid points"}, {"extent", "trajectory length"},  {"levels", "levels (count or list)"},
      {"mode", "oracle mode"},     {"table", "gexpand table"},       {"occupation", "occupation list"},
      {"freqs", "frequency list"}};
  for (const auto& [key, doc] : direct) app.add_option("--" + key, flags[key], doc);
  app.add_option("--set", sets, "key=value for any command key");
  bool version = false;
  app.add_flag("--version", version, "print the library version");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (version) {
    out << "trajquad " << TRAJQUAD_VERSION << '\n';
    return 0;
  }
  try {
    Json raw = Json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read config '" + config_path + "'");
      raw = Json::parse(f);
      if (!raw.is_object()) throw ConfigError("config must be a JSON object");
    }
    if (!command.empty()) raw["command"] = command;
    for (const auto& [key, value] : flags)
      if (app.count("--" + key)) raw[key] = flag_value(value);
    for (const auto& s : sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
      raw[s.substr(0, eq)] = flag_value(s.substr(eq + 1));
    }
    return run(resolve(raw), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const Json::exception& e) {
    err << "error: ConfigError: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace trajquad::cli
