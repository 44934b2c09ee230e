#include "poincare/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "poincare/number_format.hpp"

namespace poincare::config {

using nlohmann::json;

ConfigError::ConfigError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message : "config: " + message),
      line_(line) {}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (line[k] == '"' && (k == 0 || line[k - 1] != '\\')) quoted = !quoted;
    if (line[k] == '#' && !quoted) return std::string(line.substr(0, k));
  }
  return std::string(line);
}

struct Entry {
  json value;
  int line;
};

double number(const std::string& key, const Entry& e) {
  if (!e.value.is_number()) throw ConfigError(key + " must be a number", e.line);
  return e.value.get<double>();
}

int integer(const std::string& key, const Entry& e) {
  if (!e.value.is_number_integer()) throw ConfigError(key + " must be an integer", e.line);
  return e.value.get<int>();
}

}  // namespace

solver::SolveOptions Config::solve_options() const {
  solver::SolveOptions o;
  o.eta = eta;
  o.tol = tol;
  o.max_iter = max_iter;
  o.grid_points = grid_points;
  o.t_max = t_max;
  return o;
}

Config parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(strip_comment(raw));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line);
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", line);
    if (value.empty()) throw ConfigError("missing value for " + key, line);
    if (entries.count(key)) throw ConfigError("duplicate key " + key, line);
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      throw ConfigError("cannot read value for " + key + ": " + value, line);
    }
    entries.emplace(key, Entry{std::move(parsed), line});
  }

  Config c;
  auto take = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  const Entry* n_entry = take("n");
  if (!n_entry) throw ConfigError("missing required key n");
  const int n = integer("n", *n_entry);
  if (n < 2) throw ConfigError("n must be at least 2", n_entry->line);
  c.problem.order = n;

  const Entry* a_entry = take("a");
  if (!a_entry) throw ConfigError("missing required key a");
  if (!a_entry->value.is_array()) throw ConfigError("a must be a list", a_entry->line);
  if (static_cast<int>(a_entry->value.size()) != n) {
    throw ConfigError("a has " + std::to_string(a_entry->value.size()) + " entries, expected " + std::to_string(n),
                      a_entry->line);
  }
  for (const auto& v : a_entry->value) {
    if (!v.is_number()) throw ConfigError("a entries must be numbers", a_entry->line);
    c.problem.a.push_back(v.get<double>());
  }

  const Entry* r_entry = take("r");
  if (!r_entry) throw ConfigError("missing required key r");
  if (!r_entry->value.is_array()) throw ConfigError("r must be a list", r_entry->line);
  if (static_cast<int>(r_entry->value.size()) != n) {
    throw ConfigError("r has " + std::to_string(r_entry->value.size()) + " entries, expected " + std::to_string(n),
                      r_entry->line);
  }
  for (std::size_t k = 0; k < r_entry->value.size(); ++k) {
    const auto& v = r_entry->value[k];
    if (!v.is_string()) throw ConfigError("r entries must be quoted expressions", r_entry->line);
    try {
      c.problem.r.push_back(expr::parse_expression(v.get<std::string>()));
    } catch (const expr::ParseError& e) {
      throw ConfigError("r[" + std::to_string(k) + "]: " + e.what(), r_entry->line);
    }
  }

  std::set<std::string> known{"n", "a", "r"};
  auto real = [&](const std::string& key, double& dst) {
    known.insert(key);
    if (const Entry* e = take(key)) dst = number(key, *e);
  };
  auto whole = [&](const std::string& key, int& dst) {
    known.insert(key);
    if (const Entry* e = take(key)) dst = integer(key, *e);
  };
  real("t0", c.problem.t0);
  real("t_max", c.t_max);
  whole("grid_points", c.grid_points);
  real("tol", c.tol);
  real("eta", c.eta);
  whole("max_iter", c.max_iter);
  real("hypotheses_t_max", c.hypotheses_t_max);
  real("window_lo", c.window_lo);
  real("window_hi", c.window_hi);
  real("diag_t", c.diag_t);
  real("refined_t", c.refined_t);
  real("oracle_t_end", c.oracle_t_end);
  real("oracle_tol", c.oracle_tol);
  known.insert("output");
  if (const Entry* e = take("output")) {
    if (!e->value.is_string()) throw ConfigError("output must be a quoted path", e->line);
    c.output = e->value.get<std::string>();
  }

  for (const auto& [key, e] : entries) {
    if (known.count(key)) continue;
    if (key.rfind("beta_", 0) == 0) {
      int i = 0;
      try {
        std::size_t used = 0;
        i = std::stoi(key.substr(5), &used);
        if (used != key.size() - 5) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ConfigError("bad beta key " + key, e.line);
      }
      if (i < 1 || i > n) throw ConfigError(key + " refers to a root outside 1.." + std::to_string(n), e.line);
      c.beta[i] = number(key, e);
      continue;
    }
    throw ConfigError("unknown key " + key, e.line);
  }

  auto line_of = [&](const std::string& key) { return entries.count(key) ? entries.at(key).line : 0; };
  if (c.grid_points < 16) throw ConfigError("grid_points must be at least 16", line_of("grid_points"));
  if (!(c.tol > 0.0)) throw ConfigError("tol must be positive", line_of("tol"));
  if (!(c.eta > 0.0 && c.eta < 1.0)) throw ConfigError("eta must lie in (0, 1)", line_of("eta"));
  if (c.max_iter < 1) throw ConfigError("max_iter must be positive", line_of("max_iter"));
  if (c.t_max != 0.0 && !(c.t_max > c.problem.t0)) throw ConfigError("t_max must exceed t0", line_of("t_max"));
  if (!(c.window_hi > c.window_lo)) throw ConfigError("window_hi must exceed window_lo", line_of("window_hi"));
  if (!(c.oracle_t_end > c.problem.t0)) throw ConfigError("oracle_t_end must exceed t0", line_of("oracle_t_end"));
  if (!(c.oracle_tol > 0.0)) throw ConfigError("oracle_tol must be positive", line_of("oracle_tol"));
  try {
    c.problem.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_text(const Config& c) {
  std::ostringstream out;
  const auto& p = c.problem;
  out << "n = " << p.order << "\n";
  out << "a = [" << format_list(p.a) << "]\n";
  out << "r = [";
  for (std::size_t k = 0; k < p.r.size(); ++k) out << (k ? ", " : "") << json(p.r[k].to_string()).dump();
  out << "]\n";
  out << "t0 = " << format_double(p.t0) << "\n";
  out << "t_max = " << format_double(c.t_max) << "\n";
  out << "grid_points = " << c.grid_points << "\n";
  out << "tol = " << format_double(c.tol) << "\n";
  out << "eta = " << format_double(c.eta) << "\n";
  out << "max_iter = " << c.max_iter << "\n";
  for (const auto& [i, b] : c.beta) out << "beta_" << i << " = " << format_double(b) << "\n";
  out << "output = " << json(c.output.string()).dump() << "\n";
  out << "hypotheses_t_max = " << format_double(c.hypotheses_t_max) << "\n";
  out << "window_lo = " << format_double(c.window_lo) << "\n";
  out << "window_hi = " << format_double(c.window_hi) << "\n";
  out << "diag_t = " << format_double(c.diag_t) << "\n";
  out << "refined_t = " << format_double(c.refined_t) << "\n";
  out << "oracle_t_end = " << format_double(c.oracle_t_end) << "\n";
  out << "oracle_tol = " << format_double(c.oracle_tol) << "\n";
  return out.str();
}

}  // namespace poincare::config
