#include "ihdg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ihdg/problems.hpp"

namespace ihdg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string where(int line, const std::string& key) {
  return "line " + std::to_string(line) + " (" + key + ")";
}

double parse_double(const std::string& v, int line, const std::string& key) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(where(line, key) + ": cannot parse '" + v + "' as a number");
  }
  return out;
}

int parse_int(const std::string& v, int line, const std::string& key) {
  int out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(where(line, key) + ": cannot parse '" + v + "' as an integer");
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  static const std::set<std::string> known = {
      "problem", "mesh",       "k",             "scheme",    "dt",     "T",      "tau",
      "newton_tol", "newton_max", "linear_solver", "snapshots", "output", "levels", "dt_rule"};
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(std::string_view(raw).substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key=value, got '" + content + "'");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (!known.count(key)) {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
    if (seen.count(key)) {
      throw ConfigError(where(line, key) + ": duplicate key (first set on line " +
                        std::to_string(seen[key]) + ")");
    }
    seen[key] = line;

    if (key == "problem") {
      const auto names = problem_names();
      if (std::find(names.begin(), names.end(), value) == names.end()) {
        throw ConfigError(where(line, key) + ": unknown problem '" + value + "'");
      }
      cfg.problem = value;
    } else if (key == "mesh") {
      MeshSource src;
      if (value.rfind("structured:", 0) == 0) {
        src.structured_n = parse_int(value.substr(11), line, key);
        if (src.structured_n < 1) throw ConfigError(where(line, key) + ": n must be >= 1");
      } else if (value.rfind("file:", 0) == 0 && value.size() > 5) {
        src.path = value.substr(5);
      } else {
        throw ConfigError(where(line, key) + ": expected structured:N or file:PATH, got '" + value + "'");
      }
      cfg.mesh = src;
    } else if (key == "k") {
      cfg.k = parse_int(value, line, key);
      if (cfg.k < 0 || cfg.k > kMaxDegree) {
        throw ConfigError(where(line, key) + ": degree must be in 0.." + std::to_string(kMaxDegree));
      }
    } else if (key == "scheme") {
      if (value == "backward_euler") cfg.scheme = TimeScheme::BackwardEuler;
      else if (value == "crank_nicolson") cfg.scheme = TimeScheme::CrankNicolson;
      else throw ConfigError(where(line, key) + ": expected backward_euler or crank_nicolson");
    } else if (key == "dt") {
      cfg.dt = parse_double(value, line, key);
      if (!(*cfg.dt > 0.0)) throw ConfigError(where(line, key) + ": dt must be positive");
    } else if (key == "T") {
      cfg.final_time = parse_double(value, line, key);
      if (!(cfg.final_time > 0.0)) throw ConfigError(where(line, key) + ": T must be positive");
    } else if (key == "tau") {
      cfg.tau = parse_double(value, line, key);
      if (!(cfg.tau > 0.0)) throw ConfigError(where(line, key) + ": tau must be positive");
    } else if (key == "newton_tol") {
      cfg.newton_tolerance = parse_double(value, line, key);
      if (!(cfg.newton_tolerance > 0.0)) throw ConfigError(where(line, key) + ": must be positive");
    } else if (key == "newton_max") {
      cfg.newton_max_iterations = parse_int(value, line, key);
      if (cfg.newton_max_iterations < 1) throw ConfigError(where(line, key) + ": must be >= 1");
    } else if (key == "linear_solver") {
      if (value == "sparse") cfg.linear_solver = LinearSolverKind::SparseDirect;
      else if (value == "dense") cfg.linear_solver = LinearSolverKind::Dense;
      else throw ConfigError(where(line, key) + ": expected sparse or dense");
    } else if (key == "snapshots") {
      for (const auto& item : split_list(value)) {
        const double t = parse_double(item, line, key);
        if (t < 0.0) throw ConfigError(where(line, key) + ": snapshot times must be non-negative");
        cfg.snapshots.push_back(t);
      }
    } else if (key == "output") {
      if (value.empty()) throw ConfigError(where(line, key) + ": empty output directory");
      cfg.output = value;
    } else if (key == "levels") {
      for (const auto& item : split_list(value)) {
        const int n = parse_int(item, line, key);
        if (n < 1) throw ConfigError(where(line, key) + ": levels must be >= 1");
        cfg.levels.push_back(n);
      }
      if (cfg.levels.empty()) throw ConfigError(where(line, key) + ": empty level list");
    } else if (key == "dt_rule") {
      if (value == "h") cfg.dt_rule = TimeStepRule::Linear;
      else if (value == "h2") cfg.dt_rule = TimeStepRule::Quadratic;
      else throw ConfigError(where(line, key) + ": expected h or h2");
    }
  }
  for (const char* required : {"problem", "k", "T"}) {
    if (!seen.count(required)) throw ConfigError(std::string("missing required key '") + required + "'");
  }
  const bool runnable = cfg.mesh && cfg.dt;
  const bool convergible = !cfg.levels.empty() && cfg.dt_rule;
  if (!runnable && !convergible) {
    throw ConfigError(!seen.count("mesh") ? "missing required key 'mesh'" : "missing required key 'dt'");
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void RunConfig::validate_for_run() const {
  if (!mesh) throw ConfigError("missing required key 'mesh'");
  if (!dt) throw ConfigError("missing required key 'dt'");
  if (final_time < *dt) throw ConfigError("T must be at least dt");
  for (double t : snapshots) {
    if (t > final_time) {
      throw ConfigError("snapshots: time " + fmt(t) + " lies beyond T = " + fmt(final_time));
    }
  }
}

void RunConfig::validate_for_converge() const {
  if (levels.empty()) throw ConfigError("missing required key 'levels'");
  if (!dt_rule) throw ConfigError("missing required key 'dt_rule'");
  if (!make_problem(problem).exact) {
    throw ConfigError("problem '" + problem + "' has no exact solution to measure errors against");
  }
}

SolverConfig RunConfig::solver_config() const {
  SolverConfig s;
  s.dt = dt.value_or(0.0);
  s.final_time = final_time;
  s.scheme = scheme;
  s.newton_tolerance = newton_tolerance;
  s.newton_max_iterations = newton_max_iterations;
  s.linear_solver = linear_solver;
  s.tau = tau;
  return s;
}

ConvergenceOptions RunConfig::convergence_options() const {
  ConvergenceOptions o;
  o.k = k;
  o.levels = levels;
  o.scheme = scheme;
  o.dt_rule = dt_rule.value_or(TimeStepRule::Linear);
  o.final_time = final_time;
  o.tau = tau;
  o.newton_tolerance = newton_tolerance;
  o.newton_max_iterations = newton_max_iterations;
  o.linear_solver = linear_solver;
  return o;
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  out << "problem = " << c.problem << '\n';
  if (c.mesh) {
    out << "mesh = "
        << (c.mesh->structured_n > 0 ? "structured:" + std::to_string(c.mesh->structured_n)
                                     : "file:" + c.mesh->path)
        << '\n';
  }
  out << "k = " << c.k << '\n';
  out << "scheme = " << (c.scheme == TimeScheme::BackwardEuler ? "backward_euler" : "crank_nicolson") << '\n';
  if (c.dt) out << "dt = " << fmt(*c.dt) << '\n';
  out << "T = " << fmt(c.final_time) << '\n';
  out << "tau = " << fmt(c.tau) << '\n';
  out << "newton_tol = " << fmt(c.newton_tolerance) << '\n';
  out << "newton_max = " << c.newton_max_iterations << '\n';
  out << "linear_solver = " << (c.linear_solver == LinearSolverKind::Dense ? "dense" : "sparse") << '\n';
  if (!c.snapshots.empty()) {
    out << "snapshots = ";
    for (std::size_t i = 0; i < c.snapshots.size(); ++i) out << (i ? "," : "") << fmt(c.snapshots[i]);
    out << '\n';
  }
  out << "output = " << c.output << '\n';
  if (!c.levels.empty()) {
    out << "levels = ";
    for (std::size_t i = 0; i < c.levels.size(); ++i) out << (i ? "," : "") << c.levels[i];
    out << '\n';
  }
  if (c.dt_rule) out << "dt_rule = " << (*c.dt_rule == TimeStepRule::Linear ? "h" : "h2") << '\n';
  return out.str();
}

}  // namespace ihdg
