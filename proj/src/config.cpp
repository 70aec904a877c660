#include "robin_fsi/config.hpp"

#include "robin_fsi/benchmarks.hpp"
#include "robin_fsi/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace robin_fsi {

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::MmsConvergence: return "mms-convergence";
    case Experiment::BenchmarkChannel: return "benchmark-channel";
    case Experiment::StabilityCheck: return "stability-check";
    case Experiment::IterationCount: return "iteration-count";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::MmsConvergence, Experiment::BenchmarkChannel, Experiment::StabilityCheck,
                       Experiment::IterationCount})
    if (experiment_name(e) == name) return e;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "physics.rho_f",       "physics.mu_f",      "physics.rho_s",          "physics.mu_s",
      "physics.lambda_s",    "physics.gamma",     "scheme.schemes",         "scheme.theta",
      "scheme.alpha",        "scheme.alpha_solid", "scheme.eps",            "scheme.max_subiters",
      "scheme.traction",     "scheme.solid_height", "scheme.radius",        "mesh.nx",
      "mesh.fluid_ny",       "mesh.solid_ny",     "mesh.levels",            "mesh.halve_eps",
      "mesh.clamp_solid_sides", "run.experiment", "run.final_time",         "run.tau",
      "run.steps",           "run.thetas",        "run.blowup_tau",         "run.squared_eta",
      "run.threads",         "run.output"};
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool known(const std::string& key) {
  const auto& k = config_keys();
  return std::find(k.begin(), k.end(), key) != k.end();
}

double to_double(const std::string& key, const std::string& v) {
  const char* s = v.c_str();
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s, &end);
  if (end == s || *end != '\0' || errno == ERANGE || !std::isfinite(x))
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ConfigValues parse_config(std::istream& in, const std::string& source) {
  ConfigValues out;
  std::string line, section;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto c = line.find_first_of("#;");
    if (c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "physics" && section != "scheme" && section != "mesh" && section != "run")
        fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    if (section.empty()) fail("key outside of a section");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known(key)) fail("unknown key '" + key + "'");
    if (value.empty()) fail("empty value for '" + key + "'");
    out[key] = value;
  }
  return out;
}

ConfigValues load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  return parse_config(f, path);
}

void merge_config(ConfigValues& base, const ConfigValues& over) {
  for (const auto& [k, v] : over) base[k] = v;
}

RunConfig resolve_config(Experiment e, const ConfigValues& values) {
  for (const auto& [k, v] : values)
    if (!known(k)) throw ConfigError("unknown key '" + k + "'");

  RunConfig c;
  c.experiment = e;
  const ChannelConfig channel;
  switch (e) {
    case Experiment::MmsConvergence:
      c.schemes = {Scheme::Alg1};
      c.params.alpha = 100.0;
      c.params.eps = 1e-4;
      c.params.tau = 0.02;
      c.nx = 4;
      break;
    case Experiment::BenchmarkChannel:
      c.phys = channel.phys;
      c.schemes = {Scheme::Monolithic, Scheme::Alg1, Scheme::Loose};
      c.alpha_opt = true;
      c.params.eps = 1e-4;
      c.params.tau = channel.tau;
      c.params.solid_height = channel.solid_thickness;
      c.params.radius = channel.fluid_height;
      c.nx = channel.nx;
      c.fluid_ny = channel.fluid_ny;
      c.solid_ny = channel.solid_ny;
      c.final_time = channel.final_time;
      break;
    case Experiment::StabilityCheck:
      c.schemes = {Scheme::Alg1};
      c.params.alpha = 100.0;
      c.params.eps = 1e-6;
      c.params.tau = 0.02;
      c.nx = 8;
      c.steps = 200;
      c.thetas = {0.5, 0.75, 1.0};
      break;
    case Experiment::IterationCount:
      c.schemes = {Scheme::Alg1, Scheme::RobinRobin, Scheme::RobinNeumann};
      c.alpha_opt = true;
      c.params.eps = 1e-3;
      c.params.tau = 1e-2;
      c.nx = 8;
      break;
  }

  auto get = [&](const char* key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };
  auto num = [&](const char* key, double& dst) {
    if (auto v = get(key)) dst = to_double(key, *v);
  };
  auto integer = [&](const char* key, int& dst) {
    if (auto v = get(key)) dst = to_int(key, *v);
  };
  auto flag = [&](const char* key, bool& dst) {
    if (auto v = get(key)) dst = to_bool(key, *v);
  };

  num("physics.rho_f", c.phys.rho_f);
  num("physics.mu_f", c.phys.mu_f);
  num("physics.rho_s", c.phys.rho_s);
  num("physics.mu_s", c.phys.mu_s);
  num("physics.lambda_s", c.phys.lambda_s);
  num("physics.gamma", c.phys.gamma);

  if (auto v = get("scheme.schemes")) {
    c.schemes.clear();
    for (const auto& name : split_list(*v)) {
      try {
        c.schemes.push_back(parse_scheme(name));
      } catch (const InvalidArgument& ex) {
        throw ConfigError(std::string("scheme.schemes: ") + ex.what());
      }
    }
    if (c.schemes.empty()) throw ConfigError("scheme.schemes: empty list");
  }
  num("scheme.theta", c.params.theta);
  if (auto v = get("scheme.alpha")) {
    if (*v == "opt") {
      c.alpha_opt = true;
    } else {
      c.alpha_opt = false;
      c.params.alpha = to_double("scheme.alpha", *v);
    }
  }
  if (auto v = get("scheme.alpha_solid")) c.params.alpha_solid = to_double("scheme.alpha_solid", *v);
  num("scheme.eps", c.params.eps);
  integer("scheme.max_subiters", c.params.max_subiters);
  if (auto v = get("scheme.traction")) {
    if (*v == "variational") c.traction = TractionMode::Variational;
    else if (*v == "direct") c.traction = TractionMode::Direct;
    else throw ConfigError("scheme.traction: expected variational or direct, got '" + *v + "'");
  }
  num("scheme.solid_height", c.params.solid_height);
  num("scheme.radius", c.params.radius);

  integer("mesh.nx", c.nx);
  integer("mesh.fluid_ny", c.fluid_ny);
  integer("mesh.solid_ny", c.solid_ny);
  integer("mesh.levels", c.levels);
  flag("mesh.halve_eps", c.halve_eps);
  flag("mesh.clamp_solid_sides", c.clamp_solid_sides);

  if (auto v = get("run.experiment"))
    if (parse_experiment(*v) != e) throw ConfigError("run.experiment '" + *v + "' conflicts with the subcommand");
  num("run.final_time", c.final_time);
  num("run.tau", c.params.tau);
  integer("run.steps", c.steps);
  if (auto v = get("run.thetas")) {
    c.thetas.clear();
    for (const auto& t : split_list(*v)) c.thetas.push_back(to_double("run.thetas", t));
  }
  num("run.blowup_tau", c.blowup_tau);
  flag("run.squared_eta", c.squared_eta);
  integer("run.threads", c.threads);
  if (auto v = get("run.output")) c.output = *v;

  // Consistency.
  try {
    SchemeParams probe = c.params;
    if (c.alpha_opt) probe.alpha = 1.0;
    probe.validate();
  } catch (const InvalidArgument& ex) {
    throw ConfigError(ex.what());
  }
  if (c.params.max_subiters < 1) throw ConfigError("scheme.max_subiters must be at least 1");
  if (c.params.alpha_solid && *c.params.alpha_solid < 0) throw ConfigError("scheme.alpha_solid must be >= 0");
  if (c.nx < 1 || c.fluid_ny < 0 || c.solid_ny < 0) throw ConfigError("mesh: cell counts must be positive");
  if (c.levels < 1) throw ConfigError("mesh.levels must be at least 1");
  if (!(c.final_time > 0)) throw ConfigError("run.final_time must be positive");
  if (c.steps < 0) throw ConfigError("run.steps must be >= 0");
  if (c.threads < 0) throw ConfigError("run.threads must be >= 0");
  if (!(c.blowup_tau >= 0)) throw ConfigError("run.blowup_tau must be >= 0");
  for (double th : c.thetas)
    if (th < 0.5 || th > 1.0) throw ConfigError("run.thetas: theta must lie in [0.5, 1]");
  if (c.output.empty()) throw ConfigError("run.output must not be empty");
  const auto P = c.phys;
  if (!(P.rho_f > 0 && P.mu_f > 0 && P.rho_s > 0 && P.mu_s > 0 && P.lambda_s > 0 && P.gamma >= 0))
    throw ConfigError("physics: densities and moduli must be positive, gamma >= 0");
  return c;
}

std::string echo_config(const RunConfig& c) {
  auto n = [](double v) { return format_number(v); };
  std::ostringstream os;
  os << "# effective configuration\n";
  os << "[physics]\n";
  os << "rho_f = " << n(c.phys.rho_f) << "\nmu_f = " << n(c.phys.mu_f) << "\nrho_s = " << n(c.phys.rho_s)
     << "\nmu_s = " << n(c.phys.mu_s) << "\nlambda_s = " << n(c.phys.lambda_s) << "\ngamma = " << n(c.phys.gamma)
     << "\n\n[scheme]\nschemes = ";
  for (size_t i = 0; i < c.schemes.size(); ++i) os << (i ? "," : "") << scheme_name(c.schemes[i]);
  os << "\ntheta = " << n(c.params.theta) << "\nalpha = " << (c.alpha_opt ? std::string("opt") : n(c.params.alpha))
     << '\n';
  if (c.params.alpha_solid) os << "alpha_solid = " << n(*c.params.alpha_solid) << '\n';
  os << "eps = " << n(c.params.eps) << "\nmax_subiters = " << c.params.max_subiters
     << "\ntraction = " << (c.traction == TractionMode::Variational ? "variational" : "direct")
     << "\nsolid_height = " << n(c.params.solid_height) << "\nradius = " << n(c.params.radius) << "\n\n[mesh]\n";
  os << "nx = " << c.nx << "\nfluid_ny = " << c.fluid_ny << "\nsolid_ny = " << c.solid_ny << "\nlevels = " << c.levels
     << "\nhalve_eps = " << (c.halve_eps ? "true" : "false")
     << "\nclamp_solid_sides = " << (c.clamp_solid_sides ? "true" : "false") << "\n\n[run]\n";
  os << "experiment = " << experiment_name(c.experiment) << "\nfinal_time = " << n(c.final_time)
     << "\ntau = " << n(c.params.tau) << "\nsteps = " << c.steps << "\nthetas = ";
  for (size_t i = 0; i < c.thetas.size(); ++i) os << (i ? "," : "") << n(c.thetas[i]);
  if (c.thetas.empty()) os << n(c.params.theta);
  os << "\nblowup_tau = " << n(c.blowup_tau) << "\nsquared_eta = " << (c.squared_eta ? "true" : "false")
     << "\nthreads = " << c.threads << "\noutput = " << c.output << '\n';
  return os.str();
}

}  // namespace robin_fsi
