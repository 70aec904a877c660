#pragma once

#include "robin_fsi/coupling.hpp"
#include "robin_fsi/problem.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace robin_fsi {

/// Malformed or inconsistent configuration (maps to exit status 2).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class Experiment { MmsConvergence, BenchmarkChannel, StabilityCheck, IterationCount };
std::string_view experiment_name(Experiment e);
Experiment parse_experiment(std::string_view name);

/// Raw "section.key" -> value pairs, later entries overriding earlier ones.
using ConfigValues = std::map<std::string, std::string>;

/// Every accepted "section.key".
const std::vector<std::string>& config_keys();

/// Sectioned key=value text; '#' and ';' start comments. Throws ConfigError with the line number.
ConfigValues parse_config(std::istream& in, const std::string& source = "<config>");
ConfigValues load_config_file(const std::string& path);
/// Copies `over` onto `base`.
void merge_config(ConfigValues& base, const ConfigValues& over);

struct RunConfig {
  Experiment experiment = Experiment::MmsConvergence;
  Physics phys;
  SchemeParams params;
  bool alpha_opt = false;
  std::vector<Scheme> schemes;
  TractionMode traction = TractionMode::Variational;
  // mesh
  int nx = 4;  // coarsest level for ladders
  int fluid_ny = 0;
  int solid_ny = 0;
  int levels = 4;
  bool halve_eps = false;
  bool clamp_solid_sides = false;
  // run
  double final_time = 0.3;
  int steps = 0;  // 0: derived from final_time / tau
  std::vector<double> thetas;
  double blowup_tau = 0.2;
  bool squared_eta = false;
  int threads = 0;  // 0: hardware / ROBIN_FSI_THREADS
  std::string output = "out";
};

/// Experiment defaults overridden by `values`. Throws ConfigError on unknown keys or bad values.
RunConfig resolve_config(Experiment e, const ConfigValues& values);

/// Full effective configuration in the same format parse_config reads.
std::string echo_config(const RunConfig& c);

}  // namespace robin_fsi
