#include "cli.hpp"

#include "robin_fsi/config.hpp"
#include "robin_fsi/experiments.hpp"

#include <CLI11.hpp>

#include <map>
#include <ostream>

namespace robin_fsi {

namespace {

struct Flag {
  const char* key;  // section.key
  const char* help;
};

// One flag per config key, named after the key.
const Flag kFlags[] = {
    {"physics.rho_f", "fluid density"},
    {"physics.mu_f", "fluid viscosity"},
    {"physics.rho_s", "solid density"},
    {"physics.mu_s", "solid shear modulus"},
    {"physics.lambda_s", "solid Lame constant"},
    {"physics.gamma", "spring coefficient"},
    {"scheme.schemes", "comma list of alg1, monolithic, rr, rn, loose"},
    {"scheme.theta", "theta in [0.5, 1]"},
    {"scheme.alpha", "Robin parameter, a number or 'opt'"},
    {"scheme.alpha_solid", "solid-side Robin parameter (defaults to alpha)"},
    {"scheme.eps", "sub-iteration tolerance"},
    {"scheme.max_subiters", "sub-iteration cap"},
    {"scheme.traction", "variational or direct"},
    {"scheme.solid_height", "solid height in alpha_opt"},
    {"scheme.radius", "radius in alpha_opt"},
    {"mesh.nx", "cells in x (coarsest level)"},
    {"mesh.fluid_ny", "fluid cells in y"},
    {"mesh.solid_ny", "solid cells in y"},
    {"mesh.levels", "refinement levels"},
    {"mesh.halve_eps", "halve eps with every level"},
    {"mesh.clamp_solid_sides", "clamp the solid's left/right sides in the manufactured case"},
    {"run.final_time", "final time"},
    {"run.tau", "time step (coarsest level)"},
    {"run.steps", "number of steps (overrides final_time)"},
    {"run.thetas", "comma list of theta values (stability-check)"},
    {"run.blowup_tau", "large step for the no-blow-up run, 0 disables"},
    {"run.squared_eta", "square the displacement error ratio"},
    {"run.threads", "worker cap"},
    {"run.output", "output directory"},
};

std::string flag_name(const char* key) {
  std::string k(key);
  return "--" + k.substr(k.find('.') + 1);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partitioned Robin-Robin fluid-structure solver: experiments and reports", "robin_fsi"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::string> flags;
  app.add_option("-c,--config", config_path, "sectioned key=value config file")->check(CLI::ExistingFile);
  for (const Flag& f : kFlags) {
    const std::string name = flag_name(f.key);
    app.add_option(name == "--output" ? "-o," + name : name, flags[f.key], f.help);
  }
  const std::vector<Experiment> kinds{Experiment::MmsConvergence, Experiment::BenchmarkChannel,
                                      Experiment::StabilityCheck, Experiment::IterationCount};
  std::map<CLI::App*, Experiment> subs;
  const std::map<Experiment, std::string> about{
      {Experiment::MmsConvergence, "convergence rates on the manufactured solution"},
      {Experiment::BenchmarkChannel, "pressure pulse in an elastic channel, partitioned vs monolithic"},
      {Experiment::StabilityCheck, "discrete energy inequality from unforced initial data"},
      {Experiment::IterationCount, "average sub-iterations per step for each scheme"}};
  for (Experiment e : kinds) {
    auto* sub = app.add_subcommand(std::string(experiment_name(e)), about.at(e));
    sub->fallthrough();
    subs[sub] = e;
  }
  app.fallthrough();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();  // program name
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  Experiment kind = Experiment::MmsConvergence;
  for (const auto& [sub, e] : subs)
    if (sub->parsed()) kind = e;

  RunConfig cfg;
  try {
    ConfigValues values;
    if (!config_path.empty()) values = load_config_file(config_path);
    ConfigValues cli;
    for (const auto& [k, v] : flags)
      if (app.count(flag_name(k.c_str())) > 0) cli[k] = v;
    merge_config(values, cli);
    cfg = resolve_config(kind, values);
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const ExperimentOutcome r = run_experiment(cfg, &out);
    for (const auto& f : r.files) out << "wrote " << f << '\n';
    for (const auto& e : r.errors) err << "error: " << e << '\n';
    return r.status;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace robin_fsi
