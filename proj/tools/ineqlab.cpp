// Command-line front end over the C API.

#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ineqlab/ineqlab.h"

namespace {

// (flag, help); the config key is the flag without the leading dashes.
const std::vector<std::pair<std::string, std::string>> kValueFlags = {
    {"--N", "ambient dimension"},
    {"--p", "integrability exponent"},
    {"--m", "lower dimension for the dimension shift"},
    {"--n", "log-Sobolev dimension"},
    {"--ell", "tensor factor count"},
    {"--R", "ball radius or family support radius"},
    {"--a", "logarithmic weight shift"},
    {"--beta", "logarithmic weight power"},
    {"--alpha", "exponential integrability exponent"},
    {"--q", "high exponent"},
    {"--family", "test family: cone, talenti_bubble, moser_seq, hardy_seq, log_power, gaussian"},
    {"--family-param", "family parameter (k, epsilon, theta or sigma)"},
    {"--grid-points", "grid nodes"},
    {"--r-min", "innermost grid radius"},
    {"--r-max", "outermost grid radius (whole space)"},
    {"--domain", "domain of sampled input: ball or whole_space"},
    {"--tol", "tolerance"},
    {"--opt-tol", "relative decrease below which optimize stops"},
    {"--max-iters", "iteration cap for optimize"},
    {"--jobs", "worker threads for sweeps (default INEQLAB_JOBS or 1)"},
    {"--output", "report path (default stdout)"},
    {"--format", "csv or json"},
    {"--kind", "constant, quotient, transform or sweep kind"},
    {"--ineq", "inequality for verify"},
    {"--input", "sampled (r, value) file"},
    {"--values", "comma-separated sweep values or annulus indices"},
};

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"constants", "closed-form best constants"},
    {"verify", "both sides of an inequality on a test function"},
    {"rearrange", "decreasing rearrangement u*(t)"},
    {"transform-check", "transformation identities"},
    {"decomp-check", "partition of unity and per-annulus inequalities"},
    {"optimize", "Rayleigh quotient minimization"},
    {"limit-sweep", "limits in p -> N and N -> infinity"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for Hardy and Sobolev inequalities and their limits"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::map<std::string, std::string> values;

  for (const auto& [name, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key = value file; flags override it");
    for (const auto& [flag, fhelp] : kValueFlags) sub->add_option(flag, values[flag], fhelp);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  ineqlab_config* cfg = ineqlab_config_new();
  if (!cfg) return 2;
  auto bail = [&](const char* what) {
    std::fprintf(stderr, "%s: %s\n", what, ineqlab_last_error());
    ineqlab_config_free(cfg);
    return 2;
  };
  if (ineqlab_config_set(cfg, "command", sub->get_name().c_str()) != INEQLAB_OK) return bail("command");
  if (!config_path.empty() && ineqlab_config_load(cfg, config_path.c_str()) != INEQLAB_OK) return bail("config");
  // Re-apply the command so a config file cannot switch it.
  if (ineqlab_config_set(cfg, "command", sub->get_name().c_str()) != INEQLAB_OK) return bail("command");
  for (const auto& [flag, help] : kValueFlags) {
    if (sub->count(flag) == 0) continue;
    if (ineqlab_config_set(cfg, flag.c_str() + 2, values[flag].c_str()) != INEQLAB_OK) return bail(flag.c_str());
  }
  const int code = ineqlab_execute(cfg);
  ineqlab_config_free(cfg);
  return code;
}
