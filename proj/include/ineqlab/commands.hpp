#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ineqlab/constants.hpp"
#include "ineqlab/families.hpp"

namespace ineqlab {

struct RunConfig {
  std::string command;  // constants, verify, rearrange, transform-check, decomp-check, optimize, limit-sweep
  Params params;
  std::size_t grid_points = 4096;
  std::optional<double> r_min;
  std::optional<double> r_max;
  std::optional<std::string> domain;  // ball | whole_space, for sampled input
  std::optional<FamilyKind> family;
  std::optional<double> family_param;
  std::string kind;  // constant, quotient, transform or sweep kind
  std::string ineq;  // inequality for verify
  std::string input;  // sampled (r, value) file
  std::vector<double> values;
  std::string output;  // empty: stdout
  std::string format = "csv";
  double tol = 1e-4;      // contract tolerance
  double opt_tol = 1e-8;  // optimizer stopping tolerance
  int max_iters = 5000;
  int jobs = 0;  // 0: INEQLAB_JOBS or 1
};

/// Applies one key = value setting. Keys are the long flag names with '-' or
/// '_'. Unknown keys and malformed values raise a domain error.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Plain "key = value" lines; '#' starts a comment.
void load_config(RunConfig& config, std::istream& in);

/// Every setting that affects results, in a fixed order (jobs and output excluded).
std::vector<std::pair<std::string, std::string>> resolved_config(const RunConfig& config);

/// Parallelism: config.jobs, else INEQLAB_JOBS, else 1.
int effective_jobs(const RunConfig& config);

struct RunResult {
  int exit_code = 0;   // 0 contracts hold, 1 a contract is violated, 2 invalid input or I/O failure
  std::string report;  // CSV or JSON text
  std::string summary;  // one line
};

/// Dispatches the command and renders the report. Never throws.
RunResult run(const RunConfig& config);

}  // namespace ineqlab
