#pragma once

#include <string>
#include <vector>

#include "hoeffding/bernoulli.hpp"
#include "hoeffding/types.hpp"

namespace hoeffding {

enum class Command { check, angles, decompose, indices, explain, bernoulli };

struct RunConfig {
  Command command = Command::check;
  std::string input_path;
  std::string output_path;  // empty writes to stdout
  double tol = kDefaultTol;
  double eps_pd = kDefaultEpsPd;
  bool exhaustive = false;
  bool skip_checks = false;
  std::string format = "json";  // json|csv|table, per subcommand
  std::string which;            // indices family filter, comma-separated
  std::vector<int> cell;        // explain target, 0-based level indices
  BernoulliPair pair;           // bernoulli subcommand parameters
  std::vector<double> bernoulli_g;
};

// Executes the configured pipeline and writes the report. Returns the
// process exit code: 0 success, 2 input/format error, 3 assumption
// failure, 4 numerical failure. Diagnostics go to stderr.
int run(const RunConfig& config);

}  // namespace hoeffding
