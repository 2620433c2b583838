#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace orbitcone {

/// One CLI invocation. Empty strings and unset optionals mean "use the
/// subcommand default".
struct RunConfig {
  std::string command;
  std::string algebra;
  std::string pair;
  std::string rep;
  std::string point;       // comma-separated coordinates
  std::string generators;  // semicolon-separated points
  std::uint64_t seed = 1;
  std::optional<int> samples;
  std::vector<double> radii;
  double angular_tol = 0.05;
  std::string out;  // output directory; empty prints the report to stdout
  bool timings = false;
};

struct RunOutcome {
  nlohmann::json report;
  int exit_code = 0;
  std::map<std::string, std::string> side_files;  // file name -> contents
};

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;  // a check ran and did not pass (golden-table)
constexpr int kExitInvalid = 2;
constexpr int kExitUnknown = 3;

std::vector<std::string> subcommands();

/// Runs one subcommand. Library errors become exit code 2 with an "error"
/// section; the report sections are config, inputs, result, certificates,
/// timings.
RunOutcome run(const RunConfig& config);

/// Runs and writes report.json plus side files into config.out (or prints
/// the report to stdout when out is empty). Returns the exit code.
int run_and_write(const RunConfig& config);

}  // namespace orbitcone
