#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace foon {

enum class Command { Merge, Plan, Stats, Validate, CheckTree };

struct CliConfig {
  Command command = Command::Merge;
  std::vector<std::string> foon_paths;
  std::optional<std::string> kitchen_path;
  std::string goal_name;
  std::vector<std::string> goal_states;  // raw "label" or "label{a,b}" tokens
  std::string algo = "bfs";              // bfs | ids | h1 | h2
  std::optional<std::string> motion_probs_path;
  std::optional<double> default_motion_prob;
  int max_depth = 50;
  std::optional<std::string> out_path;
  std::optional<std::string> dot_path;
  std::optional<std::string> json_path;
  bool strict = true;
};

// Parses argv. On help or a usage problem prints to the given streams,
// sets exit_code (0 for help, 3 otherwise) and returns nothing.
std::optional<CliConfig> parse_cli(int argc, const char* const* argv, std::ostream& out,
                                   std::ostream& err, int& exit_code);

// Exit codes: 0 success, 1 unreadable or unparseable input, 2 planning or
// tree-check failure, 3 usage error.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace foon
