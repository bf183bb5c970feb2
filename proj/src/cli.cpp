#include "foon/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "foon/export.hpp"
#include "foon/graph.hpp"
#include "foon/parser.hpp"
#include "foon/planner.hpp"

namespace foon {

namespace {

class Diag {
 public:
  explicit Diag(std::ostream& err) : err_(err) {
    color_ = &err == &std::cerr && isatty(fileno(stderr)) != 0 &&
             std::getenv("FOONPLAN_NO_COLOR") == nullptr;
  }

  void error(const std::string& msg) { emit("\x1b[31m", "foonplan: " + msg); }
  void warn(const std::string& msg) { emit("\x1b[33m", "foonplan: warning: " + msg); }

 private:
  void emit(const char* code, const std::string& line) {
    if (color_) {
      err_ << code << line << "\x1b[0m\n";
    } else {
      err_ << line << "\n";
    }
  }

  std::ostream& err_;
  bool color_ = false;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(buf).str();
}

bool write_file(const std::string& path, const std::string& text, Diag& diag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    diag.error(path + ": cannot open for writing");
    return false;
  }
  out << text;
  out.flush();
  if (!out) {
    diag.error(path + ": write failed");
    return false;
  }
  return true;
}

std::optional<std::vector<Subgraph>> load_subgraphs(const std::vector<std::string>& paths,
                                                    Diag& diag) {
  std::vector<Subgraph> subs;
  subs.reserve(paths.size());
  for (const std::string& path : paths) {
    const std::optional<std::string> text = read_file(path);
    if (!text) {
      diag.error(path + ": cannot read file");
      return std::nullopt;
    }
    Result<Subgraph, ParseError> parsed = parse_subgraph(*text, path);
    if (!parsed) {
      diag.error(parsed.error().to_string());
      return std::nullopt;
    }
    subs.push_back(std::move(parsed.value()));
  }
  return subs;
}

std::optional<Kitchen> load_kitchen(const std::string& path, Diag& diag) {
  const std::optional<std::string> text = read_file(path);
  if (!text) {
    diag.error(path + ": cannot read file");
    return std::nullopt;
  }
  Result<Kitchen, ParseError> parsed = parse_kitchen(*text, path);
  if (!parsed) {
    diag.error(parsed.error().to_string());
    return std::nullopt;
  }
  return std::move(parsed.value());
}

std::optional<GoalSpec> build_goal(const CliConfig& config, Diag& diag) {
  GoalSpec goal;
  goal.name = config.goal_name;
  for (const std::string& token : config.goal_states) {
    Result<StateDescriptor, std::string> state = parse_state_token(token);
    if (!state) {
      diag.error("bad --goal-state '" + token + "': " + state.error());
      return std::nullopt;
    }
    goal.required_states.push_back(std::move(state.value()));
  }
  return goal;
}

void write_network_outputs(const CliConfig& config, const std::vector<FunctionalUnit>& units,
                           Diag& diag, bool& ok) {
  if (config.out_path) {
    Subgraph sub;
    sub.units = units;
    sub.source_label = *config.out_path;
    ok = write_file(*config.out_path, serialize_subgraph(sub), diag) && ok;
  }
  if (config.dot_path) {
    ok = write_file(*config.dot_path, to_dot(units).text, diag) && ok;
  }
  if (config.json_path) {
    ok = write_file(*config.json_path, to_structured_dump(units), diag) && ok;
  }
}

void print_stats(const UniversalFOON& net, std::ostream& out) {
  const NetworkStats s = stats(net);
  out << "units=" << s.unit_count << " motions=" << s.unique_motion_count
      << " objects=" << s.unique_object_identity_count << " sources=" << s.source_count << "\n";
}

int run_merge(const CliConfig& config, std::ostream& out, Diag& diag) {
  const auto subs = load_subgraphs(config.foon_paths, diag);
  if (!subs) return 1;
  const UniversalFOON net = merge(*subs);
  bool ok = true;
  write_network_outputs(config, net.units(), diag, ok);
  if (!ok) return 1;
  print_stats(net, out);
  return 0;
}

int run_stats(const CliConfig& config, std::ostream& out, Diag& diag) {
  const auto subs = load_subgraphs(config.foon_paths, diag);
  if (!subs) return 1;
  print_stats(merge(*subs), out);
  return 0;
}

int run_validate(const CliConfig& config, std::ostream& out, Diag& diag) {
  bool all_ok = true;
  for (const std::string& path : config.foon_paths) {
    const std::optional<std::string> text = read_file(path);
    if (!text) {
      diag.error(path + ": cannot read file");
      all_ok = false;
      continue;
    }
    const Result<Subgraph, ParseError> parsed = parse_subgraph(*text, path);
    if (!parsed) {
      diag.error(parsed.error().to_string());
      all_ok = false;
      continue;
    }
    out << "ok: " << path << " units=" << parsed.value().units.size() << "\n";
  }
  return all_ok ? 0 : 1;
}

// Probabilities as the planner will see them; warns about motions the
// table misses whenever a substitute will silently stand in for them.
std::optional<MotionProbabilities> build_probs(const CliConfig& config, const UniversalFOON& net,
                                               Diag& diag) {
  MotionProbabilities probs;
  if (config.motion_probs_path) {
    const std::optional<std::string> text = read_file(*config.motion_probs_path);
    if (!text) {
      diag.error(*config.motion_probs_path + ": cannot read file");
      return std::nullopt;
    }
    std::vector<std::string> warnings;
    Result<MotionProbabilities, ParseError> parsed =
        parse_motion_probs(*text, *config.motion_probs_path, &warnings);
    for (const std::string& w : warnings) diag.warn(w);
    if (!parsed) {
      diag.error(parsed.error().to_string());
      return std::nullopt;
    }
    probs = std::move(parsed.value());
  }
  if (config.default_motion_prob) {
    probs.default_prob = *config.default_motion_prob;
  } else if (!config.strict) {
    probs.default_prob = 0.0;
  }
  if (probs.default_prob) {
    std::set<std::string> missing;
    for (const FunctionalUnit& unit : net.units()) {
      const std::string name = fold_case(unit.motion.name);
      if (!probs.table.count(name)) missing.insert(name);
    }
    if (config.motion_probs_path || !config.strict) {
      for (const std::string& name : missing) {
        std::ostringstream msg;
        msg << "no probability for motion '" << name << "'; using " << *probs.default_prob;
        diag.warn(msg.str());
      }
    }
  }
  return probs;
}

std::optional<Strategy> build_strategy(const CliConfig& config, const UniversalFOON& net,
                                       Diag& diag, int& exit_code) {
  Strategy strategy;
  strategy.max_depth_cap = config.max_depth;
  if (config.algo == "bfs") {
    strategy.kind = StrategyKind::FirstCandidate;
  } else if (config.algo == "ids") {
    strategy.kind = StrategyKind::IterativeDeepening;
  } else if (config.algo == "h1") {
    strategy.kind = StrategyKind::MaxMotionSuccess;
    if (!config.motion_probs_path && !config.default_motion_prob) {
      diag.error("--algo h1 needs --motion-probs or --default-motion-prob");
      exit_code = 3;
      return std::nullopt;
    }
    std::optional<MotionProbabilities> probs = build_probs(config, net, diag);
    if (!probs) {
      exit_code = 1;
      return std::nullopt;
    }
    strategy.probs = std::move(*probs);
  } else if (config.algo == "h2") {
    strategy.kind = StrategyKind::MinUniqueInputs;
  } else {
    diag.error("unknown --algo '" + config.algo + "' (expected bfs, ids, h1, or h2)");
    exit_code = 3;
    return std::nullopt;
  }
  return strategy;
}

int run_plan(const CliConfig& config, std::ostream& out, Diag& diag) {
  if (!config.kitchen_path) {
    diag.error("plan needs --kitchen");
    return 3;
  }
  const auto subs = load_subgraphs(config.foon_paths, diag);
  if (!subs) return 1;
  const UniversalFOON net = merge(*subs);
  const std::optional<Kitchen> kitchen = load_kitchen(*config.kitchen_path, diag);
  if (!kitchen) return 1;
  const std::optional<GoalSpec> goal = build_goal(config, diag);
  if (!goal) return 3;

  int exit_code = 0;
  const std::optional<Strategy> strategy = build_strategy(config, net, diag, exit_code);
  if (!strategy) return exit_code;

  bool missing_prob = false;
  Result<Retrieval, PlanError> result = [&]() -> Result<Retrieval, PlanError> {
    try {
      return retrieve(net, *kitchen, *goal, *strategy);
    } catch (const MissingMotionProbability& ex) {
      diag.error(ex.what());
      missing_prob = true;
      return PlanError{PlanErrorKind::GoalNotInNetwork, std::nullopt, std::nullopt};
    }
  }();
  if (!result) {
    if (!missing_prob) diag.error(result.error().to_string());
    return 2;
  }

  const Retrieval& retrieval = result.value();
  const Result<ObjectIdentity, PlanError> goal_id = resolve_goal(net, *kitchen, *goal);
  if (goal_id) {
    const ValidationReport report = validate_task_tree(retrieval.tree, *kitchen, goal_id.value());
    if (!report.valid && report.violation) diag.warn(report.violation->message);
  }

  bool ok = true;
  if (config.out_path) {
    Subgraph sub;
    sub.units = retrieval.tree.steps;
    sub.source_label = *config.out_path;
    ok = write_file(*config.out_path, serialize_subgraph(sub), diag) && ok;
  }
  if (config.dot_path) {
    ok = write_file(*config.dot_path, to_dot(retrieval.tree.steps).text, diag) && ok;
  }
  if (config.json_path) {
    ok = write_file(*config.json_path, to_structured_dump(retrieval.tree.steps), diag) && ok;
  }
  if (!ok) return 1;

  out << "steps=" << retrieval.tree.steps.size()
      << " decisions=" << retrieval.trace.events.size() << "\n";
  return 0;
}

int run_check_tree(const CliConfig& config, std::ostream& out, Diag& diag) {
  if (config.foon_paths.size() != 1) {
    diag.error("check-tree needs exactly one --foon tree file");
    return 3;
  }
  if (!config.kitchen_path) {
    diag.error("check-tree needs --kitchen");
    return 3;
  }
  const auto subs = load_subgraphs(config.foon_paths, diag);
  if (!subs) return 1;
  const std::optional<Kitchen> kitchen = load_kitchen(*config.kitchen_path, diag);
  if (!kitchen) return 1;
  const std::optional<GoalSpec> goal = build_goal(config, diag);
  if (!goal) return 3;

  const UniversalFOON net = merge(*subs);
  const Result<ObjectIdentity, PlanError> goal_id = resolve_goal(net, *kitchen, *goal);
  if (!goal_id) {
    diag.error(goal_id.error().to_string());
    return 2;
  }

  TaskTree tree;
  tree.steps = subs->front().units;  // file order, duplicates kept
  tree.goal = *goal;
  const ValidationReport report = validate_task_tree(tree, *kitchen, goal_id.value());
  if (!report.valid) {
    diag.error(config.foon_paths.front() + ": " +
               (report.violation ? report.violation->message : std::string("invalid tree")));
    return 2;
  }
  out << "valid: " << config.foon_paths.front() << " steps=" << tree.steps.size() << "\n";
  return 0;
}

}  // namespace

std::optional<CliConfig> parse_cli(int argc, const char* const* argv, std::ostream& out,
                                   std::ostream& err, int& exit_code) {
  CliConfig cfg;
  CLI::App app{"FOON toolkit: merge recipe subgraphs and retrieve task trees"};
  app.name("foonplan");
  app.require_subcommand(1);

  const std::string foon_help = "Subgraph file (repeatable)";

  CLI::App* merge_cmd = app.add_subcommand("merge", "Merge subgraph files into one network");
  merge_cmd->add_option("--foon", cfg.foon_paths, foon_help)->required();
  merge_cmd->add_option("--out", cfg.out_path, "Write the merged network here");
  merge_cmd->add_option("--dot", cfg.dot_path, "Write a DOT rendering here");
  merge_cmd->add_option("--json", cfg.json_path, "Write a structured dump here");

  CLI::App* plan_cmd = app.add_subcommand("plan", "Retrieve a task tree for a goal");
  plan_cmd->add_option("--foon", cfg.foon_paths, foon_help)->required();
  plan_cmd->add_option("--kitchen", cfg.kitchen_path, "Available-objects file")->required();
  plan_cmd->add_option("--goal", cfg.goal_name, "Goal object name")->required();
  plan_cmd->add_option("--goal-state", cfg.goal_states,
                       "Required goal state, label or label{a,b} (repeatable)");
  plan_cmd->add_option("--algo", cfg.algo, "Search strategy: bfs, ids, h1, h2")
      ->default_str("bfs");
  plan_cmd->add_option("--motion-probs", cfg.motion_probs_path,
                       "Motion success probability file (h1)");
  plan_cmd->add_option("--default-motion-prob", cfg.default_motion_prob,
                       "Probability for motions the file misses (h1)")
      ->check(CLI::Range(0.0, 1.0));
  plan_cmd->add_option("--max-depth", cfg.max_depth, "Depth cap for ids")
      ->check(CLI::PositiveNumber);
  plan_cmd->add_option("--out", cfg.out_path, "Write the task tree here");
  plan_cmd->add_option("--dot", cfg.dot_path, "Write a DOT rendering here");
  plan_cmd->add_option("--json", cfg.json_path, "Write a structured dump here");
  plan_cmd->add_flag("--strict,!--no-strict", cfg.strict,
                     "Make a missing motion probability fatal (default on)");

  CLI::App* stats_cmd = app.add_subcommand("stats", "Print network statistics");
  stats_cmd->add_option("--foon", cfg.foon_paths, foon_help)->required();

  CLI::App* validate_cmd = app.add_subcommand("validate", "Parse files and report errors");
  validate_cmd->add_option("--foon", cfg.foon_paths, foon_help)->required();

  CLI::App* check_cmd = app.add_subcommand("check-tree", "Check a task-tree file for a goal");
  check_cmd->add_option("--foon", cfg.foon_paths, "Task-tree file")->required();
  check_cmd->add_option("--kitchen", cfg.kitchen_path, "Available-objects file")->required();
  check_cmd->add_option("--goal", cfg.goal_name, "Goal object name")->required();
  check_cmd->add_option("--goal-state", cfg.goal_states,
                        "Required goal state, label or label{a,b} (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    exit_code = code == 0 ? 0 : 3;
    return std::nullopt;
  }

  if (merge_cmd->parsed()) cfg.command = Command::Merge;
  if (plan_cmd->parsed()) cfg.command = Command::Plan;
  if (stats_cmd->parsed()) cfg.command = Command::Stats;
  if (validate_cmd->parsed()) cfg.command = Command::Validate;
  if (check_cmd->parsed()) cfg.command = Command::CheckTree;
  exit_code = 0;
  return cfg;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  Diag diag(err);
  if (config.foon_paths.empty()) {
    diag.error("at least one --foon file is required");
    return 3;
  }
  switch (config.command) {
    case Command::Merge:
      return run_merge(config, out, diag);
    case Command::Plan:
      return run_plan(config, out, diag);
    case Command::Stats:
      return run_stats(config, out, diag);
    case Command::Validate:
      return run_validate(config, out, diag);
    case Command::CheckTree:
      return run_check_tree(config, out, diag);
  }
  diag.error("unknown command");
  return 3;
}

}  // namespace foon
