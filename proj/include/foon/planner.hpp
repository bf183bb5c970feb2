#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "foon/graph.hpp"
#include "foon/model.hpp"
#include "foon/result.hpp"

// Task-tree retrieval: backward search from a goal object over the producer
// index, with a pluggable rule for picking among candidate units.

namespace foon {

enum class StrategyKind {
  FirstCandidate,     // FIFO frontier, first producer wins
  IterativeDeepening, // LIFO frontier, depth-limited with restarts
  MaxMotionSuccess,   // FIFO frontier, highest motion success rate wins
  MinUniqueInputs,    // FIFO frontier, fewest unique input ingredients wins
};

struct Strategy {
  StrategyKind kind = StrategyKind::FirstCandidate;
  std::optional<MotionProbabilities> probs;  // required for MaxMotionSuccess
  int max_depth_cap = 50;                    // IterativeDeepening only
};

// One record per candidate choice the search made, for inspection and tests.
struct DecisionEvent {
  ObjectIdentity object;
  std::vector<UnitKey> candidates;  // producer order
  std::size_t chosen_index = 0;
  double score = 0.0;  // probability (MaxMotionSuccess) or count (MinUniqueInputs)
};

struct DecisionTrace {
  std::vector<DecisionEvent> events;
};

enum class PlanErrorKind { UnreachableObject, GoalNotInNetwork, DepthCapExceeded };

struct PlanError {
  PlanErrorKind kind = PlanErrorKind::GoalNotInNetwork;
  std::optional<ObjectIdentity> object;
  std::optional<int> depth;

  std::string to_string() const;
};

// Search-shape counters; the interesting ones are the frontier high-water
// mark and, for iterative deepening, the depth bound the search finished at.
struct RetrievalMetrics {
  std::size_t peak_frontier = 0;
  int final_max_depth = 0;  // 0 unless IterativeDeepening
  int restarts = 0;
};

struct Retrieval {
  TaskTree tree;
  DecisionTrace trace;
  RetrievalMetrics metrics;
};

// Thrown by select_max_success for a motion with no table entry and no
// default probability.
class MissingMotionProbability : public std::runtime_error {
 public:
  explicit MissingMotionProbability(std::string motion);
  const std::string& motion() const { return motion_; }

 private:
  std::string motion_;
};

// Picks the identity the goal refers to: matching name, required states
// included; fewest total states wins, ties broken by canonical order.
Result<ObjectIdentity, PlanError> resolve_goal(const UniversalFOON& net, const Kitchen& kitchen,
                                               const GoalSpec& goal);

// Backward search from the goal. Steps come out in execution order.
Result<Retrieval, PlanError> retrieve(const UniversalFOON& net, const Kitchen& kitchen,
                                      const GoalSpec& goal, const Strategy& strategy);

std::size_t select_first(std::span<const FunctionalUnit* const> candidates);

// First index attaining the highest motion success probability.
std::size_t select_max_success(std::span<const FunctionalUnit* const> candidates,
                               const MotionProbabilities& probs);

// Number of distinct ingredient names a unit pulls in: containers count
// their contents instead of themselves, repeats count once.
std::size_t unique_input_count(const FunctionalUnit& unit);

// First index attaining the lowest unique_input_count.
std::size_t select_min_inputs(std::span<const FunctionalUnit* const> candidates);

struct TreeViolation {
  std::optional<std::size_t> step;  // empty when the goal itself is missing
  ObjectIdentity object;
  std::string message;
};

struct ValidationReport {
  bool valid = false;
  std::optional<TreeViolation> violation;
};

// Forward-simulates the tree from the kitchen: each step's inputs must be
// available (contents of containers are not decomposed), then its outputs
// become available; the goal identity must hold at the end.
ValidationReport validate_task_tree(const TaskTree& tree, const Kitchen& kitchen,
                                    const ObjectIdentity& goal_identity);

}  // namespace foon
