#include "foon/planner.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace foon {

MissingMotionProbability::MissingMotionProbability(std::string motion)
    : std::runtime_error("no success probability for motion '" + motion + "'"),
      motion_(std::move(motion)) {}

std::string PlanError::to_string() const {
  switch (kind) {
    case PlanErrorKind::GoalNotInNetwork:
      return "goal not in network" + (object ? ": " + object->display() : std::string());
    case PlanErrorKind::UnreachableObject:
      return "unreachable object: " + (object ? object->display() : std::string("?"));
    case PlanErrorKind::DepthCapExceeded:
      return "depth cap exceeded" + (depth ? " (cap " + std::to_string(*depth) + ")" : "");
  }
  return "plan error";
}

Result<ObjectIdentity, PlanError> resolve_goal(const UniversalFOON& net, const Kitchen& kitchen,
                                               const GoalSpec& goal) {
  std::vector<StateKey> required;
  required.reserve(goal.required_states.size());
  for (const auto& s : goal.required_states) required.push_back(state_key(s));
  std::sort(required.begin(), required.end());
  required.erase(std::unique(required.begin(), required.end()), required.end());
  const std::string name = fold_case(goal.name);

  std::optional<ObjectIdentity> best;
  auto consider = [&](const ObjectIdentity& id) {
    if (id.name != name) return;
    if (!std::includes(id.state_keys.begin(), id.state_keys.end(), required.begin(),
                       required.end())) {
      return;
    }
    if (!best || id.state_keys.size() < best->state_keys.size() ||
        (id.state_keys.size() == best->state_keys.size() && id.canonical < best->canonical)) {
      best = id;
    }
  };
  for (const auto& id : net.output_identities()) consider(id);
  for (const auto& id : kitchen.identities()) consider(id);

  if (!best) {
    ObjectNode asked;
    asked.name = goal.name;
    asked.states = goal.required_states;
    return PlanError{PlanErrorKind::GoalNotInNetwork, object_identity(asked), std::nullopt};
  }
  return *best;
}

std::size_t select_first(std::span<const FunctionalUnit* const> candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_first: no candidates");
  return 0;
}

std::size_t select_max_success(std::span<const FunctionalUnit* const> candidates,
                               const MotionProbabilities& probs) {
  if (candidates.empty()) throw std::invalid_argument("select_max_success: no candidates");
  double best = -1.0;
  std::size_t index = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::string motion = fold_case(candidates[i]->motion.name);
    const std::optional<double> p = probs.lookup(motion);
    if (!p) throw MissingMotionProbability(motion);
    if (*p > best) {  // strict compare: the first maximum wins
      best = *p;
      index = i;
    }
  }
  return index;
}

std::size_t unique_input_count(const FunctionalUnit& unit) {
  std::unordered_set<std::string> names;
  for (const ObjectNode& obj : unit.inputs) {
    bool has_contents = false;
    for (const StateDescriptor& st : obj.states) {
      for (const std::string& ing : st.ingredients) {
        names.insert(fold_case(ing));
        has_contents = true;
      }
    }
    if (!has_contents) names.insert(fold_case(obj.name));
  }
  return names.size();
}

std::size_t select_min_inputs(std::span<const FunctionalUnit* const> candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_min_inputs: no candidates");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::size_t index = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::size_t count = unique_input_count(*candidates[i]);
    if (count < best) {  // strict compare: the first minimum wins
      best = count;
      index = i;
    }
  }
  return index;
}

namespace {

struct SearchConfig {
  bool lifo = false;
  int depth_limit = -1;  // negative: unlimited
};

enum class SearchStatus { Done, Restart, Error };

struct SearchState {
  SearchStatus status = SearchStatus::Done;
  std::vector<std::size_t> recorded;  // unit positions, discovery order
  PlanError error;
  std::size_t peak_frontier = 0;
};

// Inputs whose name appears in the contents of another input of the same
// unit are covered by that container and must not be enqueued again.
std::vector<bool> duplicate_input_mask(const FunctionalUnit& unit) {
  const std::size_t n = unit.inputs.size();
  std::vector<bool> skip(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::string name = fold_case(unit.inputs[j].name);
    for (std::size_t i = 0; i < n && !skip[j]; ++i) {
      if (i == j) continue;
      for (const StateDescriptor& st : unit.inputs[i].states) {
        if (std::any_of(st.ingredients.begin(), st.ingredients.end(),
                        [&](const std::string& ing) { return fold_case(ing) == name; })) {
          skip[j] = true;
          break;
        }
      }
    }
  }
  return skip;
}

std::size_t choose_candidate(const Strategy& strategy,
                             std::span<const FunctionalUnit* const> candidates, double& score) {
  switch (strategy.kind) {
    case StrategyKind::FirstCandidate:
    case StrategyKind::IterativeDeepening:
      score = 0.0;
      return select_first(candidates);
    case StrategyKind::MaxMotionSuccess: {
      const std::size_t idx = select_max_success(candidates, *strategy.probs);
      score = *strategy.probs->lookup(candidates[idx]->motion.name);
      return idx;
    }
    case StrategyKind::MinUniqueInputs: {
      const std::size_t idx = select_min_inputs(candidates);
      score = static_cast<double>(unique_input_count(*candidates[idx]));
      return idx;
    }
  }
  throw std::invalid_argument("unknown strategy kind");
}

SearchState search_once(const UniversalFOON& net, const Kitchen& kitchen,
                        const ObjectIdentity& goal_id, const Strategy& strategy,
                        const SearchConfig& cfg, DecisionTrace& trace) {
  SearchState st;
  struct Entry {
    ObjectIdentity id;
    int depth;
  };
  std::deque<Entry> frontier;
  std::unordered_set<std::string> seen;  // identities ever enqueued
  std::unordered_set<std::size_t> recorded_set;

  frontier.push_back({goal_id, 0});
  seen.insert(goal_id.canonical);
  st.peak_frontier = 1;

  while (!frontier.empty()) {
    Entry cur = cfg.lifo ? std::move(frontier.back()) : std::move(frontier.front());
    if (cfg.lifo) {
      frontier.pop_back();
    } else {
      frontier.pop_front();
    }

    if (kitchen.available(cur.id)) continue;

    const std::vector<std::size_t>* producers = net.producer_positions(cur.id);
    if (!producers || producers->empty()) {
      st.status = SearchStatus::Error;
      st.error = PlanError{PlanErrorKind::UnreachableObject, cur.id, std::nullopt};
      return st;
    }

    std::vector<const FunctionalUnit*> candidates;
    candidates.reserve(producers->size());
    for (std::size_t pos : *producers) candidates.push_back(&net.units()[pos]);

    double score = 0.0;
    const std::size_t chosen = choose_candidate(strategy, candidates, score);

    DecisionEvent event;
    event.object = cur.id;
    event.candidates.reserve(producers->size());
    for (std::size_t pos : *producers) event.candidates.push_back(net.keys()[pos]);
    event.chosen_index = chosen;
    event.score = score;
    trace.events.push_back(std::move(event));

    const std::size_t pos = (*producers)[chosen];
    if (recorded_set.insert(pos).second) st.recorded.push_back(pos);

    const FunctionalUnit& unit = net.units()[pos];
    const std::vector<bool> skip = duplicate_input_mask(unit);
    for (std::size_t j = 0; j < unit.inputs.size(); ++j) {
      if (skip[j]) continue;
      ObjectIdentity in_id = object_identity(unit.inputs[j]);
      if (seen.count(in_id.canonical)) continue;
      const int depth = cur.depth + 1;
      if (cfg.depth_limit >= 0 && depth > cfg.depth_limit) {
        st.status = SearchStatus::Restart;  // restart before expanding it
        return st;
      }
      seen.insert(in_id.canonical);
      frontier.push_back({std::move(in_id), depth});
      st.peak_frontier = std::max(st.peak_frontier, frontier.size());
    }
  }
  st.status = SearchStatus::Done;
  return st;
}

bool order_is_executable(const UniversalFOON& net, const Kitchen& kitchen,
                         const std::vector<std::size_t>& order) {
  std::unordered_set<std::string> available;
  for (const auto& id : kitchen.identities()) available.insert(id.canonical);
  for (std::size_t pos : order) {
    const FunctionalUnit& unit = net.units()[pos];
    for (const ObjectNode& in : unit.inputs) {
      if (!available.count(object_identity(in).canonical)) return false;
    }
    for (const ObjectNode& out : unit.outputs) available.insert(object_identity(out).canonical);
  }
  return true;
}

// Earliest-runnable-first repair: repeatedly place the first unit of `base`
// whose inputs are already available. Availability only grows, so whenever
// some executable order of the set exists this finds one; anything that can
// never run keeps its base order at the tail.
std::vector<std::size_t> greedy_executable_order(const UniversalFOON& net, const Kitchen& kitchen,
                                                 const std::vector<std::size_t>& base) {
  std::unordered_set<std::string> available;
  for (const auto& id : kitchen.identities()) available.insert(id.canonical);
  std::vector<std::size_t> order;
  order.reserve(base.size());
  std::vector<bool> placed(base.size(), false);

  auto runnable = [&](std::size_t pos) {
    const FunctionalUnit& unit = net.units()[pos];
    return std::all_of(unit.inputs.begin(), unit.inputs.end(), [&](const ObjectNode& in) {
      return available.count(object_identity(in).canonical) > 0;
    });
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t s = 0; s < base.size(); ++s) {
      if (placed[s] || !runnable(base[s])) continue;
      placed[s] = true;
      order.push_back(base[s]);
      for (const ObjectNode& out : net.units()[base[s]].outputs) {
        available.insert(object_identity(out).canonical);
      }
      progress = true;
      break;
    }
  }
  for (std::size_t s = 0; s < base.size(); ++s) {
    if (!placed[s]) order.push_back(base[s]);
  }
  return order;
}

}  // namespace

Result<Retrieval, PlanError> retrieve(const UniversalFOON& net, const Kitchen& kitchen,
                                      const GoalSpec& goal, const Strategy& strategy) {
  if (strategy.kind == StrategyKind::MaxMotionSuccess && !strategy.probs) {
    throw std::invalid_argument("MaxMotionSuccess strategy needs motion probabilities");
  }
  if (strategy.kind == StrategyKind::IterativeDeepening && strategy.max_depth_cap < 1) {
    throw std::invalid_argument("IterativeDeepening needs a positive depth cap");
  }

  const Result<ObjectIdentity, PlanError> goal_id = resolve_goal(net, kitchen, goal);
  if (!goal_id) return goal_id.error();

  Retrieval result;
  result.tree.goal = goal;

  SearchState st;
  if (strategy.kind == StrategyKind::IterativeDeepening) {
    bool done = false;
    for (int max_depth = 1; max_depth <= strategy.max_depth_cap; ++max_depth) {
      st = search_once(net, kitchen, goal_id.value(), strategy,
                       {.lifo = true, .depth_limit = max_depth}, result.trace);
      result.metrics.peak_frontier = std::max(result.metrics.peak_frontier, st.peak_frontier);
      if (st.status == SearchStatus::Error) return st.error;
      if (st.status == SearchStatus::Done) {
        result.metrics.final_max_depth = max_depth;
        result.metrics.restarts = max_depth - 1;
        done = true;
        break;
      }
    }
    if (!done) {
      return PlanError{PlanErrorKind::DepthCapExceeded, std::nullopt, strategy.max_depth_cap};
    }
  } else {
    st = search_once(net, kitchen, goal_id.value(), strategy, {.lifo = false, .depth_limit = -1},
                     result.trace);
    result.metrics.peak_frontier = st.peak_frontier;
    if (st.status == SearchStatus::Error) return st.error;
  }

  // Reversing the discovery record usually yields an executable order; when
  // shared sub-recipes interleave badly, repair instead of re-searching.
  std::vector<std::size_t> order(st.recorded.rbegin(), st.recorded.rend());
  if (!order_is_executable(net, kitchen, order)) {
    order = greedy_executable_order(net, kitchen, order);
  }
  result.tree.steps.reserve(order.size());
  for (std::size_t pos : order) result.tree.steps.push_back(net.units()[pos]);
  return result;
}

ValidationReport validate_task_tree(const TaskTree& tree, const Kitchen& kitchen,
                                    const ObjectIdentity& goal_identity) {
  std::unordered_set<std::string> available;
  for (const auto& id : kitchen.identities()) available.insert(id.canonical);
  for (std::size_t i = 0; i < tree.steps.size(); ++i) {
    for (const ObjectNode& in : tree.steps[i].inputs) {
      ObjectIdentity id = object_identity(in);
      if (!available.count(id.canonical)) {
        TreeViolation v{i, id,
                        "step " + std::to_string(i) + " needs " + id.display() +
                            ", which is neither in the kitchen nor produced earlier"};
        return ValidationReport{false, std::move(v)};
      }
    }
    for (const ObjectNode& out : tree.steps[i].outputs) {
      available.insert(object_identity(out).canonical);
    }
  }
  if (!available.count(goal_identity.canonical)) {
    TreeViolation v{std::nullopt, goal_identity,
                    "goal " + goal_identity.display() + " is not available after the final step"};
    return ValidationReport{false, std::move(v)};
  }
  return ValidationReport{true, std::nullopt};
}

}  // namespace foon
