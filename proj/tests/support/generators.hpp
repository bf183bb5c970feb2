#pragma once

// Seeded builders for test inputs. Every function is deterministic in the
// passed-in engine, so a failing case reproduces from its seed.

#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "foon/graph.hpp"
#include "foon/model.hpp"
#include "foon/parser.hpp"

namespace testgen {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline std::vector<std::string> name_pool(const std::string& prefix, int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

template <typename T>
std::vector<T> sample_distinct(Rng& rng, std::vector<T> pool, std::size_t k) {
  std::vector<T> out;
  while (out.size() < k && !pool.empty()) {
    const std::size_t j = pick(rng, 0, static_cast<int>(pool.size()) - 1);
    out.push_back(std::move(pool[j]));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free-form subgraphs for round-trip and merge tests.

struct SubgraphOptions {
  int min_units = 1;
  int max_units = 30;
  int max_states = 5;       // per object, at least 1
  int max_ingredients = 4;  // per state, may be 0
};

inline foon::ObjectNode random_object(Rng& rng, const SubgraphOptions& opt) {
  static const std::vector<std::string> names = name_pool("obj", 14);
  static const std::vector<std::string> labels = name_pool("st", 11);
  static const std::vector<std::string> ings = name_pool("ing", 9);

  foon::ObjectNode obj;
  obj.name = names[pick(rng, 0, static_cast<int>(names.size()) - 1)];
  obj.motion_flag = pick(rng, 0, 1);
  for (auto& label : sample_distinct(rng, labels, pick(rng, 1, opt.max_states))) {
    foon::StateDescriptor st;
    st.label = std::move(label);
    if (opt.max_ingredients > 0 && chance(rng, 0.35)) {
      st.ingredients = sample_distinct(rng, ings, pick(rng, 0, opt.max_ingredients));
    }
    obj.states.push_back(std::move(st));
  }
  return obj;
}

inline foon::FunctionalUnit random_unit(Rng& rng, const SubgraphOptions& opt) {
  static const std::vector<std::string> motions = name_pool("mo", 9);

  foon::FunctionalUnit unit;
  const int nin = pick(rng, 1, 3);
  const int nout = pick(rng, 1, 3);
  for (int i = 0; i < nin; ++i) unit.inputs.push_back(random_object(rng, opt));
  for (int i = 0; i < nout; ++i) unit.outputs.push_back(random_object(rng, opt));
  unit.motion.name = motions[pick(rng, 0, static_cast<int>(motions.size()) - 1)];
  if (chance(rng, 0.5)) {
    unit.motion.timestamp_raw =
        "<" + std::to_string(pick(rng, 0, 400)) + "," + std::to_string(pick(rng, 401, 900)) + ">";
  }
  return unit;
}

inline foon::Subgraph random_subgraph(Rng& rng, const SubgraphOptions& opt = {}) {
  foon::Subgraph sub;
  sub.source_label = "gen";
  const int n = pick(rng, opt.min_units, opt.max_units);
  sub.units.reserve(n);
  for (int i = 0; i < n; ++i) sub.units.push_back(random_unit(rng, opt));
  return sub;
}

inline std::vector<foon::UnitKey> keys_of(const foon::Subgraph& sub) {
  std::vector<foon::UnitKey> keys;
  keys.reserve(sub.units.size());
  for (const auto& unit : sub.units) keys.push_back(foon::unit_key(unit));
  return keys;
}

// Cosmetic noise the parser must see through: tab runs become mixed
// space/tab runs, letter case flips at random, blank and comment lines
// appear between the real ones. Unit keys must come out unchanged.
inline std::string mangle_text(Rng& rng, const std::string& text) {
  std::string out;
  out.reserve(text.size() * 2);
  auto emit_gap = [&] {
    const int n = pick(rng, 1, 3);
    for (int i = 0; i < n; ++i) out.push_back(chance(rng, 0.5) ? ' ' : '\t');
  };
  for (char c : text) {
    if (c == '\t') {
      emit_gap();
    } else if (c == '\n') {
      out.push_back('\n');
      if (chance(rng, 0.12)) out += "\n";
      if (chance(rng, 0.12)) out += "# noise line\n";
    } else if (c >= 'a' && c <= 'z' && chance(rng, 0.3)) {
      out.push_back(static_cast<char>(c - 'a' + 'A'));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Planner networks. Identities are created in a fixed global order and every
// producer of an identity consumes only identities created strictly earlier,
// so any per-identity producer choice yields an executable tree. Ingredient
// names never collide with object names here; container shadowing has its
// own dedicated tests.

struct PlannerNetwork {
  foon::Subgraph sub;
  foon::UniversalFOON net;
  foon::Kitchen kitchen;
  foon::GoalSpec goal;
  foon::ObjectIdentity goal_identity;
};

namespace detail {

inline foon::GoalSpec goal_for(const foon::ObjectNode& node) {
  foon::GoalSpec goal;
  goal.name = node.name;
  const foon::ObjectIdentity id = foon::object_identity(node);
  for (const auto& [label, ings] : id.state_keys) {
    goal.required_states.push_back(foon::StateDescriptor{label, ings});
  }
  return goal;
}

}  // namespace detail

inline PlannerNetwork random_layered_network(Rng& rng, int max_units, double echo_prob) {
  static const std::vector<std::string> base_names = name_pool("base", 6);
  static const std::vector<std::string> dish_names = name_pool("dish", 8);
  static const std::vector<std::string> labels = name_pool("st", 10);
  static const std::vector<std::string> flavors = name_pool("flav", 6);
  static const std::vector<std::string> motions = name_pool("mo", 7);

  PlannerNetwork out;
  out.sub.source_label = "gen";

  std::vector<foon::ObjectNode> pool;  // creation order; kitchen entries first
  std::unordered_set<std::string> used;

  auto make_object = [&](const std::vector<std::string>& names) {
    for (int attempt = 0;; ++attempt) {
      foon::ObjectNode node;
      node.name = attempt < 40 ? names[pick(rng, 0, static_cast<int>(names.size()) - 1)]
                               : "extra" + std::to_string(pool.size()) + "_" +
                                     std::to_string(attempt);
      node.motion_flag = pick(rng, 0, 1);
      for (auto& label : sample_distinct(rng, labels, pick(rng, 1, 3))) {
        foon::StateDescriptor st;
        st.label = std::move(label);
        if (chance(rng, 0.25)) st.ingredients = sample_distinct(rng, flavors, pick(rng, 1, 3));
        node.states.push_back(std::move(st));
      }
      if (used.insert(foon::object_identity(node).canonical).second) return node;
    }
  };

  const int n_kitchen = pick(rng, 3, 5);
  for (int i = 0; i < n_kitchen; ++i) {
    foon::ObjectNode node = make_object(base_names);
    out.kitchen.add(node);
    pool.push_back(std::move(node));
  }

  std::vector<std::size_t> produced;  // pool indices some unit outputs
  const int n_units = pick(rng, 1, max_units);
  for (int u = 0; u < n_units; ++u) {
    foon::FunctionalUnit unit;

    std::size_t echo_index = 0;
    bool echo = !produced.empty() && chance(rng, echo_prob);
    if (echo) echo_index = produced[pick(rng, 0, static_cast<int>(produced.size()) - 1)];

    // Inputs predate every output, so a backward walk can never loop.
    const std::size_t input_limit = echo ? echo_index : pool.size();
    std::vector<int> indices(input_limit);
    for (std::size_t i = 0; i < input_limit; ++i) indices[i] = static_cast<int>(i);
    for (int idx : sample_distinct(rng, indices, pick(rng, 1, 3))) {
      unit.inputs.push_back(pool[idx]);
    }

    unit.motion.name = motions[pick(rng, 0, static_cast<int>(motions.size()) - 1)];

    if (echo) unit.outputs.push_back(pool[echo_index]);
    const int fresh = echo ? pick(rng, 0, 1) : pick(rng, 1, 2);
    for (int f = 0; f < fresh; ++f) {
      foon::ObjectNode node = make_object(dish_names);
      pool.push_back(node);
      produced.push_back(pool.size() - 1);
      unit.outputs.push_back(std::move(node));
    }
    out.sub.units.push_back(std::move(unit));
  }

  const std::size_t goal_index =
      produced[pick(rng, static_cast<int>(produced.size()) / 2,
                    static_cast<int>(produced.size()) - 1)];
  out.goal = detail::goal_for(pool[goal_index]);
  out.goal_identity = foon::object_identity(pool[goal_index]);
  out.net = foon::merge({&out.sub, 1});
  return out;
}

inline PlannerNetwork random_solvable_network(Rng& rng, int max_units = 15) {
  return random_layered_network(rng, max_units, 0.30);
}

inline PlannerNetwork random_single_producer_network(Rng& rng, int max_units = 12) {
  return random_layered_network(rng, max_units, 0.0);
}

// ---------------------------------------------------------------------------
// Cyclic planner networks: a closed producer cycle X0 -> X1 -> ... -> X0 plus
// noise. Half the instances break the cycle with a kitchen entry (a valid
// tree exists); the rest hang an unproducible input off one cycle unit, so
// the search must fail cleanly.

struct CyclicNetwork {
  foon::Subgraph sub;
  foon::UniversalFOON net;
  foon::Kitchen kitchen;
  foon::GoalSpec goal;
  bool expect_valid = false;
};

inline CyclicNetwork random_cyclic_network(Rng& rng) {
  CyclicNetwork out;
  out.sub.source_label = "gen";
  out.expect_valid = chance(rng, 0.5);

  const int k = pick(rng, 2, 4);
  std::vector<foon::ObjectNode> ring;
  for (int i = 0; i < k; ++i) {
    foon::ObjectNode node;
    node.name = "cyc" + std::to_string(i);
    node.states.push_back(foon::StateDescriptor{"phase" + std::to_string(i), {}});
    ring.push_back(std::move(node));
  }

  const int phantom_at = pick(rng, 0, k - 1);
  for (int i = 0; i < k; ++i) {
    foon::FunctionalUnit unit;
    unit.inputs.push_back(ring[i]);
    if (!out.expect_valid && i == phantom_at) {
      foon::ObjectNode phantom;
      phantom.name = "phantom";
      phantom.states.push_back(foon::StateDescriptor{"raw", {}});
      unit.inputs.push_back(std::move(phantom));
    }
    unit.motion.name = "mo" + std::to_string(i % 3);
    unit.outputs.push_back(ring[(i + 1) % k]);
    out.sub.units.push_back(std::move(unit));
  }

  // Noise off to the side: kitchen staples feeding unrelated products.
  const int pads = pick(rng, 0, 5);
  for (int p = 0; p < pads; ++p) {
    foon::ObjectNode pad;
    pad.name = "pad" + std::to_string(p);
    pad.states.push_back(foon::StateDescriptor{"raw", {}});
    out.kitchen.add(pad);

    foon::FunctionalUnit unit;
    unit.inputs.push_back(pad);
    unit.motion.name = "mo" + std::to_string(p % 3);
    foon::ObjectNode padded = pad;
    padded.states[0].label = "done";
    unit.outputs.push_back(std::move(padded));
    out.sub.units.push_back(std::move(unit));
  }

  if (out.expect_valid) out.kitchen.add(ring[pick(rng, 0, k - 1)]);
  out.goal = detail::goal_for(ring[pick(rng, 0, k - 1)]);
  out.net = foon::merge({&out.sub, 1});
  return out;
}

// ---------------------------------------------------------------------------
// The complete b-ary tree network: one producer per identity, every chain
// from the goal to the kitchen is exactly `depth` units long.

struct TreeNetwork {
  foon::Subgraph sub;
  foon::UniversalFOON net;
  foon::Kitchen kitchen;
  foon::GoalSpec goal;
};

inline TreeNetwork complete_tree_network(int branching, int depth) {
  TreeNetwork out;
  out.sub.source_label = "tree";

  auto node_at = [](int level, long index) {
    foon::ObjectNode node;
    node.name = "n" + std::to_string(level) + "_" + std::to_string(index);
    node.states.push_back(foon::StateDescriptor{"ready", {}});
    return node;
  };

  long level_count = 1;
  for (int level = 0; level < depth; ++level) {
    for (long i = 0; i < level_count; ++i) {
      foon::FunctionalUnit unit;
      for (int b = 0; b < branching; ++b) {
        unit.inputs.push_back(node_at(level + 1, i * branching + b));
      }
      unit.motion.name = "make";
      unit.outputs.push_back(node_at(level, i));
      out.sub.units.push_back(std::move(unit));
    }
    level_count *= branching;
  }
  for (long i = 0; i < level_count; ++i) out.kitchen.add(node_at(depth, i));

  out.goal = detail::goal_for(node_at(0, 0));
  out.net = foon::merge({&out.sub, 1});
  return out;
}

// ---------------------------------------------------------------------------

inline foon::MotionProbabilities random_probs_for(Rng& rng, const foon::UniversalFOON& net) {
  foon::MotionProbabilities probs;
  for (const auto& unit : net.units()) {
    const std::string name = foon::fold_case(unit.motion.name);
    if (!probs.table.count(name)) {
      probs.table[name] = pick(rng, 0, 100) / 100.0;
    }
  }
  return probs;
}

}  // namespace testgen
