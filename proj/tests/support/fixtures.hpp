#pragma once

// Small hand-built networks shared across test files.

#include <string>

#include "foon/graph.hpp"
#include "foon/model.hpp"

namespace testfix {

inline foon::ObjectNode object(std::string name, std::vector<std::string> labels,
                               int motion_flag = 0) {
  foon::ObjectNode obj;
  obj.name = std::move(name);
  obj.motion_flag = motion_flag;
  for (auto& label : labels) obj.states.push_back(foon::StateDescriptor{std::move(label), {}});
  return obj;
}

inline foon::ObjectNode container(std::string name, std::string label,
                                  std::vector<std::string> contents) {
  foon::ObjectNode obj;
  obj.name = std::move(name);
  obj.states.push_back(foon::StateDescriptor{std::move(label), std::move(contents)});
  return obj;
}

// One unit: carrot + peeler, peel, peeled carrot + dirty peeler.
inline foon::FunctionalUnit peel_unit() {
  foon::FunctionalUnit unit;
  unit.inputs.push_back(object("carrot", {"unpeeled", "orange"}));
  unit.inputs.push_back(object("peeler", {"clean", "sharp"}, 1));
  unit.motion.name = "peel";
  unit.motion.timestamp_raw = "<5,10>";
  unit.outputs.push_back(object("carrot", {"peeled", "orange"}));
  unit.outputs.push_back(object("peeler", {"dirty", "sharp"}));
  return unit;
}

inline std::string peel_text() {
  return
      "O\tcarrot\t0\n"
      "S\tunpeeled\n"
      "S\torange\n"
      "O\tpeeler\t1\n"
      "S\tclean\n"
      "S\tsharp\n"
      "M\tpeel\t<5,10>\n"
      "O\tcarrot\t0\n"
      "S\tpeeled\n"
      "S\torange\n"
      "O\tpeeler\t0\n"
      "S\tdirty\n"
      "S\tsharp\n"
      "//\n";
}

inline foon::Kitchen peel_kitchen() {
  foon::Kitchen kitchen;
  kitchen.add(object("carrot", {"unpeeled", "orange"}));
  kitchen.add(object("peeler", {"clean", "sharp"}, 1));
  return kitchen;
}

// Linear chain: item s0 -> s1 -> ... -> sN, kitchen holds item s0.
struct ChainNetwork {
  foon::Subgraph sub;
  foon::UniversalFOON net;
  foon::Kitchen kitchen;
  foon::GoalSpec goal;  // item at sN
};

inline ChainNetwork chain_network(int length) {
  ChainNetwork out;
  out.sub.source_label = "chain";
  for (int i = 0; i < length; ++i) {
    foon::FunctionalUnit unit;
    unit.inputs.push_back(object("item", {"s" + std::to_string(i)}));
    unit.motion.name = "step" + std::to_string(i);
    unit.outputs.push_back(object("item", {"s" + std::to_string(i + 1)}));
    out.sub.units.push_back(std::move(unit));
  }
  out.kitchen.add(object("item", {"s0"}));
  out.goal.name = "item";
  out.goal.required_states.push_back(foon::StateDescriptor{"s" + std::to_string(length), {}});
  out.net = foon::merge({&out.sub, 1});
  return out;
}

// Goal object "stew" producible two ways: a roast unit with four distinct
// inputs or a zap unit with one. All leaf inputs sit in the kitchen.
struct DiamondNetwork {
  foon::Subgraph sub;
  foon::UniversalFOON net;
  foon::Kitchen kitchen;
  foon::GoalSpec goal;
  foon::MotionProbabilities probs;  // roast 0.9, zap 0.3
};

inline DiamondNetwork diamond_network() {
  DiamondNetwork out;
  out.sub.source_label = "diamond";

  foon::FunctionalUnit roast;
  for (const char* name : {"beef", "bone", "leek", "turnip"}) {
    roast.inputs.push_back(object(name, {"raw"}));
    out.kitchen.add(object(name, {"raw"}));
  }
  roast.motion.name = "roast";
  roast.outputs.push_back(object("stew", {"hot"}));
  out.sub.units.push_back(std::move(roast));

  foon::FunctionalUnit zap;
  zap.inputs.push_back(object("packet", {"sealed"}));
  out.kitchen.add(object("packet", {"sealed"}));
  zap.motion.name = "zap";
  zap.outputs.push_back(object("stew", {"hot"}));
  out.sub.units.push_back(std::move(zap));

  out.goal.name = "stew";
  out.goal.required_states.push_back(foon::StateDescriptor{"hot", {}});
  out.probs.table["roast"] = 0.9;
  out.probs.table["zap"] = 0.3;
  out.net = foon::merge({&out.sub, 1});
  return out;
}

}  // namespace testfix
