#include "foon/graph.hpp"

#include <unordered_set>

namespace foon {

std::optional<std::size_t> UniversalFOON::position_of(const UnitKey& key) const {
  auto it = key_to_pos_.find(key.canonical_form);
  if (it == key_to_pos_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>* UniversalFOON::producer_positions(
    const ObjectIdentity& id) const {
  auto it = producer_index_.find(id);
  if (it == producer_index_.end()) return nullptr;
  return &it->second;
}

std::vector<const FunctionalUnit*> UniversalFOON::producers_of(const ObjectIdentity& id) const {
  std::vector<const FunctionalUnit*> out;
  if (const auto* positions = producer_positions(id)) {
    out.reserve(positions->size());
    for (std::size_t pos : *positions) out.push_back(&units_[pos]);
  }
  return out;
}

UniversalFOON merge(std::span<const Subgraph> subgraphs) {
  UniversalFOON net;
  for (const Subgraph& sub : subgraphs) {
    net.sources_.push_back(sub.source_label);
    for (const FunctionalUnit& unit : sub.units) {
      UnitKey key = unit_key(unit);
      if (!net.key_to_pos_.emplace(key.canonical_form, net.units_.size()).second) {
        continue;  // exact repeat, first copy wins
      }
      const std::size_t pos = net.units_.size();
      net.units_.push_back(unit);
      net.keys_.push_back(std::move(key));
      for (const ObjectNode& out : net.units_.back().outputs) {
        ObjectIdentity id = object_identity(out);
        auto [it, inserted] = net.producer_index_.try_emplace(id);
        if (inserted) net.output_identities_.push_back(id);
        // outputs may repeat an identity within one unit; index it once
        if (it->second.empty() || it->second.back() != pos) it->second.push_back(pos);
      }
    }
  }
  return net;
}

NetworkStats stats(const UniversalFOON& net) {
  NetworkStats s;
  s.unit_count = net.units().size();
  s.source_count = net.sources().size();
  std::unordered_set<std::string> motions;
  std::unordered_set<std::string> identities;
  for (const FunctionalUnit& unit : net.units()) {
    motions.insert(fold_case(unit.motion.name));
    for (const ObjectNode& o : unit.inputs) identities.insert(object_identity(o).canonical);
    for (const ObjectNode& o : unit.outputs) identities.insert(object_identity(o).canonical);
  }
  s.unique_motion_count = motions.size();
  s.unique_object_identity_count = identities.size();
  return s;
}

}  // namespace foon
