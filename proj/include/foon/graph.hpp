#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "foon/model.hpp"

namespace foon {

// The deduplicated union of many subgraphs. Immutable once merged; share it
// freely across threads.
class UniversalFOON {
 public:
  const std::vector<FunctionalUnit>& units() const { return units_; }
  const std::vector<UnitKey>& keys() const { return keys_; }
  const std::vector<std::string>& sources() const { return sources_; }

  bool contains_key(const UnitKey& key) const { return key_to_pos_.count(key.canonical_form) > 0; }
  std::optional<std::size_t> position_of(const UnitKey& key) const;

  // Positions of units producing id, strictly increasing; nullptr when none.
  const std::vector<std::size_t>* producer_positions(const ObjectIdentity& id) const;

  // First-seen order; this order defines "first candidate" for the planner.
  std::vector<const FunctionalUnit*> producers_of(const ObjectIdentity& id) const;

  // Every identity that some unit outputs, in first-seen order.
  const std::vector<ObjectIdentity>& output_identities() const { return output_identities_; }

 private:
  friend UniversalFOON merge(std::span<const Subgraph> subgraphs);

  std::vector<FunctionalUnit> units_;
  std::vector<UnitKey> keys_;  // aligned with units_
  std::vector<std::string> sources_;
  std::unordered_map<std::string, std::size_t> key_to_pos_;
  std::unordered_map<ObjectIdentity, std::vector<std::size_t>> producer_index_;
  std::vector<ObjectIdentity> output_identities_;
};

struct NetworkStats {
  std::size_t unit_count = 0;
  std::size_t unique_motion_count = 0;
  std::size_t unique_object_identity_count = 0;  // over inputs and outputs
  std::size_t source_count = 0;
};

// Units are appended in subgraph order then file order; a unit whose key is
// already present is skipped, so the earlier copy (and its timestamps) wins.
UniversalFOON merge(std::span<const Subgraph> subgraphs);

NetworkStats stats(const UniversalFOON& net);

}  // namespace foon
