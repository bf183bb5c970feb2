#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

// Core domain types shared by every other module. All stored tokens are
// case-folded; comparisons are therefore plain byte comparisons.

namespace foon {

// ASCII lower-casing; bytes outside A-Z pass through untouched.
std::string fold_case(std::string_view s);

// A token is a non-empty string with no whitespace in it.
bool is_token(std::string_view s);

// State labels must not collide with the line tags of the text format.
bool reserved_state_label(std::string_view label);

struct StateDescriptor {
  std::string label;
  // Contents list, kept in file order. Empty for plain states.
  std::vector<std::string> ingredients;

  bool operator==(const StateDescriptor&) const = default;
};

// Comparison form of a state: folded label plus sorted folded ingredients.
using StateKey = std::pair<std::string, std::vector<std::string>>;
StateKey state_key(const StateDescriptor& s);

struct ObjectNode {
  std::string name;
  int motion_flag = 0;  // 1 while the object moves during the action
  std::vector<StateDescriptor> states;  // file order, unique per state_key

  bool operator==(const ObjectNode&) const = default;
};

// Matching key answering "is this the same object": name plus sorted state
// keys. Deliberately ignores motion_flag and all source-file ordering.
struct ObjectIdentity {
  std::string name;
  std::vector<StateKey> state_keys;
  // Flat unambiguous encoding of the fields above; tokens carry no
  // whitespace, so tabs separate states and spaces separate ingredients.
  std::string canonical;

  bool operator==(const ObjectIdentity& o) const { return canonical == o.canonical; }
  std::strong_ordering operator<=>(const ObjectIdentity& o) const {
    return canonical <=> o.canonical;
  }

  // Human-readable form for diagnostics, e.g. carrot [orange, unpeeled].
  std::string display() const;
};

struct MotionNode {
  std::string name;
  // Verbatim "<start,end>" annotation when the source line carried one.
  std::optional<std::string> timestamp_raw;

  bool operator==(const MotionNode&) const = default;
};

struct FunctionalUnit {
  std::vector<ObjectNode> inputs;   // at least one
  MotionNode motion;
  std::vector<ObjectNode> outputs;  // at least one

  bool operator==(const FunctionalUnit&) const = default;
};

// Dedup key for functional units. Insensitive to object order, state order
// and timestamps; sensitive to names, motion flags and state content.
struct UnitKey {
  std::string canonical_form;

  bool operator==(const UnitKey&) const = default;
  auto operator<=>(const UnitKey&) const = default;
};

struct Subgraph {
  std::vector<FunctionalUnit> units;  // file order
  std::string source_label;
};

// Objects available before any step runs. One entry per ObjectIdentity.
class Kitchen {
 public:
  // Ignored when an entry with the same identity is already present.
  void add(ObjectNode node);
  bool available(const ObjectIdentity& id) const;
  const std::vector<ObjectNode>& entries() const { return entries_; }
  std::vector<ObjectIdentity> identities() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<ObjectNode> entries_;
  std::unordered_set<std::string> canon_;
};

struct GoalSpec {
  std::string name;
  std::vector<StateDescriptor> required_states;
};

struct MotionProbabilities {
  std::unordered_map<std::string, double> table;  // folded name -> [0,1]
  std::optional<double> default_prob;

  // Table entry if present, else the default, else nothing.
  std::optional<double> lookup(std::string_view motion) const;
};

struct TaskTree {
  std::vector<FunctionalUnit> steps;  // execution order
  GoalSpec goal;
};

ObjectIdentity object_identity(const ObjectNode& node);
UnitKey unit_key(const FunctionalUnit& unit);

// Case-fold everything and drop duplicates (first occurrence wins).
StateDescriptor normalized(StateDescriptor s);
ObjectNode normalized(ObjectNode node);
FunctionalUnit normalized(FunctionalUnit unit);

}  // namespace foon

template <>
struct std::hash<foon::ObjectIdentity> {
  std::size_t operator()(const foon::ObjectIdentity& id) const noexcept {
    return std::hash<std::string>{}(id.canonical);
  }
};

template <>
struct std::hash<foon::UnitKey> {
  std::size_t operator()(const foon::UnitKey& k) const noexcept {
    return std::hash<std::string>{}(k.canonical_form);
  }
};
