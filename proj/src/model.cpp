#include "foon/model.hpp"

#include <algorithm>
#include <cctype>

namespace foon {

std::string fold_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_token(std::string_view s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (std::isspace(c)) return false;
  }
  return true;
}

bool reserved_state_label(std::string_view label) {
  const std::string f = fold_case(label);
  return f == "o" || f == "m" || f == "s" || f == "//";
}

StateKey state_key(const StateDescriptor& s) {
  StateKey key;
  key.first = fold_case(s.label);
  key.second.reserve(s.ingredients.size());
  for (const auto& ing : s.ingredients) key.second.push_back(fold_case(ing));
  std::sort(key.second.begin(), key.second.end());
  key.second.erase(std::unique(key.second.begin(), key.second.end()), key.second.end());
  return key;
}

StateDescriptor normalized(StateDescriptor s) {
  s.label = fold_case(s.label);
  std::vector<std::string> out;
  out.reserve(s.ingredients.size());
  for (auto& ing : s.ingredients) {
    std::string f = fold_case(ing);
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  }
  s.ingredients = std::move(out);
  return s;
}

ObjectNode normalized(ObjectNode node) {
  node.name = fold_case(node.name);
  std::vector<StateDescriptor> states;
  std::vector<StateKey> seen;
  states.reserve(node.states.size());
  for (auto& s : node.states) {
    StateDescriptor n = normalized(std::move(s));
    StateKey k = state_key(n);
    if (std::find(seen.begin(), seen.end(), k) == seen.end()) {
      seen.push_back(std::move(k));
      states.push_back(std::move(n));
    }
  }
  node.states = std::move(states);
  return node;
}

FunctionalUnit normalized(FunctionalUnit unit) {
  for (auto& o : unit.inputs) o = normalized(std::move(o));
  for (auto& o : unit.outputs) o = normalized(std::move(o));
  unit.motion.name = fold_case(unit.motion.name);
  return unit;
}

namespace {

// One line per object: name, optional flag digit, then each state key as
// "\t" label plus " " ingredient... Tokens never contain whitespace, which
// makes the encoding unambiguous.
void append_state_keys(std::string& out, const std::vector<StateKey>& keys) {
  for (const auto& [label, ings] : keys) {
    out += '\t';
    out += label;
    for (const auto& ing : ings) {
      out += ' ';
      out += ing;
    }
  }
}

std::vector<StateKey> sorted_state_keys(const ObjectNode& node) {
  std::vector<StateKey> keys;
  keys.reserve(node.states.size());
  for (const auto& s : node.states) keys.push_back(state_key(s));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::string object_line_with_flag(const ObjectNode& node) {
  std::string line = fold_case(node.name);
  line += '\t';
  line += node.motion_flag ? '1' : '0';
  append_state_keys(line, sorted_state_keys(node));
  return line;
}

}  // namespace

ObjectIdentity object_identity(const ObjectNode& node) {
  ObjectIdentity id;
  id.name = fold_case(node.name);
  id.state_keys = sorted_state_keys(node);
  id.canonical = id.name;
  append_state_keys(id.canonical, id.state_keys);
  return id;
}

UnitKey unit_key(const FunctionalUnit& unit) {
  std::vector<std::string> in_lines, out_lines;
  in_lines.reserve(unit.inputs.size());
  out_lines.reserve(unit.outputs.size());
  for (const auto& o : unit.inputs) in_lines.push_back(object_line_with_flag(o));
  for (const auto& o : unit.outputs) out_lines.push_back(object_line_with_flag(o));
  std::sort(in_lines.begin(), in_lines.end());
  std::sort(out_lines.begin(), out_lines.end());

  std::string key;
  for (const auto& l : in_lines) {
    key += "I\t";
    key += l;
    key += '\n';
  }
  key += "M\t";
  key += fold_case(unit.motion.name);
  key += '\n';
  for (const auto& l : out_lines) {
    key += "O\t";
    key += l;
    key += '\n';
  }
  return UnitKey{std::move(key)};
}

std::string ObjectIdentity::display() const {
  if (state_keys.empty()) return name;
  std::string out = name;
  out += " [";
  bool first_state = true;
  for (const auto& [label, ings] : state_keys) {
    if (!first_state) out += ", ";
    first_state = false;
    out += label;
    if (!ings.empty()) {
      out += '{';
      for (std::size_t i = 0; i < ings.size(); ++i) {
        if (i) out += ',';
        out += ings[i];
      }
      out += '}';
    }
  }
  out += ']';
  return out;
}

void Kitchen::add(ObjectNode node) {
  ObjectNode n = normalized(std::move(node));
  ObjectIdentity id = object_identity(n);
  if (canon_.insert(id.canonical).second) entries_.push_back(std::move(n));
}

bool Kitchen::available(const ObjectIdentity& id) const {
  return canon_.count(id.canonical) > 0;
}

std::vector<ObjectIdentity> Kitchen::identities() const {
  std::vector<ObjectIdentity> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(object_identity(e));
  return out;
}

std::optional<double> MotionProbabilities::lookup(std::string_view motion) const {
  auto it = table.find(fold_case(motion));
  if (it != table.end()) return it->second;
  return default_prob;
}

}  // namespace foon
