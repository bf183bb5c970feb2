#include "foon/export.hpp"

#include <unordered_set>

#include "json.hpp"

namespace foon {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\' || c == '"') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Already DOT-escaped; "\n" separating name from states must survive as the
// two-character escape, so tokens are escaped piecewise.
std::string object_label(const ObjectIdentity& id) {
  std::string label = dot_escape(id.name);
  for (std::size_t i = 0; i < id.state_keys.size(); ++i) {
    label += i == 0 ? "\\n" : ",";
    label += dot_escape(id.state_keys[i].first);
    if (!id.state_keys[i].second.empty()) {
      label.push_back('{');
      for (std::size_t j = 0; j < id.state_keys[i].second.size(); ++j) {
        if (j > 0) label.push_back(',');
        label += dot_escape(id.state_keys[i].second[j]);
      }
      label.push_back('}');
    }
  }
  return label;
}

}  // namespace

DotDocument to_dot(std::span<const FunctionalUnit> units) {
  std::string text = "digraph foon {\n";

  std::unordered_set<std::string> declared;
  auto declare_object = [&](const ObjectNode& obj) {
    ObjectIdentity id = object_identity(obj);
    if (!declared.insert(id.canonical).second) return;
    text += "  \"" + dot_escape(id.canonical) + "\" [shape=ellipse, label=\"" +
            object_label(id) + "\"];\n";
  };
  for (const FunctionalUnit& unit : units) {
    for (const ObjectNode& obj : unit.inputs) declare_object(obj);
    for (const ObjectNode& obj : unit.outputs) declare_object(obj);
  }

  for (std::size_t i = 0; i < units.size(); ++i) {
    const std::string motion_id = "m" + std::to_string(i);
    text += "  " + motion_id + " [shape=box, label=\"" + dot_escape(fold_case(units[i].motion.name)) +
            " (" + std::to_string(i) + ")\"];\n";
    for (const ObjectNode& obj : units[i].inputs) {
      text += "  \"" + dot_escape(object_identity(obj).canonical) + "\" -> " + motion_id + ";\n";
    }
    for (const ObjectNode& obj : units[i].outputs) {
      text += "  " + motion_id + " -> \"" + dot_escape(object_identity(obj).canonical) + "\";\n";
    }
  }

  text += "}\n";
  return DotDocument{std::move(text)};
}

namespace {

nlohmann::ordered_json object_to_json(const ObjectNode& obj) {
  nlohmann::ordered_json j;
  j["name"] = obj.name;
  j["motion_flag"] = obj.motion_flag;
  auto& states = j["states"] = nlohmann::ordered_json::array();
  for (const StateDescriptor& st : obj.states) {
    nlohmann::ordered_json js;
    js["label"] = st.label;
    js["ingredients"] = st.ingredients;
    states.push_back(std::move(js));
  }
  return j;
}

ObjectNode object_from_json(const nlohmann::ordered_json& j) {
  ObjectNode obj;
  obj.name = j.at("name").get<std::string>();
  obj.motion_flag = j.at("motion_flag").get<int>();
  for (const auto& js : j.at("states")) {
    StateDescriptor st;
    st.label = js.at("label").get<std::string>();
    st.ingredients = js.at("ingredients").get<std::vector<std::string>>();
    obj.states.push_back(std::move(st));
  }
  return obj;
}

}  // namespace

std::string to_structured_dump(std::span<const FunctionalUnit> units) {
  nlohmann::ordered_json doc;
  auto& arr = doc["units"] = nlohmann::ordered_json::array();
  for (const FunctionalUnit& unit : units) {
    nlohmann::ordered_json ju;
    auto& inputs = ju["inputs"] = nlohmann::ordered_json::array();
    for (const ObjectNode& obj : unit.inputs) inputs.push_back(object_to_json(obj));
    auto& motion = ju["motion"] = nlohmann::ordered_json::object();
    motion["name"] = unit.motion.name;
    if (unit.motion.timestamp_raw) {
      motion["timestamp"] = *unit.motion.timestamp_raw;
    } else {
      motion["timestamp"] = nullptr;
    }
    auto& outputs = ju["outputs"] = nlohmann::ordered_json::array();
    for (const ObjectNode& obj : unit.outputs) outputs.push_back(object_to_json(obj));
    arr.push_back(std::move(ju));
  }
  return doc.dump(2) + "\n";
}

Result<std::vector<FunctionalUnit>, ParseError> parse_structured_dump(const std::string& text,
                                                                      std::string source_label) {
  try {
    const nlohmann::ordered_json doc = nlohmann::ordered_json::parse(text);
    std::vector<FunctionalUnit> units;
    for (const auto& ju : doc.at("units")) {
      FunctionalUnit unit;
      for (const auto& jo : ju.at("inputs")) unit.inputs.push_back(object_from_json(jo));
      const auto& motion = ju.at("motion");
      unit.motion.name = motion.at("name").get<std::string>();
      if (!motion.at("timestamp").is_null()) {
        unit.motion.timestamp_raw = motion.at("timestamp").get<std::string>();
      }
      for (const auto& jo : ju.at("outputs")) unit.outputs.push_back(object_from_json(jo));
      units.push_back(normalized(unit));
    }
    return units;
  } catch (const nlohmann::json::exception& ex) {
    return ParseError{std::move(source_label), 0, ParseErrorKind::UnknownLineTag,
                      std::string("not a structured dump: ") + ex.what()};
  }
}

}  // namespace foon
