#include "foon/parser.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

namespace foon {

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnknownLineTag: return "unknown-line-tag";
    case ParseErrorKind::MissingMotion: return "missing-motion";
    case ParseErrorKind::MultipleMotions: return "multiple-motions";
    case ParseErrorKind::EmptyInputs: return "empty-inputs";
    case ParseErrorKind::EmptyOutputs: return "empty-outputs";
    case ParseErrorKind::BadMotionFlag: return "bad-motion-flag";
    case ParseErrorKind::BadProbability: return "bad-probability";
    case ParseErrorKind::DanglingState: return "dangling-state";
    case ParseErrorKind::UnterminatedUnit: return "unterminated-unit";
  }
  return "parse-error";
}

std::string ParseError::to_string() const {
  std::string out = file;
  out += ':';
  out += std::to_string(line);
  out += ": ";
  out += foon::to_string(kind);
  out += ": ";
  out += detail;
  return out;
}

namespace {

struct Tok {
  std::string_view text;
  std::size_t pos = 0;
};

std::vector<Tok> tokenize(std::string_view line) {
  std::vector<Tok> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    toks.push_back({line.substr(i, j - i), i});
    i = j;
  }
  return toks;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Raw text following token i, with surrounding blanks removed.
std::string_view remainder_after(std::string_view line, const Tok& tok) {
  return trim(line.substr(tok.pos + tok.text.size()));
}

bool blank_or_comment(std::string_view line) {
  std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

struct LineIssue {
  ParseErrorKind kind;
  std::string detail;
};

std::optional<LineIssue> read_object_line(const std::vector<Tok>& toks, ObjectNode& out) {
  if (toks.size() < 2) {
    return LineIssue{ParseErrorKind::UnknownLineTag, "object line is missing a name"};
  }
  if (!is_token(toks[1].text)) {
    return LineIssue{ParseErrorKind::UnknownLineTag, "malformed object name"};
  }
  if (toks.size() < 3) {
    return LineIssue{ParseErrorKind::BadMotionFlag,
                     "object line is missing its motion flag (0 or 1)"};
  }
  if (toks.size() > 3) {
    return LineIssue{ParseErrorKind::UnknownLineTag,
                     "unexpected token '" + std::string(toks[3].text) + "' after motion flag"};
  }
  if (toks[2].text != "0" && toks[2].text != "1") {
    return LineIssue{ParseErrorKind::BadMotionFlag,
                     "motion flag must be 0 or 1, got '" + std::string(toks[2].text) + "'"};
  }
  out.name = fold_case(toks[1].text);
  out.motion_flag = toks[2].text == "1" ? 1 : 0;
  out.states.clear();
  return std::nullopt;
}

// body is everything after the S tag: "label", "label{a,b}" or "label {a,b}".
std::optional<LineIssue> read_state_body(std::string_view body, StateDescriptor& out) {
  out = {};
  if (body.empty()) {
    return LineIssue{ParseErrorKind::UnknownLineTag, "state line is missing a label"};
  }
  std::string_view label_part = body;
  std::string_view brace_part;
  if (std::size_t brace = body.find('{'); brace != std::string_view::npos) {
    label_part = trim(body.substr(0, brace));
    brace_part = body.substr(brace);
  }
  if (label_part.empty()) {
    return LineIssue{ParseErrorKind::UnknownLineTag, "state line is missing a label"};
  }
  if (!is_token(label_part) || label_part.find(' ') != std::string_view::npos ||
      label_part.find('\t') != std::string_view::npos) {
    return LineIssue{ParseErrorKind::UnknownLineTag,
                     "unexpected token after state label '" + std::string(label_part) + "'"};
  }
  if (reserved_state_label(label_part)) {
    return LineIssue{ParseErrorKind::UnknownLineTag,
                     "reserved token '" + std::string(label_part) + "' used as a state label"};
  }
  out.label = fold_case(label_part);
  if (brace_part.empty()) return std::nullopt;
  if (brace_part.size() < 2 || brace_part.back() != '}') {
    return LineIssue{ParseErrorKind::UnknownLineTag, "unterminated ingredient list"};
  }
  std::string_view inside = brace_part.substr(1, brace_part.size() - 2);
  if (trim(inside).empty()) return std::nullopt;  // "{}" carries nothing
  std::size_t start = 0;
  while (start <= inside.size()) {
    std::size_t comma = inside.find(',', start);
    std::string_view piece =
        trim(inside.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (!is_token(piece)) {
      return LineIssue{ParseErrorKind::UnknownLineTag,
                       "bad ingredient entry in '" + std::string(brace_part) + "'"};
    }
    std::string folded = fold_case(piece);
    if (std::find(out.ingredients.begin(), out.ingredients.end(), folded) ==
        out.ingredients.end()) {
      out.ingredients.push_back(std::move(folded));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return std::nullopt;
}

std::optional<LineIssue> read_motion_line(const std::vector<Tok>& toks, std::string_view line,
                                          MotionNode& out) {
  out = {};
  if (toks.size() < 2 || toks[1].text.front() == '<') {
    return LineIssue{ParseErrorKind::UnknownLineTag, "motion line is missing a name"};
  }
  if (!is_token(toks[1].text)) {
    return LineIssue{ParseErrorKind::UnknownLineTag, "malformed motion name"};
  }
  out.name = fold_case(toks[1].text);
  std::string_view rest = remainder_after(line, toks[1]);
  if (rest.empty()) return std::nullopt;
  if (rest.size() < 2 || rest.front() != '<' || rest.back() != '>') {
    return LineIssue{ParseErrorKind::UnknownLineTag,
                     "malformed timestamp annotation '" + std::string(rest) + "'"};
  }
  out.timestamp_raw = std::string(rest);
  return std::nullopt;
}

void attach_state(ObjectNode& obj, StateDescriptor state) {
  const StateKey key = state_key(state);
  for (const auto& existing : obj.states) {
    if (state_key(existing) == key) return;  // duplicate S lines collapse
  }
  obj.states.push_back(std::move(state));
}

// Walks lines of text, handing each non-blank, non-comment line to fn along
// with its 1-based number. fn returns false to stop.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    if (pos == text.size() && line_no > 0) break;
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!blank_or_comment(line)) {
      if (!fn(line, line_no)) return;
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

}  // namespace

Result<Subgraph, ParseError> parse_subgraph(std::string_view text, std::string source_label) {
  Subgraph sub;
  sub.source_label = source_label;

  FunctionalUnit cur;
  bool in_unit = false;       // any O/S/M line since the last "//"
  bool have_motion = false;   // cur already has its M line
  bool have_cur_obj = false;  // an O line is open in the current phase
  int last_line = 0;
  std::optional<ParseError> failure;

  auto fail = [&](int line, ParseErrorKind kind, std::string detail) {
    failure = ParseError{source_label, line, kind, std::move(detail)};
    return false;
  };

  for_each_line(text, [&](std::string_view line, int line_no) {
    last_line = line_no;
    const std::vector<Tok> toks = tokenize(line);
    const std::string tag = fold_case(toks[0].text);
    if (tag == "//") {
      if (!in_unit) return true;  // separators around empty space are fine
      if (!have_motion) return fail(line_no, ParseErrorKind::MissingMotion,
                                    "unit closed without a motion line");
      if (cur.inputs.empty())
        return fail(line_no, ParseErrorKind::EmptyInputs, "unit has no input objects");
      if (cur.outputs.empty())
        return fail(line_no, ParseErrorKind::EmptyOutputs, "unit has no output objects");
      sub.units.push_back(std::move(cur));
      cur = {};
      in_unit = have_motion = have_cur_obj = false;
      return true;
    }
    if (tag == "o") {
      ObjectNode obj;
      if (auto issue = read_object_line(toks, obj))
        return fail(line_no, issue->kind, std::move(issue->detail));
      (have_motion ? cur.outputs : cur.inputs).push_back(std::move(obj));
      in_unit = true;
      have_cur_obj = true;
      return true;
    }
    if (tag == "s") {
      if (!have_cur_obj)
        return fail(line_no, ParseErrorKind::DanglingState,
                    "state line without a preceding object line");
      StateDescriptor state;
      if (auto issue = read_state_body(remainder_after(line, toks[0]), state))
        return fail(line_no, issue->kind, std::move(issue->detail));
      attach_state((have_motion ? cur.outputs : cur.inputs).back(), std::move(state));
      return true;
    }
    if (tag == "m") {
      in_unit = true;  // a unit may begin with its motion line
      if (have_motion)
        return fail(line_no, ParseErrorKind::MultipleMotions, "unit already has a motion line");
      if (auto issue = read_motion_line(toks, line, cur.motion))
        return fail(line_no, issue->kind, std::move(issue->detail));
      have_motion = true;
      have_cur_obj = false;  // states after M need their own O line
      return true;
    }
    return fail(line_no, ParseErrorKind::UnknownLineTag,
                "unknown line tag '" + std::string(toks[0].text) + "'");
  });

  if (failure) return *failure;
  if (in_unit) {
    // Trailing "//" is optional, but only for a finished unit.
    if (have_motion && !cur.inputs.empty() && !cur.outputs.empty()) {
      sub.units.push_back(std::move(cur));
    } else {
      std::string missing = !have_motion          ? "motion line"
                            : cur.inputs.empty()  ? "input objects"
                                                  : "output objects";
      return ParseError{source_label, last_line, ParseErrorKind::UnterminatedUnit,
                        "input ended inside a unit that still lacks its " + missing};
    }
  }
  return sub;
}

std::string serialize_subgraph(const Subgraph& sub) {
  std::string out;
  auto emit_object = [&out](const ObjectNode& obj) {
    out += "O\t";
    out += obj.name;
    out += '\t';
    out += obj.motion_flag ? '1' : '0';
    out += '\n';
    for (const auto& s : obj.states) {
      out += "S\t";
      out += s.label;
      if (!s.ingredients.empty()) {
        out += "\t{";
        for (std::size_t i = 0; i < s.ingredients.size(); ++i) {
          if (i) out += ',';
          out += s.ingredients[i];
        }
        out += '}';
      }
      out += '\n';
    }
  };
  for (const auto& unit : sub.units) {
    for (const auto& obj : unit.inputs) emit_object(obj);
    out += "M\t";
    out += unit.motion.name;
    if (unit.motion.timestamp_raw) {
      out += '\t';
      out += *unit.motion.timestamp_raw;
    }
    out += '\n';
    for (const auto& obj : unit.outputs) emit_object(obj);
    out += "//\n";
  }
  return out;
}

Result<Kitchen, ParseError> parse_kitchen(std::string_view text, std::string source_label) {
  Kitchen kitchen;
  ObjectNode cur;
  bool have_cur = false;
  std::optional<ParseError> failure;

  auto fail = [&](int line, ParseErrorKind kind, std::string detail) {
    failure = ParseError{source_label, line, kind, std::move(detail)};
    return false;
  };

  for_each_line(text, [&](std::string_view line, int line_no) {
    const std::vector<Tok> toks = tokenize(line);
    const std::string tag = fold_case(toks[0].text);
    if (tag == "//") return true;  // separators carry no meaning here
    if (tag == "o") {
      if (have_cur) kitchen.add(std::move(cur));
      cur = {};
      if (auto issue = read_object_line(toks, cur))
        return fail(line_no, issue->kind, std::move(issue->detail));
      have_cur = true;
      return true;
    }
    if (tag == "s") {
      if (!have_cur)
        return fail(line_no, ParseErrorKind::DanglingState,
                    "state line without a preceding object line");
      StateDescriptor state;
      if (auto issue = read_state_body(remainder_after(line, toks[0]), state))
        return fail(line_no, issue->kind, std::move(issue->detail));
      attach_state(cur, std::move(state));
      return true;
    }
    if (tag == "m") {
      return fail(line_no, ParseErrorKind::UnknownLineTag,
                  "motion lines are not allowed in a kitchen file");
    }
    return fail(line_no, ParseErrorKind::UnknownLineTag,
                "unknown line tag '" + std::string(toks[0].text) + "'");
  });

  if (failure) return *failure;
  if (have_cur) kitchen.add(std::move(cur));
  return kitchen;
}

Result<MotionProbabilities, ParseError> parse_motion_probs(std::string_view text,
                                                           std::string source_label,
                                                           std::vector<std::string>* warnings) {
  MotionProbabilities probs;
  std::optional<ParseError> failure;

  for_each_line(text, [&](std::string_view line, int line_no) {
    const std::vector<Tok> toks = tokenize(line);
    auto fail = [&](std::string detail) {
      failure = ParseError{source_label, line_no, ParseErrorKind::BadProbability,
                           std::move(detail)};
      return false;
    };
    if (toks.size() < 2) return fail("line is missing a probability value");
    if (toks.size() > 2)
      return fail("unexpected token '" + std::string(toks[2].text) + "' after probability");
    if (!is_token(toks[0].text)) return fail("malformed motion name");
    const std::string name = fold_case(toks[0].text);
    const std::string_view value = toks[1].text;
    double p = -1.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), p);
    if (ec != std::errc{} || end != value.data() + value.size() || !(p >= 0.0 && p <= 1.0)) {
      return fail("probability must be a number in [0,1], got '" + std::string(value) + "'");
    }
    if (probs.table.count(name) && warnings) {
      warnings->push_back(source_label + ":" + std::to_string(line_no) + ": duplicate motion '" +
                          name + "' overrides the earlier value");
    }
    probs.table[name] = p;  // last entry wins
    return true;
  });

  if (failure) return *failure;
  return probs;
}

Result<StateDescriptor, std::string> parse_state_token(std::string_view token) {
  StateDescriptor state;
  if (auto issue = read_state_body(trim(token), state)) {
    return std::string("bad state token '") + std::string(token) + "': " + issue->detail;
  }
  return state;
}

}  // namespace foon
