#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "foon/model.hpp"
#include "foon/result.hpp"

// Text formats:
//
//   subgraph file   units of O/S lines, one M line, O/S lines, closed by a
//                   "//" line (the final "//" may be omitted)
//   kitchen file    O/S blocks only; "//" lines are ignored
//   motions file    one "name <tab-or-spaces> probability" pair per line
//
// Tokens are separated by runs of tabs/spaces, blank lines and lines whose
// first non-blank character is '#' are skipped, and every token is
// case-folded on the way in.

namespace foon {

enum class ParseErrorKind {
  UnknownLineTag,
  MissingMotion,
  MultipleMotions,
  EmptyInputs,
  EmptyOutputs,
  BadMotionFlag,
  BadProbability,
  DanglingState,
  UnterminatedUnit,
};

std::string_view to_string(ParseErrorKind kind);

struct ParseError {
  std::string file;
  int line = 0;  // 1-based offending line
  ParseErrorKind kind = ParseErrorKind::UnknownLineTag;
  std::string detail;

  std::string to_string() const;  // "file:line: kind: detail"
};

Result<Subgraph, ParseError> parse_subgraph(std::string_view text,
                                            std::string source_label);

// Canonical text form: tab-separated tokens, "{a,b}" ingredient lists,
// each unit closed by a "//" line. Re-parsing yields the same unit keys.
std::string serialize_subgraph(const Subgraph& sub);

Result<Kitchen, ParseError> parse_kitchen(std::string_view text,
                                          std::string source_label);

// Duplicate motion names keep the last value and append a note to
// *warnings when given.
Result<MotionProbabilities, ParseError> parse_motion_probs(
    std::string_view text, std::string source_label,
    std::vector<std::string>* warnings = nullptr);

// "label" or "label{a,b}" as used for goal states on the command line.
Result<StateDescriptor, std::string> parse_state_token(std::string_view token);

}  // namespace foon
