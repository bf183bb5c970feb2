#pragma once

#include <span>
#include <string>
#include <vector>

#include "foon/model.hpp"
#include "foon/parser.hpp"
#include "foon/result.hpp"

namespace foon {

struct DotDocument {
  std::string text;
};

// One ellipse per distinct object identity, one box per unit's motion,
// edges input -> motion -> output. Output is deterministic for a given
// unit list.
DotDocument to_dot(std::span<const FunctionalUnit> units);

// JSON dump of a unit list with fixed field order. Deterministic for a
// given unit list.
std::string to_structured_dump(std::span<const FunctionalUnit> units);

// Reads a dump produced by to_structured_dump back into units.
Result<std::vector<FunctionalUnit>, ParseError> parse_structured_dump(const std::string& text,
                                                                      std::string source_label);

}  // namespace foon
