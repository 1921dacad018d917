#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biauto/structure.hpp"

namespace biauto {

/// Structure file contents.
///
///   # comment
///   [alphabet]
///   a A b B
///   [model]
///   abelian 2            (or: abelian RANK torsion M..., free NAME..., one factor per line)
///   [generators]
///   a = (1,0)
///   [acceptor]
///   states S Sa dead
///   start S
///   accept S Sa
///   S a Sa               (from letter to; missing transitions go to an added sink)
///   [structure]
///   K 2
///   z (1,1)
struct StructureFile {
  BiautomaticStructure structure;
  std::optional<Element> z;
};

/// Throws Parse with "line L, column C" positions.
StructureFile parse_structure(std::string_view text);
StructureFile load_structure(const std::string& path);

std::string emit_structure(const BiautomaticStructure& bs, const std::optional<Element>& z = std::nullopt);

/// Comma-separated elements; commas inside brackets or parentheses do not split.
std::vector<Element> parse_element_list(const Group& g, std::string_view text);

/// "p/q" or a decimal literal.
double parse_rational(std::string_view text);

/// FNV-1a 64-bit, rendered as 16 hex digits.
std::string digest(std::string_view text);

}  // namespace biauto
