#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "biauto/io.hpp"

namespace biauto {

struct CommandInput {
  StructureFile file;
  std::string source;  // "builtin:NAME" or the file path
};

struct CommandOptions {
  std::size_t max_len = 10;
  std::size_t radius = 6;
  std::string epsilon = "1/2";
  std::optional<std::string> central;  // comma-separated elements for quotient
};

struct CommandResult {
  nlohmann::ordered_json report;
  bool passed = true;
  std::optional<std::string> artifact;  // emitted structure or subdivision listing
};

CommandInput builtin_input(const std::string& name);
CommandInput file_input(const std::string& path);
CommandInput text_input(const std::string& text);

CommandResult cmd_inspect(const CommandInput& in, const CommandOptions& options);
CommandResult cmd_verify(const CommandInput& in, const CommandOptions& options);
CommandResult cmd_quotient(const CommandInput& in, const CommandOptions& options);
CommandResult cmd_fan(const CommandInput& in, const CommandOptions& options);

nlohmann::ordered_json to_json(const VerificationReport& r);
nlohmann::ordered_json to_json(const Automaton& m);

/// Text rendering of a report document; carries the same fields.
std::string render_human(const nlohmann::ordered_json& report);

}  // namespace biauto
