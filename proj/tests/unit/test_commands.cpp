#include "doctest.h"

#include "biauto/commands.hpp"
#include "biauto/error.hpp"
#include "biauto/io.hpp"

using namespace biauto;

namespace {

nlohmann::ordered_json stable(nlohmann::ordered_json j) {
  j.erase("timing_ms");
  return j;
}

}  // namespace

TEST_CASE("reports are deterministic apart from timing") {
  CommandOptions o;
  o.max_len = 6;
  o.radius = 3;
  for (const auto& name : builtin_names()) {
    auto in = builtin_input(name);
    CHECK(stable(cmd_inspect(in, o).report) == stable(cmd_inspect(in, o).report));
    CHECK(stable(cmd_verify(in, o).report) == stable(cmd_verify(in, o).report));
    CHECK(stable(cmd_quotient(in, o).report).dump() == stable(cmd_quotient(in, o).report).dump());
  }
  auto in = builtin_input("Z2");
  auto a = cmd_fan(in, o), b = cmd_fan(in, o);
  CHECK(stable(a.report) == stable(b.report));
  CHECK(a.artifact == b.artifact);
}

TEST_CASE("report layout") {
  CommandOptions o;
  o.max_len = 6;
  o.radius = 3;
  auto r = cmd_verify(builtin_input("Z2"), o);
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.report.items()) keys.push_back(k);
  CHECK(keys.front() == "command");
  CHECK(keys[1] == "input");
  CHECK(keys.back() == "timing_ms");
  CHECK(r.report["passed"] == r.passed);
  CHECK(r.report["input"]["digest"].get<std::string>().size() == 16);
  for (const auto& c : r.report["checks"]) CHECK(c.contains("property"));
  auto text = render_human(r.report);
  CHECK(text.find("result: PASS") != std::string::npos);
  CHECK(text.find("[PASS] uniqueness") != std::string::npos);
  CHECK_FALSE(r.artifact);
}

TEST_CASE("digest ignores comments and layout") {
  auto bs = builtin("Z2");
  auto text = emit_structure(bs, builtin_center("Z2"));
  auto a = text_input(text), b = text_input("# a comment\n\n" + text);
  CommandOptions o;
  CHECK(cmd_inspect(a, o).report["input"]["digest"] == cmd_inspect(b, o).report["input"]["digest"]);
  CHECK(cmd_inspect(a, o).report["input"]["digest"] == cmd_inspect(builtin_input("Z2"), o).report["input"]["digest"]);
}

TEST_CASE("quotient artifact reloads") {
  CommandOptions o;
  auto q = cmd_quotient(builtin_input("Z2"), o);
  REQUIRE(q.artifact);
  CHECK(q.passed);
  auto h = text_input(*q.artifact);
  CHECK(cmd_verify(h, o).passed);
  o.central = "(1,0),(0,1)";
  CHECK(cmd_quotient(builtin_input("Z2"), o).passed);
  CHECK_THROWS_AS(cmd_fan(builtin_input("F2xZ"), o), Error);
}
