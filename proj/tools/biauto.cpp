#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "biauto/biauto.h"

namespace {

// Exit codes: 0 all checks passed, 1 some check failed, 2 usage/input/parse
// error, 3 precondition or structural error, 4 resource limit, 5 internal.
int exit_code(bia_status s) {
  switch (s) {
    case BIA_OK: return 0;
    case BIA_ERR_INPUT:
    case BIA_ERR_PARSE: return 2;
    case BIA_ERR_PRECONDITION:
    case BIA_ERR_STRUCTURAL: return 3;
    case BIA_ERR_RESOURCE: return 4;
    default: return 5;
  }
}

int report_error(bia_status s) {
  std::cerr << "biauto: " << bia_last_error() << '\n';
  return exit_code(s);
}

struct Args {
  std::string builtin, file, z, central, epsilon = "1/2", out, format = "human";
  std::size_t max_len = 10, radius = 6;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word acceptors for groups: verification, central quotients and fans"};
  app.require_subcommand(1);
  Args a;
  std::string names;
  for (auto p = bia_builtin_names(); *p; ++p) names += std::string(names.empty() ? "" : ", ") + *p;

  auto add_common = [&](CLI::App* sub) {
    auto* b = sub->add_option("--builtin", a.builtin, "Builtin structure (" + names + ")");
    auto* f = sub->add_option("--file", a.file, "Structure file")->check(CLI::ExistingFile);
    b->excludes(f);
    f->excludes(b);
    sub->add_option("--z", a.z, "Central element of infinite order");
    sub->add_option("--max-len", a.max_len, "Word length bound")->capture_default_str();
    sub->add_option("--radius", a.radius, "Ball radius")->capture_default_str();
    sub->add_option("--out", a.out, "Write the emitted structure or subdivision here");
    sub->add_option("--format", a.format, "Report format")->check(CLI::IsMember({"human", "machine"}))->capture_default_str();
  };
  auto* inspect = app.add_subcommand("inspect", "List states, loops, central loops, live sets and Z-cycles");
  auto* verify = app.add_subcommand("verify", "Check surjectivity, uniqueness, fellow travelling and the lemmas");
  auto* quotient = app.add_subcommand("quotient", "Build and verify the structure on G/<z> or G/C");
  auto* fan = app.add_subcommand("fan", "Neumann-Shapiro subdivision and the visual lemma");
  for (auto* s : {inspect, verify, quotient, fan}) add_common(s);
  quotient->add_option("--central", a.central, "Comma-separated central elements generating C");
  fan->add_option("--epsilon", a.epsilon, "Visual lemma angle, rational")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (a.builtin.empty() && a.file.empty()) {
    std::cerr << "biauto: one of --builtin or --file is required\n";
    return 2;
  }
  bia_structure* s = nullptr;
  bia_status st = a.builtin.empty() ? bia_structure_load_file(a.file.c_str(), &s)
                                    : bia_structure_builtin(a.builtin.c_str(), &s);
  if (st != BIA_OK) return report_error(st);
  if (!a.z.empty() && (st = bia_structure_set_z(s, a.z.c_str())) != BIA_OK) {
    bia_structure_free(s);
    return report_error(st);
  }

  bia_options o;
  bia_options_init(&o);
  o.max_len = a.max_len;
  o.radius = a.radius;
  o.epsilon = a.epsilon.c_str();
  bia_report* r = nullptr;
  if (*inspect)
    st = bia_run_inspect(s, &o, &r);
  else if (*verify)
    st = bia_run_verify(s, &o, &r);
  else if (*quotient)
    st = bia_run_quotient(s, a.central.empty() ? nullptr : a.central.c_str(), &o, &r);
  else
    st = bia_run_fan(s, &o, &r);
  bia_structure_free(s);
  if (st != BIA_OK) return report_error(st);

  if (!a.out.empty()) {
    const char* art = bia_report_artifact(r);
    if (!art) {
      std::cerr << "biauto: this command emits no artifact for --out\n";
      bia_report_free(r);
      return 2;
    }
    std::ofstream f(a.out);
    f << art;
    if (!f) {
      std::cerr << "biauto: cannot write '" << a.out << "'\n";
      bia_report_free(r);
      return 2;
    }
  }
  std::cout << bia_report_render(r, a.format == "machine" ? BIA_FORMAT_MACHINE : BIA_FORMAT_HUMAN);
  int code = bia_report_passed(r) ? 0 : 1;
  bia_report_free(r);
  return code;
}
