#include "biauto/biauto.h"

#include <cstring>
#include <new>
#include <string>

#include "biauto/commands.hpp"
#include "biauto/error.hpp"

struct bia_structure {
  biauto::CommandInput input;
};

struct bia_report {
  biauto::CommandResult result;
  std::string human, machine;
};

namespace {

thread_local std::string last_error;

bia_status status_of(biauto::ErrorKind k) {
  switch (k) {
    case biauto::ErrorKind::Input: return BIA_ERR_INPUT;
    case biauto::ErrorKind::Parse: return BIA_ERR_PARSE;
    case biauto::ErrorKind::Precondition: return BIA_ERR_PRECONDITION;
    case biauto::ErrorKind::Structural: return BIA_ERR_STRUCTURAL;
    case biauto::ErrorKind::Resource: return BIA_ERR_RESOURCE;
  }
  return BIA_ERR_INTERNAL;
}

template <class F>
bia_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return BIA_OK;
  } catch (const biauto::Error& e) {
    last_error = std::string(biauto::to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "resource error: out of memory";
    return BIA_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return BIA_ERR_INTERNAL;
  }
}

bia_status null_arg(const char* what) {
  last_error = std::string("input error: ") + what + " is NULL";
  return BIA_ERR_INPUT;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

biauto::CommandOptions options_of(const bia_options* o) {
  biauto::CommandOptions c;
  if (o) {
    c.max_len = o->max_len;
    c.radius = o->radius;
    if (o->epsilon) c.epsilon = o->epsilon;
  }
  return c;
}

template <class Cmd>
bia_status run(const bia_structure* s, const bia_options* o, bia_report** out, Cmd cmd,
               const char* central = nullptr) {
  if (!s) return null_arg("structure");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto c = options_of(o);
    if (central) c.central = central;
    auto r = std::make_unique<bia_report>();
    r->result = cmd(s->input, c);
    *out = r.release();
  });
}

}  // namespace

extern "C" {

const char* bia_version(void) { return "1.0.0"; }

const char* bia_status_name(bia_status s) {
  switch (s) {
    case BIA_OK: return "ok";
    case BIA_ERR_INPUT: return "input";
    case BIA_ERR_PARSE: return "parse";
    case BIA_ERR_PRECONDITION: return "precondition";
    case BIA_ERR_STRUCTURAL: return "structural";
    case BIA_ERR_RESOURCE: return "resource";
    case BIA_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* bia_last_error(void) { return last_error.c_str(); }

void bia_options_init(bia_options* o) {
  if (!o) return;
  o->max_len = 10;
  o->radius = 6;
  o->epsilon = "1/2";
}

bia_status bia_structure_builtin(const char* name, bia_structure** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new bia_structure{biauto::builtin_input(name)}; });
}

bia_status bia_structure_load_file(const char* path, bia_structure** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new bia_structure{biauto::file_input(path)}; });
}

bia_status bia_structure_parse(const char* text, bia_structure** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new bia_structure{biauto::text_input(text)}; });
}

bia_status bia_structure_set_z(bia_structure* s, const char* element) {
  if (!s) return null_arg("structure");
  if (!element) return null_arg("element");
  return guarded([&] { s->input.file.z = s->input.file.structure.group().parse(element); });
}

bia_status bia_structure_accepts(const bia_structure* s, const char* word, int* out) {
  if (!s) return null_arg("structure");
  if (!word || !out) return null_arg("argument");
  return guarded([&] {
    const auto& bs = s->input.file.structure;
    *out = biauto::accepts(bs.acceptor(), bs.alphabet().parse(word)) ? 1 : 0;
  });
}

bia_status bia_structure_evaluate(const bia_structure* s, const char* word, char** out) {
  if (!s) return null_arg("structure");
  if (!word || !out) return null_arg("argument");
  *out = nullptr;
  return guarded([&] {
    const auto& bs = s->input.file.structure;
    *out = dup(bs.group().format(bs.evaluate(bs.alphabet().parse(word))));
  });
}

bia_status bia_structure_emit(const bia_structure* s, char** out) {
  if (!s) return null_arg("structure");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup(biauto::emit_structure(s->input.file.structure, s->input.file.z)); });
}

void bia_structure_free(bia_structure* s) { delete s; }

void bia_string_free(char* p) { std::free(p); }

const char* const* bia_builtin_names(void) {
  static const std::vector<std::string> names = biauto::builtin_names();
  static const std::vector<const char*> ptrs = [] {
    std::vector<const char*> v;
    for (const auto& n : names) v.push_back(n.c_str());
    v.push_back(nullptr);
    return v;
  }();
  return ptrs.data();
}

bia_status bia_run_inspect(const bia_structure* s, const bia_options* o, bia_report** out) {
  return run(s, o, out, biauto::cmd_inspect);
}

bia_status bia_run_verify(const bia_structure* s, const bia_options* o, bia_report** out) {
  return run(s, o, out, biauto::cmd_verify);
}

bia_status bia_run_quotient(const bia_structure* s, const char* central, const bia_options* o, bia_report** out) {
  return run(s, o, out, biauto::cmd_quotient, central);
}

bia_status bia_run_fan(const bia_structure* s, const bia_options* o, bia_report** out) {
  return run(s, o, out, biauto::cmd_fan);
}

int bia_report_passed(const bia_report* r) { return r && r->result.passed ? 1 : 0; }

const char* bia_report_render(bia_report* r, bia_format f) {
  if (!r) return "";
  if (f == BIA_FORMAT_MACHINE) {
    if (r->machine.empty()) r->machine = r->result.report.dump(2) + "\n";
    return r->machine.c_str();
  }
  if (r->human.empty()) r->human = biauto::render_human(r->result.report);
  return r->human.c_str();
}

const char* bia_report_artifact(const bia_report* r) {
  return r && r->result.artifact ? r->result.artifact->c_str() : nullptr;
}

void bia_report_free(bia_report* r) { delete r; }

}  // extern "C"
