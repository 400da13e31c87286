#include "deform_kernel.h"

#include <string>

#include "dk/error.hpp"
#include "dk/scenario.hpp"

struct dk_scenario {
  dk::Scenario s;
  std::string canonical;
};

struct dk_report {
  dk::Json report;
  std::string json;
  std::string table;
};

namespace {

struct LastError {
  std::string message;
  std::string pointer;
  int suggested = 0;
};

thread_local LastError last_error;

dk_status record(dk_status code, std::string message, std::string pointer = {}, int suggested = 0) {
  last_error = {std::move(message), std::move(pointer), suggested};
  return code;
}

// Maps library exceptions to status codes at the boundary.
template <class F>
dk_status guard(F&& body) {
  try {
    body();
    return DK_OK;
  } catch (const dk::SchemaError& e) {
    return record(DK_ERR_SCHEMA, e.what(), e.pointer());
  } catch (const dk::StabilizationError& e) {
    return record(DK_ERR_STABILIZATION, e.what(), {}, e.suggested_window());
  } catch (const dk::WindowOverflow& e) {
    return record(DK_ERR_STABILIZATION, e.what(), {}, e.suggested_window());
  } catch (const dk::VerificationError& e) {
    return record(DK_ERR_VERIFICATION, e.what());
  } catch (const std::exception& e) {
    return record(DK_ERR_INTERNAL, e.what());
  }
}

dk_report* wrap(dk::Json report) {
  auto* r = new dk_report{std::move(report), {}, {}};
  r->json = r->report.dump(2) + "\n";
  try {
    r->table = dk::report_table(r->report);
  } catch (const std::exception&) {
    r->table.clear();  // malformed reports still reach verification
  }
  return r;
}

}  // namespace

extern "C" {

const char* dk_version(void) { return dk::kToolVersion; }

dk_status dk_scenario_parse(const char* json, int window, dk_scenario** out) {
  if (!json || !out) return record(DK_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    auto s = dk::parse_scenario(json, window > 0 ? std::optional<int>(window) : std::nullopt);
    std::string canonical = dk::canonical_dump(s.canonical);
    *out = new dk_scenario{std::move(s), std::move(canonical)};
  });
}

void dk_scenario_free(dk_scenario* s) { delete s; }

const char* dk_scenario_hash(const dk_scenario* s) { return s ? s->s.hash.c_str() : ""; }

const char* dk_scenario_canonical(const dk_scenario* s) { return s ? s->canonical.c_str() : ""; }

dk_status dk_run(const dk_scenario* s, dk_report** out) {
  if (!s || !out) return record(DK_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] { *out = wrap(dk::run_scenario(s->s)); });
}

dk_status dk_report_parse(const char* json, dk_report** out) {
  if (!json || !out) return record(DK_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    *out = wrap(dk::Json::parse(json));
    return DK_OK;
  } catch (const std::exception& e) {
    return record(DK_ERR_VERIFICATION, std::string("unreadable report: ") + e.what());
  }
}

void dk_report_free(dk_report* r) { delete r; }

const char* dk_report_json(const dk_report* r) { return r ? r->json.c_str() : ""; }

const char* dk_report_table(const dk_report* r) { return r ? r->table.c_str() : ""; }

dk_status dk_report_verify(const dk_report* r) {
  if (!r) return record(DK_ERR_ARGUMENT, "null argument");
  return guard([&] {
    auto v = dk::verify_report(r->report);
    if (v.ok) return;
    std::string msg;
    for (const auto& f : v.failures) msg += (msg.empty() ? "" : "\n") + f;
    throw dk::VerificationError(msg);
  });
}

const char* dk_error_message(void) { return last_error.message.c_str(); }

const char* dk_error_pointer(void) { return last_error.pointer.c_str(); }

int dk_error_suggested_window(void) { return last_error.suggested; }

}  // extern "C"
