// deform-kernel: run scenario files and verify reports through the C interface.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "deform_kernel.h"

namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Temp file in the target directory, then rename: readers never see a partial file.
bool write_atomic(const fs::path& target, const std::string& bytes) {
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << bytes;
    if (!out.flush()) return false;
  }
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
  return !ec;
}

fs::path cache_dir() {
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "deform-kernel";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "deform-kernel";
  return fs::temp_directory_path() / "deform-kernel";
}

struct ReportHandle {
  dk_report* r = nullptr;
  ~ReportHandle() { dk_report_free(r); }
};

struct ScenarioHandle {
  dk_scenario* s = nullptr;
  ~ScenarioHandle() { dk_scenario_free(s); }
};

int fail(int code, const std::string& what) {
  std::cerr << "deform-kernel: " << what << '\n';
  return code;
}

struct RunOptions {
  std::string file;
  int window = 0;
  std::string out;
  bool no_cache = false;
  std::string format = "json";
};

// A cached report is used only when it still verifies; otherwise it is recomputed.
dk_report* load_cached(const fs::path& p) {
  auto text = read_file(p);
  if (!text) return nullptr;
  dk_report* r = nullptr;
  if (dk_report_parse(text->c_str(), &r) != DK_OK) return nullptr;
  if (dk_report_verify(r) != DK_OK) {
    dk_report_free(r);
    return nullptr;
  }
  return r;
}

int run(const RunOptions& o) {
  auto text = read_file(o.file);
  if (!text) return fail(2, "cannot read scenario file " + o.file);
  ScenarioHandle sc;
  if (dk_scenario_parse(text->c_str(), o.window, &sc.s) != DK_OK)
    return fail(2, std::string("schema error: ") + dk_error_message());
  const std::string hash = dk_scenario_hash(sc.s);
  const fs::path cached = cache_dir() / (hash + ".json");

  auto start = std::chrono::steady_clock::now();
  ReportHandle rep;
  bool from_cache = false;
  if (!o.no_cache) {
    rep.r = load_cached(cached);
    from_cache = rep.r != nullptr;
  }
  if (!rep.r) {
    dk_status st = dk_run(sc.s, &rep.r);
    if (st == DK_ERR_STABILIZATION)
      return fail(3, std::string("stabilization failed: ") + dk_error_message() + " (suggested window " +
                         std::to_string(dk_error_suggested_window()) + ")");
    if (st == DK_ERR_SCHEMA)
      return fail(2, std::string("schema error: ") + dk_error_message());
    if (st != DK_OK) return fail(4, dk_error_message());
    if (dk_report_verify(rep.r) != DK_OK) return fail(4, std::string("report failed verification:\n") + dk_error_message());
    if (!o.no_cache && !write_atomic(cached, dk_report_json(rep.r)))
      std::cerr << "deform-kernel: warning: could not write cache entry " << cached << '\n';
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  const std::string json = dk_report_json(rep.r);
  const std::string table = dk_report_table(rep.r);
  if (!o.out.empty()) {
    fs::path base = fs::path(o.out) / fs::path(o.file).stem();
    fs::path target = base;
    target += o.format == "table" ? ".report.txt" : ".report.json";
    if (!write_atomic(target, o.format == "table" ? table : json)) return fail(4, "cannot write " + target.string());
  } else {
    std::cout << (o.format == "table" ? table : json);
  }
  // Timing stays out of the report so reports remain byte-identical.
  std::cerr << "deform-kernel: " << hash.substr(0, 12) << (from_cache ? " from cache" : " computed") << " in " << ms
            << " ms\n";
  return 0;
}

int verify(const std::string& file) {
  auto text = read_file(file);
  if (!text) return fail(4, "cannot read report " + file);
  ReportHandle rep;
  if (dk_report_parse(text->c_str(), &rep.r) != DK_OK) return fail(4, dk_error_message());
  if (dk_report_verify(rep.r) != DK_OK) return fail(4, std::string("verification failed:\n") + dk_error_message());
  std::cout << "verified " << file << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformation workbench: scenario files in, verified reports out"};
  app.set_version_flag("--version", std::string(dk_version()));
  app.require_subcommand(1);

  RunOptions ro;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("file", ro.file, "Scenario JSON")->required();
  run_cmd->add_option("--window", ro.window, "Base truncation window")->check(CLI::Range(1, 64));
  run_cmd->add_option("--out", ro.out, "Write the report into this directory");
  run_cmd->add_flag("--no-cache", ro.no_cache, "Neither read nor write the cache");
  run_cmd->add_option("--format", ro.format, "Output format")->check(CLI::IsMember({"json", "table"}));

  std::string report_file;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check the certificates and hashes of a report");
  verify_cmd->add_option("report", report_file, "Report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*run_cmd) return run(ro);
  return verify(report_file);
}
