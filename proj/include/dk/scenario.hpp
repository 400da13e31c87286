#pragma once

// Scenario files in, reports out. A scenario is validated against a fixed
// schema, canonicalized (sorted keys, no whitespace) and hashed; a report is a
// pure function of the canonical scenario.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dk {

using Json = nlohmann::json;

inline constexpr const char* kToolName = "deform-kernel";
inline constexpr const char* kToolVersion = "0.1.0";

struct Scenario {
  std::string kind;
  std::vector<std::string> tasks;
  std::optional<int> window;
  unsigned seed = 0;
  Json canonical;  // validated, defaults filled in
  std::string hash;
};

/// Sorted keys, no insignificant whitespace.
std::string canonical_dump(const Json& j);
std::string sha256_hex(const std::string& bytes);

/// Throws SchemaError with a JSON pointer. `window` overrides options.window.
Scenario parse_scenario(const std::string& text, std::optional<int> window = std::nullopt);

/// Runs every task. Throws StabilizationError, WindowOverflow, or SchemaError
/// for payloads that are well-formed but mathematically invalid.
Json run_scenario(const Scenario& s);

/// Aligned text tables of a report.
std::string report_table(const Json& report);

struct VerifyOutcome {
  bool ok = false;
  std::vector<std::string> failures;
};

/// Re-checks certificates (sequence ranks, stabilization rows, feasibility
/// witnesses, small recomputations) and then the report hash.
VerifyOutcome verify_report(const Json& report);

}  // namespace dk
