#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "oag/induction_lab.hpp"
#include "oag/structure.hpp"

namespace oag {

/// One check to run: the command name, its formula arguments (source text)
/// and named options such as var, from, to, param, point, role.
struct CheckRequest {
  std::string check;
  std::vector<std::string> formulas;
  std::map<std::string, std::string> options;
};

struct RunSettings {
  LabOptions lab;
  std::uint64_t seed = 0;
  /// Record wall-clock timings; off by default so reports are reproducible.
  bool timing = false;
};

struct CheckResult {
  /// Report object: check, structure, instance, verdict, optional witness,
  /// components, params, steps, plus timing_ms and seed.
  nlohmann::json report;
  /// Verdict as text, e.g. "true", "gap", "verified", "certified".
  std::string verdict;
  /// 0 when the check's positive outcome holds, 1 otherwise.
  int exit_code = 1;
};

/// Checks understood by run_check: decide, dci, bci, gap, subcover, compact,
/// ucont, audit, and set (o-minimal normal form with pseudo-finiteness).
const std::vector<std::string>& known_checks();

/// Runs a request; library errors propagate as oag::Error / ParseError.
CheckResult run_check(const CheckRequest& request, const StructureSpec& s, const RunSettings& settings);

/// Text rendering of a report, one `key: value` line per field.
std::string render_text(const nlohmann::json& report);

}  // namespace oag
