#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oag/checks.hpp"

namespace oag {

/// One `.fml` file. The first line is a header of `key=value` tokens after
/// `#!` (values may be double-quoted); the body holds one or more formulas
/// separated by lines consisting of `---`.
///
///   #! check=dci var=v structure=q.struct expect=true
///   v < w
///
/// Recognized keys: check, structure (comma-separated list), expect,
/// expect.<field> (compared with the report field), max-params, error (an
/// expected error kind). Any other key is passed to the check as an option.
struct CorpusEntry {
  std::filesystem::path path;
  std::string check;
  std::map<std::string, std::string> header;
  std::vector<std::string> formulas;
};

CorpusEntry parse_corpus_entry(std::string_view text, const std::filesystem::path& path = {});

/// Every `.fml` file below dir, sorted by path. Throws Usage when dir does
/// not exist or holds no entries.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

/// Splits a `structure=` value at commas; `Q<m>..Q<n>` expands to every
/// discrete structure in between.
std::vector<std::string> structure_list(const std::string& names);

/// Resolves a structure name: `Q` and `Q<n>` are built in, anything else is a
/// file looked up next to the entry, in `structures/` directories of its
/// ancestors, then in `extra_dir`; the `.struct` extension may be omitted.
StructureSpec resolve_structure(const std::string& name, const std::filesystem::path& entry_path,
                                const std::optional<std::filesystem::path>& extra_dir = std::nullopt);

struct CorpusOutcome {
  std::string entry;
  std::string structure;
  std::string check;
  std::string expected;
  std::string verdict;
  bool passed = false;
  bool resource_limited = false;
  /// Error message when the check raised one.
  std::string error;
  nlohmann::json report;
};

struct CorpusOptions {
  RunSettings settings;
  /// Used for entries without a structure key.
  std::optional<StructureSpec> default_structure;
  std::optional<std::filesystem::path> structures_dir;
};

/// Runs one entry once per declared structure.
std::vector<CorpusOutcome> run_corpus_entry(const CorpusEntry& entry, const CorpusOptions& opts);

struct CorpusSummary {
  std::vector<CorpusOutcome> outcomes;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t resource_limited = 0;
  /// 0 all passed, 3 if any resource-limit failure, 1 otherwise.
  int exit_code() const;
};

CorpusSummary run_corpus(const std::vector<CorpusEntry>& entries, const CorpusOptions& opts);

}  // namespace oag
