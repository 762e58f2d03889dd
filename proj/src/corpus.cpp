#include "oag/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "oag/error.hpp"

namespace oag {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> header_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  bool any = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      any = true;
    } else if (!quoted && (c == ' ' || c == '\t')) {
      if (any) out.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorKind::Usage, "unterminated quote in corpus header");
  if (any) out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string field_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

bool is_discrete_name(const std::string& s) {
  return s.size() > 1 && s[0] == 'Q' && std::all_of(s.begin() + 1, s.end(), ::isdigit);
}

const std::vector<std::string> kReservedKeys{"check", "structure", "expect", "max-params", "error"};

}  // namespace

std::vector<std::string> structure_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto dots = item.find("..");
    if (dots != std::string::npos && is_discrete_name(item.substr(0, dots)) && is_discrete_name(item.substr(dots + 2))) {
      int lo = std::stoi(item.substr(1, dots - 1));
      int hi = std::stoi(item.substr(dots + 3));
      for (int n = lo; n <= hi; ++n) out.push_back("Q" + std::to_string(n));
    } else {
      out.push_back(item);
    }
  }
  return out;
}

CorpusEntry parse_corpus_entry(std::string_view text, const fs::path& path) {
  CorpusEntry e;
  e.path = path;
  std::istringstream in{std::string(text)};
  std::string line;
  std::string body;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!header_seen && line.rfind("#!", 0) == 0) {
      header_seen = true;
      for (const auto& tok : header_tokens(std::string_view(line).substr(2))) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
          throw Error(ErrorKind::Usage, path.string() + ": malformed header token '" + tok + "'");
        e.header[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      continue;
    }
    if (trim(line) == "---") {
      e.formulas.push_back(body);
      body.clear();
      continue;
    }
    body += line;
    body += '\n';
  }
  e.formulas.push_back(body);
  if (!header_seen) throw Error(ErrorKind::Usage, path.string() + ": missing '#!' header line");
  auto check = e.header.find("check");
  if (check == e.header.end()) throw Error(ErrorKind::Usage, path.string() + ": header has no check key");
  e.check = check->second;
  return e;
}

std::vector<CorpusEntry> load_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Usage, "corpus directory " + dir.string() + " does not exist");
  std::vector<fs::path> files;
  for (const auto& item : fs::recursive_directory_iterator(dir))
    if (item.is_regular_file() && item.path().extension() == ".fml") files.push_back(item.path());
  if (files.empty()) throw Error(ErrorKind::Usage, "corpus directory " + dir.string() + " has no .fml files");
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream text;
    text << in.rdbuf();
    out.push_back(parse_corpus_entry(text.str(), f));
  }
  return out;
}

StructureSpec resolve_structure(const std::string& name, const fs::path& entry_path,
                                const std::optional<fs::path>& extra_dir) {
  if (name == "Q") return StructureSpec::rationals();
  if (is_discrete_name(name))
    return StructureSpec::discrete(std::stoi(name.substr(1)));
  std::vector<fs::path> candidates;
  if (!entry_path.empty()) {
    fs::path dir = fs::absolute(entry_path).parent_path();
    candidates.push_back(dir / name);
    for (fs::path p = dir; !p.empty(); p = p.parent_path()) {
      candidates.push_back(p / "structures" / name);
      if (p == p.root_path()) break;
    }
  }
  if (extra_dir) candidates.push_back(*extra_dir / name);
  candidates.emplace_back(name);
  for (const auto& c : candidates) {
    if (fs::is_regular_file(c)) return load_structure(c);
    // `qsqrt2` names qsqrt2.struct.
    fs::path with_ext = fs::path(c) += ".struct";
    if (!c.has_extension() && fs::is_regular_file(with_ext)) return load_structure(with_ext);
  }
  throw Error(ErrorKind::Structure, "structure '" + name + "' not found");
}

std::vector<CorpusOutcome> run_corpus_entry(const CorpusEntry& entry, const CorpusOptions& opts) {
  CheckRequest request{entry.check, entry.formulas, {}};
  std::map<std::string, std::string> expected_fields;
  for (const auto& [k, v] : entry.header) {
    if (k.rfind("expect.", 0) == 0)
      expected_fields[k.substr(7)] = v;
    else if (std::find(kReservedKeys.begin(), kReservedKeys.end(), k) == kReservedKeys.end())
      request.options[k] = v;
  }
  auto header = [&](const std::string& k) -> std::optional<std::string> {
    auto it = entry.header.find(k);
    if (it == entry.header.end()) return std::nullopt;
    return it->second;
  };

  std::vector<std::pair<std::string, std::optional<StructureSpec>>> targets;
  if (auto names = header("structure")) {
    for (const auto& n : structure_list(*names)) targets.emplace_back(n, std::nullopt);
  } else {
    targets.emplace_back("", opts.default_structure.value_or(StructureSpec::rationals()));
  }

  std::vector<CorpusOutcome> out;
  for (auto& [name, spec] : targets) {
    CorpusOutcome o;
    o.entry = entry.path.string();
    o.check = entry.check;
    o.expected = header("error") ? "error:" + *header("error") : header("expect").value_or("");
    try {
      StructureSpec s = spec ? *spec : resolve_structure(name, entry.path, opts.structures_dir);
      o.structure = s.id();
      CheckResult r = run_check(request, s, opts.settings);
      o.verdict = r.verdict;
      o.report = r.report;
      bool ok = !header("error");
      if (auto e = header("expect")) ok = ok && r.verdict == *e;
      for (const auto& [field, want] : expected_fields)
        ok = ok && r.report.contains(field) && field_text(r.report[field]) == want;
      if (auto cap = header("max-params"))
        ok = ok && r.report.contains("params") && r.report["params"].size() <= std::stoul(*cap);
      // A normal form is only accepted when pseudo-finiteness matches finiteness.
      if (entry.check == "set") ok = ok && r.exit_code == 0;
      o.passed = ok;
    } catch (const Error& e) {
      o.error = e.what();
      o.verdict = std::string("error:") + to_string(e.kind());
      o.resource_limited = e.kind() == ErrorKind::ResourceLimit;
      o.passed = header("error") && *header("error") == to_string(e.kind());
    }
    out.push_back(std::move(o));
  }
  return out;
}

int CorpusSummary::exit_code() const {
  if (failed == 0) return 0;
  return resource_limited > 0 ? 3 : 1;
}

CorpusSummary run_corpus(const std::vector<CorpusEntry>& entries, const CorpusOptions& opts) {
  CorpusSummary summary;
  for (const auto& e : entries) {
    for (auto& o : run_corpus_entry(e, opts)) {
      if (o.passed)
        ++summary.passed;
      else
        ++summary.failed;
      if (!o.passed && o.resource_limited) ++summary.resource_limited;
      summary.outcomes.push_back(std::move(o));
    }
  }
  return summary;
}

}  // namespace oag
