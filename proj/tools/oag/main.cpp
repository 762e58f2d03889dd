// oag: command-line front end for the ordered-group checks.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "oag/checks.hpp"
#include "oag/corpus.hpp"
#include "oag/error.hpp"
#include "oag/structure.hpp"

#ifndef OAG_STRUCTURES_DIR
#define OAG_STRUCTURES_DIR "structures"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Config {
  std::string structure;
  std::string format = "text";
  std::size_t max_nodes = 1'000'000;
  std::size_t max_steps = 10'000;
  int max_range = oag::kDefaultDiscreteCap;
  std::uint64_t seed = 0;
  bool timing = false;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("oag");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("OAG_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

oag::StructureSpec load(const Config& c) {
  oag::StructureSpec s = c.structure.empty()
                             ? oag::StructureSpec::rationals()
                             : oag::resolve_structure(c.structure, fs::current_path() / "cli", fs::path(OAG_STRUCTURES_DIR));
  s.set_discrete_cap(c.max_range);
  spdlog::debug("structure {}:\n{}", s.id(), s.describe());
  return s;
}

oag::RunSettings settings(const Config& c) {
  oag::RunSettings st;
  st.lab.qe.max_nodes = c.max_nodes;
  st.lab.max_steps = c.max_steps;
  st.seed = c.seed;
  st.timing = c.timing;
  return st;
}

void print_error(const Config& c, const oag::Error& e, const std::vector<std::string>& inputs) {
  json j{{"error", oag::to_string(e.kind())}, {"message", e.what()}};
  const auto* pe = dynamic_cast<const oag::ParseError*>(&e);
  if (pe) {
    const auto& sp = pe->span();
    j["span"] = {{"start", sp.start}, {"end", sp.end}, {"line", sp.line}, {"column", sp.column}};
  }
  if (c.format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cerr << "error (" << oag::to_string(e.kind()) << "): " << e.what() << "\n";
  // Point at the offending token of a single-line input.
  if (pe && inputs.size() == 1 && inputs.front().find('\n') == std::string::npos) {
    const auto& sp = pe->span();
    std::cerr << "  " << inputs.front() << "\n  " << std::string(sp.column > 0 ? sp.column - 1 : 0, ' ')
              << std::string(std::max<std::size_t>(1, sp.end - sp.start), '^') << "\n";
  }
}

int run_single(const Config& c, const oag::CheckRequest& request) {
  try {
    oag::StructureSpec s = load(c);
    oag::CheckResult r = oag::run_check(request, s, settings(c));
    if (c.format == "json")
      std::cout << r.report.dump(2) << "\n";
    else
      std::cout << oag::render_text(r.report);
    return r.exit_code;
  } catch (const oag::Error& e) {
    print_error(c, e, request.formulas);
    return 2;
  }
}

int run_corpus(const Config& c, const std::string& dir, const std::string& structures_dir) {
  try {
    auto entries = oag::load_corpus(dir);
    oag::CorpusOptions opts;
    opts.settings = settings(c);
    if (!c.structure.empty()) opts.default_structure = load(c);
    if (!structures_dir.empty()) opts.structures_dir = fs::path(structures_dir);
    else opts.structures_dir = fs::path(OAG_STRUCTURES_DIR);
    spdlog::info("running {} corpus entries from {}", entries.size(), dir);
    auto summary = oag::run_corpus(entries, opts);
    if (c.format == "json") {
      json outcomes = json::array();
      for (const auto& o : summary.outcomes) {
        json j{{"entry", fs::relative(o.entry, dir).string()},
               {"structure", o.structure},
               {"check", o.check},
               {"expected", o.expected},
               {"verdict", o.verdict},
               {"passed", o.passed},
               {"resource_limited", o.resource_limited}};
        if (!o.error.empty()) j["error"] = o.error;
        outcomes.push_back(j);
      }
      json out{{"check", "corpus"},
               {"passed", summary.passed},
               {"failed", summary.failed},
               {"resource_limited", summary.resource_limited},
               {"seed", c.seed},
               {"outcomes", outcomes}};
      std::cout << out.dump(2) << "\n";
    } else {
      for (const auto& o : summary.outcomes) {
        std::cout << (o.passed ? "PASS " : "FAIL ") << fs::relative(o.entry, dir).string() << " [" << o.structure
                  << "] " << o.check << ": " << o.verdict;
        if (!o.passed && !o.expected.empty()) std::cout << " (expected " << o.expected << ")";
        if (!o.passed && !o.error.empty()) std::cout << " -- " << o.error;
        std::cout << "\n";
      }
      std::cout << "passed " << summary.passed << ", failed " << summary.failed;
      if (summary.resource_limited) std::cout << " (" << summary.resource_limited << " resource-limited)";
      std::cout << "\n";
    }
    return summary.exit_code();
  } catch (const oag::Error& e) {
    print_error(c, e, {});
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  Config config;
  CLI::App app{"Decision procedures and induction checks for divisible ordered abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--structure", config.structure, "Structure file (or Q, Q<n>)");
  app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-nodes", config.max_nodes, "Cap on formula size during elimination")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", config.max_steps, "Cap on subcover sweep steps")->check(CLI::PositiveNumber);
  app.add_option("--max-range", config.max_range, "Cap on discrete predicate ranges")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "Seed recorded in reports");
  app.add_flag("--timing", config.timing, "Record wall-clock timings in reports");

  struct Command {
    std::string name;
    std::string help;
    int formulas;
    std::vector<std::pair<std::string, std::string>> options;
  };
  const std::vector<Command> commands{
      {"decide", "Decide a sentence", 1, {}},
      {"dci", "Decide the continuous-induction instance of a formula", 1, {{"var", "Induction variable"}, {"force", "true: build the instance even if var is not free"}}},
      {"bci", "Decide the bounded induction instance on [from, to)", 1,
       {{"var", "Induction variable"}, {"from", "Left endpoint (default 0)"}, {"to", "Right endpoint (default 1)"},
        {"force", "true: build the instance even if var is not free"}}},
      {"gap", "Classify the set defined by a formula as a cut", 1, {}},
      {"subcover", "Extract a finite subcover of [from, to]", 1,
       {{"param", "Family parameter (default a)"}, {"point", "Point variable (default x)"},
        {"from", "Left endpoint (default 0)"}, {"to", "Right endpoint (default 1)"}}},
      {"compact", "Certify a subcover drawn from an exhaustion fiber", 2,
       {{"param", "Family parameter (default a)"}, {"point", "Point variable (default x)"},
        {"exparam", "Exhaustion parameter (default t)"}, {"expoint", "Exhaustion point variable"},
        {"from", "Left endpoint (default 0)"}, {"to", "Right endpoint (default 1)"}}},
      {"ucont", "Check continuity and uniform continuity of a graph on [from, to]", 1,
       {{"var", "Argument variable (default x)"}, {"value", "Value variable (default y)"},
        {"from", "Left endpoint (default 0)"}, {"to", "Right endpoint (default 1)"}}},
      {"audit", "Audit a definable family as an open cover or an exhaustion", 1,
       {{"role", "cover or exhaustion (default cover)"}, {"param", "Family parameter"},
        {"point", "Point variable (default x)"}, {"from", "Left endpoint (default 0)"},
        {"to", "Right endpoint (default 1)"}}},
  };

  oag::CheckRequest request;
  std::map<std::string, std::string> values;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    for (const auto& [opt, help] : cmd.options) sub->add_option("--" + opt, values[cmd.name + "." + opt], help);
    sub->add_option("formula", request.formulas, cmd.formulas == 1 ? "Formula" : "Cover family, then exhaustion family")
        ->required()
        ->expected(cmd.formulas);
    if (cmd.name == "audit" || cmd.name == "subcover" || cmd.name == "compact")
      sub->add_option("--family", request.formulas, "Family formula (alternative to the positional argument)");
  }
  // `--family` fills the same slot as the positional formula.
  for (const char* name : {"audit", "subcover", "compact"}) app.get_subcommand(name)->get_option("formula")->required(false);

  std::string corpus_dir;
  std::string structures_dir;
  CLI::App* corpus = app.add_subcommand("corpus", "Run every .fml entry below a directory");
  corpus->add_option("dir", corpus_dir, "Corpus directory")->required();
  corpus->add_option("--structures", structures_dir, "Directory searched for structure files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (corpus->parsed()) return run_corpus(config, corpus_dir, structures_dir);
  for (const auto& cmd : commands) {
    CLI::App* sub = app.get_subcommand(cmd.name);
    if (!sub->parsed()) continue;
    if (static_cast<int>(request.formulas.size()) != cmd.formulas) {
      std::cerr << "error (usage): " << cmd.name << " takes " << cmd.formulas << " formula argument(s)\n";
      return 2;
    }
    request.check = cmd.name;
    for (const auto& [opt, help] : cmd.options) {
      const std::string& v = values[cmd.name + "." + opt];
      if (!v.empty()) request.options[opt] = v;
    }
    return run_single(config, request);
  }
  return 2;
}
