#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "oag/corpus.hpp"
#include "oag/error.hpp"

namespace oag {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int exit_code;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

CliRun oag_cli(const std::vector<std::string>& args) {
  std::string cmd = quote(OAG_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  CliRun r{0, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const fs::path kStructures = fs::path(OAG_SOURCE_DIR) / "structures";

TEST(Cli, DecideExitCodes) {
  EXPECT_EQ(oag_cli({"decide", "exists x (0 < x & x < 1)"}).exit_code, 0);
  EXPECT_EQ(oag_cli({"decide", "exists x forall y (x < y)"}).exit_code, 1);
  EXPECT_EQ(oag_cli({"decide", "x < "}).exit_code, 2);
  EXPECT_EQ(oag_cli({"decide", "x < 1"}).exit_code, 2);
  EXPECT_EQ(oag_cli({"--structure", (kStructures / "qsqrt2.struct").string(), "decide", "exists x (x = 1/1*sqrt(2))"})
                .exit_code,
            1);
}

TEST(Cli, JsonReportKeys) {
  CliRun r = oag_cli({"--format", "json", "--seed", "17", "dci", "--var", "v", "C(v)", "--structure",
                   (kStructures / "qsqrt2.struct").string()});
  EXPECT_EQ(r.exit_code, 1);
  json j = json::parse(r.out);
  for (const char* key : {"check", "structure", "instance", "verdict", "timing_ms", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["verdict"], "false");
  EXPECT_EQ(j["seed"], 17);
  EXPECT_EQ(j["timing_ms"], 0.0);
}

TEST(Cli, SubcoverReport) {
  CliRun r = oag_cli({"--format", "json", "subcover", "--family", "a - 1/4 < x & x < a + 1/4"});
  EXPECT_EQ(r.exit_code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "verified");
  EXPECT_LE(j["params"].size(), 3u);
  EXPECT_TRUE(j.contains("steps"));
}

TEST(Cli, GapReport) {
  CliRun r = oag_cli({"--format", "json", "--structure", (kStructures / "qsqrt2.struct").string(), "gap", "C(x)"});
  EXPECT_EQ(r.exit_code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "gap");
  EXPECT_TRUE(j.contains("components"));
}

TEST(Cli, ErrorsAsJson) {
  CliRun r = oag_cli({"--format", "json", "decide", "x < < 1"});
  EXPECT_EQ(r.exit_code, 2);
  json j = json::parse(r.out);
  EXPECT_EQ(j["error"], "syntax");
  EXPECT_TRUE(j.contains("span"));
}

TEST(Cli, OutputIsDeterministic) {
  std::vector<std::string> args{"--format", "json", "--seed", "5", "compact", "--structure",
                                (kStructures / "q4.struct").string(), "D(a) & a - 1 < 4*x & 4*x < a + 1", "D(x)"};
  CliRun a = oag_cli(args), b = oag_cli(args);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, UnknownStructureFile) {
  EXPECT_EQ(oag_cli({"--structure", "/nonexistent/x.struct", "decide", "true"}).exit_code, 2);
}

class CorpusDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("oag-corpus-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  fs::path dir_;
};

TEST_F(CorpusDir, EmptyDirectoryIsAUsageError) {
  EXPECT_EQ(oag_cli({"corpus", dir_.string()}).exit_code, 2);
  try {
    load_corpus(dir_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
  }
}

TEST_F(CorpusDir, PassAndFail) {
  write("a.fml", "#! check=decide structure=Q expect=true\nexists x (x < 0)\n");
  EXPECT_EQ(oag_cli({"corpus", dir_.string()}).exit_code, 0);
  write("b.fml", "#! check=decide structure=Q expect=true\nexists x forall y (x < y)\n");
  EXPECT_EQ(oag_cli({"corpus", dir_.string()}).exit_code, 1);
}

TEST_F(CorpusDir, ResourceLimitedFailure) {
  write("a.fml", "#! check=decide structure=Q expect=true\n"
                 "forall x forall y forall z (exists a (x < a & a < y | z < a & a < y))\n");
  EXPECT_EQ(oag_cli({"--max-nodes", "3", "corpus", dir_.string()}).exit_code, 3);
}

TEST_F(CorpusDir, StructureRanges) {
  write("a.fml", "#! check=dci var=v structure=Q0..Q3 expect=true\nD(v) | v < w\n");
  auto entries = load_corpus(dir_);
  ASSERT_EQ(entries.size(), 1u);
  auto outcomes = run_corpus_entry(entries.front(), CorpusOptions{});
  ASSERT_EQ(outcomes.size(), 4u);
  for (const auto& o : outcomes) EXPECT_TRUE(o.passed) << o.structure << " " << o.error;
}

TEST(Corpus, HeaderParsing) {
  CorpusEntry e = parse_corpus_entry("#! check=set var=x structure=Q expect=\"(0, 1) u {2}\"\n# note\n0 < x\n---\nx < 1\n");
  EXPECT_EQ(e.check, "set");
  EXPECT_EQ(e.header.at("expect"), "(0, 1) u {2}");
  ASSERT_EQ(e.formulas.size(), 2u);
  EXPECT_THROW(parse_corpus_entry("0 < x\n"), Error);
}

TEST(Corpus, StructureResolution) {
  EXPECT_EQ(resolve_structure("Q", {}).id(), "Q");
  EXPECT_EQ(resolve_structure("Q5", {}).id(), "Q5");
  fs::path entry = fs::path(OAG_SOURCE_DIR) / "corpus" / "gap" / "plain.gap.fml";
  EXPECT_EQ(resolve_structure("qsqrt2.struct", entry).radicand(), 2);
  EXPECT_THROW(resolve_structure("missing.struct", entry), Error);
}

TEST(Checks, SetReport) {
  CheckRequest req{"set", {"0 < x & x < 1 | x = 2"}, {}};
  CheckResult r = run_check(req, StructureSpec::rationals(), RunSettings{});
  EXPECT_EQ(r.verdict, "(0, 1) u {2}");
  EXPECT_EQ(r.report["pseudo_finite"], false);
  EXPECT_EQ(r.exit_code, 0);
}

TEST(Checks, UnknownCheck) { EXPECT_THROW(run_check(CheckRequest{"nope", {}, {}}, StructureSpec(), RunSettings{}), Error); }

}  // namespace
}  // namespace oag
