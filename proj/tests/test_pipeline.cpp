#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <map>
#include <string>

#include "cwa/pipeline.hpp"
#include "fixtures.hpp"

using namespace cwa;
using cwa::testing::fixture_path;
using cwa::testing::stub;
using cwa::testing::TempDir;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

RunResult run_tool(const std::string& args, const TempDir& dir) {
  auto log = dir / "tool.log";
  std::string cmd = std::string(CWA_TOOL) + " " + args + " > " + shell_quote(log.string()) + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.output = read_file(log);
  return r;
}

std::string fx(const char* name) { return shell_quote(fixture_path(name).string()); }

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_file(e.path());
  return out;
}

std::string toy_config(const fs::path& out, const std::string& extra = "") {
  return "# toy run\n"
         "ontology = " + fixture_path("toy_ont_a.kif").string() + "\n"
         "mapping = " + fixture_path("toy_mapping.tsv").string() + "\n"
         "relations.antonymy = " + fixture_path("toy_antonymy.tsv").string() + "\n"
         "relations.hyponymy = " + fixture_path("toy_hyponymy.tsv").string() + "\n"
         "output = " + out.string() + "\n" + extra;
}

}  // namespace

TEST(Config, ParseKeys) {
  PipelineConfig c = parse_pipeline_config(
      "ontology = ont.kif\nmodes = owa, subclass+disjointness\nrelations.antonymy = a.tsv\n"
      "prover.command = p {problem}\nprover.timeout = 12\nprune = no\n",
      "/base");
  EXPECT_EQ(c.ontology, fs::path("/base/ont.kif"));
  EXPECT_EQ(c.modes, (std::vector<ClosureMode>{ClosureMode::owa, ClosureMode::subclass_disjointness}));
  EXPECT_EQ(c.sources.relations.at(RelationKind::antonymy), fs::path("/base/a.tsv"));
  ASSERT_TRUE(c.prover);
  EXPECT_EQ(c.prover->time_limit, 12.0);
  EXPECT_FALSE(c.prune);
  EXPECT_TRUE(c.oracle);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_pipeline_config("mapping = m.tsv\n"), ConfigError);
  EXPECT_THROW(parse_pipeline_config("ontology = o.kif\ncolour = red\n"), ConfigError);
  EXPECT_THROW(parse_pipeline_config("ontology = o.kif\nprune = maybe\n"), ConfigError);
  EXPECT_THROW(parse_pipeline_config("ontology = o.kif\nprover.timeout = 3\n"), ConfigError);
  EXPECT_THROW(parse_pipeline_config("ontology = o.kif\nmodes = cwa\n"), ConfigError);
  EXPECT_THROW(parse_pipeline_config("ontology o.kif\n"), ConfigError);
}

TEST(Config, EnvironmentOverrides) {
  PipelineConfig c = parse_pipeline_config("ontology = o.kif\n");
  setenv("CWA_PROVER_COMMAND", "stub {problem}", 1);
  setenv("CWA_PROVER_TIMEOUT", "7", 1);
  setenv("CWA_PROVER_WORKERS", "3", 1);
  apply_env_overrides(c);
  unsetenv("CWA_PROVER_COMMAND");
  unsetenv("CWA_PROVER_TIMEOUT");
  unsetenv("CWA_PROVER_WORKERS");
  ASSERT_TRUE(c.prover);
  EXPECT_EQ(c.prover->command, "stub {problem}");
  EXPECT_EQ(c.prover->time_limit, 7.0);
  EXPECT_EQ(c.prover->workers, 3u);
}

TEST(Cli, CloseWritesDisjointPairs) {
  TempDir dir;
  auto out = dir / "closed.kif";
  auto r = run_tool("close " + fx("toy_ont_a.kif") + " --mode subclass+disjointness -o " + shell_quote(out.string()), dir);
  ASSERT_EQ(r.code, 0) << r.output;
  std::string text = read_file(out);
  EXPECT_NE(text.find("($disjoint Birth Death)"), std::string::npos);
  EXPECT_EQ(parse_kif(text).size(), 72u);
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run_tool("close " + fx("toy_ont_a.kif") + " --mode nonsense", dir).code, 2);
  EXPECT_EQ(run_tool("frobnicate", dir).code, 2);
  EXPECT_EQ(run_tool("parse /nonexistent/file.kif", dir).code, 3);
  std::string bad = (dir / "bad.kif").string();
  write_file(bad, "($subclass A B)\n($subclass B C\n");
  auto r = run_tool("parse " + shell_quote(bad), dir);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.output.find("2:1"), std::string::npos) << r.output;
  EXPECT_EQ(run_tool("close " + fx("agent.kif") + " --mode subclass+disjointness --strict-curation", dir).code, 3);
  EXPECT_EQ(run_tool("parse " + fx("toy_ont_a.kif"), dir).code, 0);
}

TEST(Cli, SuggestCuration) {
  TempDir dir;
  auto r = run_tool("suggest-curation " + fx("agent.kif") + " --mode subclass+disjointness", dir);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("($nonDisjoint Organism SentientAgent)"), std::string::npos);
  r = run_tool("suggest-curation " + fx("bloodcell.kif") + " --mode subclass+nondisjointness", dir);
  EXPECT_NE(r.output.find("; undecided: RedBloodCell WhiteBloodCell"), std::string::npos) << r.output;
}

TEST(Cli, GenerateRunReport) {
  TempDir dir;
  auto cqs = shell_quote((dir / "cqs.kif").string());
  auto r = run_tool("gen-cqs --mapping " + fx("mapping.tsv") + " --hyponymy " + fx("hyponymy.tsv") + " --antonymy " +
                        fx("antonymy.tsv") + " -o " + cqs,
                    dir);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(read_cq_corpus(read_file(dir / "cqs.kif")).size(), 3u);
  auto closed = shell_quote((dir / "closed.kif").string());
  ASSERT_EQ(run_tool("close " + fx("toy_ont_a.kif") + " --mode subclass+disjointness -o " + closed, dir).code, 0);
  auto journal = shell_quote((dir / "j.jsonl").string());
  r = run_tool("run " + closed + " --cqs " + cqs + " --journal " + journal + " --oracle", dir);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("antonymy-1:birth#n#2:death#n#1:Birth:Death\tpassing"), std::string::npos) << r.output;
  r = run_tool("report --journal " + journal + " --cqs " + cqs, dir);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("Total"), std::string::npos);
  r = run_tool("run " + closed + " --cqs " + cqs + " --journal " + journal + " --prover " +
                   shell_quote("sh " + stub("countersat.sh") + " {problem}") + " --timeout 5 --work-dir " +
                   shell_quote((dir / "work").string()),
               dir);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("Birth:Death\tunknown"), std::string::npos) << r.output;
  r = run_tool("run " + closed + " --cqs " + cqs + " --journal " + journal + " --prover " +
                   shell_quote("sh " + stub("polarity_stub.sh") + " falsity {problem}") + " --work-dir " +
                   shell_quote((dir / "work").string()),
               dir);
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("Birth:Death\tnon-passing"), std::string::npos) << r.output;
  r = run_tool("run " + closed + " --cqs " + cqs + " --journal " + journal + " --prover " +
                   shell_quote("sh " + stub("crash.sh") + " {problem}") + " --work-dir " +
                   shell_quote((dir / "work").string()),
               dir);
  EXPECT_EQ(r.code, 4) << r.output;
}

TEST(Pipeline, TrichotomyAndDeterminism) {
  TempDir dir;
  auto run_once = [&](const std::string& name) {
    auto out = dir / name;
    auto cfg = dir / (name + ".cfg");
    write_file(cfg, toy_config(out));
    run_pipeline(load_pipeline_config(cfg));
    return out;
  };
  auto a = run_once("a");
  auto b = run_once("b");
  auto sa = snapshot(a);
  auto sb = snapshot(b);
  ASSERT_FALSE(sa.empty());
  ASSERT_EQ(sa.size(), sb.size());
  for (const auto& [k, v] : sa) {
    // problem headers and file contents never embed the output path
    EXPECT_EQ(v, sb.at(k)) << k;
  }
  auto verdict_of = [&](const char* stem) {
    for (const auto& v : verdicts_from_journal(read_journal_file(a / "journal" / (std::string(stem) + ".oracle.jsonl"))))
      if (v.cq_id == "antonymy-1:birth#n#1:death#n#1:Birth:Death") return to_string(v.value);
    return std::string_view("missing");
  };
  EXPECT_EQ(verdict_of("owa"), "unknown");
  EXPECT_EQ(verdict_of("subclass-only"), "unknown");
  EXPECT_EQ(verdict_of("subclass_disjointness"), "passing");
  EXPECT_EQ(verdict_of("subclass_nondisjointness"), "non-passing");
  EXPECT_TRUE(fs::exists(a / "reports" / "subclass_disjointness.oracle.competency.txt"));
  EXPECT_TRUE(fs::exists(a / "stats.csv"));
  EXPECT_EQ(read_file(a / "reports" / "consistency.txt"), "");
}

TEST(Pipeline, ContradictionsExitFive) {
  TempDir dir;
  auto cfg = dir / "c.cfg";
  write_file(cfg, toy_config(dir / "out", "modes = subclass+disjointness\noracle = false\nshort_circuit = false\n"
                                          "prover.command = sh " + stub("polarity_stub.sh") + " both {problem}\n"
                                          "prover.timeout = 5\n"));
  auto r = run_tool("pipeline " + shell_quote(cfg.string()), dir);
  EXPECT_EQ(r.code, 5) << r.output;
  EXPECT_TRUE(fs::exists(dir / "out" / "reports" / "subclass_disjointness.prover.competency.txt"));
}

TEST(Pipeline, InconsistentOntologyIsReported) {
  TempDir dir;
  auto config = [&](const std::string& extra) {
    return "ontology = " + fixture_path("inconsistent.kif").string() + "\nmapping = " +
           fixture_path("mapping.tsv").string() + "\nrelations.antonymy = " + fixture_path("antonymy.tsv").string() +
           "\noutput = " + (dir / "out").string() + "\n" + extra;
  };
  auto cfg = dir / "i.cfg";
  write_file(cfg, config("modes = owa, subclass-only\n"));
  auto r = run_tool("pipeline " + shell_quote(cfg.string()), dir);
  EXPECT_EQ(r.code, 5) << r.output;
  EXPECT_NE(read_file(dir / "out" / "reports" / "consistency.txt").find("contradictory"), std::string::npos);
  // Disjoint-closure modes refuse to close a conflicting taxonomy.
  write_file(cfg, config(""));
  r = run_tool("pipeline " + shell_quote(cfg.string()), dir);
  EXPECT_EQ(r.code, 5) << r.output;
  EXPECT_NE(r.output.find("close"), std::string::npos) << r.output;
}
