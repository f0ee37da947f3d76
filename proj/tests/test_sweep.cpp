#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mcv/sweep.hpp"

using namespace mcv;

namespace {

SweepConfig config(const std::string& text) {
  std::istringstream in(text);
  return SweepConfig::parse(in);
}

std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "mcv_sweep_tests";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

} // namespace

TEST(SweepConfig, ParsesKeysAndDefaults) {
  auto cfg = config("# comment\ntheorem = quad\nmax_vertices=5\nfields = q, gf:3\nresolutions=taylor,minimal\nthreads=2\n");
  EXPECT_EQ(cfg.theorem, "quad");
  EXPECT_EQ(cfg.vertex_limit(), 5u);
  ASSERT_EQ(cfg.fields.size(), 2u);
  EXPECT_EQ(cfg.fields[1].characteristic(), 3u);
  EXPECT_EQ(cfg.resolutions.size(), 2u);
  EXPECT_EQ(cfg.threads, 2u);
  auto defaults = config("theorem=incm\n");
  EXPECT_EQ(defaults.vertex_limit(), 6u);
  EXPECT_EQ(defaults.fields.size(), 2u);
}

TEST(SweepConfig, ErrorsNameTheLine) {
  try {
    config("theorem=quad\nmax_vertices=abc\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(config("theorem=nope\n"), parse_error);
  EXPECT_THROW(config("theorem=quad\nbogus=1\n"), parse_error);
  EXPECT_THROW(config("theorem=quad\nfields=gf:4\n"), parse_error);
  EXPECT_THROW(config("max_vertices=3\n"), parse_error);
  EXPECT_THROW(config("theorem=quad\nmissing equals\n"), parse_error);
  EXPECT_THROW(config("theorem=quad\nmax_vertices=9\n"), precondition_error);
  EXPECT_THROW(config("theorem=union\nmax_vertices=7\n"), precondition_error);
}

TEST(SweepConfig, EveryTheoremIdIsKnown) {
  for (const auto& info : theorem_table) {
    EXPECT_NO_THROW(theorem_info(info.id));
    EXPECT_LE(info.default_max, info.limit);
  }
  EXPECT_THROW(theorem_info("x"), precondition_error);
}

TEST(Sweep, SmallSweepsFindNoCounterexample) {
  for (const auto& info : theorem_table) {
    SweepConfig cfg;
    cfg.theorem = std::string(info.id);
    cfg.max_vertices = std::min<std::size_t>(4, info.limit);
    auto result = sweep(cfg);
    EXPECT_TRUE(result.complete) << info.id;
    EXPECT_FALSE(result.counterexample.has_value()) << info.id;
    EXPECT_GT(result.evaluated, 0u) << info.id;
    EXPECT_EQ(result.ledger.size(), result.evaluated) << info.id;
  }
}

TEST(Sweep, LedgerIsSortedAndThreadIndependent) {
  SweepConfig cfg = config("theorem=quad\nmax_vertices=6\nthreads=1\n");
  auto one = sweep(cfg);
  cfg.threads = 4;
  auto four = sweep(cfg);
  ASSERT_EQ(one.ledger.size(), four.ledger.size());
  for (std::size_t i = 0; i < one.ledger.size(); ++i) EXPECT_EQ(one.ledger[i].dump(), four.ledger[i].dump());
  EXPECT_TRUE(std::is_sorted(one.ledger.begin(), one.ledger.end(), detail::ledger_less));
  EXPECT_EQ(one.tallies, four.tallies);
}

TEST(Sweep, RestartSkipsFinishedInstances) {
  auto path = temp_path("restart.jsonl");
  SweepConfig cfg = config("theorem=quad\nmax_vertices=5\n");
  cfg.output = path.string();
  auto first = sweep(cfg);
  auto lines = read_lines(path);
  ASSERT_EQ(lines.size(), first.evaluated);

  // Drop half of the ledger as if the run had been interrupted.
  {
    std::ofstream out(path, std::ios::trunc);
    for (std::size_t i = 0; i < lines.size() / 2; ++i) out << lines[i] << '\n';
    out << "{\"truncated";  // a torn final line is ignored
  }
  auto second = sweep(cfg);
  EXPECT_EQ(second.resumed, lines.size() / 2);
  EXPECT_EQ(second.resumed + second.evaluated, first.evaluated);
  EXPECT_EQ(read_lines(path), lines);

  auto third = sweep(cfg);
  EXPECT_EQ(third.evaluated, 0u);
  EXPECT_EQ(third.resumed, first.evaluated);
  EXPECT_EQ(read_lines(path), lines);
}

TEST(Sweep, BudgetExhaustionIsReportedNotTruncated) {
  auto path = temp_path("budget.jsonl");
  SweepConfig cfg = config("theorem=quad\nmax_vertices=5\nmax_lattice=4\n");
  cfg.output = path.string();
  auto result = sweep(cfg);
  EXPECT_FALSE(result.complete);
  EXPECT_FALSE(result.counterexample.has_value());
  EXPECT_NE(result.incomplete_reason.find("max-lattice"), std::string::npos);
  auto lines = read_lines(path);
  ASSERT_FALSE(lines.empty());
  auto marker = nlohmann::ordered_json::parse(lines.back());
  EXPECT_TRUE(marker.value("incomplete", false));
  EXPECT_EQ(result.summary()["complete"], false);
}

TEST(Sweep, EnumerationBudgetMarksIncomplete) {
  SweepConfig cfg = config("theorem=quad\nmax_vertices=6\nmax_instances=20\n");
  auto result = sweep(cfg);
  EXPECT_FALSE(result.complete);
  EXPECT_EQ(result.evaluated, 0u);
}

TEST(Sweep, SummaryShape) {
  auto result = sweep(config("theorem=equality-props\nmax_vertices=4\n"));
  auto s = result.summary();
  EXPECT_EQ(s["theorem"], "equality-props");
  EXPECT_EQ(s["counterexamples"], 0);
  EXPECT_TRUE(s["counterexample"].is_null());
  EXPECT_GT(result.tally("upper-equality:" + std::string(tag_two_points)), 0u);
}
