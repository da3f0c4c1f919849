#include <gtest/gtest.h>

#include <regex>

#include "qrf/error.hpp"
#include "qrf/verify.hpp"

using namespace qrf;

namespace {

SuiteConfig small_config(const char* group, std::vector<std::string> suites, int threads = 1) {
  SuiteConfig c;
  c.group = builtin_group(group);
  c.group_name = group;
  c.suites = std::move(suites);
  c.trials = 3;
  c.seed = 7;
  c.threads = threads;
  return c;
}

std::string without_runtimes(std::string s) {
  return std::regex_replace(s, std::regex("\"runtime_ms\": [0-9.e+-]+"), "\"runtime_ms\": 0");
}

}  // namespace

TEST(Verify, TrivialGroupPasses) {
  const Report r = run_verify(small_config("z1", {}));
  EXPECT_TRUE(r.all_pass());
  EXPECT_GT(r.passed(), 30);
  EXPECT_EQ(r.group_order, 1);
  for (size_t i = 1; i < r.checks.size(); ++i) EXPECT_LT(r.checks[i - 1].name, r.checks[i].name);
}

TEST(Verify, DeterministicAcrossThreadCounts) {
  const auto a = report_to_json(run_verify(small_config("z3", {"conditioning", "frame-change"}, 1)));
  const auto b = report_to_json(run_verify(small_config("z3", {"conditioning", "frame-change"}, 3)));
  EXPECT_EQ(without_runtimes(a.dump(2)), without_runtimes(b.dump(2)));
}

TEST(Verify, SuiteSelection) {
  const Report r = run_verify(small_config("z2", {"measurement"}));
  ASSERT_FALSE(r.checks.empty());
  for (const auto& c : r.checks) EXPECT_EQ(c.name.rfind("measurement.", 0), 0u) << c.name;
  EXPECT_TRUE(r.all_pass());
}

TEST(Verify, RejectsBadConfig) {
  EXPECT_THROW(run_verify(small_config("z2", {"nonsense"})), ArgumentError);
  SuiteConfig c = small_config("z2", {"covariance"});
  c.tol = 0.0;
  EXPECT_THROW(run_verify(c), ArgumentError);
}

TEST(Verify, ReportFormats) {
  const Report r = run_verify(small_config("z2", {"covariance"}));
  const Json j = report_to_json(r);
  EXPECT_EQ(j["group"], "z2");
  EXPECT_EQ(j["order"], 2);
  EXPECT_EQ(j["summary"]["total"], static_cast<int>(r.checks.size()));
  for (const char* key : {"name", "anchor", "pass", "skipped", "max_deviation", "trials", "runtime_ms"}) {
    EXPECT_TRUE(j["checks"][0].contains(key)) << key;
  }
  const std::string csv = report_to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,anchor,pass,skipped,max_deviation,trials,runtime_ms,note");
  EXPECT_EQ(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')), r.checks.size() + 1);
}

TEST(RunChecks, ExceptionsFailAndSkipsAreRecorded) {
  std::vector<CheckTask> tasks;
  tasks.push_back({"b.throws", "", [](std::uint64_t) -> Outcome { throw std::runtime_error("boom"); }, ""});
  tasks.push_back({"a.ok", "", [](std::uint64_t) { return Outcome{1e-12, 2, {}}; }, ""});
  tasks.push_back({"c.skip", "", [](std::uint64_t) { return Outcome{}; }, "too big"});
  tasks.push_back({"d.bad", "", [](std::uint64_t) { return Outcome{1.0, 1, {}}; }, ""});
  const auto recs = run_checks(tasks, 1e-9, 1, 2);
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[0].name, "a.ok");
  EXPECT_TRUE(recs[0].pass);
  EXPECT_FALSE(recs[1].pass);
  EXPECT_EQ(recs[1].note, "boom");
  EXPECT_TRUE(recs[2].skipped);
  EXPECT_EQ(recs[2].note, "too big");
  EXPECT_FALSE(recs[3].pass);
}

TEST(RunChecks, SeedDependsOnName) {
  std::uint64_t first = 0, second = 0, again = 0;
  run_checks({{"x", "", [&](std::uint64_t s) { first = s; return Outcome{}; }, ""},
              {"y", "", [&](std::uint64_t s) { second = s; return Outcome{}; }, ""}},
             1e-9, 5, 1);
  run_checks({{"x", "", [&](std::uint64_t s) { again = s; return Outcome{}; }, ""}}, 1e-9, 5, 1);
  EXPECT_NE(first, second);
  EXPECT_EQ(first, again);
}
