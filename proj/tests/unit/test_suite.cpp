#include <gtest/gtest.h>

#include <set>

#include "chernbord/chernbord.hpp"

using namespace chernbord;

namespace {

SuiteReport run(int max_degree = 12, std::optional<std::string> only = std::nullopt, unsigned jobs = 1) {
  SuiteOptions o;
  o.max_degree = max_degree;
  o.only = std::move(only);
  o.jobs = jobs;
  o.corpus_size = 200;
  return run_suite(o);
}

}  // namespace

TEST(Suite, DefaultRunPasses) {
  const auto r = run();
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.count(Status::Skip), 0U);
  for (const auto& x : r.results) EXPECT_NE(x.status, Status::Fail) << x.id << ": " << x.detail;
}

TEST(Suite, CoversEveryTag) {
  const auto r = run();
  std::set<std::string> seen;
  for (const auto& x : r.results) {
    seen.insert(x.tag);
    EXPECT_FALSE(x.anchor.empty());
  }
  for (const auto& t : suite_tags()) EXPECT_TRUE(seen.count(t)) << t;
}

TEST(Suite, OnlyFilters) {
  const auto r = run(12, "whitney");
  ASSERT_FALSE(r.results.empty());
  for (const auto& x : r.results) EXPECT_EQ(x.tag, "whitney");
  EXPECT_TRUE(r.passed());
  EXPECT_THROW(run(12, "nonsense"), RangeError);
}

TEST(Suite, LowTruncationStillPassesWithinBand) {
  const auto r = run(4);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.count(Status::Skip), 0U);
}

TEST(Suite, OrderIsIndependentOfConcurrency) {
  const auto a = run(12, std::nullopt, 1), b = run(12, std::nullopt, 6);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].id, b.results[i].id);
    EXPECT_EQ(a.results[i].status, b.results[i].status);
    EXPECT_EQ(a.results[i].detail, b.results[i].detail);
  }
}

TEST(Suite, IdsAreUnique) {
  std::set<std::string> ids;
  for (const auto& e : suite_entries()) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
}
