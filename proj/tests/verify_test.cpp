#include <gtest/gtest.h>

#include <json.hpp>

#include "cosetq/errors.hpp"
#include "cosetq/verify.hpp"

using namespace cosetq;

TEST(Verify, SuiteNames) {
  EXPECT_EQ(suite_names().back(), "all");
  EXPECT_THROW(run_suite("nope", {}), DomainError);
  EXPECT_THROW(run_suite("methods", {1, 12}), DomainError);
  EXPECT_THROW(run_suite("methods", {4, 0}), DomainError);
}

TEST(Verify, SmallSuitesPass) {
  for (const auto& name : {"methods", "decomposition", "kostka", "convergence"}) {
    const auto reports = run_suite(name, {3, 6});
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_TRUE(reports.front().passed()) << name;
    EXPECT_GT(reports.front().cases.size(), 0u);
  }
}

TEST(Verify, RecursionIdentityHoldsAndProvenFloorBinds) {
  const SuiteReport r = verify_recursion(2, 3);
  EXPECT_TRUE(r.passed());
  // the n^2/(4k) rate is only reported
  EXPECT_GT(r.count(CaseStatus::DIAGNOSTIC), 0u);
}

TEST(Verify, StatedRateCounterexample) {
  // pi_1^{*4} minus pi_1^{*2} at weight 2 is q^2 + q^3 + q^4
  const AffineLabel label{0, 1};
  const QSeries step = fusion_char_exact(limit_composition(label, 2), 2) -
                       fusion_char_exact(limit_composition(label, 1), 2);
  EXPECT_TRUE(step.identical(QSeries::polynomial({0, 0, 1, 1, 1})));
  EXPECT_EQ(convergence_rate_floor(label, 2, 1), Rational(11, 4));
  EXPECT_EQ(limit_step_floor(label, 2, 1), Rational(2));
}

TEST(Verify, ReportJson) {
  SuiteReport r{"methods", {}};
  r.cases.push_back({"(0,1,0,1,0)", "a/b", CaseStatus::PASS, std::nullopt, {}});
  r.cases.push_back({"(0,1,0,1,0)", "a/c", CaseStatus::FAIL, Mismatch{Rational(3), 1, 2}, "note"});
  const auto j = nlohmann::json::parse(report_json({r}));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["status"], "pass");
  EXPECT_TRUE(j[0]["first_mismatch"].is_null());
  EXPECT_EQ(j[1]["status"], "fail");
  EXPECT_EQ(j[1]["first_mismatch"]["exponent"], "3");
  EXPECT_EQ(j[1]["detail"], "note");
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.count(CaseStatus::FAIL), 1u);
}
