#include <gtest/gtest.h>

#include "envlab/errors.hpp"
#include "envlab/verify.hpp"

#include <algorithm>

using namespace envlab;

TEST(Verify, SuitesAreRegistered) {
  const auto names = suite_names();
  for (const char* n : {"axioms", "theorem62", "intersection", "cesaro", "jdlg", "c2", "pushout", "hilbert",
                        "mazur", "union"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  }
  EXPECT_THROW(find_suite("nope"), UsageError);
}

TEST(Verify, DeterministicAcrossThreadCounts) {
  SuiteOptions one{20, 7, 1};
  SuiteOptions many{20, 7, 4};
  const auto a = run_suite("theorem62", one);
  const auto b = run_suite("theorem62", many);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_DOUBLE_EQ(a.worst_residual, b.worst_residual);
}

TEST(Verify, JsonShape) {
  const auto r = run_suite("c2", SuiteOptions{1, 42, 1});
  const auto j = to_json(r);
  EXPECT_EQ(j["suite"], "c2");
  EXPECT_EQ(j["passed"], 1);
  EXPECT_TRUE(j.contains("tolerances"));
}
