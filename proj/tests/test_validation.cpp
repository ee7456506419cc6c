// Copyright 2026 The sepnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include "support.hpp"

namespace sepnoise {
namespace {

void expect_all_pass(const ValidationReport& rep) {
  for (const auto& c : rep.cases)
    EXPECT_TRUE(c.pass) << rep.name << "/" << c.id << ": computed " << c.computed << ", reference " << c.reference;
}

TEST(ClosedFormSuite, AllCasesPass) {
  const ValidationReport rep = closed_form_suite();
  EXPECT_GE(rep.cases.size(), 30u);
  expect_all_pass(rep);
  EXPECT_TRUE(rep.pass());
}

TEST(ClosedFormSuite, OtherParameters) {
  expect_all_pass(closed_form_suite(0.05, 0.3));
}

TEST(ScalingSuite, SlopesAreNearTwo) {
  const ValidationReport rep = scaling_suite();
  ASSERT_EQ(rep.cases.size(), 2u);
  expect_all_pass(rep);
}

TEST(Scaling, LogLogSlopeOfAPowerLaw) {
  const std::vector<double> x = {0.1, 0.2, 0.4, 0.8};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v);
  EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-12);
  EXPECT_THROW(loglog_slope({1.0}, {1.0}), InvalidArgument);
}

TEST(Scaling, ZeroNoiseHasNoResidual) {
  const auto gen = fig1_family(0.0);
  EXPECT_LE(superop_residual(gen, 1.0, 1024), 1e-12);
  // A zero strength is dropped from the fit rather than producing log(0).
  const ScalingResult r = scaling_fit(fig1_family, {0.0, 0.05, 0.1}, 1.0, 512);
  EXPECT_EQ(r.strengths.size(), 2u);
}

TEST(Fig1, TrajectoryStartsAtTheInitialState) {
  const auto gen = fig1_generator(0.25, 2.0);
  const SeparatedTrajectory t = separated_trajectory(gen, DensityMatrix::basis_state(2, 0), 2.0, 10, 2000);
  ASSERT_EQ(t.times.size(), 11u);
  ASSERT_EQ(t.exact.size(), 11u);
  ASSERT_EQ(t.separated.size(), 11u);
  EXPECT_LE(max_abs(t.exact[0] - t.separated[0]), 0.0);
  EXPECT_DOUBLE_EQ(t.times.back(), 2.0);
  for (const auto& rho : t.separated) EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
}

TEST(Fig1, VanishingNoiseReachesTheIntegratorFloor) {
  EXPECT_LE(fig1_experiment(1e-9, 10.0, 500).max_deviation, 1e-7);
}

TEST(Fig1, DeviationGrowsWithNoise) {
  const double d025 = fig1_experiment(0.25, 16.0, 2000).max_deviation;
  const double d1 = fig1_experiment(1.0, 4.0, 2000).max_deviation;
  const double d25 = fig1_experiment(2.5, 1.6, 2000).max_deviation;
  EXPECT_LT(d025, d1);
  EXPECT_LT(d1, d25);
}

TEST(Fig1, StrongNoiseDeviationIsTenTimesTheWeakOne) {
  const double d025 = fig1_experiment(0.25, 16.0, 2000).max_deviation;
  const double d25 = fig1_experiment(2.5, 1.6, 2000).max_deviation;
  EXPECT_GE(d25 / d025, 10.0) << "d(0.25) = " << d025 << ", d(2.5) = " << d25;
}

TEST(Fig1, WeakNoiseIsBelowTheCalibratedThreshold) {
  const double threshold = 3.0 * fig1_experiment(0.05, 80.0, 2000).max_deviation;
  const double d025 = fig1_experiment(0.25, 16.0, 2000).max_deviation;
  EXPECT_LE(d025, threshold);
}

TEST(Fig1, DeviationIsConvergedInTheStepCount) {
  const double a = fig1_experiment(0.25, 16.0, 500).max_deviation;
  const double b = fig1_experiment(0.25, 16.0, 500, 2 * default_evolve_steps(fig1_generator(0.25, 16.0), 16.0)).max_deviation;
  EXPECT_NEAR(a, b, 1e-9);
}

TEST(Report, JsonAndJUnit) {
  ValidationReport rep;
  rep.name = "demo";
  rep.match("exact", ReferenceKind::closed_form, 1.0, 1.0, 0.0);
  rep.at_most("too_big", ReferenceKind::calibrated, 2.0, 1.0);
  rep.at_least("big_enough", ReferenceKind::limit, 2.0, 1.0);
  EXPECT_FALSE(rep.pass());
  EXPECT_EQ(rep.failures(), 1u);
  const Json j = report_to_json(rep);
  EXPECT_EQ(j.at("suite"), "demo");
  EXPECT_EQ(j.at("cases"), 3);
  EXPECT_EQ(j.at("failures"), 1);
  EXPECT_FALSE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("results")[1].at("reference_kind"), "calibrated");
  EXPECT_EQ(j.at("results")[1].at("comparison"), "at_most");
  const std::string xml = report_to_junit(rep);
  EXPECT_NE(xml.find("<testsuite name=\"demo\" tests=\"3\" failures=\"1\""), std::string::npos);
  EXPECT_NE(xml.find("<failure"), std::string::npos);
}

}  // namespace
}  // namespace sepnoise
