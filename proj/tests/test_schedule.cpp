// Copyright (C) 2026 The fbsdiff Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "fbsdiff/errors.hpp"
#include "fbsdiff/schedule.hpp"
#include "test_util.hpp"

namespace fbsdiff {
namespace {

using testing::random_map;
using testing::reference_alpha_bar;

TEST(Schedule, FirstStepKeepsOneMinusBetaStart) {
    const Schedule s = build_schedule();
    EXPECT_DOUBLE_EQ(s.alpha_bar(0), 1.0);
    EXPECT_DOUBLE_EQ(s.alpha_bar(1), 1.0 - 1e-4);
    EXPECT_DOUBLE_EQ(s.beta(1), 1e-4);
    EXPECT_DOUBLE_EQ(s.beta(1000), 0.02);
}

TEST(Schedule, SingleStep) {
    const Schedule s(1, 0.5, 0.5);
    EXPECT_DOUBLE_EQ(s.alpha_bar(1), 0.5);
}

TEST(Schedule, MatchesRecomputedProduct) {
    const Schedule s = build_schedule();
    const auto ref = reference_alpha_bar(1000, 1e-4, 0.02);
    for (int t = 0; t <= 1000; ++t) EXPECT_NEAR(s.alpha_bar(t), ref[static_cast<std::size_t>(t)], 1e-14) << t;
    EXPECT_LT(s.alpha_bar(1000), 1e-3);
    EXPECT_GT(s.alpha_bar(1000), 0.0);
}

TEST(Schedule, IsStrictlyDecreasing) {
    const Schedule s = build_schedule();
    for (int t = 1; t <= 1000; ++t) EXPECT_LT(s.alpha_bar(t), s.alpha_bar(t - 1));
}

TEST(Schedule, RejectsBadParameters) {
    EXPECT_THROW(Schedule(0, 1e-4, 0.02), Error);
    EXPECT_THROW(Schedule(10, 0.0, 0.02), Error);
    EXPECT_THROW(Schedule(10, 1e-4, 1.0), Error);
    EXPECT_THROW(Schedule(10, 0.1, 0.01), Error);
    const Schedule s = build_schedule(10);
    EXPECT_THROW((void)s.beta(0), Error);
    EXPECT_THROW((void)s.beta(11), Error);
    EXPECT_THROW((void)s.alpha_bar(-1), Error);
    EXPECT_THROW((void)s.alpha_bar(11), Error);
}

TEST(Subsample, FiftyOfThousand) {
    const auto ladder = subsample(build_schedule(), 50);
    ASSERT_EQ(ladder.size(), 50u);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(ladder[static_cast<std::size_t>(i)], 20 * (i + 1));
}

TEST(Subsample, IdentityAndSingleStep) {
    const auto s = build_schedule(37);
    const auto full = subsample(s, 37);
    for (int i = 0; i < 37; ++i) EXPECT_EQ(full[static_cast<std::size_t>(i)], i + 1);
    EXPECT_EQ(subsample(s, 1), std::vector<int>{37});
}

TEST(Subsample, FloorsNonDivisibleCounts) {
    // 1000/3: 333, 666, 1000.
    EXPECT_EQ(subsample(build_schedule(), 3), (std::vector<int>{333, 666, 1000}));
}

TEST(Subsample, RejectsOutOfRange) {
    const auto s = build_schedule(100);
    EXPECT_THROW((void)subsample(s, 0), Error);
    EXPECT_THROW((void)subsample(s, 101), Error);
}

TEST(ForwardPredict, InvertEachOtherInDouble) {
    const Schedule s = build_schedule();
    std::mt19937_64 rng(11);
    for (int t : {1, 20, 500, 999, 1000}) {
        const auto x0 = random_map<double>(Shape{4, 8, 8}, rng);
        const auto eps = random_map<double>(Shape{4, 8, 8}, rng);
        const auto back = predict_x0(forward_diffuse(x0, t, eps, s), t, eps, s);
        EXPECT_LE(relative_l2_error(back, x0), 1e-6) << t;
    }
}

TEST(ForwardPredict, ScalarExample) {
    // ᾱ = 0.25, z_t = 1, ε̂ = 1 gives (1 − √0.75)/0.5.
    const Schedule s(1, 0.75, 0.75);
    const FeatureMap64 one(Shape{1, 1, 1}, 1.0);
    EXPECT_NEAR(predict_x0(one, 1, one, s)[0], 0.2679491924311227, 1e-12);
}

TEST(ForwardPredict, CleanTimestepIsIdentity) {
    std::mt19937_64 rng(12);
    const auto z = random_map(Shape{2, 4, 4}, rng), eps = random_map(Shape{2, 4, 4}, rng);
    EXPECT_EQ(predict_x0(z, 1.0, eps), z);
    EXPECT_EQ(forward_diffuse(z, 1.0, eps), z);
}

TEST(ForwardPredict, ZeroAlphaBarIsSingular) {
    const FeatureMap z(Shape{1, 2, 2}, 1.0f);
    try {
        (void)predict_x0(z, 0.0, z);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kSingularSchedule);
    }
}

}  // namespace
}  // namespace fbsdiff
