/*
 * Copyright 2026 The chaos-sampler Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "chaos/error.hpp"
#include "chaos/stats.hpp"

namespace {

TEST(Stats, CompensatedSumRecoversSmallTerms) {
    std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
    EXPECT_EQ(chaos::compensated_sum(xs), 2.0);
}

TEST(Stats, SumIsOrderInsensitive) {
    std::mt19937_64 eng(5);
    std::lognormal_distribution<double> dist(0.0, 3.0);
    std::vector<double> xs(5000);
    for (auto& x : xs) x = dist(eng);
    const double forward = chaos::compensated_sum(xs);
    std::shuffle(xs.begin(), xs.end(), eng);
    EXPECT_NEAR(chaos::compensated_sum(xs), forward, 1e-12 * std::abs(forward));
}

TEST(Stats, MeanStderrMatchesTextbookFormula) {
    std::vector<double> xs{1.0, 2.0, 4.0, 7.0};
    const auto m = chaos::mean_stderr(xs);
    // mean 3.5, sample variance (6.25 + 2.25 + 0.25 + 12.25) / 3 = 7
    EXPECT_DOUBLE_EQ(m.mean, 3.5);
    EXPECT_NEAR(m.std_error, std::sqrt(7.0 / 4.0), 1e-15);
    EXPECT_EQ(m.count, 4u);
    EXPECT_TRUE(m.std_error_defined);
}

TEST(Stats, SingleSampleFlagsStderr) {
    std::vector<double> xs{0.25};
    const auto m = chaos::mean_stderr(xs);
    EXPECT_EQ(m.mean, 0.25);
    EXPECT_EQ(m.std_error, 0.0);
    EXPECT_FALSE(m.std_error_defined);
}

TEST(Stats, IdenticalSamplesHaveZeroStderr) {
    std::vector<double> xs(10, 1.3);
    EXPECT_EQ(chaos::mean_stderr(xs).std_error, 0.0);
}

TEST(Stats, EmptyInputThrows) {
    std::vector<double> xs;
    EXPECT_THROW(chaos::mean_stderr(xs), chaos::Error);
}

}  // namespace
