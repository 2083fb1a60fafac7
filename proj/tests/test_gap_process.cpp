// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ergg/acceptance.hpp"
#include "ergg/gap_process.hpp"
#include "ergg/monte_carlo.hpp"
#include "ergg/oracles.hpp"
#include "ergg/special.hpp"

using namespace ergg;

namespace {

double mean_of_gap(ModelParams const& params, std::size_t gap, std::size_t draws, RandomStream rng)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        sum += sample_stationary(params, rng).gaps[gap];
    }
    return sum / static_cast<double>(draws);
}

}  // namespace

TEST(RandomStream, ReproducibleAndDistinct)
{
    RandomStream a(42, 7), b(42, 7), c(42, 8);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        double const x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        differs |= x != c.uniform();
    }
    EXPECT_TRUE(differs);
    EXPECT_NE(RandomStream(1, 0).split(0).stream_id(), RandomStream(1, 0).split(1).stream_id());
}

TEST(SampleStationary, MeanIsInverseRate)
{
    std::size_t const draws = 100000;
    double const se1 = 1.0 / std::sqrt(draws);
    EXPECT_NEAR(mean_of_gap(ModelParams::homogeneous(2, 1.0, 1.0, 0.3), 1, draws, RandomStream(1)), 1.0, 4 * se1);
    ModelParams fast{2, 0.3, {1.0, 2.0}, 1.0};
    EXPECT_NEAR(mean_of_gap(fast, 1, draws, RandomStream(2)), 0.5, 4 * 0.5 / std::sqrt(draws));
}

TEST(SampleStationary, KolmogorovSmirnovAgainstExponential)
{
    auto params = ModelParams::homogeneous(2, 1.0, 1.0, 0.0);
    RandomStream rng(3);
    std::vector<double> ys;
    for (int i = 0; i < 100000; ++i) {
        ys.push_back(sample_stationary(params, rng).gaps[1]);
    }
    std::sort(ys.begin(), ys.end());
    double const d = ks_distance(ys, [](double y) { return -std::expm1(-y); });
    EXPECT_LT(d, ks_critical_value(ys.size()));
}

TEST(Step, MemorylessWhenPIsZero)
{
    auto params = ModelParams::homogeneous(4, 1.0, 1.0, 0.0);
    GapState a({0.1, 0.2, 0.3, 0.4});
    GapState b({9.0, 8.0, 7.0, 6.0});
    RandomStream r1(11), r2(11);
    EXPECT_EQ(step(a, params, r1).gaps, step(b, params, r2).gaps);
}

TEST(Step, RejectsSizeMismatch)
{
    RandomStream rng(1);
    EXPECT_THROW(step(GapState({1.0, 1.0}), ModelParams::homogeneous(3, 1.0, 1.0, 0.5), rng), ParameterError);
}

TEST(Step, StationaryMeanAfterManySteps)
{
    // 1000 independent gaps, each stepped 1e4 times from a stationary start.
    auto params = ModelParams::homogeneous(1000, 2.0, 1.0, 0.9);
    RandomStream rng(5);
    GapState s = sample_stationary(params, rng);
    for (int t = 0; t < 10000; ++t) {
        step_inplace(s, params, rng);
    }
    double mean = 0.0;
    for (double y : s.gaps) {
        mean += y;
    }
    mean /= 1000.0;
    EXPECT_NEAR(mean, 0.5, 4 * 0.5 / std::sqrt(1000.0));
}

TEST(Positions, PrefixSums)
{
    EXPECT_EQ(positions(GapState({1, 2, 3})), (std::vector<double>{1, 3, 6}));
    EXPECT_EQ(positions(GapState({0, 0, 0})), (std::vector<double>{0, 0, 0}));
    EXPECT_THROW(GapState({0.5}), ParameterError);
    EXPECT_THROW(GapState({0.5, -1.0}), ParameterError);
}

TEST(Connectivity, IgnoresOriginGapAndUsesStrictInequality)
{
    EXPECT_TRUE(is_connected(GapState({5, 0.1, 0.1}), 1.0));
    EXPECT_FALSE(is_connected(GapState({0, 0.5, 1.5}), 1.0));
    EXPECT_FALSE(is_connected(GapState({0, 0.5, 1.0}), 1.0));
    EXPECT_EQ(component_count(GapState({0, 0.5, 1.0}), 1.0), 2u);
}

TEST(ComponentCount, Examples)
{
    EXPECT_EQ(component_count(GapState({3, 0.1, 0.2, 0.3}), 1.0), 1u);
    EXPECT_EQ(component_count(GapState({0, 2, 3, 4}), 1.0), 4u);
    EXPECT_EQ(component_count(GapState({0, 2, 0.1, 2}), 1.0), 3u);
}

TEST(Degree, Examples)
{
    GapState even({0.4, 0.4, 0.4, 0.4, 0.4, 0.4, 0.4});
    EXPECT_EQ(degree(even, 1.0, 4), 4u);
    EXPECT_EQ(degree(even, 1.0, 1), 2u);
    EXPECT_EQ(degree(GapState({1, 2, 3}), 0.5, 2), 0u);
    EXPECT_THROW(degree(even, 1.0, 0), ParameterError);
    EXPECT_THROW(degree(even, 1.0, 8), ParameterError);
}

TEST(Degree, MatchesPairwiseOracle)
{
    auto params = ModelParams::homogeneous(25, 1.0, 1.0, 0.0);
    RandomStream rng(17);
    for (int s = 0; s < 100; ++s) {
        auto const state = sample_stationary(params, rng);
        double const r = 0.5 + 2.0 * rng.uniform();
        for (std::size_t i = 1; i <= params.n; ++i) {
            ASSERT_EQ(degree(state, r, i), oracle::degree_pairwise(state, r, i));
        }
    }
}

TEST(ExtremeDistances, Examples)
{
    auto e = extreme_distances(GapState({0, 1, 2, 3}));
    EXPECT_EQ(e.connectivity, 3.0);
    EXPECT_EQ(e.nearest_neighbor, 3.0);
    auto two = extreme_distances(GapState({4, 0.7}));
    EXPECT_EQ(two.connectivity, 0.7);
    EXPECT_EQ(two.nearest_neighbor, 0.7);
}

TEST(ExtremeDistances, InvariantsOnRandomStates)
{
    auto params = ModelParams::homogeneous(12, 1.0, 1.0, 0.0);
    RandomStream rng(23);
    for (int s = 0; s < 500; ++s) {
        auto const state = sample_stationary(params, rng);
        auto const e = extreme_distances(state);
        double const r = 3.0 * rng.uniform();
        EXPECT_LE(e.nearest_neighbor, e.connectivity);
        EXPECT_NEAR(e.nearest_neighbor, oracle::nn_distance_pairwise(state), 1e-12);
        EXPECT_EQ(is_connected(state, r), e.connectivity < r);
        EXPECT_EQ(component_count(state, r) == 1, is_connected(state, r));
    }
}

TEST(Step, AutocorrelationIsPowerOfP)
{
    auto const ac = acceptance::trajectory_autocorrelation(0.5, 1.0, 100000, 5, RandomStream(29));
    for (std::size_t j = 1; j <= 5; ++j) {
        EXPECT_NEAR(ac.value[j - 1], std::pow(0.5, static_cast<double>(j)), 4 * ac.se[j - 1]) << "lag " << j;
    }
}
