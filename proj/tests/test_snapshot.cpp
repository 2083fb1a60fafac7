// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ergg/acceptance.hpp"
#include "ergg/oracles.hpp"
#include "ergg/snapshot.hpp"

using namespace ergg;

TEST(Connectivity, TwoVerticesAtMedianCutoff)
{
    auto params = ModelParams::homogeneous(2, 1.0, std::log(2.0), 0.3);
    EXPECT_NEAR(connectivity_probability(params), 0.5, 1e-15);
}

TEST(Connectivity, DecreasesWithN)
{
    double prev = 1.0;
    for (std::size_t n = 2; n <= 40; ++n) {
        double const pc = connectivity_probability(ModelParams::homogeneous(n, 1.0, 2.0, 0.0));
        EXPECT_LT(pc, prev);
        prev = pc;
    }
}

TEST(ComponentPmf, SumsToOneAndMatchesEnumeration)
{
    RandomStream rng(5);
    for (std::size_t n = 2; n <= 12; ++n) {
        auto params = acceptance::detail::random_params(rng, n);
        auto pmf = component_pmf(params);
        auto brute = oracle::component_pmf_bruteforce(params);
        ASSERT_EQ(pmf.size(), n);
        EXPECT_NEAR(std::accumulate(pmf.begin(), pmf.end(), 0.0), 1.0, 1e-12);
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_NEAR(pmf[k], brute[k], 1e-13) << "n=" << n << " k=" << k + 1;
        }
        EXPECT_NEAR(pmf[0], connectivity_probability(params), 1e-13);
    }
}

TEST(EqualSize, FourVerticesInTwoPairs)
{
    auto params = ModelParams::homogeneous(4, 1.0, 0.9, 0.0);
    double const q = std::exp(-0.9);
    EXPECT_NEAR(equal_size_components_probability(params, 2, 2), q * (1 - q) * (1 - q), 1e-15);
}

TEST(EqualSize, SingleComponentIsConnectivity)
{
    auto params = ModelParams{6, 0.2, {1, 2, 0.5, 1, 3, 1}, 0.7};
    EXPECT_NEAR(equal_size_components_probability(params, 1, 6), connectivity_probability(params), 1e-15);
}

TEST(EqualSize, SingletonsNeedEveryGapOpen)
{
    auto params = ModelParams::homogeneous(5, 1.0, 0.4, 0.0);
    EXPECT_NEAR(equal_size_components_probability(params, 5, 1), std::exp(-4 * 0.4), 1e-15);
}

TEST(EqualSize, IncompatibleSizesAreImpossible)
{
    auto params = ModelParams::homogeneous(6, 1.0, 1.0, 0.0);
    EXPECT_EQ(equal_size_components_probability(params, 4, 2), 0.0);
    EXPECT_THROW(equal_size_components_probability(params, 0, 6), ParameterError);
    EXPECT_THROW(equal_size_components_probability(params, 2, -3), ParameterError);
}

TEST(Degree, ExactLawSumsToOne)
{
    for (std::size_t i : {1u, 2u, 5u, 10u}) {
        auto pmf = degree_pmf_exact(10, 1.3, 0.8, i);
        EXPECT_NEAR(std::accumulate(pmf.probs.begin(), pmf.probs.end(), 0.0), 1.0, 1e-13);
    }
}

TEST(Degree, TwoVertices)
{
    double const q = std::exp(-0.6);
    for (std::size_t i : {1u, 2u}) {
        auto pmf = degree_pmf_exact(2, 1.0, 0.6, i);
        EXPECT_NEAR(pmf.probs[0], q, 1e-15);
        EXPECT_NEAR(pmf.probs[1], 1 - q, 1e-15);
    }
}

TEST(Degree, ClosedFormsExactWhereNoSideSaturates)
{
    std::size_t const n = 30;
    double const lam = 1.0, r = 1.5;
    for (std::size_t i = 1; i <= n; ++i) {
        auto exact = degree_pmf_exact(n, lam, r, i);
        auto closed = degree_pmf_closed_form(n, lam, r, i);
        for (std::size_t k = 0; k < n; ++k) {
            if (acceptance::degree_formula_exact(n, i, k)) {
                EXPECT_NEAR(closed.probs[k], exact.probs[k], 1e-13) << "i=" << i << " k=" << k;
            }
        }
    }
}

TEST(Degree, InteriorVertexIsPoissonOfTwiceTheMass)
{
    auto pmf = degree_pmf_closed_form(50, 1.0, 1.0, 25);
    EXPECT_EQ(pmf.classes[3], DegreeClass::interior);
    EXPECT_NEAR(pmf.probs[3], std::exp(-2.0) * 8.0 / 6.0, 1e-15);
}

TEST(Degree, SaturatedInteriorBoundaryDiffersFromExact)
{
    // i = k + 1: all i - 1 left vertices within r, not a Poisson point mass.
    auto exact = degree_pmf_exact(50, 1.0, 1.0, 4);
    auto closed = degree_pmf_closed_form(50, 1.0, 1.0, 4);
    EXPECT_EQ(closed.classes[3], DegreeClass::interior);
    EXPECT_GT(std::abs(closed.probs[3] - exact.probs[3]), 1e-3);
}

TEST(Degree, ClassesCoverEveryPair)
{
    auto pmf = degree_pmf_closed_form(6, 1.0, 1.0, 3);
    EXPECT_EQ(pmf.classes[0], DegreeClass::interior);
    EXPECT_EQ(pmf.classes[2], DegreeClass::interior);
    EXPECT_EQ(pmf.classes[3], DegreeClass::near_boundary);
    EXPECT_EQ(pmf.classes[4], DegreeClass::oracle_fallback);
    auto exact = degree_pmf_exact(6, 1.0, 1.0, 3);
    EXPECT_EQ(pmf.probs[4], exact.probs[4]);
    EXPECT_EQ(degree_pmf_closed_form(6, 1.0, 1.0, 1).classes[2], DegreeClass::endpoint);
}

TEST(Degree, RejectsBadArguments)
{
    EXPECT_THROW(degree_pmf_exact(10, 1.0, 1.0, 0), ParameterError);
    EXPECT_THROW(degree_pmf_exact(10, 1.0, 1.0, 11), ParameterError);
    EXPECT_THROW(degree_pmf_closed_form(10, -1.0, 1.0, 2), ParameterError);
    EXPECT_THROW(degree_pmf_closed_form(ModelParams{3, 0.0, {1, 1, 2}, 1.0}, 2), ParameterError);
    EXPECT_NO_THROW(degree_pmf_closed_form(ModelParams{3, 0.0, {5, 1, 1}, 1.0}, 2));
}

TEST(ConnectivityDistance, MedianForTwoVertices)
{
    auto params = ModelParams::homogeneous(2, 1.0, 1.0, 0.0);
    EXPECT_NEAR(connectivity_distance_cdf(params, std::log(2.0)), 0.5, 1e-15);
    EXPECT_NEAR(connectivity_distance_quantile(params, 0.5), std::log(2.0), 1e-10);
    EXPECT_EQ(connectivity_distance_cdf(params, 0.0), 0.0);
    EXPECT_THROW(connectivity_distance_quantile(params, 1.0), ParameterError);
}

TEST(ConnectivityDistance, QuantileInvertsCdf)
{
    auto params = ModelParams{20, 0.0, std::vector<double>(20, 0.5), 1.0};
    for (double prob : {0.01, 0.3, 0.9, 0.999}) {
        double const y = connectivity_distance_quantile(params, prob);
        EXPECT_NEAR(connectivity_distance_cdf(params, y), prob, 1e-9);
    }
}

TEST(NearestNeighbourDistance, TwoVertices)
{
    auto params = ModelParams::homogeneous(2, 2.0, 1.0, 0.0);
    EXPECT_NEAR(nn_distance_cdf(params, 0.4), 1 - std::exp(-0.8), 1e-15);
}

TEST(NearestNeighbourDistance, MatchesEnumeration)
{
    RandomStream rng(17);
    for (std::size_t n = 2; n <= 12; ++n) {
        auto params = acceptance::detail::random_params(rng, n);
        for (double y : {0.1, 0.5, 1.0, 2.5}) {
            EXPECT_NEAR(nn_distance_cdf(params, y), oracle::nn_distance_cdf_bruteforce(params, y), 1e-13)
                << "n=" << n << " y=" << y;
        }
    }
}

TEST(NearestNeighbourDistance, DominatesConnectivityDistance)
{
    auto params = ModelParams::homogeneous(15, 1.0, 1.0, 0.0);
    for (double y = 0.1; y < 6.0; y += 0.3) {
        EXPECT_GE(nn_distance_cdf(params, y), connectivity_distance_cdf(params, y));
    }
}

TEST(NearestNeighbourDistance, DisjointPairUpperBound)
{
    for (std::size_t n : {4u, 5u, 8u, 13u}) {
        auto params = ModelParams::homogeneous(n, 1.0, 1.0, 0.0);
        for (double y : {0.3, 1.0, 2.0}) {
            double const e = std::exp(-y);
            double bound = (1 - e) * (1 - e);
            for (std::size_t l = 2; l + 1 <= n - 2; l += 2) {
                bound *= 1 - e * e;
            }
            EXPECT_LE(nn_distance_cdf(params, y), bound + 1e-15) << "n=" << n << " y=" << y;
        }
    }
}

TEST(NearestNeighbourDistance, AllGapProductIsNotAnUpperBound)
{
    // Four vertices: the middle gap is free once both end gaps are short.
    auto params = ModelParams::homogeneous(4, 1.0, 1.0, 0.0);
    double const y = 1.0;
    double const below = 1 - std::exp(-y);
    EXPECT_NEAR(nn_distance_cdf(params, y), below * below, 1e-15);
    EXPECT_GT(nn_distance_cdf(params, y), std::pow(below, 3));
}

TEST(StrongLaw, SmallRunIsDeterministicAndOrdered)
{
    std::vector<std::size_t> grid{100, 1000};
    RandomStream rng(3);
    auto a = strong_law_experiment(1.0, grid, 40, rng, 1);
    auto b = strong_law_experiment(1.0, grid, 40, rng, 4);
    ASSERT_EQ(a.size(), 2u);
    for (std::size_t g = 0; g < 2; ++g) {
        EXPECT_EQ(a[g].mean_c, b[g].mean_c);
        EXPECT_EQ(a[g].mean_b, b[g].mean_b);
        EXPECT_LT(a[g].mean_b, a[g].mean_c);
        EXPECT_GT(a[g].mean_c, 0.7);
        EXPECT_LT(a[g].mean_c, 1.6);
    }
    EXPECT_THROW(strong_law_experiment(1.0, grid, 1, rng), ParameterError);
    std::vector<std::size_t> tiny{2};
    EXPECT_THROW(strong_law_experiment(1.0, tiny, 10, rng), ParameterError);
}
