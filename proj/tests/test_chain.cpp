// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "ergg/chain.hpp"
#include "ergg/gap_process.hpp"
#include "ergg/monte_carlo.hpp"
#include "ergg/oracles.hpp"

using namespace ergg;

TEST(GapStepProbs, MemorylessRefresh)
{
    auto g = gap_step_probs(1.3, 0.8, 0.0);
    double const fresh = 1.0 - std::exp(-1.3 * 0.8);
    EXPECT_NEAR(g.stay_connected, fresh, 1e-15);
    EXPECT_NEAR(g.reconnect, fresh, 1e-15);
}

TEST(GapStepProbs, LargeCutoffLimit)
{
    auto g = gap_step_probs(1.0, 50.0, 0.5);
    EXPECT_NEAR(g.stay_connected, 1.0, 1e-15);
    EXPECT_NEAR(g.exceed, 0.0, 1e-15);
    EXPECT_GT(g.break_off, 0.0);
}

TEST(GapStepProbs, MarginalConsistency)
{
    RandomStream rng(1);
    for (int i = 0; i < 200; ++i) {
        double const lam = 0.1 + 4 * rng.uniform();
        double const r = 0.05 + 3 * rng.uniform();
        double const p = 0.99 * rng.uniform();
        auto g = gap_step_probs(lam, r, p);
        EXPECT_NEAR((1 - g.exceed) * g.stay_connected + g.exceed * g.reconnect, 1 - g.exceed, 1e-12);
        EXPECT_NEAR(g.stay_connected + g.break_off, 1.0, 1e-15);
        for (double v : {g.stay_connected, g.reconnect, g.exceed}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(GapStepProbs, RejectsBadArguments)
{
    EXPECT_THROW(gap_step_probs(0.0, 1.0, 0.5), ParameterError);
    EXPECT_THROW(gap_step_probs(1.0, -1.0, 0.5), ParameterError);
    EXPECT_THROW(gap_step_probs(1.0, 1.0, 1.0), ParameterError);
}

TEST(GapStepProbs, MatchesSimulatedConditionalTransitions)
{
    // λ = 1, r = 1, p = 0.5: 1000 independent gaps per draw, 1600 draws.
    auto params = ModelParams::homogeneous(1000, 1.0, 1.0, 0.5);
    RandomStream rng(99);
    std::size_t below = 0, below_stay = 0, above = 0, above_back = 0;
    for (int it = 0; it < 1600; ++it) {
        auto now = sample_stationary(params, rng);
        auto next = step(now, params, rng);
        for (std::size_t l = 0; l < params.n; ++l) {
            if (now.gaps[l] < 1.0) {
                ++below;
                below_stay += next.gaps[l] < 1.0;
            } else {
                ++above;
                above_back += next.gaps[l] < 1.0;
            }
        }
    }
    auto g = gap_step_probs(1.0, 1.0, 0.5);
    auto alpha = EstimateReport::proportion("alpha", below_stay, below, 99, g.stay_connected);
    auto beta = EstimateReport::proportion("beta", above_back, above, 99, g.reconnect);
    EXPECT_GT(below, 1000000u);
    EXPECT_LE(std::abs(*alpha.z), 4.0);
    EXPECT_LE(std::abs(*beta.z), 4.0);
}

TEST(TransitionMatrix, ProductFormEqualsSubsetSum)
{
    RandomStream rng(7);
    for (std::size_t n = 2; n <= 12; ++n) {
        ModelParams m{n, 0.9 * rng.uniform(), {}, 0.3 + rng.uniform()};
        for (std::size_t l = 0; l < n; ++l) {
            m.rates.push_back(0.3 + 2 * rng.uniform());
        }
        EXPECT_NEAR(transition_matrix(m).p21(), oracle::p21_subset_sum(m), 1e-12) << "n=" << n;
    }
}

TEST(TransitionMatrix, RowsIdenticalWhenMemoryless)
{
    auto params = ModelParams::homogeneous(6, 0.8, 1.2, 0.0);
    auto chain = transition_matrix(params);
    double const pc = std::pow(1 - std::exp(-0.96), 5);
    EXPECT_NEAR(chain.p11(), pc, 1e-14);
    EXPECT_NEAR(chain.p21(), pc, 1e-14);
    EXPECT_NEAR(chain.stationary[0], pc, 1e-14);
}

TEST(TransitionMatrix, RowsSumToOne)
{
    auto chain = transition_matrix(ModelParams{4, 0.6, {1, 0.5, 2, 3}, 0.9});
    for (auto const& row : chain.matrix) {
        EXPECT_NEAR(row[0] + row[1], 1.0, 1e-12);
    }
}

TEST(TransitionMatrix, DegenerateWhenDisconnectionImpossible)
{
    EXPECT_THROW(transition_matrix(ModelParams::homogeneous(3, 1.0, 800.0, 0.5)), DegenerateChainError);
}

TEST(Stationary, MatchesDirectSolveAndRatioForm)
{
    auto chain = transition_matrix(ModelParams::homogeneous(5, 1.0, 1.0, 0.5));
    Matrix m(2, 2);
    m(0, 0) = chain.p11();
    m(0, 1) = chain.p12();
    m(1, 0) = chain.p21();
    m(1, 1) = chain.p22();
    auto direct = solve_stationary(m);
    auto pi = stationary(chain);
    EXPECT_NEAR(pi[0], direct[0], 1e-12);
    EXPECT_NEAR(pi[1], direct[1], 1e-12);
    EXPECT_NEAR(pi[0], chain.p21() / (chain.p12() + chain.p21()), 1e-12);
}

TEST(Stationary, SymmetricChainIsUniform)
{
    TwoStateChain chain;
    chain.matrix = {{{0.7, 0.3}, {0.3, 0.7}}};
    auto pi = stationary(chain);
    EXPECT_NEAR(pi[0], 0.5, 1e-15);
    EXPECT_NEAR(pi[1], 0.5, 1e-15);
}

TEST(Stationary, ReducibleChainRejected)
{
    TwoStateChain chain;
    chain.matrix = {{{1.0, 0.0}, {0.4, 0.6}}};
    EXPECT_THROW(stationary(chain), DegenerateChainError);
}

TEST(LimitDiagnostics, DecreasesTowardZero)
{
    std::vector<std::size_t> grid{2, 5, 10, 20, 50};
    auto rows = limit_diagnostics(1.0, 1.0, 0.5, grid);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(rows[i].pi1, rows[i - 1].pi1);
    }
    EXPECT_LT(rows.back().pi1, 1e-3);
}

TEST(LimitDiagnostics, AlwaysConnectedForHugeCutoff)
{
    std::vector<std::size_t> grid{2, 3, 5};
    for (auto const& row : limit_diagnostics(1.0, 50.0, 0.5, grid)) {
        EXPECT_NEAR(row.pi1, 1.0, 1e-15);
    }
}

TEST(ComponentChain, MatchesDoubleSubsetEnumeration)
{
    RandomStream rng(13);
    for (std::size_t n = 2; n <= 10; ++n) {
        ModelParams m{n, 0.95 * rng.uniform(), {}, 0.2 + 1.5 * rng.uniform()};
        for (std::size_t l = 0; l < n; ++l) {
            m.rates.push_back(0.2 + 2 * rng.uniform());
        }
        auto chain = component_transition_matrix(m);
        auto brute = oracle::component_matrix_bruteforce(m);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_NEAR(chain.matrix.row_sum(i), 1.0, 1e-10);
            for (std::size_t j = 0; j < n; ++j) {
                EXPECT_NEAR(chain.matrix(i, j), brute(i, j), 1e-12);
            }
        }
        EXPECT_NEAR(chain.matrix(0, 0), transition_matrix(m).p11(), 1e-12);
    }
}

TEST(ComponentChain, MemorylessRowsEqualOccupancy)
{
    auto chain = component_transition_matrix(ModelParams::homogeneous(6, 1.0, 0.7, 0.0));
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            EXPECT_NEAR(chain.matrix(i, j), chain.occupancy[j], 1e-14);
        }
    }
}

TEST(ComponentChain, UnreachableRowsAreUndefined)
{
    auto chain = component_transition_matrix(ModelParams::homogeneous(4, 1.0, 800.0, 0.5));
    EXPECT_TRUE(chain.row_defined[0]);
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_FALSE(chain.row_defined[i]);
        EXPECT_EQ(chain.matrix.row_sum(i), 0.0);
    }
    auto pi = component_stationary(chain);
    EXPECT_NEAR(pi[0], 1.0, 1e-15);
}

TEST(ComponentStationary, EqualsOccupancyAndConnectivityStationary)
{
    auto params = ModelParams{7, 0.6, {1, 0.4, 1.1, 2.0, 0.9, 1.5, 0.7}, 1.0};
    auto chain = component_transition_matrix(params);
    auto pi = component_stationary(chain);
    for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_NEAR(pi[i], chain.occupancy[i], 1e-10);
    }
    EXPECT_NEAR(pi[0], transition_matrix(params).stationary[0], 1e-10);
}

TEST(ComponentStationary, TwoVertices)
{
    auto chain = component_transition_matrix(ModelParams::homogeneous(2, 1.0, 1.0, 0.4));
    auto pi = component_stationary(chain);
    double const q = std::exp(-1.0);
    EXPECT_NEAR(pi[0], 1 - q, 1e-12);
    EXPECT_NEAR(pi[1], q, 1e-12);
}
