// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ergg/error.hpp"
#include "ergg/matrix.hpp"
#include "ergg/params.hpp"
#include "ergg/special.hpp"

namespace ergg {

/// One-step threshold probabilities of a single stationary gap.
struct GapStepProbs {
    double stay_connected;  ///< α = P(next < r | current < r)
    double break_off;       ///< 1 - α, evaluated directly to keep precision when α ≈ 1
    double reconnect;       ///< β = P(next < r | current > r)
    double exceed;          ///< q = e^{-λr}, stationary P(gap > r)
};

inline GapStepProbs gap_step_probs(double lambda, double r, double p)
{
    if (!(lambda > 0.0) || !(r > 0.0) || !(p >= 0.0 && p < 1.0)) {
        throw ParameterError("gap_step_probs needs lambda > 0, r > 0, 0 <= p < 1");
    }
    double const keep = 1.0 - p;
    double const q = std::exp(-lambda * r);
    double const fresh_below = -std::expm1(-lambda * r / keep);
    double const below = -std::expm1(-lambda * r);
    GapStepProbs g{};
    g.exceed = q;
    g.reconnect = keep * fresh_below;
    // below == 0 only when λr underflows; the gap is then never below r.
    g.break_off = below > 0.0 ? keep * q * fresh_below / below : 0.0;
    g.stay_connected = 1.0 - g.break_off;
    return g;
}

/// Connectivity chain over {1 = connected, 2 = disconnected}.
struct TwoStateChain {
    std::array<std::array<double, 2>, 2> matrix{};
    std::array<double, 2> stationary{};

    [[nodiscard]] double p11() const { return matrix[0][0]; }
    [[nodiscard]] double p12() const { return matrix[0][1]; }
    [[nodiscard]] double p21() const { return matrix[1][0]; }
    [[nodiscard]] double p22() const { return matrix[1][1]; }
};

/// Stationary law of the connectivity chain via the first-return formula.
inline std::array<double, 2> stationary(TwoStateChain const& chain)
{
    double const p11 = chain.p11(), p12 = chain.p12(), p21 = chain.p21(), p22 = chain.p22();
    if (!(p12 > 0.0) || !(p21 > 0.0)) {
        throw DegenerateChainError("connectivity chain is reducible (an off-diagonal entry is zero)");
    }
    double const a = 1.0 - p22;
    double const b = 1.0 - p11;
    double const pi1 = a * a / (p11 * a * a + p21 * p12 * (2.0 - p22));
    double const pi2 = b * b / (p22 * b * b + p12 * p21 * (2.0 - p11));
    return {pi1, pi2};
}

/// Transition matrix of the connectivity chain; p21 uses the product-form
/// collapse of the subset sum over disconnected configurations.
inline TwoStateChain transition_matrix(ModelParams const& params)
{
    params.validate();
    double log_alpha = 0.0;
    double log_connected = 0.0;
    for (std::size_t l = 1; l < params.n; ++l) {
        auto const g = gap_step_probs(params.rates[l], params.r, params.p);
        log_alpha += std::log1p(-g.break_off);
        log_connected += std::log1p(-g.exceed);
    }
    double const disconnected = -std::expm1(log_connected);
    if (!(disconnected > 0.0)) {
        throw DegenerateChainError("disconnection has probability zero for these parameters");
    }
    double const connected = std::exp(log_connected);
    double const p11 = std::exp(log_alpha);
    double const p21 = connected * -std::expm1(log_alpha) / disconnected;

    TwoStateChain chain;
    chain.matrix = {{{p11, 1.0 - p11}, {p21, 1.0 - p21}}};
    if (chain.p12() > 0.0 && chain.p21() > 0.0) {
        chain.stationary = stationary(chain);
    } else {
        // absorbing in whichever state cannot be left
        chain.stationary = chain.p12() > 0.0 ? std::array{0.0, 1.0} : std::array{1.0, 0.0};
    }
    return chain;
}

struct LimitRow {
    std::size_t n;
    double pi1;
    double p11;
    double p21;
};

/// π_1(n) along a grid of n for homogeneous rates.
inline std::vector<LimitRow> limit_diagnostics(double lambda, double r, double p,
                                               std::span<std::size_t const> n_grid)
{
    std::vector<LimitRow> rows;
    rows.reserve(n_grid.size());
    for (std::size_t n : n_grid) {
        auto const chain = transition_matrix(ModelParams::homogeneous(n, lambda, r, p));
        rows.push_back({n, chain.stationary[0], chain.p11(), chain.p21()});
    }
    return rows;
}

/// Component-count chain on states 1..n (stored 0-based).
struct ComponentChain {
    Matrix matrix;                 ///< p'_{ij}; undefined rows are zero-filled
    std::vector<double> occupancy; ///< stationary P(G'_t = i)
    std::vector<bool> row_defined; ///< false where occupancy underflows to zero

    [[nodiscard]] std::size_t states() const { return occupancy.size(); }
};

/// Stationary exceedance probabilities q_l = e^{-λ_l r} for l = 1..n-1.
inline std::vector<double> exceedance_probs(ModelParams const& params, double y)
{
    std::vector<double> q;
    q.reserve(params.n - 1);
    for (std::size_t l = 1; l < params.n; ++l) {
        q.push_back(std::exp(-params.rates[l] * y));
    }
    return q;
}

/// Component-count transition matrix by bivariate generating-function DP.
///
/// coef[i][j] holds the probability that i gaps exceed r now and j exceed r
/// at the next step; each gap multiplies by J_cc + J_co·y + J_oc·x + J_oo·xy.
inline ComponentChain component_transition_matrix(ModelParams const& params)
{
    params.validate();
    std::size_t const gaps = params.n - 1;
    std::size_t const dim = params.n;
    Matrix coef(dim, dim);
    coef(0, 0) = 1.0;
    for (std::size_t l = 1; l <= gaps; ++l) {
        auto const g = gap_step_probs(params.rates[l], params.r, params.p);
        double const cc = (1.0 - g.exceed) * g.stay_connected;
        double const co = (1.0 - g.exceed) * g.break_off;
        double const oc = g.exceed * g.reconnect;
        double const oo = g.exceed * (1.0 - g.reconnect);
        for (std::size_t i = l + 1; i-- > 0;) {
            for (std::size_t j = l + 1; j-- > 0;) {
                double v = cc * coef(i, j);
                if (j > 0) {
                    v += co * coef(i, j - 1);
                }
                if (i > 0) {
                    v += oc * coef(i - 1, j);
                }
                if (i > 0 && j > 0) {
                    v += oo * coef(i - 1, j - 1);
                }
                coef(i, j) = v;
            }
        }
    }

    ComponentChain chain;
    auto const q = exceedance_probs(params, params.r);
    chain.occupancy = poisson_binomial_pmf(q);
    chain.matrix = Matrix(dim, dim);
    chain.row_defined.assign(dim, false);
    for (std::size_t i = 0; i < dim; ++i) {
        double const occ = chain.occupancy[i];
        if (!(occ >= std::numeric_limits<double>::min())) {
            continue;
        }
        chain.row_defined[i] = true;
        for (std::size_t j = 0; j < dim; ++j) {
            chain.matrix(i, j) = coef(i, j) / occ;
        }
    }
    return chain;
}

/// Stationary law of the component chain restricted to its defined states.
inline std::vector<double> component_stationary(ComponentChain const& chain)
{
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < chain.states(); ++i) {
        if (chain.row_defined[i]) {
            support.push_back(i);
        }
    }
    if (support.empty()) {
        throw DegenerateChainError("component chain has no reachable states");
    }
    Matrix restricted(support.size(), support.size());
    for (std::size_t a = 0; a < support.size(); ++a) {
        for (std::size_t b = 0; b < support.size(); ++b) {
            restricted(a, b) = chain.matrix(support[a], support[b]);
        }
    }
    std::vector<double> pi_restricted;
    try {
        pi_restricted = solve_stationary(restricted);
    } catch (DegenerateChainError const&) {
        throw DegenerateChainError("component chain is reducible on its support");
    }
    std::vector<double> pi(chain.states(), 0.0);
    for (std::size_t a = 0; a < support.size(); ++a) {
        pi[support[a]] = pi_restricted[a];
    }
    return pi;
}

}  // namespace ergg
