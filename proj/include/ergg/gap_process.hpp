// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ergg/error.hpp"
#include "ergg/params.hpp"
#include "ergg/random_stream.hpp"

namespace ergg {

/// Gap values Y_0..Y_{n-1} at one time step.
struct GapState {
    std::vector<double> gaps;

    GapState() = default;
    explicit GapState(std::vector<double> g) : gaps(std::move(g))
    {
        if (gaps.size() < 2) {
            throw ParameterError("a gap state needs n >= 2 gaps");
        }
        for (double y : gaps) {
            if (!(y >= 0.0)) {
                throw ParameterError("gaps must be nonnegative");
            }
        }
    }

    [[nodiscard]] std::size_t n() const { return gaps.size(); }
};

/// Draws every Y_l independently from Exp(λ_l).
inline GapState sample_stationary(ModelParams const& params, RandomStream& rng)
{
    params.validate();
    GapState s;
    s.gaps.resize(params.n);
    for (std::size_t l = 0; l < params.n; ++l) {
        s.gaps[l] = rng.exponential(params.rates[l]);
    }
    return s;
}

/// One TEAR(1) step in place: Y_l <- ε + V·Y_l with V ~ Ber(p) and ε = (1-p)·Exp(λ_l).
/// Draw order is fixed: for each l, one uniform for V, then one for ε.
inline void step_inplace(GapState& state, ModelParams const& params, RandomStream& rng)
{
    double const keep = 1.0 - params.p;
    for (std::size_t l = 0; l < state.gaps.size(); ++l) {
        bool const carry = rng.bernoulli(params.p);
        double const eps = keep * rng.exponential(params.rates[l]);
        state.gaps[l] = carry ? state.gaps[l] + eps : eps;
    }
}

inline GapState step(GapState state, ModelParams const& params, RandomStream& rng)
{
    if (state.n() != params.n) {
        throw ParameterError("state size does not match params.n");
    }
    step_inplace(state, params, rng);
    return state;
}

/// Vertex positions X_i = Y_0 + ... + Y_{i-1}.
inline std::vector<double> positions(GapState const& state)
{
    if (state.n() < 2) {
        throw ParameterError("positions need n >= 2");
    }
    std::vector<double> x(state.n());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.n(); ++i) {
        acc += state.gaps[i];
        x[i] = acc;
    }
    return x;
}

/// Connected iff every inter-vertex gap Y_1..Y_{n-1} is strictly below r.
inline bool is_connected(GapState const& state, double r)
{
    return std::all_of(state.gaps.begin() + 1, state.gaps.end(),
                       [r](double y) { return y < r; });
}

inline std::size_t component_count(GapState const& state, double r)
{
    return 1 + static_cast<std::size_t>(std::count_if(
                   state.gaps.begin() + 1, state.gaps.end(), [r](double y) { return y >= r; }));
}

/// Degree of vertex i (1-based): number of other vertices at distance < r.
inline std::size_t degree(GapState const& state, double r, std::size_t i)
{
    std::size_t const n = state.n();
    if (i < 1 || i > n) {
        throw ParameterError("vertex index " + std::to_string(i) + " out of range 1.."
                             + std::to_string(n));
    }
    std::size_t d = 0;
    // gap between X_j and X_{j+1} is gaps[j]
    double dist = 0.0;
    for (std::size_t j = i - 1; j >= 1; --j) {
        dist += state.gaps[j];
        if (!(dist < r)) {
            break;
        }
        ++d;
    }
    dist = 0.0;
    for (std::size_t j = i; j < n; ++j) {
        dist += state.gaps[j];
        if (!(dist < r)) {
            break;
        }
        ++d;
    }
    return d;
}

struct ExtremeDistances {
    double connectivity;     ///< c_n: smallest cutoff making the graph connected
    double nearest_neighbor; ///< b_n: largest nearest-neighbour distance
};

inline ExtremeDistances extreme_distances(GapState const& state)
{
    std::span<double const> y(state.gaps);
    std::size_t const n = y.size();
    if (n < 2) {
        throw ParameterError("extreme distances need n >= 2");
    }
    double c = *std::max_element(y.begin() + 1, y.end());
    double b = std::max(y[1], y[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        b = std::max(b, std::min(y[i], y[i + 1]));
    }
    return {c, b};
}

}  // namespace ergg
