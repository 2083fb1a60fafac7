// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force reference computations used by the test and verification
// suites. They enumerate configurations literally and share no code path with
// the closed forms they check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ergg/gap_process.hpp"
#include "ergg/matrix.hpp"
#include "ergg/params.hpp"

namespace ergg::oracle {

struct PerGap {
    double exceed;     // e^{-λr}
    double reconnect;  // (1-p)(1-e^{-λr/(1-p)})
    double stay;       // 1 - (1-p)e^{-λr}(1-e^{-λr/(1-p)})/(1-e^{-λr})
};

inline std::vector<PerGap> per_gap(ModelParams const& params)
{
    std::vector<PerGap> g;
    for (std::size_t l = 1; l < params.n; ++l) {
        double const lam = params.rates[l];
        double const e = std::exp(-lam * params.r);
        double const fresh = 1.0 - std::exp(-lam * params.r / (1.0 - params.p));
        g.push_back({e, (1.0 - params.p) * fresh, 1.0 - (1.0 - params.p) * e * fresh / (1.0 - e)});
    }
    return g;
}

/// p21 as the literal sum over nonempty sets A of exceeding gaps.
inline double p21_subset_sum(ModelParams const& params)
{
    auto const g = per_gap(params);
    std::size_t const m = g.size();
    double numer = 0.0;
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << m); ++a) {
        double term = 1.0;
        for (std::size_t l = 0; l < m; ++l) {
            double const reconnect_joint = g[l].exceed * g[l].reconnect;
            term *= ((a >> l) & 1U) ? reconnect_joint : 1.0 - g[l].exceed - reconnect_joint;
        }
        numer += term;
    }
    double connected = 1.0;
    for (auto const& x : g) {
        connected *= 1.0 - x.exceed;
    }
    return numer / (1.0 - connected);
}

/// Component-count transition matrix by double enumeration over (A, B).
inline Matrix component_matrix_bruteforce(ModelParams const& params)
{
    auto const g = per_gap(params);
    std::size_t const m = g.size();
    std::size_t const n = params.n;
    Matrix joint(n, n);
    std::vector<double> occupancy(n, 0.0);
    std::uint64_t const full = std::uint64_t{1} << m;
    for (std::uint64_t a = 0; a < full; ++a) {
        double pa = 1.0;
        for (std::size_t l = 0; l < m; ++l) {
            pa *= ((a >> l) & 1U) ? g[l].exceed : 1.0 - g[l].exceed;
        }
        auto const i = static_cast<std::size_t>(std::popcount(a));
        occupancy[i] += pa;
        for (std::uint64_t b = 0; b < full; ++b) {
            double pba = 1.0;
            for (std::size_t l = 0; l < m; ++l) {
                bool const in_a = (a >> l) & 1U;
                bool const in_b = (b >> l) & 1U;
                double const to_below = in_a ? g[l].reconnect : g[l].stay;
                pba *= in_b ? 1.0 - to_below : to_below;
            }
            joint(i, static_cast<std::size_t>(std::popcount(b))) += pba * pa;
        }
    }
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = occupancy[i] > 0.0 ? joint(i, j) / occupancy[i] : 0.0;
        }
    }
    return out;
}

/// ψ_n(k) by enumerating which gaps exceed r.
inline std::vector<double> component_pmf_bruteforce(ModelParams const& params)
{
    auto const g = per_gap(params);
    std::size_t const m = g.size();
    std::vector<double> psi(params.n, 0.0);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
        double pa = 1.0;
        for (std::size_t l = 0; l < m; ++l) {
            pa *= ((a >> l) & 1U) ? g[l].exceed : 1.0 - g[l].exceed;
        }
        psi[static_cast<std::size_t>(std::popcount(a))] += pa;
    }
    return psi;
}

/// Degree of vertex i (1-based) by comparing all pairwise distances.
inline std::size_t degree_pairwise(GapState const& state, double r, std::size_t i)
{
    auto const x = positions(state);
    std::size_t d = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j != i - 1 && std::abs(x[j] - x[i - 1]) < r) {
            ++d;
        }
    }
    return d;
}

/// b_n by scanning each vertex's nearest neighbour over all pairs.
inline double nn_distance_pairwise(GapState const& state)
{
    auto const x = positions(state);
    double b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double nearest = INFINITY;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (j != i) {
                nearest = std::min(nearest, std::abs(x[j] - x[i]));
            }
        }
        b = std::max(b, nearest);
    }
    return b;
}

/// P(b_n <= y) by enumerating exceedance patterns of the interior gaps.
inline double nn_distance_cdf_bruteforce(ModelParams const& params, double y)
{
    std::size_t const m = params.n - 1;
    double total = 0.0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
        // vertex v (0-based) sees gaps v-1 and v (interior gap indices 0..m-1)
        bool ok = true;
        for (std::size_t v = 0; v <= m && ok; ++v) {
            bool const left_exceeds = v == 0 || ((a >> (v - 1)) & 1U);
            bool const right_exceeds = v == m || ((a >> v) & 1U);
            ok = !(left_exceeds && right_exceeds);
        }
        if (!ok) {
            continue;
        }
        double pa = 1.0;
        for (std::size_t l = 0; l < m; ++l) {
            double const e = std::exp(-params.rates[l + 1] * y);
            pa *= ((a >> l) & 1U) ? e : 1.0 - e;
        }
        total += pa;
    }
    return total;
}

}  // namespace ergg::oracle
