// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ergg/chain.hpp"
#include "ergg/error.hpp"
#include "ergg/gap_process.hpp"
#include "ergg/matrix.hpp"
#include "ergg/parallel.hpp"
#include "ergg/params.hpp"
#include "ergg/random_stream.hpp"

namespace ergg {

/// Empirical estimate with its standard error and, optionally, an analytic
/// target and the z-score against it.
struct EstimateReport {
    std::string quantity;
    double value = std::numeric_limits<double>::quiet_NaN();
    double se = 0.0;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    std::optional<double> target;
    std::optional<double> z;
    bool insufficient = false;  ///< no observations of the conditioning event

    /// Binomial proportion hits/trials. The z-score uses the null standard
    /// error sqrt(t(1-t)/trials) so that rare targets are not judged against
    /// a zero empirical SE.
    static EstimateReport proportion(std::string name, std::size_t hits, std::size_t trials,
                                     std::uint64_t seed, std::optional<double> target = {})
    {
        EstimateReport rep;
        rep.quantity = std::move(name);
        rep.replications = trials;
        rep.seed = seed;
        if (trials == 0) {
            rep.insufficient = true;
            return rep;
        }
        double const n = static_cast<double>(trials);
        rep.value = static_cast<double>(hits) / n;
        rep.se = std::sqrt(rep.value * (1.0 - rep.value) / n);
        if (target) {
            rep.target = target;
            double const null_se = std::sqrt(*target * (1.0 - *target) / n);
            double const diff = rep.value - *target;
            rep.z = null_se > 0.0 ? diff / null_se
                                  : (diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff));
        }
        return rep;
    }

    /// Sample mean with standard error sd/sqrt(count).
    static EstimateReport mean(std::string name, double sum, double sum_sq, std::size_t count,
                               std::uint64_t seed, std::optional<double> target = {})
    {
        EstimateReport rep;
        rep.quantity = std::move(name);
        rep.replications = count;
        rep.seed = seed;
        if (count == 0) {
            rep.insufficient = true;
            return rep;
        }
        double const n = static_cast<double>(count);
        rep.value = sum / n;
        double const var = count > 1 ? std::max(0.0, (sum_sq - n * rep.value * rep.value) / (n - 1.0)) : 0.0;
        rep.se = std::sqrt(var / n);
        if (target) {
            rep.target = target;
            rep.z = rep.se > 0.0 ? (rep.value - *target) / rep.se : 0.0;
        }
        return rep;
    }
};

/// Kolmogorov-Smirnov distance between a sorted sample and a continuous CDF.
inline double ks_distance(std::vector<double> const& sorted, std::function<double(double)> const& cdf)
{
    double d = 0.0;
    double const n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double const f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

inline constexpr std::size_t default_chunks = 64;

struct TransitionEstimate {
    EstimateReport p11;
    EstimateReport p21;
    Matrix component_counts;                ///< transitions i -> j of the component count (0-based)
    std::vector<std::size_t> component_visits;

    /// Per-entry reports of the empirical component chain against `chain`,
    /// restricted to entries whose expected count is at least min_expected.
    [[nodiscard]] std::vector<EstimateReport> component_reports(ComponentChain const& chain,
                                                                std::uint64_t seed,
                                                                double min_expected = 5.0) const
    {
        std::vector<EstimateReport> out;
        for (std::size_t i = 0; i < component_visits.size(); ++i) {
            if (!chain.row_defined[i] || component_visits[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < component_visits.size(); ++j) {
                double const t = chain.matrix(i, j);
                if (t * static_cast<double>(component_visits[i]) < min_expected) {
                    continue;
                }
                out.push_back(EstimateReport::proportion(
                    "p'_" + std::to_string(i + 1) + "," + std::to_string(j + 1),
                    static_cast<std::size_t>(component_counts(i, j)), component_visits[i], seed, t));
            }
        }
        return out;
    }
};

/// Conditional transition frequencies of the connectivity and component
/// indicators along one long trajectory from a stationary start.
inline TransitionEstimate estimate_transitions(ModelParams const& params, std::size_t steps,
                                               std::size_t burn_in, RandomStream rng)
{
    params.validate();
    if (steps < 1000) {
        throw ParameterError("estimate_transitions needs at least 1000 steps");
    }
    std::size_t const n = params.n;
    GapState state = sample_stationary(params, rng);
    for (std::size_t t = 0; t < burn_in; ++t) {
        step_inplace(state, params, rng);
    }
    TransitionEstimate est;
    est.component_counts = Matrix(n, n);
    est.component_visits.assign(n, 0);
    std::size_t from_c = 0, c_to_c = 0, from_d = 0, d_to_c = 0;
    std::size_t comp = component_count(state, params.r);
    for (std::size_t t = 0; t < steps; ++t) {
        step_inplace(state, params, rng);
        std::size_t const next = component_count(state, params.r);
        est.component_counts(comp - 1, next - 1) += 1.0;
        ++est.component_visits[comp - 1];
        if (comp == 1) {
            ++from_c;
            c_to_c += next == 1;
        } else {
            ++from_d;
            d_to_c += next == 1;
        }
        comp = next;
    }
    std::optional<double> t11, t21;
    try {
        auto const chain = transition_matrix(params);
        t11 = chain.p11();
        t21 = chain.p21();
    } catch (DegenerateChainError const&) {
    }
    est.p11 = EstimateReport::proportion("p11", c_to_c, from_c, rng.seed(), t11);
    est.p21 = EstimateReport::proportion("p21", d_to_c, from_d, rng.seed(), t21);
    return est;
}

inline constexpr std::size_t connect_retry_budget = 10000;

/// Draws a stationary snapshot conditioned on connectivity by rejection.
inline GapState sample_connected(ModelParams const& params, RandomStream& rng,
                                 std::size_t budget = connect_retry_budget)
{
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        GapState s = sample_stationary(params, rng);
        if (is_connected(s, params.r)) {
            return s;
        }
    }
    throw InsufficientDataError("no connected snapshot within the rejection budget of "
                                + std::to_string(budget) + " draws");
}

struct HittingEstimate {
    std::vector<EstimateReport> tail;  ///< P̂(T > k), k = 0..K
    EstimateReport mean;               ///< mean hitting time (censored at max_steps)
    std::size_t censored = 0;
    std::vector<std::size_t> survivors;
    std::size_t replications = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] EstimateReport tail_report(std::size_t k, std::optional<double> target) const
    {
        return EstimateReport::proportion("P(T>" + std::to_string(k) + ")", survivors.at(k), replications, seed,
                                          target);
    }
};

/// Empirical survival curve of the disconnection hitting time.
inline HittingEstimate estimate_hitting_time(ModelParams const& params, std::size_t replications,
                                             std::size_t k_max, RandomStream const& rng,
                                             std::size_t workers = 1, std::size_t max_steps = 1000000)
{
    params.validate();
    if (replications == 0) {
        throw ParameterError("replications must be positive");
    }
    struct Partial {
        std::vector<std::size_t> survivors;
        double sum = 0.0;
        double sum_sq = 0.0;
        std::size_t censored = 0;
    };
    auto const sizes = chunk_sizes(replications, default_chunks);
    auto partials = run_chunks(default_chunks, workers, [&](std::size_t c) {
        RandomStream stream = rng.split(c);
        Partial part;
        part.survivors.assign(k_max + 1, 0);
        for (std::size_t rep = 0; rep < sizes[c]; ++rep) {
            GapState s = sample_connected(params, stream);
            std::size_t t = 0;
            do {
                step_inplace(s, params, stream);
                ++t;
            } while (is_connected(s, params.r) && t < max_steps);
            if (is_connected(s, params.r)) {
                ++part.censored;
            }
            for (std::size_t k = 0; k <= k_max && k < t; ++k) {
                ++part.survivors[k];
            }
            part.sum += static_cast<double>(t);
            part.sum_sq += static_cast<double>(t) * static_cast<double>(t);
        }
        return part;
    });
    HittingEstimate est;
    std::vector<std::size_t> survivors(k_max + 1, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (auto const& part : partials) {
        for (std::size_t k = 0; k <= k_max; ++k) {
            survivors[k] += part.survivors[k];
        }
        sum += part.sum;
        sum_sq += part.sum_sq;
        est.censored += part.censored;
    }
    est.survivors = survivors;
    est.replications = replications;
    est.seed = rng.seed();
    for (std::size_t k = 0; k <= k_max; ++k) {
        est.tail.push_back(est.tail_report(k, std::nullopt));
    }
    est.mean = EstimateReport::mean("E[T]", sum, sum_sq, replications, rng.seed());
    return est;
}

struct SnapshotEstimate {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t connected = 0;
    std::vector<std::size_t> component_hist;        ///< index k-1: snapshots with k components
    std::map<std::size_t, std::size_t> equal_size;  ///< m -> snapshots whose components all have m vertices
    Matrix degree_hist;                             ///< (vertex i-1, degree k) counts
    std::vector<double> connectivity_distance;      ///< sorted c_n samples
    std::vector<double> nn_distance;                ///< sorted b_n samples

    [[nodiscard]] EstimateReport connected_report(std::optional<double> target = {}) const
    {
        return EstimateReport::proportion("P_n(C)", connected, samples, seed, target);
    }

    [[nodiscard]] EstimateReport component_report(std::size_t k, std::optional<double> target = {}) const
    {
        return EstimateReport::proportion("psi(" + std::to_string(k) + ")", component_hist.at(k - 1),
                                          samples, seed, target);
    }

    [[nodiscard]] EstimateReport equal_size_report(std::size_t m, std::optional<double> target = {}) const
    {
        auto it = equal_size.find(m);
        return EstimateReport::proportion("P^" + std::to_string(m) + "(equal)",
                                          it == equal_size.end() ? 0 : it->second, samples, seed, target);
    }

    [[nodiscard]] EstimateReport degree_report(std::size_t i, std::size_t k,
                                               std::optional<double> target = {}) const
    {
        return EstimateReport::proportion("d_" + std::to_string(i) + "=" + std::to_string(k),
                                          static_cast<std::size_t>(degree_hist(i - 1, k)), samples, seed, target);
    }
};

/// I.i.d. stationary snapshots: connectivity, component counts, equal-size
/// partitions, per-vertex degree histograms and the extreme distances.
inline SnapshotEstimate estimate_snapshot_stats(ModelParams const& params, std::size_t samples,
                                                RandomStream const& rng, std::size_t workers = 1)
{
    params.validate();
    if (samples < 1000) {
        throw ParameterError("estimate_snapshot_stats needs at least 1000 samples");
    }
    std::size_t const n = params.n;
    double const r = params.r;
    auto const sizes = chunk_sizes(samples, default_chunks);
    auto partials = run_chunks(default_chunks, workers, [&](std::size_t c) {
        RandomStream stream = rng.split(c);
        SnapshotEstimate part;
        part.component_hist.assign(n, 0);
        part.degree_hist = Matrix(n, n);
        for (std::size_t s = 0; s < sizes[c]; ++s) {
            GapState state = sample_stationary(params, stream);
            std::size_t const comps = component_count(state, r);
            part.connected += comps == 1;
            ++part.component_hist[comps - 1];
            // equal-size partition: every run of connected vertices has the same length
            std::size_t run = 1, first = 0;
            bool equal = true;
            for (std::size_t l = 1; l < n && equal; ++l) {
                if (state.gaps[l] < r) {
                    ++run;
                } else {
                    if (first == 0) {
                        first = run;
                    }
                    equal = run == first;
                    run = 1;
                }
            }
            if (equal && (first == 0 || run == first)) {
                ++part.equal_size[run];
            }
            for (std::size_t i = 1; i <= n; ++i) {
                part.degree_hist(i - 1, degree(state, r, i)) += 1.0;
            }
            auto const ext = extreme_distances(state);
            part.connectivity_distance.push_back(ext.connectivity);
            part.nn_distance.push_back(ext.nearest_neighbor);
        }
        return part;
    });
    SnapshotEstimate est;
    est.samples = samples;
    est.seed = rng.seed();
    est.component_hist.assign(n, 0);
    est.degree_hist = Matrix(n, n);
    for (auto const& part : partials) {
        est.connected += part.connected;
        for (std::size_t k = 0; k < n; ++k) {
            est.component_hist[k] += part.component_hist[k];
        }
        for (auto const& [m, cnt] : part.equal_size) {
            est.equal_size[m] += cnt;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                est.degree_hist(i, k) += part.degree_hist(i, k);
            }
        }
        est.connectivity_distance.insert(est.connectivity_distance.end(), part.connectivity_distance.begin(),
                                         part.connectivity_distance.end());
        est.nn_distance.insert(est.nn_distance.end(), part.nn_distance.begin(), part.nn_distance.end());
    }
    std::sort(est.connectivity_distance.begin(), est.connectivity_distance.end());
    std::sort(est.nn_distance.begin(), est.nn_distance.end());
    return est;
}

}  // namespace ergg
