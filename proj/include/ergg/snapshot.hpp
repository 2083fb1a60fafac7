// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ergg/chain.hpp"
#include "ergg/error.hpp"
#include "ergg/gap_process.hpp"
#include "ergg/parallel.hpp"
#include "ergg/params.hpp"
#include "ergg/random_stream.hpp"
#include "ergg/special.hpp"

namespace ergg {

/// Probability that a stationary snapshot is connected.
inline double connectivity_probability(ModelParams const& params)
{
    params.validate();
    auto const rates = params.interior_rates();
    return product_no_exceedance(rates, params.r);
}

/// ψ_n(k) for k = 1..n, stored at index k-1.
inline std::vector<double> component_pmf(ModelParams const& params)
{
    params.validate();
    return poisson_binomial_pmf(exceedance_probs(params, params.r));
}

/// Probability of exactly k components, each with m vertices.
inline double equal_size_components_probability(ModelParams const& params, long k, long m)
{
    params.validate();
    if (k <= 0 || m <= 0) {
        throw ParameterError("component count and size must be positive");
    }
    if (static_cast<std::size_t>(k) * static_cast<std::size_t>(m) != params.n) {
        return 0.0;
    }
    double log_prob = 0.0;
    for (std::size_t l = 1; l < params.n; ++l) {
        double const lr = params.rates[l] * params.r;
        log_prob += (l % static_cast<std::size_t>(m) == 0) ? -lr : std::log1p(-std::exp(-lr));
    }
    return std::exp(log_prob);
}

enum class DegreeFlavor { closed_form, exact_oracle };

enum class DegreeClass { endpoint, interior, near_boundary, oracle_fallback, exact };

inline char const* to_string(DegreeClass c)
{
    switch (c) {
    case DegreeClass::endpoint: return "endpoint";
    case DegreeClass::interior: return "interior";
    case DegreeClass::near_boundary: return "near_boundary";
    case DegreeClass::oracle_fallback: return "oracle_fallback";
    case DegreeClass::exact: return "exact";
    }
    return "?";
}

/// Degree law of one vertex on support 0..n-1.
struct DegreePmf {
    std::size_t vertex = 1;
    DegreeFlavor flavor = DegreeFlavor::exact_oracle;
    std::vector<double> probs;
    std::vector<DegreeClass> classes;  ///< which formula produced each entry
};

namespace detail {

inline void check_degree_args(std::size_t n, double lambda, double r, std::size_t i)
{
    if (n < 2) {
        throw ParameterError("n must be at least 2");
    }
    if (!(lambda > 0.0) || !(r > 0.0)) {
        throw ParameterError("rate and cutoff must be positive");
    }
    if (i < 1 || i > n) {
        throw ParameterError("vertex index out of range");
    }
}

// Law of the number of vertices within r on one side when `avail` vertices exist there.
inline std::vector<double> one_side_degree(std::size_t avail, double lambda, double r)
{
    std::vector<double> law(avail + 1);
    for (std::size_t j = 0; j < avail; ++j) {
        law[j] = erlang_cdf(static_cast<unsigned>(j), lambda, r)
                 - erlang_cdf(static_cast<unsigned>(j + 1), lambda, r);
    }
    law[avail] = erlang_cdf(static_cast<unsigned>(avail), lambda, r);
    return law;
}

}  // namespace detail

/// Exact finite-n degree law: independent left and right counts, convolved.
inline DegreePmf degree_pmf_exact(std::size_t n, double lambda, double r, std::size_t i)
{
    detail::check_degree_args(n, lambda, r, i);
    auto const left = detail::one_side_degree(i - 1, lambda, r);
    auto const right = detail::one_side_degree(n - i, lambda, r);
    DegreePmf pmf;
    pmf.vertex = i;
    pmf.flavor = DegreeFlavor::exact_oracle;
    pmf.probs.assign(n, 0.0);
    pmf.classes.assign(n, DegreeClass::exact);
    for (std::size_t a = 0; a < left.size(); ++a) {
        for (std::size_t b = 0; b < right.size(); ++b) {
            pmf.probs[a + b] += left[a] * right[b];
        }
    }
    return pmf;
}

/// Which closed-form class covers vertex i at degree k, with the effective
/// boundary distance for the near-boundary class.
inline DegreeClass degree_class(std::size_t n, std::size_t i, std::size_t k, std::size_t* boundary = nullptr)
{
    if (i == 1 || i == n) {
        return DegreeClass::endpoint;
    }
    bool const near_left = i <= k;
    bool const near_right = n + 1 - i <= k;
    if (near_left && near_right) {
        return DegreeClass::oracle_fallback;
    }
    if (near_left || near_right) {
        if (boundary) {
            *boundary = near_left ? i : n + 1 - i;
        }
        return DegreeClass::near_boundary;
    }
    return DegreeClass::interior;
}

/// Degree law from the three-class closed forms (endpoint Poisson(λr),
/// interior Poisson(2λr), near-boundary truncated binomial sum). Pairs no
/// class covers are filled from the exact law and flagged.
inline DegreePmf degree_pmf_closed_form(std::size_t n, double lambda, double r, std::size_t i)
{
    detail::check_degree_args(n, lambda, r, i);
    double const lr = lambda * r;
    DegreePmf pmf;
    pmf.vertex = i;
    pmf.flavor = DegreeFlavor::closed_form;
    pmf.probs.assign(n, 0.0);
    pmf.classes.assign(n, DegreeClass::interior);
    DegreePmf exact;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t b = 0;
        auto const cls = degree_class(n, i, k, &b);
        pmf.classes[k] = cls;
        auto const kk = static_cast<unsigned>(k);
        switch (cls) {
        case DegreeClass::endpoint:
            pmf.probs[k] = poisson_pmf(kk, lr);
            break;
        case DegreeClass::interior:
            pmf.probs[k] = poisson_pmf(kk, 2.0 * lr);
            break;
        case DegreeClass::near_boundary: {
            double binom_sum = 0.0;
            double c = 1.0;  // C(k, j)
            for (std::size_t j = 0; j < b; ++j) {
                binom_sum += c;
                c = c * static_cast<double>(k - j) / static_cast<double>(j + 1);
            }
            pmf.probs[k] = std::exp(-lr) * poisson_pmf(kk, lr) * binom_sum;
            break;
        }
        default:
            if (exact.probs.empty()) {
                exact = degree_pmf_exact(n, lambda, r, i);
            }
            pmf.probs[k] = exact.probs[k];
            break;
        }
    }
    return pmf;
}

/// Closed-form degree law for a parameter set; only homogeneous interior rates are supported.
inline DegreePmf degree_pmf_closed_form(ModelParams const& params, std::size_t i)
{
    params.validate();
    if (!params.interior_homogeneous()) {
        throw ParameterError("closed-form degree law needs homogeneous rates");
    }
    return degree_pmf_closed_form(params.n, params.rates[1], params.r, i);
}

/// P(c_n <= y): every inter-vertex gap below y.
inline double connectivity_distance_cdf(ModelParams const& params, double y)
{
    if (!(y > 0.0)) {
        return 0.0;
    }
    auto const rates = params.interior_rates();
    return product_no_exceedance(rates, y);
}

/// Smallest y with connectivity_distance_cdf(y) >= prob, by bisection.
inline double connectivity_distance_quantile(ModelParams const& params, double prob)
{
    if (!(prob > 0.0 && prob < 1.0)) {
        throw ParameterError("quantile level must be in (0, 1)");
    }
    double lo = 0.0;
    double hi = 1.0;
    while (connectivity_distance_cdf(params, hi) < prob) {
        hi *= 2.0;
    }
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        double const mid = 0.5 * (lo + hi);
        (connectivity_distance_cdf(params, mid) < prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// P(b_n <= y): the end gaps stay below y and no two consecutive gaps exceed y.
inline double nn_distance_cdf(ModelParams const& params, double y)
{
    params.validate();
    if (!(y > 0.0)) {
        return 0.0;
    }
    std::size_t const n = params.n;
    // prob of an admissible prefix ending in a gap <= y / > y
    double low = -std::expm1(-params.rates[1] * y);
    double high = 0.0;
    for (std::size_t l = 2; l < n; ++l) {
        double const e = std::exp(-params.rates[l] * y);
        double const nl = (low + high) * (1.0 - e);
        double const nh = low * e;
        low = nl;
        high = nh;
    }
    return low;
}

struct StrongLawRow {
    std::size_t n;
    std::size_t replications;
    double mean_c;  ///< mean of λc_n / ln n
    double ci_c;    ///< half-width of the 95% interval
    double var_c;
    double mean_b;  ///< mean of λb_n / ln n
    double ci_b;
    double var_b;
};

/// Normalised extreme distances over stationary snapshots along n_grid.
inline std::vector<StrongLawRow> strong_law_experiment(double lambda, std::span<std::size_t const> n_grid,
                                                       std::size_t replications, RandomStream const& rng,
                                                       std::size_t workers = 1)
{
    if (replications < 2) {
        throw ParameterError("strong-law experiment needs at least 2 replications");
    }
    std::vector<StrongLawRow> rows;
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        std::size_t const n = n_grid[g];
        if (n < 3) {
            throw ParameterError("strong-law experiment needs n >= 3");
        }
        auto params = ModelParams::homogeneous(n, lambda, 1.0, 0.0);
        double const scale = lambda / std::log(static_cast<double>(n));
        auto samples = run_chunks(replications, workers, [&](std::size_t rep) {
            RandomStream stream = rng.split(g).split(rep);
            auto const ext = extreme_distances(sample_stationary(params, stream));
            return std::pair{scale * ext.connectivity, scale * ext.nearest_neighbor};
        });
        auto summarize = [&](auto proj, double& mean, double& var, double& ci) {
            double sum = 0.0;
            for (auto const& s : samples) {
                sum += proj(s);
            }
            mean = sum / static_cast<double>(replications);
            double ss = 0.0;
            for (auto const& s : samples) {
                ss += (proj(s) - mean) * (proj(s) - mean);
            }
            var = ss / static_cast<double>(replications - 1);
            ci = 1.96 * std::sqrt(var / static_cast<double>(replications));
        };
        StrongLawRow row{n, replications, 0, 0, 0, 0, 0, 0};
        summarize([](auto const& s) { return s.first; }, row.mean_c, row.var_c, row.ci_c);
        summarize([](auto const& s) { return s.second; }, row.mean_b, row.var_b, row.ci_b);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ergg
