// SPDX-License-Identifier: Apache-2.0
#pragma once

// Acceptance criteria shared by the acceptance test binary and `ergg verify`.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ergg/chain.hpp"
#include "ergg/gap_process.hpp"
#include "ergg/hitting_time.hpp"
#include "ergg/matrix.hpp"
#include "ergg/monte_carlo.hpp"
#include "ergg/oracles.hpp"
#include "ergg/params.hpp"
#include "ergg/random_stream.hpp"
#include "ergg/snapshot.hpp"
#include "ergg/special.hpp"

namespace ergg::acceptance {

struct Options {
    std::uint64_t seed = 20091012;
    std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

inline constexpr double z_limit = 4.0;

namespace detail {

/// Random parameter sets for the algebraic identities.
inline ModelParams random_params(RandomStream& rng, std::size_t n)
{
    ModelParams m;
    m.n = n;
    m.p = 0.95 * rng.uniform();
    m.r = 0.2 + 1.8 * rng.uniform();
    for (std::size_t l = 0; l < n; ++l) {
        m.rates.push_back(0.2 + 2.8 * rng.uniform());
    }
    m.validate();
    return m;
}

class Tracker {
public:
    void max_diff(double d) { max_diff_ = std::max(max_diff_, d); }
    void max_z(double z) { max_z_ = std::max(max_z_, std::abs(z)); }
    void fail(std::string const& why)
    {
        ok_ = false;
        if (notes_.tellp() < 600) {
            notes_ << why << "; ";
        }
    }
    void check(bool cond, std::string const& why)
    {
        if (!cond) {
            fail(why);
        }
    }
    void note(std::string const& s) { notes_ << s << "; "; }
    [[nodiscard]] bool ok() const { return ok_; }
    [[nodiscard]] double diff() const { return max_diff_; }
    [[nodiscard]] double z() const { return max_z_; }
    [[nodiscard]] std::string notes() const { return notes_.str(); }

private:
    bool ok_ = true;
    double max_diff_ = 0.0;
    double max_z_ = 0.0;
    std::ostringstream notes_;
};

inline std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

}  // namespace detail

/// 1. Product-form p21 against the literal subset sum.
inline CriterionResult criterion_subset_sum(Options const& opt)
{
    detail::Tracker t;
    RandomStream rng(opt.seed, 1);
    for (int set = 0; set < 20; ++set) {
        for (std::size_t n = 2; n <= 12; ++n) {
            auto const params = detail::random_params(rng, n);
            double const closed = transition_matrix(params).p21();
            double const literal = oracle::p21_subset_sum(params);
            t.max_diff(std::abs(closed - literal));
        }
    }
    t.check(t.diff() <= 1e-12, "max |diff| above 1e-12");
    return {1, "p21 product form == subset sum (n <= 12, 20 sets)", t.ok(),
            "max |diff| = " + detail::fmt(t.diff()) + "; " + t.notes(), 0, 5};
}

/// 2. Stationary law: first-return formula, direct solve and the ratio form agree.
inline CriterionResult criterion_stationary_identity(Options const& opt)
{
    detail::Tracker t;
    RandomStream rng(opt.seed, 2);
    for (int c = 0; c < 100; ++c) {
        TwoStateChain chain;
        if (c % 2 == 0) {
            double const a = 0.01 + 0.98 * rng.uniform();
            double const b = 0.01 + 0.98 * rng.uniform();
            chain.matrix = {{{1.0 - a, a}, {b, 1.0 - b}}};
        } else {
            chain = transition_matrix(detail::random_params(rng, 2 + static_cast<std::size_t>(rng.uniform() * 10)));
        }
        auto const pi = stationary(chain);
        Matrix m(2, 2);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                m(i, j) = chain.matrix[i][j];
            }
        }
        auto const direct = solve_stationary(m);
        double const denom = chain.p12() + chain.p21();
        for (std::size_t i = 0; i < 2; ++i) {
            t.max_diff(std::abs(pi[i] - direct[i]));
        }
        t.max_diff(std::abs(pi[0] - chain.p21() / denom));
        t.max_diff(std::abs(pi[1] - chain.p12() / denom));
        t.max_diff(std::abs(pi[0] * chain.p11() + pi[1] * chain.p21() - pi[0]));
    }
    t.check(t.diff() <= 1e-12, "max |diff| above 1e-12");
    return {2, "stationary formula == solve(piP = pi) == ratio form (100 chains)", t.ok(),
            "max |diff| = " + detail::fmt(t.diff()) + "; " + t.notes(), 0, 1};
}

/// 3. π_1(n) decreases along n and is tiny by n = 50.
inline CriterionResult criterion_limit(Options const&)
{
    detail::Tracker t;
    std::vector<std::size_t> grid;
    for (std::size_t n = 2; n <= 50; ++n) {
        grid.push_back(n);
    }
    auto const rows = limit_diagnostics(1.0, 1.0, 0.5, grid);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        t.check(rows[i].pi1 < rows[i - 1].pi1, "pi1 not strictly decreasing at n = " + std::to_string(rows[i].n));
    }
    t.check(rows.back().pi1 < 1e-3, "pi1(50) >= 1e-3");
    return {3, "pi1(n) strictly decreasing on 2..50, pi1(50) < 1e-3", t.ok(),
            "pi1(50) = " + detail::fmt(rows.back().pi1) + "; " + t.notes(), 0, 1};
}

/// 4. Component chain DP against double-subset enumeration and its consistency checks.
inline CriterionResult criterion_component_chain(Options const& opt)
{
    detail::Tracker t;
    RandomStream rng(opt.seed, 4);
    double dp_diff = 0.0, row_diff = 0.0, p11_diff = 0.0, pi_diff = 0.0;
    for (std::size_t n = 2; n <= 10; ++n) {
        for (int set = 0; set < 3; ++set) {
            auto const params = detail::random_params(rng, n);
            auto const chain = component_transition_matrix(params);
            auto const brute = oracle::component_matrix_bruteforce(params);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    dp_diff = std::max(dp_diff, std::abs(chain.matrix(i, j) - brute(i, j)));
                }
                if (chain.row_defined[i]) {
                    row_diff = std::max(row_diff, std::abs(chain.matrix.row_sum(i) - 1.0));
                }
            }
            p11_diff = std::max(p11_diff, std::abs(chain.matrix(0, 0) - transition_matrix(params).p11()));
            auto const pi = component_stationary(chain);
            for (std::size_t i = 0; i < n; ++i) {
                pi_diff = std::max(pi_diff, std::abs(pi[i] - chain.occupancy[i]));
            }
        }
    }
    t.check(dp_diff <= 1e-12, "DP vs brute force above 1e-12");
    t.check(row_diff <= 1e-10, "row sums off by more than 1e-10");
    t.check(p11_diff <= 1e-12, "p'11 != p11");
    t.check(pi_diff <= 1e-10, "stationary != occupancy");
    return {4, "component chain DP == brute force (n <= 10); rows, p'11, stationary", t.ok(),
            "dp " + detail::fmt(dp_diff) + ", rows " + detail::fmt(row_diff) + ", p11 " + detail::fmt(p11_diff)
                + ", pi " + detail::fmt(pi_diff) + "; " + t.notes(),
            0, 30};
}

/// 5. Hitting-time recursion, run-decomposition oracle and Monte Carlo agree.
inline CriterionResult criterion_hitting(Options const& opt)
{
    detail::Tracker t;
    double rec_vs_oracle = 0.0, one_step = 0.0, geometric = 0.0;
    std::vector<ModelParams> cases;
    for (double p : {0.0, 0.3, 0.9}) {
        for (std::size_t n : {2, 3}) {
            cases.push_back(ModelParams::homogeneous(n, 1.0, 1.0, p));
        }
        cases.push_back(ModelParams{3, p, {1.0, 0.7, 1.6}, 1.0});
    }
    for (auto const& params : cases) {
        auto const rec = hitting_time_recursion(params, 6, 1e-10);
        auto const orc = hitting_time_oracle(params, 6);
        for (std::size_t k = 0; k < std::min(rec.tail.size(), orc.tail.size()); ++k) {
            rec_vs_oracle = std::max(rec_vs_oracle, std::abs(rec.tail[k] - orc.tail[k]));
        }
        one_step = std::max(one_step, std::abs(rec.tail[1] - transition_matrix(params).p11()));
        if (params.p == 0.0) {
            double const pc = connectivity_probability(params);
            for (std::size_t k = 0; k < rec.tail.size(); ++k) {
                geometric = std::max(geometric, std::abs(rec.tail[k] - std::pow(pc, static_cast<double>(k))));
            }
        }
    }
    t.check(rec_vs_oracle <= 1e-9, "recursion vs oracle above 1e-9");
    t.check(one_step <= 1e-9, "tail[1] != p11");
    t.check(geometric <= 1e-12, "p = 0 tail not geometric");

    auto const params = ModelParams::homogeneous(3, 1.0, 1.0, 0.5);
    auto const exact = hitting_time_recursion(params, 6);
    auto const mc = estimate_hitting_time(params, 1000000, 6, RandomStream(opt.seed, 5), opt.workers);
    for (std::size_t k = 1; k <= 6; ++k) {
        t.max_z(*mc.tail_report(k, exact.tail[k]).z);
    }
    t.check(t.z() <= z_limit, "MC tail |z| above 4");
    double markov_gap = 0.0;
    auto const p11 = transition_matrix(params).p11();
    for (std::size_t k = 2; k <= 6; ++k) {
        markov_gap = std::max(markov_gap, std::abs(exact.tail[k] - std::pow(p11, static_cast<double>(k))));
    }
    return {5, "hitting time: recursion == oracle, tail[1] == p11, geometric at p = 0, MC", t.ok(),
            "rec-oracle " + detail::fmt(rec_vs_oracle) + ", tail1-p11 " + detail::fmt(one_step) + ", geom "
                + detail::fmt(geometric) + ", max|z| " + detail::fmt(t.z()) + ", max|tail - p11^k| (Markov approx) "
                + detail::fmt(markov_gap) + "; " + t.notes(),
            0, 180};
}

/// 6. Analytic p11, p21 against a long simulated trajectory.
inline CriterionResult criterion_transition_mc(Options const& opt)
{
    detail::Tracker t;
    auto const params = ModelParams::homogeneous(5, 1.0, 1.0, 0.5);
    auto const est = estimate_transitions(params, 1000000, 100, RandomStream(opt.seed, 6));
    t.check(est.p11.z && est.p21.z, "missing targets");
    t.max_z(est.p11.z.value_or(INFINITY));
    t.max_z(est.p21.z.value_or(INFINITY));
    t.check(t.z() <= z_limit, "|z| above 4");
    return {6, "p11, p21 vs 1e6-step trajectory", t.ok(),
            "z11 " + detail::fmt(est.p11.z.value_or(NAN)) + ", z21 " + detail::fmt(est.p21.z.value_or(NAN)) + "; "
                + t.notes(),
            0, 60};
}

/// Pairs where the closed-form degree classes coincide with the exact law:
/// endpoints below saturation and interior vertices with room on both sides.
inline bool degree_formula_exact(std::size_t n, std::size_t i, std::size_t k)
{
    if (i == 1 || i == n) {
        return k + 2 <= n;
    }
    return k + 2 <= i && i + k + 1 <= n;
}

/// 7. Degree laws: closed form vs exact oracle vs Monte Carlo.
inline CriterionResult criterion_degree(Options const& opt)
{
    detail::Tracker t;
    std::size_t const n = 30;
    double formula_diff = 0.0, norm_diff = 0.0, boundary_gap = 0.0, boundary_z = 0.0;
    auto const mc = estimate_snapshot_stats(ModelParams::homogeneous(n, 1.0, 1.0, 0.0), 100000,
                                            RandomStream(opt.seed, 7), opt.workers);
    for (std::size_t i = 1; i <= n; ++i) {
        auto const closed = degree_pmf_closed_form(n, 1.0, 1.0, i);
        auto const exact = degree_pmf_exact(n, 1.0, 1.0, i);
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sum += exact.probs[k];
            if (degree_formula_exact(n, i, k)) {
                formula_diff = std::max(formula_diff, std::abs(closed.probs[k] - exact.probs[k]));
            } else if (closed.classes[k] != DegreeClass::oracle_fallback) {
                boundary_gap = std::max(boundary_gap, std::abs(closed.probs[k] - exact.probs[k]));
                if (closed.probs[k] * 1e5 >= 5.0 && std::abs(closed.probs[k] - exact.probs[k]) > 1e-12) {
                    boundary_z = std::max(boundary_z, std::abs(*mc.degree_report(i, k, closed.probs[k]).z));
                }
            }
            if (exact.probs[k] * static_cast<double>(mc.samples) >= 5.0) {
                t.max_z(*mc.degree_report(i, k, exact.probs[k]).z);
            }
        }
        norm_diff = std::max(norm_diff, std::abs(sum - 1.0));
    }
    t.check(formula_diff <= 1e-12, "closed form vs exact above 1e-12");
    t.check(norm_diff <= 1e-10, "exact law not normalised");
    t.check(t.z() <= z_limit, "MC vs exact |z| above 4");
    return {7, "degree laws: closed form == exact (endpoint/interior), MC vs exact", t.ok(),
            "formula " + detail::fmt(formula_diff) + ", norm " + detail::fmt(norm_diff) + ", max|z| "
                + detail::fmt(t.z()) + "; reported: boundary |closed-form - exact| " + detail::fmt(boundary_gap)
                + ", MC |z| vs closed-form boundary values " + detail::fmt(boundary_z) + "; " + t.notes(),
            0, 120};
}

/// 8. Static snapshot laws against Monte Carlo.
inline CriterionResult criterion_snapshot_mc(Options const& opt)
{
    detail::Tracker t;
    double max_ks_ratio = 0.0;
    struct Config {
        std::size_t n;
        std::size_t samples;
    };
    for (auto const cfg : {Config{10, 1000000}, Config{4, 100000}, Config{20, 100000}}) {
        auto const params = ModelParams::homogeneous(cfg.n, 1.0, 1.0, 0.0);
        auto const mc = estimate_snapshot_stats(params, cfg.samples, RandomStream(opt.seed, 80 + cfg.n), opt.workers);
        double const s = static_cast<double>(cfg.samples);
        t.max_z(*mc.connected_report(connectivity_probability(params)).z);
        auto const psi = component_pmf(params);
        for (std::size_t k = 1; k <= cfg.n; ++k) {
            if (psi[k - 1] * s >= 5.0) {
                t.max_z(*mc.component_report(k, psi[k - 1]).z);
            }
        }
        for (std::size_t m = 1; m <= cfg.n; ++m) {
            if (cfg.n % m != 0) {
                continue;
            }
            double const target = equal_size_components_probability(params, static_cast<long>(cfg.n / m),
                                                                     static_cast<long>(m));
            if (target * s >= 5.0) {
                t.max_z(*mc.equal_size_report(m, target).z);
            }
        }
        double const crit = ks_critical_value(cfg.samples);
        double const ks_c = ks_distance(mc.connectivity_distance,
                                        [&](double y) { return connectivity_distance_cdf(params, y); });
        double const ks_b = ks_distance(mc.nn_distance, [&](double y) { return nn_distance_cdf(params, y); });
        max_ks_ratio = std::max({max_ks_ratio, ks_c / crit, ks_b / crit});
    }
    t.check(t.z() <= z_limit, "|z| above 4");
    t.check(max_ks_ratio < 1.0, "KS above the 0.1% critical value");
    return {8, "snapshot laws (P_n(C), psi, P_n^m(k), c_n, b_n CDFs) vs MC", t.ok(),
            "max|z| " + detail::fmt(t.z()) + ", max KS/critical " + detail::fmt(max_ks_ratio) + "; " + t.notes(),
            0, 180};
}

/// Two-rate configuration: λ_l = 1 for l <= 10, 2 beyond.
inline ModelParams two_rate_params(std::size_t n, double r = 1.0)
{
    ModelParams m{n, 0.0, RateSpec::parse("11:1,*:2").expand(n), r};
    m.validate();
    return m;
}

/// 9. Component-count probabilities decay along n.
inline CriterionResult criterion_component_decay(Options const&)
{
    detail::Tracker t;
    std::vector<std::array<double, 4>> psi;
    for (std::size_t n = 12; n <= 60; ++n) {
        auto const pmf = component_pmf(two_rate_params(n));
        psi.push_back({pmf[0], pmf[1], pmf[2], pmf[3]});
    }
    std::string finals;
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t mode = 0;
        for (std::size_t g = 1; g < psi.size(); ++g) {
            if (psi[g][k] > psi[mode][k]) {
                mode = g;
            }
        }
        for (std::size_t g = mode + 1; g < psi.size(); ++g) {
            t.check(psi[g][k] < psi[g - 1][k], "psi(" + std::to_string(k + 1) + ") not decreasing past its mode");
        }
        t.check(psi.back()[k] < 1e-2, "psi_60(" + std::to_string(k + 1) + ") >= 1e-2");
        finals += detail::fmt(psi.back()[k]) + " ";
    }
    return {9, "component-count decay: psi_n(k) -> 0, psi_60(k) < 1e-2 for k = 1..4", t.ok(),
            "psi_60 = " + finals + "; " + t.notes(), 0, 1};
}

/// 10. Normalised extreme distances at n = 1e5.
inline CriterionResult criterion_strong_law(Options const& opt)
{
    detail::Tracker t;
    std::array<std::size_t, 1> grid{100000};
    auto const rows = strong_law_experiment(1.0, grid, 50, RandomStream(opt.seed, 10), opt.workers);
    auto const& row = rows.front();
    t.check(row.mean_b >= 0.85 && row.mean_b <= 1.15, "mean lambda b_n / ln n outside [0.85, 1.15]");
    t.check(row.mean_c >= 0.9 && row.mean_c <= 2.1, "mean lambda c_n / ln n outside [0.9, 2.1]");
    return {10, "strong laws at n = 1e5: mean lambda b_n/ln n in [0.85,1.15], lambda c_n/ln n in [0.9,2.1]",
            t.ok(),
            "mean b-ratio " + detail::fmt(row.mean_b) + " +- " + detail::fmt(row.ci_b) + ", mean c-ratio "
                + detail::fmt(row.mean_c) + " +- " + detail::fmt(row.ci_c) + "; " + t.notes(),
            0, 120};
}

/// Lag-j autocorrelation of one gap along a trajectory, with a batch-means
/// standard error. Centres with the known stationary mean and variance.
struct Autocorrelation {
    std::vector<double> value;
    std::vector<double> se;
};

inline Autocorrelation trajectory_autocorrelation(double p, double lambda, std::size_t steps, std::size_t max_lag,
                                                  RandomStream rng, std::size_t batches = 100)
{
    auto const params = ModelParams::homogeneous(2, lambda, 1.0, p);
    GapState s = sample_stationary(params, rng);
    std::vector<double> y(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        y[t] = s.gaps[1];
        step_inplace(s, params, rng);
    }
    double const mu = 1.0 / lambda;
    double const var = mu * mu;
    std::size_t const len = steps / batches;
    Autocorrelation out;
    for (std::size_t j = 1; j <= max_lag; ++j) {
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t b = 0; b < batches; ++b) {
            double acc = 0.0;
            std::size_t const start = b * len;
            std::size_t const stop = std::min(start + len, steps - j);
            for (std::size_t t = start; t < stop; ++t) {
                acc += (y[t] - mu) * (y[t + j] - mu);
            }
            double const rb = acc / static_cast<double>(stop - start) / var;
            sum += rb;
            sum_sq += rb * rb;
        }
        double const nb = static_cast<double>(batches);
        double const mean = sum / nb;
        out.value.push_back(mean);
        out.se.push_back(std::sqrt((sum_sq / nb - mean * mean) / (nb - 1.0)));
    }
    return out;
}

/// 11. Stationary marginal and autocorrelation of the simulated gap process.
inline CriterionResult criterion_process(Options const& opt)
{
    detail::Tracker t;
    double max_ks_ratio = 0.0;
    std::uint64_t stream = 110;
    for (double p : {0.2, 0.5, 0.9}) {
        auto const params = ModelParams::homogeneous(100000, 1.0, 1.0, p);
        RandomStream rng(opt.seed, stream++);
        GapState s = sample_stationary(params, rng);
        for (int k = 0; k < 20; ++k) {
            step_inplace(s, params, rng);
        }
        std::vector<double> g(s.gaps);
        std::sort(g.begin(), g.end());
        double const ks = ks_distance(g, [](double y) { return -std::expm1(-y); });
        max_ks_ratio = std::max(max_ks_ratio, ks / ks_critical_value(g.size()));

        auto const ac = trajectory_autocorrelation(p, 1.0, 100000, 5, RandomStream(opt.seed, stream++));
        for (std::size_t j = 1; j <= 5; ++j) {
            t.max_z((ac.value[j - 1] - std::pow(p, static_cast<double>(j))) / ac.se[j - 1]);
        }
    }
    t.check(max_ks_ratio < 1.0, "marginal KS above the 0.1% critical value");
    t.check(t.z() <= z_limit, "autocorrelation off by more than 4 SE");
    return {11, "process fidelity: Exp marginal (KS) and Corr = p^j (j <= 5)", t.ok(),
            "max KS/critical " + detail::fmt(max_ks_ratio) + ", max|z| " + detail::fmt(t.z()) + "; " + t.notes(),
            0, 60};
}

using CriterionFn = CriterionResult (*)(Options const&);

inline std::vector<CriterionFn> all_criteria()
{
    return {criterion_subset_sum,    criterion_stationary_identity, criterion_limit,  criterion_component_chain,
            criterion_hitting,       criterion_transition_mc,       criterion_degree, criterion_snapshot_mc,
            criterion_component_decay,       criterion_strong_law,          criterion_process};
}

/// Runs one criterion, timing it and failing it when it exceeds its runtime budget.
inline CriterionResult run_timed(CriterionFn fn, Options const& opt, int id)
{
    auto const start = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
        res = fn(opt);
    } catch (std::exception const& e) {
        res.id = id;
        res.name = "criterion " + std::to_string(id);
        res.passed = false;
        res.detail = std::string("exception: ") + e.what() + "; ";
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.limit_seconds > 0.0 && res.seconds > res.limit_seconds) {
        res.passed = false;
        res.detail += "runtime " + detail::fmt(res.seconds) + " s over budget; ";
    }
    return res;
}

inline std::vector<CriterionResult> run_all(Options const& opt,
                                            std::function<void(CriterionResult const&)> const& on_result = {})
{
    std::vector<CriterionResult> out;
    int id = 0;
    for (auto fn : all_criteria()) {
        out.push_back(run_timed(fn, opt, ++id));
        if (on_result) {
            on_result(out.back());
        }
    }
    return out;
}

}  // namespace ergg::acceptance
