// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ergg/error.hpp"
#include "ergg/params.hpp"
#include "ergg/quadrature.hpp"
#include "ergg/special.hpp"

namespace ergg {

/// Survival law P(T > k) of the disconnection hitting time from a connected start.
struct HittingTimeDist {
    std::vector<double> tail;          ///< tail[k] = P(T > k), k = 0..truncation_k
    double expectation_lower = 0.0;    ///< partial sum of the tail
    double expectation_upper = 0.0;    ///< partial sum plus geometric tail estimate
    std::size_t truncation_k = 0;
    bool converged = false;            ///< stopped because tail fell below the cut
};

inline constexpr std::size_t max_hitting_k = 24;
inline constexpr double hitting_tail_cut = 1e-12;

namespace detail {

inline void check_hitting_k(std::size_t k_max)
{
    if (k_max < 1 || k_max > max_hitting_k) {
        throw ParameterError("hitting-time K must be in 1.." + std::to_string(max_hitting_k));
    }
}

/// Weight p^{ones}(1-p)^{zeros} of a V-vector of length k stored in bits.
inline double v_weight(std::uint32_t bits, std::size_t k, double p)
{
    int const ones = std::popcount(bits);
    return std::pow(p, ones) * std::pow(1.0 - p, static_cast<int>(k) - ones);
}

/// Combines per-gap survival curves into the product tail and applies the
/// truncation rule. make_curve(λ, first gap index) returns a callable giving
/// P̃^k for that rate; k is requested in increasing order and only as far as
/// the truncation rule needs.
template <class MakeCurve>
HittingTimeDist assemble_hitting(ModelParams const& params, std::size_t k_max, MakeCurve&& make_curve)
{
    params.validate();
    check_hitting_k(k_max);
    std::map<double, std::size_t> multiplicity;
    std::map<double, std::size_t> first_gap;
    for (std::size_t l = 1; l < params.n; ++l) {
        ++multiplicity[params.rates[l]];
        first_gap.try_emplace(params.rates[l], l);
    }
    using Curve = decltype(make_curve(1.0, std::size_t{1}));
    std::map<double, Curve> curves;
    for (auto const& [lam, count] : multiplicity) {
        curves.emplace(lam, make_curve(lam, first_gap.at(lam)));
    }

    HittingTimeDist dist;
    dist.tail.push_back(1.0);
    for (std::size_t k = 1; k <= k_max; ++k) {
        double log_tail = 0.0;
        for (auto& [lam, curve] : curves) {
            log_tail += static_cast<double>(multiplicity.at(lam)) * std::log(curve(k));
        }
        double const t = std::exp(log_tail);
        dist.tail.push_back(std::min(t, dist.tail.back()));
        if (t < hitting_tail_cut) {
            dist.converged = true;
            break;
        }
    }
    dist.truncation_k = dist.tail.size() - 1;

    double sum = 0.0;
    for (double t : dist.tail) {
        sum += t;
    }
    dist.expectation_lower = sum;
    double const last = dist.tail.back();
    double const prev = dist.tail[dist.tail.size() - 2];
    if (last == 0.0) {
        dist.expectation_upper = sum;
    } else {
        double const ratio = last / prev;
        dist.expectation_upper = ratio < 1.0 ? sum + last * ratio / (1.0 - ratio)
                                             : std::numeric_limits<double>::infinity();
    }
    return dist;
}

/// Backward evaluation of the nested innovation integrals for one gap.
///
/// For a sequence s of upcoming V values, R(u; s) is the probability that the
/// next |s| + 1 gap values stay below r when the carried part of the current
/// gap is u. R(u; ()) = F(r - u); a V = 0 step factorises into
/// F(r - u)·R(0; s'); a V = 1 step integrates f(x - u)·R(x; s') over [u, r].
class NestedIntegralSolver {
public:
    NestedIntegralSolver(double lambda, double r, double p, double quad_tol)
        : lambda_(lambda), r_(r), p_(p), rate_(lambda / (1.0 - p)), tol_(quad_tol)
    {
    }

    /// P̃^k: probability that k successive values stay below r given a start below r.
    double survival_at(std::size_t k)
    {
        double total = 0.0;
        for (std::uint32_t xi = 0; xi < (1U << k); ++xi) {
            double const w = v_weight(xi, k, p_);
            if (w == 0.0) {
                continue;
            }
            Suffix const rest{k - 1, xi >> 1};
            total += w * ((xi & 1U) ? averaged_over_start(rest) : at_zero(rest));
        }
        return total;
    }

private:
    struct Suffix {
        std::size_t length;
        std::uint32_t bits;  // element t stored at bit t
        [[nodiscard]] std::uint64_t key() const { return (std::uint64_t{length} << 32) | bits; }
        [[nodiscard]] bool head() const { return (bits & 1U) != 0; }
        [[nodiscard]] Suffix tail() const { return {length - 1, bits >> 1}; }
    };

    [[nodiscard]] double below(double room) const
    {
        return room <= 0.0 ? 0.0 : -std::expm1(-rate_ * room);
    }

    double eval(Suffix s, double u)
    {
        if (s.length == 0) {
            return below(r_ - u);
        }
        if (!s.head()) {
            return below(r_ - u) * at_zero(s.tail());
        }
        return interpolant(s)(u);
    }

    double carry_integral(Suffix s, double u)
    {
        Suffix const next = s.tail();
        auto integrand = [&](double x) { return rate_ * std::exp(-rate_ * (x - u)) * eval(next, x); };
        return integrate(integrand, u, r_, tol_);
    }

    double at_zero(Suffix s)
    {
        if (s.length == 0) {
            return below(r_);
        }
        auto it = zero_cache_.find(s.key());
        if (it != zero_cache_.end()) {
            return it->second;
        }
        double const v = s.head() ? carry_integral(s, 0.0) : below(r_) * at_zero(s.tail());
        zero_cache_.emplace(s.key(), v);
        return v;
    }

    ChebyshevInterpolant const& interpolant(Suffix s)
    {
        auto it = fn_cache_.find(s.key());
        if (it != fn_cache_.end()) {
            return it->second;
        }
        ChebyshevInterpolant fn([&](double u) { return carry_integral(s, u); }, 0.0, r_, 1e-2 * tol_);
        return fn_cache_.emplace(s.key(), std::move(fn)).first->second;
    }

    // Start gap drawn from Exp(λ) truncated to (0, r), then carried (V = 1).
    double averaged_over_start(Suffix rest)
    {
        auto it = start_cache_.find(rest.key());
        if (it != start_cache_.end()) {
            return it->second;
        }
        double const norm = -std::expm1(-lambda_ * r_);
        auto integrand = [&](double y) { return lambda_ * std::exp(-lambda_ * y) / norm * eval(rest, y); };
        double const v = integrate(integrand, 0.0, r_, tol_);
        start_cache_.emplace(rest.key(), v);
        return v;
    }

    double lambda_;
    double r_;
    double p_;
    double rate_;
    double tol_;
    std::unordered_map<std::uint64_t, double> zero_cache_;
    std::unordered_map<std::uint64_t, double> start_cache_;
    std::unordered_map<std::uint64_t, ChebyshevInterpolant> fn_cache_;
};

}  // namespace detail

/// Hitting-time law by enumerating V-vectors and evaluating the nested
/// innovation integrals numerically to quad_tol.
inline HittingTimeDist hitting_time_recursion(ModelParams const& params, std::size_t k_max,
                                              double quad_tol = 1e-10)
{
    if (!(quad_tol > 0.0)) {
        throw ParameterError("quad_tol must be positive");
    }
    return detail::assemble_hitting(params, k_max, [&](double lam, std::size_t gap) {
        auto solver = std::make_shared<detail::NestedIntegralSolver>(lam, params.r, params.p, quad_tol);
        return std::function<double(std::size_t)>([solver, gap](std::size_t k) {
            try {
                return solver->survival_at(k);
            } catch (NumericalError const& e) {
                throw NumericalError(std::string(e.what()) + " at gap l = " + std::to_string(gap)
                                     + ", k = " + std::to_string(k));
            }
        });
    });
}

namespace detail {

/// P̃^k by run decomposition for one rate.
class RunDecomposition {
public:
    RunDecomposition(double lambda, double r, double p) : lambda_(lambda), r_(r), p_(p) {}

    double operator()(std::size_t k) { return survival_at(k); }

    double survival_at(std::size_t k)
    {
        double const rate = lambda_ / (1.0 - p_);
        double const norm = -std::expm1(-lambda_ * r_);
        while (fresh_.size() <= k) {
            auto const m = static_cast<unsigned>(fresh_.size());
            fresh_.push_back(erlang_cdf(m, rate, r_));
            initial_.push_back(m == 0 ? 1.0
                                      : integrate(
                                            [&](double y) {
                                                return lambda_ * std::exp(-lambda_ * y) / norm
                                                       * erlang_cdf(m, rate, r_ - y);
                                            },
                                            0.0, r_, 1e-14));
        }
        double total = 0.0;
        for (std::uint32_t xi = 0; xi < (1U << k); ++xi) {
            double const w = v_weight(xi, k, p_);
            if (w == 0.0) {
                continue;
            }
            // a run closes at every j > 0 with V_j = 0; the first run carries
            // the start gap iff V_0 = 1
            double prob = 1.0;
            bool in_initial = (xi & 1U) != 0;
            unsigned run = 0;
            for (std::size_t j = 0; j < k; ++j) {
                if (j > 0 && ((xi >> j) & 1U) == 0) {
                    prob *= in_initial ? initial_[run] : fresh_[run];
                    in_initial = false;
                    run = 0;
                }
                ++run;
            }
            prob *= in_initial ? initial_[run] : fresh_[run];
            total += w * prob;
        }
        return total;
    }

private:
    double lambda_;
    double r_;
    double p_;
    std::vector<double> fresh_;    // P(sum of m innovations < r)
    std::vector<double> initial_;  // P(start gap + sum of m innovations < r)
};

}  // namespace detail

/// Hitting-time law by run decomposition: given V, each maximal run of
/// carried innovations only needs its final sum below r, and runs use
/// disjoint innovations.
inline HittingTimeDist hitting_time_oracle(ModelParams const& params, std::size_t k_max)
{
    return detail::assemble_hitting(params, k_max, [&](double lam, std::size_t) {
        return detail::RunDecomposition(lam, params.r, params.p);
    });
}

}  // namespace ergg
