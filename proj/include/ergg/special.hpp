// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ergg/error.hpp"

namespace ergg {

/// Regularized lower incomplete gamma P(a, x).
///
/// Series expansion below x < a + 1, Lentz continued fraction for Q(a, x)
/// above it.
inline double gamma_p(double a, double x)
{
    if (!(a > 0.0) || x < 0.0) {
        throw ParameterError("gamma_p needs a > 0 and x >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    constexpr double eps = 1e-16;
    constexpr int max_iter = 10000;
    double const log_prefix = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        for (int k = 1; k < max_iter; ++k) {
            term *= x / (a + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * eps) {
                return std::min(1.0, sum * std::exp(log_prefix));
            }
        }
        throw NumericalError("gamma_p series did not converge");
    }
    constexpr double tiny = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iter; ++i) {
        double const an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        double const delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) {
            return std::max(0.0, 1.0 - std::exp(log_prefix) * h);
        }
    }
    throw NumericalError("gamma_p continued fraction did not converge");
}

/// P(E_1 + ... + E_m < x) for m i.i.d. exponentials of the given rate; 1 when m = 0.
inline double erlang_cdf(unsigned m, double rate, double x)
{
    if (m == 0) {
        return 1.0;
    }
    if (x <= 0.0) {
        return 0.0;
    }
    return gamma_p(static_cast<double>(m), rate * x);
}

inline double poisson_pmf(unsigned k, double mean)
{
    if (mean == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

/// Π(1 - e^{-λ_l y}) accumulated in the log domain.
inline double product_no_exceedance(std::span<double const> rates, double y)
{
    double log_sum = 0.0;
    for (double lam : rates) {
        log_sum += std::log1p(-std::exp(-lam * y));
    }
    return std::exp(log_sum);
}

/// Law of the number of successes among independent Bernoulli(probs[l]) trials.
inline std::vector<double> poisson_binomial_pmf(std::span<double const> probs)
{
    std::vector<double> pmf(probs.size() + 1, 0.0);
    pmf[0] = 1.0;
    for (std::size_t l = 0; l < probs.size(); ++l) {
        double const q = probs[l];
        for (std::size_t j = l + 1; j > 0; --j) {
            pmf[j] = pmf[j] * (1.0 - q) + pmf[j - 1] * q;
        }
        pmf[0] *= 1.0 - q;
    }
    return pmf;
}

/// Two-sided Kolmogorov critical value for sample size n (asymptotic).
inline double ks_critical_value(std::size_t n, double alpha = 1e-3)
{
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace ergg
