// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "ergg/error.hpp"

namespace ergg {

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (nonnegative half).
inline constexpr std::array<double, 8> gk15_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_kronrod{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk15_gauss{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F const& f, double a, double b)
{
    double const c = 0.5 * (a + b);
    double const h = 0.5 * (b - a);
    double const fc = f(c);
    double kronrod = fc * gk15_kronrod[7];
    double gauss = fc * gk15_gauss[3];
    for (std::size_t j = 0; j < 7; ++j) {
        double const dx = h * gk15_nodes[j];
        double const s = f(c - dx) + f(c + dx);
        kronrod += gk15_kronrod[j] * s;
        if (j % 2 == 1) {
            gauss += gk15_gauss[j / 2] * s;
        }
    }
    return {kronrod * h, std::abs((kronrod - gauss) * h)};
}

template <class F>
double adaptive_gk(F const& f, double a, double b, double tol, double whole, int depth)
{
    auto [value, err] = gk15(f, a, b);
    // err below the rounding floor of the panel cannot be reduced by splitting
    double const floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
    if (err <= std::max(tol, floor) || std::abs(b - a) < 1e-15 * std::max(1.0, std::abs(whole))) {
        return value;
    }
    if (depth <= 0) {
        throw NumericalError("adaptive quadrature exceeded its subdivision depth");
    }
    double const m = 0.5 * (a + b);
    return adaptive_gk(f, a, m, 0.5 * tol, whole, depth - 1)
           + adaptive_gk(f, m, b, 0.5 * tol, whole, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b] to absolute tolerance tol.
template <class F>
double integrate(F const& f, double a, double b, double tol = 1e-12)
{
    if (a == b) {
        return 0.0;
    }
    return detail::adaptive_gk(f, a, b, tol, b - a, 40);
}

/// Chebyshev interpolant on [lo, hi] through the extrema points, evaluated
/// with the barycentric formula. Degree doubles until the trailing
/// coefficients fall below tol.
class ChebyshevInterpolant {
public:
    ChebyshevInterpolant() = default;

    template <class F>
    ChebyshevInterpolant(F const& f, double lo, double hi, double tol,
                         std::size_t min_degree = 16, std::size_t max_degree = 1024)
        : lo_(lo), hi_(hi)
    {
        for (std::size_t deg = min_degree;; deg *= 2) {
            sample(f, deg);
            if (converged(tol)) {
                return;
            }
            if (deg * 2 > max_degree) {
                throw NumericalError("Chebyshev interpolant did not converge");
            }
        }
    }

    [[nodiscard]] double operator()(double x) const
    {
        double const t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
        double num = 0.0;
        double den = 0.0;
        std::size_t const m = nodes_.size();
        for (std::size_t j = 0; j < m; ++j) {
            double const diff = t - nodes_[j];
            if (diff == 0.0) {
                return values_[j];
            }
            double w = (j % 2 == 0) ? 1.0 : -1.0;
            if (j == 0 || j + 1 == m) {
                w *= 0.5;
            }
            w /= diff;
            num += w * values_[j];
            den += w;
        }
        return num / den;
    }

    [[nodiscard]] std::size_t degree() const { return nodes_.empty() ? 0 : nodes_.size() - 1; }

private:
    template <class F>
    void sample(F const& f, std::size_t deg)
    {
        nodes_.resize(deg + 1);
        values_.resize(deg + 1);
        for (std::size_t j = 0; j <= deg; ++j) {
            nodes_[j] = std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(deg));
            values_[j] = f(lo_ + 0.5 * (hi_ - lo_) * (nodes_[j] + 1.0));
        }
    }

    // Magnitude of the last few Chebyshev coefficients via a direct DCT-I.
    [[nodiscard]] bool converged(double tol) const
    {
        std::size_t const deg = nodes_.size() - 1;
        double scale = 0.0;
        for (double v : values_) {
            scale = std::max(scale, std::abs(v));
        }
        double tail = 0.0;
        for (std::size_t k = deg - 2; k <= deg; ++k) {
            double sum = 0.0;
            for (std::size_t j = 0; j <= deg; ++j) {
                double w = (j == 0 || j == deg) ? 0.5 : 1.0;
                sum += w * values_[j]
                       * std::cos(std::numbers::pi * static_cast<double>(k * j) / static_cast<double>(deg));
            }
            double c = 2.0 * sum / static_cast<double>(deg);
            if (k == deg) {
                c *= 0.5;
            }
            tail = std::max(tail, std::abs(c));
        }
        return tail <= std::max(tol, 1e-15 * scale);
    }

    double lo_ = 0.0;
    double hi_ = 1.0;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

}  // namespace ergg
