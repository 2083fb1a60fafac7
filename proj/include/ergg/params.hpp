// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergg/error.hpp"

namespace ergg {

/// Parameters (n, p, Λ, r) of the exponential RGG process.
///
/// rates[l] is the exponential rate of gap Y_l, l = 0..n-1. Gap 0 is the
/// distance from the origin to the first vertex and never affects topology.
struct ModelParams {
    std::size_t n = 2;
    double p = 0.0;
    std::vector<double> rates;
    double r = 1.0;

    static ModelParams homogeneous(std::size_t n, double lambda, double r, double p)
    {
        ModelParams m{n, p, std::vector<double>(n, lambda), r};
        m.validate();
        return m;
    }

    void validate() const
    {
        if (n < 2) {
            throw ParameterError("n must be at least 2");
        }
        if (!(p >= 0.0 && p < 1.0)) {
            throw ParameterError("memory parameter p must satisfy 0 <= p < 1");
        }
        if (rates.size() != n) {
            throw ParameterError("rate sequence must have exactly n entries");
        }
        for (double lam : rates) {
            if (!(lam > 0.0) || !std::isfinite(lam)) {
                throw ParameterError("every rate must be positive and finite");
            }
        }
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw ParameterError("cutoff r must be positive and finite");
        }
    }

    /// Rates of the inter-vertex gaps Y_1..Y_{n-1}.
    [[nodiscard]] std::vector<double> interior_rates() const
    {
        return {rates.begin() + 1, rates.end()};
    }

    /// True when every inter-vertex gap shares one rate.
    [[nodiscard]] bool interior_homogeneous() const
    {
        return std::all_of(rates.begin() + 1, rates.end(),
                           [&](double v) { return v == rates[1]; });
    }
};

namespace detail {

inline double parse_double(std::string_view s)
{
    std::string buf(s);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size()) {
        throw ParameterError("not a number: '" + buf + "'");
    }
    return v;
}

inline std::size_t parse_count(std::string_view s)
{
    double v = parse_double(s);
    if (v < 0 || v != std::floor(v) || v > 1e15) {
        throw ParameterError("not a nonnegative integer: '" + std::string(s) + "'");
    }
    return static_cast<std::size_t>(v);
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

/// Rate specification: a scalar ("1.5") or piecewise "count:rate,count:rate".
/// One piece may use "*" as its count to absorb the remaining gaps.
class RateSpec {
public:
    static RateSpec parse(std::string_view text)
    {
        RateSpec spec;
        if (text.find(':') == std::string_view::npos) {
            spec.scalar_ = detail::parse_double(text);
            return spec;
        }
        bool seen_star = false;
        for (auto piece : detail::split(text, ',')) {
            auto kv = detail::split(piece, ':');
            if (kv.size() != 2) {
                throw ParameterError("malformed rate piece '" + std::string(piece) + "'");
            }
            std::optional<std::size_t> count;
            if (kv[0] == "*") {
                if (seen_star) {
                    throw ParameterError("at most one '*' count in a rate spec");
                }
                seen_star = true;
            } else {
                count = detail::parse_count(kv[0]);
            }
            spec.pieces_.emplace_back(count, detail::parse_double(kv[1]));
        }
        return spec;
    }

    /// Expands to exactly n rates; throws when the pieces do not cover n gaps.
    [[nodiscard]] std::vector<double> expand(std::size_t n) const
    {
        if (scalar_) {
            return std::vector<double>(n, *scalar_);
        }
        std::size_t fixed = 0;
        for (auto const& [count, rate] : pieces_) {
            fixed += count.value_or(0);
        }
        bool has_star = std::any_of(pieces_.begin(), pieces_.end(),
                                    [](auto const& pc) { return !pc.first; });
        if (fixed > n || (!has_star && fixed != n)) {
            throw ParameterError("rate spec covers " + std::to_string(fixed)
                                 + " gaps but n = " + std::to_string(n));
        }
        std::vector<double> out;
        out.reserve(n);
        for (auto const& [count, rate] : pieces_) {
            out.insert(out.end(), count.value_or(n - fixed), rate);
        }
        return out;
    }

    [[nodiscard]] bool is_scalar() const { return scalar_.has_value(); }

private:
    std::optional<double> scalar_;
    std::vector<std::pair<std::optional<std::size_t>, double>> pieces_;
};

}  // namespace ergg
