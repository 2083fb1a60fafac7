// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ergg {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Seeded pseudo-random stream identified by (seed, stream id).
///
/// Identical ids reproduce identical draws on every platform: uniforms are
/// built from the top 53 bits of mt19937_64 rather than through
/// std::uniform_real_distribution, whose output is implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id),
                          static_cast<std::uint32_t>(stream_id >> 32),
                          0x45524747U};
        engine_.seed(seq);
    }

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

    /// Child stream for replication chunk `index`, derived deterministically.
    [[nodiscard]] RandomStream split(std::uint64_t index) const
    {
        return RandomStream(seed_, detail::splitmix64(stream_id_ ^ detail::splitmix64(index + 1)));
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Exponential with the given rate by inverse-CDF transform.
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    bool bernoulli(double prob) { return uniform() < prob; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace ergg
