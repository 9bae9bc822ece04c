#pragma once

#include <array>
#include <cstdint>

namespace sparselob {

/// Deterministic pseudo-random stream keyed by (seed, stream index).
///
/// xoshiro256++ seeded through splitmix64. Identical (seed, stream) pairs
/// replay identical draw sequences on every platform; distinct stream
/// indices give statistically independent streams, which is what the
/// Monte-Carlo runner uses to make results independent of worker count.
/// Never backed by the platform default generator.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01();

    /// Uniform on the open interval (0, 1); safe to feed into std::log.
    double uniform_open01();

    /// Strictly positive exponential variate with the given rate (rate > 0).
    double exponential(double rate);

    /// Unbiased uniform integer in [0, n), n >= 1.
    std::uint64_t bounded(std::uint64_t n);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::array<std::uint64_t, 4> state_{};
};

} // namespace sparselob
