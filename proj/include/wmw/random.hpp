#pragma once

#include <cstdint>
#include <random>

namespace wmw {

/// Seeded 64-bit Mersenne Twister. Single owner: concurrent work must use
/// independent streams obtained from `substream`.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Stream for block `index` of a computation seeded with `seed`.
    /// Splitting rule: the engine is seeded with
    ///   splitmix64(seed ^ splitmix64(index + 1)).
    static RandomStream substream(std::uint64_t seed, std::uint64_t index);

    std::mt19937_64& engine() { return engine_; }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// One step of the SplitMix64 output function.
std::uint64_t splitmix64(std::uint64_t x);

} // namespace wmw
