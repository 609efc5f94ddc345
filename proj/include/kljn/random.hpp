#pragma once

#include <cstdint>
#include <random>

namespace kljn {

using RandomEngine = std::mt19937_64;

/// Stream tags keep sub-streams of one master seed apart.
enum class StreamTag : std::uint64_t {
    period = 1,
    calibration = 2,
    spectrum = 3,
    sweep = 4,
    test = 99,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of the named sub-stream `index` under `master`.
std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::uint64_t index) noexcept;

inline RandomEngine make_stream(std::uint64_t master, StreamTag tag, std::uint64_t index)
{
    return RandomEngine(derive_seed(master, tag, index));
}

} // namespace kljn
