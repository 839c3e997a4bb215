#pragma once

#include <cstdint>

#include "frog/site.hpp"

namespace frog {

/// Independent purposes drawing from one master seed.
enum class Stream : std::uint64_t {
    step = 1,        // trajectory increments U_j(x, i); also drives stopping times
    count = 2,       // frog numbers per site
    conductance = 3, // edge conductances
    series = 4,      // series oracle summands
    replica = 5,     // per-replica master seeds
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// 53 high bits mapped onto [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based generator: every variate is a pure function of
/// (master seed, stream, site, index, step), so lazily evaluated trajectories
/// are independent of evaluation order and thread count.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t bits(Stream stream, const Site& site, std::uint64_t index, std::uint64_t step) const noexcept {
        std::uint64_t h = mix64(seed_ ^ (static_cast<std::uint64_t>(stream) << 56));
        h = mix64(h ^ site.dim);
        for (int k = 0; k < site.dim; ++k) h = mix64(h ^ static_cast<std::uint32_t>(site[k]));
        h = mix64(h ^ index);
        return mix64(h ^ step);
    }

    double uniform(Stream stream, const Site& site, std::uint64_t index, std::uint64_t step) const noexcept {
        return to_unit(bits(stream, site, index, step));
    }

    /// Master seed of an independent child stream (used per replica).
    RngStream derive(std::uint64_t child) const noexcept {
        return RngStream(mix64(mix64(seed_ ^ (static_cast<std::uint64_t>(Stream::replica) << 56)) ^ child));
    }

    friend bool operator==(const RngStream&, const RngStream&) = default;

private:
    std::uint64_t seed_;
};

} // namespace frog
