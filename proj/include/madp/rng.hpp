#pragma once

#include <cstdint>
#include <initializer_list>

namespace madp {

/// Counter-based pseudorandom stream built on the splitmix64 finalizer:
/// the k-th output is mix(key + k * golden-gamma). Streams are cheap to
/// derive from a (seed, tag...) path, so every (run, iteration, epoch) or
/// simulation path gets its own independent substream and results do not
/// depend on scheduling or on how much randomness other components consume.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    /// Derives a stream key by folding each tag into the seed.
    static RngStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t key = mix(seed + kGamma);
        for (std::uint64_t tag : path) {
            key = mix(key ^ mix(tag + kGamma));
        }
        return RngStream(key);
    }

    std::uint64_t next_u64() {
        counter_ += kGamma;
        return mix(key_ + counter_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n > 0. Multiply-shift mapping; the
    /// O(n/2^64) bias is far below anything observable here.
    std::uint64_t uniform_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Stream tags used by the solvers and the policy simulator. Fixed
/// constants so that identically-seeded runs consume identical draws.
namespace stream_tag {
inline constexpr std::uint64_t kInitialState = 1;
inline constexpr std::uint64_t kTrajectory = 2;
inline constexpr std::uint64_t kSimulationPath = 3;
} // namespace stream_tag

} // namespace madp
