#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

namespace cmarket {

/// One step of the SplitMix64 sequence; advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/** Deterministic pseudo-random stream.
 *
 * xoshiro256** seeded from a single 64-bit value through SplitMix64. All derived
 * draws (uniform doubles, bounded integers, normals) are defined in terms of
 * integer outputs only, so the same seed gives the same sequence on every
 * platform, with the exception of the libm calls inside standard_normal().
 *
 * Satisfies UniformRandomBitGenerator.
 */
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next_u64();
    result_type operator()() { return next_u64(); }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// Unbiased integer in [0, n); n must be positive.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal by the Box-Muller transform. Draws are produced in
    /// pairs; the second value of each pair is returned on the next call.
    double standard_normal();

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> s_{};
    std::optional<double> spare_normal_;
};

/// Independent substreams of one simulation run.
enum class Substream : std::uint64_t {
    Topology = 1,
    Preferences = 2,
    Ties = 3,
};

/// Per-run seed: SplitMix64 finalizer applied to master_seed + golden * (run_index + 1).
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index);

/// Seed of a named substream of a run: SplitMix64 finalizer of run_seed ^ (tag * golden2).
std::uint64_t derive_substream_seed(std::uint64_t run_seed, Substream stream);

inline RandomStream make_substream(std::uint64_t run_seed, Substream stream) {
    return RandomStream(derive_substream_seed(run_seed, stream));
}

} // namespace cmarket
