#pragma once

#include <cstdint>
#include <random>

namespace netgate {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// A reproducible, independently seeded source of randomness.
///
/// Streams are identified by (base_seed, stream_id). Child streams are derived
/// by hashing the parent id with a key, so any task (trial, clustering,
/// replicate) can build its generator without coordinating with other tasks.
class SeedStream {
public:
    using Engine = std::mt19937_64;

    constexpr SeedStream() = default;
    constexpr explicit SeedStream(std::uint64_t base_seed, std::uint64_t stream_id = 0)
        : base_seed_(base_seed), stream_id_(stream_id) {}

    std::uint64_t base_seed() const noexcept { return base_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    SeedStream child(std::uint64_t key) const noexcept;
    SeedStream child(std::uint64_t key1, std::uint64_t key2) const noexcept {
        return child(key1).child(key2);
    }

    /// A fresh engine positioned at the start of this stream.
    Engine engine() const;

    friend bool operator==(const SeedStream&, const SeedStream&) = default;

private:
    std::uint64_t base_seed_ = 0;
    std::uint64_t stream_id_ = 0;
};

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(SeedStream::Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
std::uint64_t uniform_index(SeedStream::Engine& eng, std::uint64_t bound);

}  // namespace netgate
