#include "netgate/seed_stream.hpp"

#include <array>

namespace netgate {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

SeedStream SeedStream::child(std::uint64_t key) const noexcept {
    return SeedStream(base_seed_, splitmix64(stream_id_ ^ splitmix64(key ^ 0xD1B54A32D192ED03ULL)));
}

SeedStream::Engine SeedStream::engine() const {
    std::uint64_t state = splitmix64(base_seed_) ^ splitmix64(stream_id_ + 0x632BE59BD9B4E019ULL);
    std::array<std::uint32_t, 8> words{};
    for (std::size_t i = 0; i < words.size(); i += 2) {
        state = splitmix64(state);
        words[i] = static_cast<std::uint32_t>(state);
        words[i + 1] = static_cast<std::uint32_t>(state >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return Engine(seq);
}

std::uint64_t uniform_index(SeedStream::Engine& eng, std::uint64_t bound) {
    // Lemire-style rejection keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace netgate
