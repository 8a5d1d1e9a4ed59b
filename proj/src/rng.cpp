#include "telefid/rng.hpp"

namespace telefid::rng {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

RandomStream make_stream(const StreamKey& key) {
    const std::uint32_t words[4] = {
        static_cast<std::uint32_t>(key.seed),
        static_cast<std::uint32_t>(key.seed >> 32),
        static_cast<std::uint32_t>(key.stream),
        static_cast<std::uint32_t>(key.stream >> 32),
    };
    std::seed_seq seq(words, words + 4);
    return RandomStream(seq);
}

StreamKey substream(const StreamKey& key, std::uint64_t index) {
    return StreamKey{key.seed, splitmix64(key.stream * 0x9E3779B97F4A7C15ULL + index + 1)};
}

}  // namespace telefid::rng
