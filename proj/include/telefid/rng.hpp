#pragma once

#include <cstdint>
#include <random>

namespace telefid::rng {

using RandomStream = std::mt19937_64;

/// Identifies one independent random stream. Monte-Carlo loops split work into
/// fixed-size blocks, each drawing from the stream derived from
/// (seed, base stream, block index); partial sums merge in block order, so a
/// result depends only on the seed, never on scheduling.
struct StreamKey {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

RandomStream make_stream(const StreamKey& key);

/// Sub-stream `index` of `key`, for per-block or per-worker derivation.
StreamKey substream(const StreamKey& key, std::uint64_t index);

}  // namespace telefid::rng
