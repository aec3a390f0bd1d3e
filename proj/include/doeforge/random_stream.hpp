#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace doeforge {

// Counter-based pseudo-random stream.
//
// Output k of stream (seed, substream) is mix64(key + (k + 1) * golden), where
// key = mix64(seed ^ mix64(substream ^ salt)) and mix64 is the SplitMix64
// finaliser. Every draw is a pure function of (seed, substream, counter), so
// results are identical on all platforms and distinct substreams never share
// state. Uniform reals, bounded integers and permutations are bit-exact
// everywhere; normal() additionally depends on the platform's log and cos.
class RandomStream {
public:
    static constexpr std::string_view kAlgorithm = "splitmix64-counter/1";

    RandomStream(std::uint64_t seed, std::uint64_t substream);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t substream() const { return substream_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    // Standard normal via Box-Muller (two draws per value).
    double normal();
    // Uniformly random permutation of {0, ..., n-1} (Fisher-Yates).
    std::vector<std::size_t> permutation(std::size_t n);

    // Independent child stream; depends only on (seed, substream, tag).
    RandomStream fork(std::uint64_t tag) const;

private:
    std::uint64_t seed_;
    std::uint64_t substream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

RandomStream make_stream(std::uint64_t seed, std::uint64_t substream = 0);

}  // namespace doeforge
