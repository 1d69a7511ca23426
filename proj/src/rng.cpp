#include "volnotify/rng.hpp"

namespace volnotify {

namespace {

// splitmix64 finalizer; spreads nearby (seed, stream) pairs across the seed space.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : engine_(mix(seed)) {}

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream) {
    // The extra round keeps substream(s, k) distinct from Rng(s).
    return Rng(mix(seed) ^ mix(mix(stream) + 0x5eed));
}

std::size_t Rng::below(std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(engine_);
}

} // namespace volnotify
