#ifndef VOLNOTIFY_RNG_HPP
#define VOLNOTIFY_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace volnotify {

/// Seeded random stream. Every episode of a simulation owns one, derived from
/// (seed, episode index), so results do not depend on execution order.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent sub-stream keyed by (seed, stream).
    static Rng substream(std::uint64_t seed, std::uint64_t stream);

    /// Uniform draw on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer on [0, n). n must be positive.
    std::size_t below(std::size_t n);

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace volnotify

#endif // VOLNOTIFY_RNG_HPP
