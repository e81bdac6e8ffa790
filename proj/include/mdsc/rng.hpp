#ifndef MDSC_RNG_HPP
#define MDSC_RNG_HPP

#include <cstdint>

namespace mdsc {

// Counter-based splitmix64 generator. The state advances by a fixed odd
// increment and each output is a pure mix of the state, so independent
// substreams can be derived by hashing (seed, stream) without touching a
// shared state. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, n), n >= 1, by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t v;
        do {
            v = (*this)();
        } while (v >= limit);
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Independent substream for (seed, stream); used to make Monte Carlo trials
// reproducible regardless of execution order.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 h(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
    std::uint64_t s = h();
    return SplitMix64(s);
}

} // namespace mdsc

#endif
