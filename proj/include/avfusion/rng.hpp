#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

namespace avfusion {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream-derived seed, so per-video generators are independent while the
// whole dataset stays a pure function of one root seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Counter-based generator: draw k is a pure function of (seed, stream, k),
// with no platform-dependent distribution machinery.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(derive_seed(seed, stream)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
        auto span = static_cast<double>(hi - lo + 1);
        auto offset = static_cast<std::int64_t>(next_double() * span);
        if (offset > hi - lo) offset = hi - lo;
        return lo + offset;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Index drawn from a normalized probability vector via CDF walk.
    std::size_t categorical(std::span<const double> probs) {
        double u = next_double();
        double cum = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            cum += probs[i];
            if (u < cum) return i;
        }
        return probs.size() - 1;
    }

private:
    std::uint64_t state_;
};

}  // namespace avfusion
