#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <vector>

namespace mpsched {

// One SplitMix64 mixing step.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from a master seed and a list of tag values.
/// The derivation depends only on (master, tags), so adding more tag
/// combinations later never perturbs previously derived seeds.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t t : tags) {
        h = splitmix64(h ^ t);
    }
    return h;
}

/// Deterministic random stream.
///
/// The raw mt19937_64 output sequence is pinned by the standard; the bounded
/// draws below are implemented here (rejection sampling, Fisher-Yates) rather
/// than with std::uniform_int_distribution / std::shuffle, whose draw order
/// is implementation-defined. Identical seeds therefore produce identical
/// streams on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, bound). Requires bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        // Reject the low remainder band so every residue is equally likely.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    long long uniform_int(long long lo, long long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(below(span));
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    /// In-place Fisher-Yates shuffle with a fixed draw order.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace mpsched
