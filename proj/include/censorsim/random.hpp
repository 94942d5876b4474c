#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>

namespace censorsim {

/// SplitMix64 finalizer. Used to derive independent 64-bit seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for sample `index` of a design rooted at `base_seed`. Depends only on
/// the pair, so appending samples never changes the seeds of earlier ones.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(base_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Seeded random stream. The engine is std::mt19937_64, whose output sequence
/// is fixed by the standard; the real and index draws below are defined here
/// rather than through <random> distributions, which are implementation-defined.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64";

    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform real in [low, high).
    double uniform(double low, double high) { return low + (high - low) * uniform01(); }

    /// Uniform integer in [0, bound). `bound` must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);

    template <class Container>
    void shuffle(Container& c) {
        // Fisher-Yates from the back.
        for (std::size_t i = c.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            using std::swap;
            swap(c[i - 1], c[j]);
        }
    }

    std::string save_state() const;
    void load_state(const std::string& state);

    friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace censorsim
