#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace resmgcn {

/// Deterministic RNG used everywhere seeds matter.
///
/// Wraps std::mt19937_64 but performs all bounded/real draws itself:
/// std::uniform_int_distribution is not required to produce the same
/// sequence across standard libraries, and run manifests promise
/// bit-reproducible runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, bound). bound must be > 0. Rejection sampling, unbiased.
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform real in [lo, hi) with 53 random mantissa bits.
    double uniform_real(double lo, double hi) {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + unit * (hi - lo);
    }

    /// Fisher-Yates shuffle with this generator.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent seed streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Stream tags for derived seeds, so call sites read by intent.
namespace seed_stream {
inline constexpr std::uint64_t split = 0x5p1;
inline constexpr std::uint64_t val_negatives = 0x9e01;
inline constexpr std::uint64_t test_negatives = 0x9e02;
inline constexpr std::uint64_t train_negatives = 0x9e03;
inline constexpr std::uint64_t train_eval_negatives = 0x9e04;
inline constexpr std::uint64_t init = 0x11a7;
} // namespace seed_stream

/// FNV-1a 64-bit over a byte range.
std::uint64_t fnv1a64(const void* data, std::size_t size);

/// FNV-1a 64-bit of a file's contents; throws IoError if unreadable.
std::uint64_t fnv1a64_file(const std::string& path);

/// "fnv1a64:<16 hex digits>" rendering used in manifests.
std::string hash_string(std::uint64_t h);

/// Shortest round-trip decimal rendering of a double (%.17g trimmed).
std::string format_double(double v);

} // namespace resmgcn
