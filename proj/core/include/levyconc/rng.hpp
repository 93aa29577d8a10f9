#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace levyconc {

/// SplitMix64 finalizer. The whole RNG scheme is built from this mixer so
/// that every draw is a pure function of (master seed, stream, substream,
/// counter) and parallel execution cannot change results.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Identifies one logical random stream: a master seed plus a stream index.
/// Substreams (one per sample) are derived deterministically, so a batch is
/// reproducible bit-for-bit regardless of worker count.
struct RngStreamSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream = 0;

    RngStreamSpec substream_of(std::uint64_t offset) const {
        return {master_seed, stream + offset};
    }
};

inline constexpr std::string_view kRngAlgorithmTag = "splitmix64-counter";

/// Counter-based generator: output k of substream s of stream spec r is
///   mix64(mix64(mix64(seed) ^ stream) ^ substream) + k * golden ratio,
/// passed through the finalizer once more. No state beyond the counter.
class CounterRng {
public:
    CounterRng(const RngStreamSpec& spec, std::uint64_t substream)
        : key_(mix64(mix64(mix64(spec.master_seed) ^ spec.stream) ^ substream)) {}

    std::uint64_t next_u64() {
        return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ull);
    }

    /// Uniform on the open interval (0,1).
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double next_exponential() { return -std::log(next_unit()); }

    /// Exact Poisson draw (Knuth product method, chunked so the running
    /// product never underflows for large means).
    std::uint64_t next_poisson(double mean) {
        std::uint64_t total = 0;
        while (mean > 256.0) {
            total += poisson_small(256.0);
            mean -= 256.0;
        }
        return total + poisson_small(mean);
    }

private:
    std::uint64_t poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        double prod = 1.0;
        std::uint64_t k = 0;
        do {
            ++k;
            prod *= next_unit();
        } while (prod > limit);
        return k - 1;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace levyconc
