#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace bermuda {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11 constants).
// Output depends only on (key, counter), so per-path streams are identical
// no matter how paths are chunked over threads.
struct Philox4x32 {
    static constexpr std::uint32_t M0 = 0xD2511F53u;
    static constexpr std::uint32_t M1 = 0xCD9E8D57u;
    static constexpr std::uint32_t W0 = 0x9E3779B9u;
    static constexpr std::uint32_t W1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += W0;
            key[1] += W1;
        }
        return ctr;
    }
};

// Uniform in (0,1): 53 random bits, offset so 0 is never produced.
inline double u64_to_unit(std::uint64_t u) {
    return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
}

// Inverse standard normal CDF: Acklam's rational approximation refined by one
// Halley step against erfc, accurate to ~1 ulp over (0,1).
double inverse_normal_cdf(double p);

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

// Two independent N(0,1) draws addressed by (seed, stream, step).
// One Philox block yields two 64-bit uniforms.
inline std::array<double, 2> normal_pair(std::uint64_t seed, std::uint64_t stream,
                                         std::uint32_t step) {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), step, 0u};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    const auto r = Philox4x32::block(ctr, key);
    const std::uint64_t a = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
    return {inverse_normal_cdf(u64_to_unit(a)), inverse_normal_cdf(u64_to_unit(b))};
}

// Small sequential generator for shuffles, bootstraps and weight init.
// counter-based underneath, so seeding is cheap and collision-free.
class SeqRng {
  public:
    explicit SeqRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64() {
        const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(stream_),
                                                  static_cast<std::uint32_t>(stream_ >> 32),
                                                  static_cast<std::uint32_t>(n_),
                                                  static_cast<std::uint32_t>(n_ >> 32)};
        const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                                  static_cast<std::uint32_t>(seed_ >> 32)};
        const auto r = Philox4x32::block(ctr, key);
        ++n_;
        return (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    }

    double uniform() { return u64_to_unit(next_u64()); }

    double normal() { return inverse_normal_cdf(uniform()); }

    // Uniform integer in [0, n). Modulo bias is < 2^-32 for our n.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t n_ = 0;
};

}  // namespace bermuda
