#pragma once

#include <cmath>
#include <cstdint>

namespace supou {

// Counter-based generator: Philox-2x64, 10 rounds.
//
// Each stream is addressed by (master_seed, stream_id). The stream id sits in
// the high counter word, the draw index in the low word, so replicate streams
// never overlap and any draw can be regenerated from (seed, stream, index)
// alone. Replicates simulated on different threads therefore produce the same
// numbers as a single-threaded run.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_(master_seed), stream_(stream_id) {}

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        std::uint64_t x0 = index_++;
        std::uint64_t x1 = stream_;
        std::uint64_t k = key_;
        for (int round = 0; round < 10; ++round) {
            const unsigned __int128 prod =
                static_cast<unsigned __int128>(kMultiplier) * x0;
            const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
            const std::uint64_t lo = static_cast<std::uint64_t>(prod);
            x0 = hi ^ k ^ x1;
            x1 = lo;
            k += kKeyBump;
        }
        spare_ = x1;
        have_spare_ = true;
        return x0;
    }

    // Uniform on the open interval (0,1); never returns an endpoint, so
    // logarithms and inverse-tail maps are always safe.
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_exponential(double rate) { return -std::log(next_double()) / rate; }

    // Box-Muller, cosine branch only. Costs two uniforms per normal but keeps
    // the draw count fixed, which makes consumption patterns easy to reason
    // about in determinism tests.
    double next_normal() {
        const double u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    // Marsaglia-Tsang for shape >= 1, unit rate.
    double next_gamma(double shape) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = next_normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = next_double();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
                return d * v;
            }
        }
    }

    // Exact Poisson by the product-of-uniforms count, chunked so the
    // threshold exp(-mean) never underflows. O(mean) uniforms.
    std::uint64_t next_poisson(double mean) {
        std::uint64_t total = 0;
        while (mean > 0.0) {
            const double chunk = mean > 500.0 ? 500.0 : mean;
            mean -= chunk;
            const double threshold = std::exp(-chunk);
            double prod = next_double();
            while (prod >= threshold) {
                ++total;
                prod *= next_double();
            }
        }
        return total;
    }

  private:
    static constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ull;
    static constexpr std::uint64_t kKeyBump = 0x9E3779B97F4A7C15ull;
    static constexpr double kPi = 3.14159265358979323846;

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace supou
