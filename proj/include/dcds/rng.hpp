#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace dcds {

// splitmix64; used to expand (seed, stream) pairs into xoshiro state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna). One independent instance per path and
// per purpose; seeding via splitmix64 keeps streams reproducible regardless
// of thread count.
class Xoshiro256 {
  public:
    Xoshiro256(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = seed;
        (void)splitmix64(sm);
        sm ^= 0x6a09e667f3bcc909ULL ^ stream * 0x9e3779b97f4a7c15ULL;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0, 1]; never returns 0, so -log is safe.
    double next_open_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform on [-1, 1).
    double next_symmetric() {
        return 2.0 * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53) - 1.0;
    }

    double next_exponential(double rate) { return -std::log(next_open_unit()) / rate; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Marsaglia polar method with a cached second variate. Kept as the reference
// sampler; the hot path uses the ziggurat below.
class PolarNormalSampler {
  public:
    double operator()(Xoshiro256& rng) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = rng.next_symmetric();
            v = rng.next_symmetric();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

  private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Ziggurat method (Marsaglia & Tsang) with 256 layers and 51-bit candidates.
// One u64 draw and two table lookups on the common path; wedge and tail cases
// fall back to explicit density evaluation.
class NormalSampler {
  public:
    double operator()(Xoshiro256& rng) {
        const Tables& t = tables();
        for (;;) {
            const std::uint64_t u = rng.next_u64();
            const unsigned layer = static_cast<unsigned>(u & 255);
            // Signed 52-bit candidate scaled by the layer width.
            const std::int64_t hz =
                static_cast<std::int64_t>(u >> 12) - (std::int64_t{1} << 51);
            const double x = static_cast<double>(hz) * t.w[layer];
            if (std::llabs(hz) < t.k[layer]) return x;

            if (layer == 0) {
                // Tail beyond r: Marsaglia's exponential-rejection sampler.
                double xx, yy;
                do {
                    xx = -std::log(rng.next_open_unit()) / kTailStart;
                    yy = -std::log(rng.next_open_unit());
                } while (yy + yy < xx * xx);
                return hz >= 0 ? kTailStart + xx : -kTailStart - xx;
            }
            const double f_hi = t.f[layer - 1];
            const double f_lo = t.f[layer];
            if (f_lo + rng.next_open_unit() * (f_hi - f_lo) < std::exp(-0.5 * x * x)) {
                return x;
            }
        }
    }

  private:
    static constexpr double kTailStart = 3.6541528853610088;  // r for 256 layers
    static constexpr double kLayerArea = 4.92867323399e-3;    // v for 256 layers

    struct Tables {
        double w[256];
        double f[256];
        std::int64_t k[256];

        Tables() {
            const double m = 9007199254740992.0 / 4.0;  // 2^51
            double dn = kTailStart;
            double tn = kTailStart;
            const double q = kLayerArea / std::exp(-0.5 * dn * dn);
            k[0] = static_cast<std::int64_t>((dn / q) * m);
            k[1] = 0;
            w[0] = q / m;
            w[255] = dn / m;
            f[0] = 1.0;
            f[255] = std::exp(-0.5 * dn * dn);
            for (int i = 254; i >= 1; --i) {
                dn = std::sqrt(-2.0 * std::log(kLayerArea / dn + std::exp(-0.5 * dn * dn)));
                k[i + 1] = static_cast<std::int64_t>((dn / tn) * m);
                tn = dn;
                f[i] = std::exp(-0.5 * dn * dn);
                w[i] = dn / m;
            }
        }
    };

    static const Tables& tables() {
        static const Tables t;
        return t;
    }
};

}  // namespace dcds
