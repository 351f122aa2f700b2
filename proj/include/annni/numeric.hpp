#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace annni {

// Neumaier-compensated summation; keeps normalization checks meaningful
// even when accumulating millions of terms.
inline double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

class CompensatedAccumulator {
  public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Round to 7 decimal places (half away from zero).
inline double round7(double x) {
    return std::round(x * 1e7) / 1e7;
}

// splitmix64: used to derive independent RNG streams from (seed, index)
// pairs so that parallel and serial execution produce identical samples.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x51ed270b2f6c87ULL));
}

// Uniform double in [0,1) from the high 53 bits of a 64-bit draw.
template <typename Rng>
double canonical_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased-enough index draw in [0,n) via multiply-shift (n <= 2^31).
template <typename Rng>
std::uint32_t uniform_index(Rng& rng, std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(rng() >> 32)) * n) >> 32);
}

}  // namespace annni
