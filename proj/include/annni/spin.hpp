#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace annni {

// Exact enumeration over 2^n states must stay tractable.
inline constexpr int kMaxSpins = 24;

// One assignment of n spins in {-1,+1}, packed bitwise: bit i of `index`
// holds spin i, with S_i = 2*b_i - 1.
class SpinConfiguration {
  public:
    SpinConfiguration(std::uint32_t index, int n) : index_(index), n_(n) {
        if (n < 1 || n > kMaxSpins)
            throw std::invalid_argument("SpinConfiguration: spin count " + std::to_string(n) +
                                        " outside [1, " + std::to_string(kMaxSpins) + "]");
        if (n < 32 && index >= (std::uint32_t{1} << n))
            throw std::invalid_argument("SpinConfiguration: index out of range for n=" +
                                        std::to_string(n));
    }

    std::uint32_t index() const { return index_; }
    int n() const { return n_; }

    int spin(int site) const { return 2 * static_cast<int>((index_ >> site) & 1u) - 1; }

    bool operator==(const SpinConfiguration& other) const = default;

  private:
    std::uint32_t index_;
    int n_;
};

inline std::uint32_t config_mask(int n) {
    return (n == 32) ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
}

inline SpinConfiguration global_flip(const SpinConfiguration& c) {
    return {config_mask(c.n()) ^ c.index(), c.n()};
}

// Cyclic shift: the spin at site i moves to site (i+k) mod n.
inline SpinConfiguration rotate(const SpinConfiguration& c, int k) {
    const int n = c.n();
    k %= n;
    if (k < 0) k += n;
    if (k == 0) return c;
    const std::uint32_t x = c.index();
    return {((x << k) | (x >> (n - k))) & config_mask(n), n};
}

// Site i -> site n-1-i.
inline SpinConfiguration reflect(const SpinConfiguration& c) {
    std::uint32_t out = 0;
    for (int i = 0; i < c.n(); ++i)
        out |= ((c.index() >> i) & 1u) << (c.n() - 1 - i);
    return {out, c.n()};
}

}  // namespace annni
