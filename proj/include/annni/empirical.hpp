#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "annni/spin.hpp"

namespace annni {

// Configuration counts from a sampler. Keys are packed spin indices;
// the probability view is counts/total.
class EmpiricalDistribution {
  public:
    explicit EmpiricalDistribution(int n);

    void add(std::uint32_t index, std::uint64_t count = 1);
    void merge(const EmpiricalDistribution& other);

    int n() const { return n_; }
    std::uint64_t total() const { return total_; }
    const std::map<std::uint32_t, std::uint64_t>& counts() const { return counts_; }

    double probability(std::uint32_t index) const;

    // Dense 2^n probability vector (counts/total).
    std::vector<double> dense_probabilities() const;

    bool operator==(const EmpiricalDistribution& other) const = default;

  private:
    int n_;
    std::map<std::uint32_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

}  // namespace annni
