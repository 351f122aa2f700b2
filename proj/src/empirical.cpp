#include "annni/empirical.hpp"

#include <stdexcept>
#include <string>

namespace annni {

EmpiricalDistribution::EmpiricalDistribution(int n) : n_(n) {
    if (n < 1 || n > kMaxSpins)
        throw std::invalid_argument("EmpiricalDistribution: n out of range");
}

void EmpiricalDistribution::add(std::uint32_t index, std::uint64_t count) {
    if (n_ < 32 && index >= (std::uint32_t{1} << n_))
        throw std::invalid_argument("EmpiricalDistribution: index out of range");
    if (count == 0) return;
    counts_[index] += count;
    total_ += count;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
    if (other.n_ != n_)
        throw std::invalid_argument("EmpiricalDistribution::merge: spin count mismatch");
    for (const auto& [index, count] : other.counts_) add(index, count);
}

double EmpiricalDistribution::probability(std::uint32_t index) const {
    if (total_ == 0) return 0.0;
    auto it = counts_.find(index);
    return it == counts_.end() ? 0.0
                               : static_cast<double>(it->second) / static_cast<double>(total_);
}

std::vector<double> EmpiricalDistribution::dense_probabilities() const {
    if (total_ == 0) throw std::runtime_error("EmpiricalDistribution: empty distribution");
    std::vector<double> probs(std::size_t{1} << n_, 0.0);
    for (const auto& [index, count] : counts_)
        probs[index] = static_cast<double>(count) / static_cast<double>(total_);
    return probs;
}

}  // namespace annni
