#include "annni/gibbs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "annni/numeric.hpp"

namespace annni {

namespace {

void check_enumerable(int n) {
    if (n > kMaxSpins) throw std::invalid_argument("exact enumeration limited to n <= 24");
}

}  // namespace

std::uint64_t Spectrum::total() const {
    std::uint64_t t = 0;
    for (const auto& level : levels) t += level.degeneracy;
    return t;
}

std::vector<double> energy_table(const AnnniModel& model) {
    const int n = model.n();
    check_enumerable(n);
    const std::uint32_t mask = config_mask(n);
    const std::size_t count = std::size_t{1} << n;
    std::vector<double> energies(count);
    const double j1 = model.j1();
    const double j2 = model.j2();
    for (std::size_t idx = 0; idx < count; ++idx) {
        const auto x = static_cast<std::uint32_t>(idx);
        const std::uint32_t r1 = ((x << 1) | (x >> (n - 1))) & mask;
        const std::uint32_t r2 = ((x << 2) | (x >> (n - 2))) & mask;
        const int nn = n - 2 * std::popcount(x ^ r1);
        const int nnn = n - 2 * std::popcount(x ^ r2);
        energies[idx] = -j1 * nn + j2 * nnn;
    }
    return energies;
}

std::vector<double> energy_table(const IsingModel& model) {
    const int n = model.n();
    check_enumerable(n);
    const std::size_t count = std::size_t{1} << n;
    std::vector<double> energies(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const SpinConfiguration c(static_cast<std::uint32_t>(idx), n);
        energies[idx] = energy(model, c);
    }
    return energies;
}

GibbsDistribution boltzmann_from_energies(int n, const std::vector<double>& energies,
                                          double beta) {
    check_enumerable(n);
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("boltzmann: beta must be finite and >= 0");
    if (energies.size() != (std::size_t{1} << n))
        throw std::invalid_argument("boltzmann: energy table size mismatch");

    // Shift by the ground energy before exponentiating; weights stay in
    // (0, 1] for arbitrarily large beta.
    const double e_min = *std::min_element(energies.begin(), energies.end());
    GibbsDistribution dist;
    dist.n = n;
    dist.beta = beta;
    dist.probs.resize(energies.size());
    CompensatedAccumulator z;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        dist.probs[i] = std::exp(-beta * (energies[i] - e_min));
        z.add(dist.probs[i]);
    }
    const double norm = z.value();
    for (double& p : dist.probs) p /= norm;
    return dist;
}

GibbsDistribution boltzmann(const AnnniModel& model, double beta) {
    return boltzmann_from_energies(model.n(), energy_table(model), beta);
}

GibbsDistribution boltzmann(const IsingModel& model, double beta) {
    return boltzmann_from_energies(model.n(), energy_table(model), beta);
}

Spectrum spectrum_from_energies(const std::vector<double>& energies) {
    std::map<std::int64_t, std::uint64_t> buckets;
    for (double e : energies) ++buckets[energy_level_key(e)];
    Spectrum spec;
    spec.levels.reserve(buckets.size());
    for (const auto& [key, degeneracy] : buckets)
        spec.levels.push_back({static_cast<double>(key) * kEnergyQuantum, degeneracy});
    return spec;
}

Spectrum spectrum(const AnnniModel& model) {
    return spectrum_from_energies(energy_table(model));
}

Spectrum spectrum(const IsingModel& model) {
    return spectrum_from_energies(energy_table(model));
}

namespace {

std::vector<SpinConfiguration> ground_states_impl(int n, const std::vector<double>& energies) {
    const std::int64_t min_key =
        energy_level_key(*std::min_element(energies.begin(), energies.end()));
    std::vector<SpinConfiguration> states;
    for (std::size_t idx = 0; idx < energies.size(); ++idx)
        if (energy_level_key(energies[idx]) == min_key)
            states.emplace_back(static_cast<std::uint32_t>(idx), n);
    return states;
}

EmpiricalDistribution sample_exact_impl(int n, const std::vector<double>& energies, double beta,
                                        std::uint64_t m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("sample_exact: m must be >= 1");
    const GibbsDistribution dist = boltzmann_from_energies(n, energies, beta);
    std::vector<double> cdf(dist.probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        acc += dist.probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(mix_seed(seed, 0));
    EmpiricalDistribution samples(n);
    for (std::uint64_t k = 0; k < m; ++k) {
        const double u = canonical_double(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        samples.add(static_cast<std::uint32_t>(it - cdf.begin()));
    }
    return samples;
}

}  // namespace

std::vector<SpinConfiguration> ground_states(const AnnniModel& model) {
    return ground_states_impl(model.n(), energy_table(model));
}

std::vector<SpinConfiguration> ground_states(const IsingModel& model) {
    return ground_states_impl(model.n(), energy_table(model));
}

EmpiricalDistribution sample_exact(const AnnniModel& model, double beta, std::uint64_t m,
                                   std::uint64_t seed) {
    return sample_exact_impl(model.n(), energy_table(model), beta, m, seed);
}

EmpiricalDistribution sample_exact(const IsingModel& model, double beta, std::uint64_t m,
                                   std::uint64_t seed) {
    return sample_exact_impl(model.n(), energy_table(model), beta, m, seed);
}

}  // namespace annni
