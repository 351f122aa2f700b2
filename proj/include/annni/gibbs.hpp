#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "annni/empirical.hpp"
#include "annni/model.hpp"
#include "annni/spin.hpp"

namespace annni {

// Exact Boltzmann distribution p(z) = exp(-beta*H(z)) / Z over all 2^n
// configurations, k_B = 1. Probabilities are indexed by configuration index.
struct GibbsDistribution {
    int n = 0;
    double beta = 0.0;
    std::vector<double> probs;
};

// Energies are quantized to 1e-9 absolute before bucketing into levels,
// far below any level spacing for the coupling values in use.
inline constexpr double kEnergyQuantum = 1e-9;

inline std::int64_t energy_level_key(double e) {
    return static_cast<std::int64_t>(std::llround(e / kEnergyQuantum));
}

// Exhaustive energy levels.
struct SpectrumLevel {
    double energy = 0.0;
    std::uint64_t degeneracy = 0;
};

struct Spectrum {
    std::vector<SpectrumLevel> levels;  // strictly increasing energies
    std::uint64_t total() const;
};

// Energy of every configuration, indexed by configuration index.
std::vector<double> energy_table(const AnnniModel& model);
std::vector<double> energy_table(const IsingModel& model);

GibbsDistribution boltzmann(const AnnniModel& model, double beta);
GibbsDistribution boltzmann(const IsingModel& model, double beta);
// Core form used by the fitter: caller supplies the energy table.
GibbsDistribution boltzmann_from_energies(int n, const std::vector<double>& energies, double beta);

Spectrum spectrum(const AnnniModel& model);
Spectrum spectrum(const IsingModel& model);
Spectrum spectrum_from_energies(const std::vector<double>& energies);

std::vector<SpinConfiguration> ground_states(const AnnniModel& model);
std::vector<SpinConfiguration> ground_states(const IsingModel& model);

// m i.i.d. draws via inverse-CDF over the exact probability vector.
// Deterministic for a fixed seed.
EmpiricalDistribution sample_exact(const AnnniModel& model, double beta, std::uint64_t m,
                                   std::uint64_t seed);
EmpiricalDistribution sample_exact(const IsingModel& model, double beta, std::uint64_t m,
                                   std::uint64_t seed);

}  // namespace annni
