#pragma once

#include <cstdint>
#include <string>

#include "annni/empirical.hpp"
#include "annni/model.hpp"

namespace annni {

// Single-spin-flip Metropolis with one independent chain per recorded
// sample. Each chain starts from a uniformly random configuration, runs
// `sweeps` sweeps of n proposals with acceptance min(1, exp(-beta*dE)),
// and records its final state. Chain k derives its stream from
// (seed, k), so results are identical whether chains run serially or in
// parallel. threads = 0 picks hardware concurrency.
EmpiricalDistribution metropolis_sample(const IsingModel& model, double beta_sim,
                                        std::uint64_t sweeps, std::uint64_t m,
                                        std::uint64_t seed, unsigned threads = 0);
EmpiricalDistribution metropolis_sample(const AnnniModel& model, double beta_sim,
                                        std::uint64_t sweeps, std::uint64_t m,
                                        std::uint64_t seed, unsigned threads = 0);

// Readout-error emulation: every spin of every recorded sample is flipped
// independently with probability p, p in [0, 0.5].
EmpiricalDistribution apply_flip_noise(const EmpiricalDistribution& dist, double p,
                                       std::uint64_t seed);

// Uniform description of a sample source for one cell of a sweep.
struct SamplerSpec {
    enum class Kind { exact_gibbs, metropolis, noisy_wrapper, file };

    Kind kind = Kind::exact_gibbs;
    double beta_sim = 1.0;       // exact_gibbs, metropolis, noisy_wrapper
    std::uint64_t sweeps = 0;    // metropolis
    double flip_p = 0.0;         // noisy_wrapper
    std::string path;            // file
    std::uint64_t seed = 0;

    void validate() const;
};

// Draws m samples of the given model according to the spec. For Kind::file
// the samples are read from spec.path and m is ignored.
EmpiricalDistribution draw_samples(const SamplerSpec& spec, const IsingModel& model,
                                   std::uint64_t m, unsigned threads = 0);

std::string to_string(SamplerSpec::Kind kind);
SamplerSpec::Kind sampler_kind_from_string(const std::string& name);

}  // namespace annni
