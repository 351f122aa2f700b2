#include "annni/samplers.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "annni/gibbs.hpp"
#include "annni/numeric.hpp"
#include "annni/sample_io.hpp"

namespace annni {

namespace {

// Flat per-site neighbor table so the inner loop touches contiguous memory.
struct SiteTable {
    int n = 0;
    std::vector<double> field;
    std::vector<std::pair<int, double>> neighbors;  // flattened (site, J) lists
    std::vector<int> offset;                        // per-site slice into neighbors

    explicit SiteTable(const IsingModel& model) : n(model.n()), field(model.n(), 0.0) {
        for (const auto& [site, h] : model.fields()) field[site] += h;
        std::vector<std::vector<std::pair<int, double>>> adj(n);
        for (const auto& [pair, j] : model.couplings()) {
            adj[pair.first].push_back({pair.second, j});
            adj[pair.second].push_back({pair.first, j});
        }
        offset.resize(n + 1, 0);
        for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + static_cast<int>(adj[i].size());
        neighbors.reserve(offset[n]);
        for (int i = 0; i < n; ++i)
            neighbors.insert(neighbors.end(), adj[i].begin(), adj[i].end());
    }

    // dE for flipping spin `site` in state s: -2 s_i (h_i + sum_j J_ij s_j)
    double flip_delta(const std::vector<int>& s, int site) const {
        double local = field[site];
        for (int k = offset[site]; k < offset[site + 1]; ++k)
            local += neighbors[k].second * s[neighbors[k].first];
        return -2.0 * s[site] * local;
    }
};

std::uint32_t run_chain(const SiteTable& table, double beta, std::uint64_t sweeps,
                        std::mt19937_64& rng) {
    const int n = table.n;
    std::vector<int> s(n);
    const std::uint64_t init = rng();
    for (int i = 0; i < n; ++i) s[i] = ((init >> i) & 1u) ? 1 : -1;
    for (std::uint64_t sweep = 0; sweep < sweeps; ++sweep) {
        for (int step = 0; step < n; ++step) {
            const int site = static_cast<int>(uniform_index(rng, static_cast<std::uint32_t>(n)));
            const double de = table.flip_delta(s, site);
            if (de <= 0.0 || canonical_double(rng) < std::exp(-beta * de))
                s[site] = -s[site];
        }
    }
    std::uint32_t index = 0;
    for (int i = 0; i < n; ++i)
        if (s[i] > 0) index |= std::uint32_t{1} << i;
    return index;
}

}  // namespace

EmpiricalDistribution metropolis_sample(const IsingModel& model, double beta_sim,
                                        std::uint64_t sweeps, std::uint64_t m,
                                        std::uint64_t seed, unsigned threads) {
    if (m < 1) throw std::invalid_argument("metropolis_sample: m must be >= 1");
    if (!(beta_sim >= 0.0) || !std::isfinite(beta_sim))
        throw std::invalid_argument("metropolis_sample: beta_sim must be finite and >= 0");
    const SiteTable table(model);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, m));

    std::vector<EmpiricalDistribution> partial(threads, EmpiricalDistribution(model.n()));
    auto worker = [&](unsigned t) {
        for (std::uint64_t chain = t; chain < m; chain += threads) {
            std::mt19937_64 rng(mix_seed(seed, chain));
            partial[t].add(run_chain(table, beta_sim, sweeps, rng));
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    EmpiricalDistribution result(model.n());
    for (const auto& part : partial) result.merge(part);
    return result;
}

EmpiricalDistribution metropolis_sample(const AnnniModel& model, double beta_sim,
                                        std::uint64_t sweeps, std::uint64_t m,
                                        std::uint64_t seed, unsigned threads) {
    return metropolis_sample(to_ising(model), beta_sim, sweeps, m, seed, threads);
}

EmpiricalDistribution apply_flip_noise(const EmpiricalDistribution& dist, double p,
                                       std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 0.5))
        throw std::invalid_argument("apply_flip_noise: p must be in [0, 0.5]");
    if (p == 0.0) return dist;
    const int n = dist.n();
    EmpiricalDistribution noisy(n);
    std::mt19937_64 rng(mix_seed(seed, 0x666c6970ULL));
    for (const auto& [index, count] : dist.counts()) {
        for (std::uint64_t k = 0; k < count; ++k) {
            std::uint32_t flipped = index;
            for (int i = 0; i < n; ++i)
                if (canonical_double(rng) < p) flipped ^= std::uint32_t{1} << i;
            noisy.add(flipped);
        }
    }
    return noisy;
}

void SamplerSpec::validate() const {
    if (!(beta_sim >= 0.0) || !std::isfinite(beta_sim))
        throw std::invalid_argument("SamplerSpec: beta_sim must be finite and >= 0");
    if (!(flip_p >= 0.0 && flip_p <= 0.5))
        throw std::invalid_argument("SamplerSpec: flip probability must be in [0, 0.5]");
    if (kind == Kind::file && path.empty())
        throw std::invalid_argument("SamplerSpec: file sampler needs a path");
}

EmpiricalDistribution draw_samples(const SamplerSpec& spec, const IsingModel& model,
                                   std::uint64_t m, unsigned threads) {
    spec.validate();
    switch (spec.kind) {
        case SamplerSpec::Kind::exact_gibbs:
            return sample_exact(model, spec.beta_sim, m, spec.seed);
        case SamplerSpec::Kind::metropolis:
            return metropolis_sample(model, spec.beta_sim, spec.sweeps, m, spec.seed, threads);
        case SamplerSpec::Kind::noisy_wrapper:
            return apply_flip_noise(sample_exact(model, spec.beta_sim, m, spec.seed),
                                    spec.flip_p, mix_seed(spec.seed, 1));
        case SamplerSpec::Kind::file:
            return ingest_samples(spec.path, model.n());
    }
    throw std::logic_error("draw_samples: unknown sampler kind");
}

std::string to_string(SamplerSpec::Kind kind) {
    switch (kind) {
        case SamplerSpec::Kind::exact_gibbs: return "exact-gibbs";
        case SamplerSpec::Kind::metropolis: return "metropolis";
        case SamplerSpec::Kind::noisy_wrapper: return "noisy-gibbs";
        case SamplerSpec::Kind::file: return "file";
    }
    return "unknown";
}

SamplerSpec::Kind sampler_kind_from_string(const std::string& name) {
    if (name == "exact-gibbs") return SamplerSpec::Kind::exact_gibbs;
    if (name == "metropolis") return SamplerSpec::Kind::metropolis;
    if (name == "noisy-gibbs") return SamplerSpec::Kind::noisy_wrapper;
    if (name == "file") return SamplerSpec::Kind::file;
    throw std::invalid_argument("unknown sampler kind: " + name);
}

}  // namespace annni
