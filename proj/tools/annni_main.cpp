// Command-line front end: exact oracle dumps, reference samplers, effective
// inverse-temperature fits, native-embedding search, and full sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "annni/embed.hpp"
#include "annni/fit.hpp"
#include "annni/gibbs.hpp"
#include "annni/graph.hpp"
#include "annni/sample_io.hpp"
#include "annni/samplers.hpp"
#include "annni/sweep.hpp"

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frustrated J1-J2 ring toolkit: exact Gibbs oracle, reference samplers, "
                 "effective-temperature fitting, native embeddings, parameter sweeps"};
    app.require_subcommand(1);

    int n = 12;
    double j1 = 1.0, j2 = 0.0;
    auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "spin count")->capture_default_str();
        cmd->add_option("--j1", j1, "nearest-neighbor coupling")->capture_default_str();
        cmd->add_option("--j2", j2, "next-nearest-neighbor coupling (frustration)")
            ->capture_default_str();
    };

    // oracle: dump the exact distribution or the energy spectrum as CSV
    auto* oracle = app.add_subcommand("oracle", "exact Boltzmann distribution / spectrum");
    add_model_flags(oracle);
    double oracle_beta = 1.0;
    bool dump_spectrum = false;
    std::string oracle_out;
    oracle->add_option("--beta", oracle_beta, "inverse temperature")->capture_default_str();
    oracle->add_flag("--spectrum", dump_spectrum, "dump energy levels instead of probabilities");
    oracle->add_option("--out", oracle_out, "output file (default stdout)");

    // sample: write the samples text format
    auto* sample = app.add_subcommand("sample", "draw samples and write the text format");
    add_model_flags(sample);
    std::string sample_kind = "exact-gibbs";
    double sample_beta = 1.0, sample_scale = 1.0, sample_flip_p = 0.1;
    std::uint64_t sample_sweeps = 1000, sample_m = 1000, sample_seed = 0;
    std::string sample_out = "samples.txt";
    sample->add_option("--kind", sample_kind, "exact-gibbs | metropolis | noisy-gibbs")
        ->capture_default_str();
    sample->add_option("--beta", sample_beta, "target / simulation beta")->capture_default_str();
    sample->add_option("--scale", sample_scale, "energy-scale factor applied to the model")
        ->capture_default_str();
    sample->add_option("--sweeps", sample_sweeps, "Metropolis sweeps per chain")
        ->capture_default_str();
    sample->add_option("--flip-p", sample_flip_p, "readout flip probability (noisy-gibbs)")
        ->capture_default_str();
    sample->add_option("--m", sample_m, "number of samples")->capture_default_str();
    sample->add_option("--seed", sample_seed, "RNG seed")->capture_default_str();
    sample->add_option("--out", sample_out, "output path")->capture_default_str();

    // fit: effective inverse temperature of a sample file
    auto* fit = app.add_subcommand("fit", "fit beta to a sample file");
    add_model_flags(fit);
    std::string fit_samples, fit_out;
    fit->add_option("--samples", fit_samples, "samples text file")->required();
    fit->add_option("--out", fit_out, "output file (default stdout)");

    // embed: disjoint native embeddings into a host edge list
    auto* embed = app.add_subcommand("embed", "find disjoint native embeddings");
    int embed_n = 12;
    std::string embed_host, embed_out;
    std::uint64_t embed_budget = annni::kAutoBudget;
    std::size_t embed_max = 0;
    embed->add_option("--n", embed_n, "ring size (pattern C_n(1,2))")->capture_default_str();
    embed->add_option("--host", embed_host, "host edge-list file")->required();
    embed->add_option("--out", embed_out, "embeddings JSON output");
    embed->add_option("--budget", embed_budget,
                      "node-expansion budget per search (0 = automatic)");
    embed->add_option("--max", embed_max, "stop after this many embeddings (0 = no limit)");

    // sweep: full (j2 x scale x parameter) grid
    auto* sweep = app.add_subcommand("sweep", "run a sweep from a JSON config");
    std::string sweep_config, sweep_dir = ".";
    unsigned sweep_workers = 0;
    bool sweep_svg = false;
    bool sweep_seed_set = false;
    std::uint64_t sweep_seed = 0;
    sweep->add_option("--config", sweep_config, "sweep config JSON")->required();
    sweep->add_option("--out", sweep_dir, "output directory")->capture_default_str();
    sweep->add_option("--workers", sweep_workers, "worker threads (0 = hardware)");
    sweep->add_option("--seed", sweep_seed, "override the config seed")
        ->each([&](const std::string&) { sweep_seed_set = true; });
    sweep->add_flag("--svg", sweep_svg, "also write scatter SVGs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*oracle) {
            const annni::AnnniModel model(n, j1, j2);
            std::ofstream file;
            std::ostream& out = open_output(file, oracle_out);
            if (dump_spectrum) {
                out << "energy,degeneracy\n";
                for (const auto& level : annni::spectrum(model).levels)
                    out << fmt(level.energy) << ',' << level.degeneracy << "\n";
            } else {
                out << "index,probability\n";
                const auto dist = annni::boltzmann(model, oracle_beta);
                for (std::size_t i = 0; i < dist.probs.size(); ++i)
                    out << i << ',' << fmt(dist.probs[i]) << "\n";
            }
        } else if (*sample) {
            const annni::AnnniModel model(n, j1, j2);
            annni::SamplerSpec spec;
            spec.kind = annni::sampler_kind_from_string(sample_kind);
            spec.beta_sim = sample_beta;
            spec.sweeps = sample_sweeps;
            spec.flip_p = sample_flip_p;
            spec.seed = sample_seed;
            const annni::IsingModel target =
                annni::scale(annni::to_ising(model), sample_scale);
            const auto samples = annni::draw_samples(spec, target, sample_m);
            annni::write_samples(sample_out, samples);
            std::cout << "wrote " << samples.total() << " samples to " << sample_out << "\n";
        } else if (*fit) {
            const annni::AnnniModel model(n, j1, j2);
            const auto samples = annni::ingest_samples(fit_samples, n);
            const annni::FitResult result = annni::fit_sweep_cell(samples, model);
            std::ofstream file;
            std::ostream& out = open_output(file, fit_out);
            out << fmt(result.tvd_min) << ',' << fmt(result.beta_best) << ','
                << fmt(result.beta_lo) << ',' << fmt(result.beta_hi) << ','
                << (result.wide_range ? 1 : 0) << ',' << samples.total() << "\n";
        } else if (*embed) {
            const annni::PatternGraph pattern = annni::circulant(embed_n);
            const annni::HostGraph host = annni::HostGraph::load(embed_host);
            std::vector<annni::Embedding> found;
            std::set<int> used;
            annni::EmbedStatus last = annni::EmbedStatus::none;
            for (;;) {
                if (embed_max != 0 && found.size() >= embed_max) break;
                auto r = annni::find_embedding(pattern, host, used, embed_budget);
                last = r.status;
                if (r.status != annni::EmbedStatus::found) break;
                for (int id : r.embedding->map) used.insert(id);
                found.push_back(std::move(*r.embedding));
                std::cerr << "embedding " << found.size() << " found (" << r.expansions
                          << " expansions)\n";
            }
            std::cout << "disjoint embeddings: " << found.size() << "\n";
            if (last == annni::EmbedStatus::budget_exhausted)
                std::cout << "search budget exhausted; more embeddings may exist\n";
            if (!embed_out.empty()) annni::save_embeddings(embed_out, embed_n, found);
        } else if (*sweep) {
            annni::SweepConfig config = annni::load_sweep_config(sweep_config);
            if (sweep_seed_set) config.seed = sweep_seed;
            const auto results = annni::run_sweep(config, sweep_workers);
            annni::OutputPaths paths;
            paths.results_csv = sweep_dir + "/results.csv";
            paths.min_csv = sweep_dir + "/min_tvd.csv";
            if (sweep_svg) paths.svg_directory = sweep_dir + "/plots";
            annni::emit_outputs(results, paths);
            std::size_t failed = 0;
            for (const auto& cell : results)
                if (!cell.ok) {
                    ++failed;
                    std::cerr << "cell (j2=" << cell.j2 << ", scale=" << cell.scale
                              << ", param=" << cell.param << ") failed: " << cell.error << "\n";
                }
            std::cout << results.size() << " cells, " << failed << " failed; wrote "
                      << paths.results_csv << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
