#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "annni/fit.hpp"
#include "annni/samplers.hpp"

namespace annni {

// One cell of a file-driven sweep: samples come from `path`, the scale and
// parameter values are bookkeeping carried into the results table.
struct FileCell {
    double j2 = 0.0;
    double scale = 1.0;
    double param = 0.0;
    std::string path;
};

// Grid description for a full (j2 x scale x sampler-parameter) sweep. The
// sampler parameter axis plays the role of the annealing-time knob: sweep
// count for Metropolis, target beta for the exact sampler, flip probability
// for the noisy wrapper. Fits are always performed against the unit-scale
// model; the scale factor only reshapes what the sampler draws from.
struct SweepConfig {
    int config_version = 1;
    int n = 12;
    double j1 = 1.0;
    std::vector<double> j2_values;
    std::vector<double> scales;
    SamplerSpec::Kind sampler_kind = SamplerSpec::Kind::metropolis;
    double beta_sim = 1.0;            // metropolis / noisy-gibbs
    std::vector<double> params;       // sampler parameter grid
    std::vector<FileCell> file_cells; // used when sampler_kind == file
    std::uint64_t jobs = 1;
    std::uint64_t samples_per_job = 1;
    std::uint64_t seed = 0;

    std::uint64_t samples_per_cell() const { return jobs * samples_per_job; }
    void validate() const;
};

SweepConfig load_sweep_config(const std::string& path);

struct CellResult {
    double j2 = 0.0;
    double scale = 1.0;
    double param = 0.0;
    std::string sampler_kind;
    std::uint64_t num_samples = 0;
    FitResult fit;
    bool ok = true;
    std::string error;

    bool operator==(const CellResult&) const = default;
};

// Runs every grid cell (sampling + fit). Cells are independent: each derives
// its sample streams from (seed, j2, scale, param, job), so neither grid
// order nor the worker count changes any value. workers = 0 picks hardware
// concurrency.
std::vector<CellResult> run_sweep(const SweepConfig& config, unsigned workers = 0);

// Per-(j2, scale) minimum TVD over the sampler-parameter axis; ties resolved
// toward the smaller parameter value.
struct MinRow {
    double j2 = 0.0;
    double scale = 1.0;
    double param = 0.0;
    FitResult fit;
};
std::vector<MinRow> reduce_min_tvd(const std::vector<CellResult>& results);

// Per-j2 global best over scale and parameter; ties resolved toward the
// smaller scale, then the smaller parameter.
std::vector<CellResult> best_overall(const std::vector<CellResult>& results);

// results CSV schema:
//   j2,scale,sampler_kind,sampler_param,num_samples,tvd_min,beta_best,beta_lo,beta_hi,wide_range
void write_results_csv(const std::string& path, const std::vector<CellResult>& results);
std::vector<CellResult> read_results_csv(const std::string& path);

// min CSV schema: j2,scale,tvd_min,beta_best,beta_lo,beta_hi
void write_min_csv(const std::string& path, const std::vector<MinRow>& rows);

// One scatter (TVD vs beta, log x) per (j2, scale), markers color-mapped by
// log(parameter). Returns the written file paths.
std::vector<std::string> write_scatter_svgs(const std::string& directory,
                                            const std::vector<CellResult>& results);

struct OutputPaths {
    std::string results_csv;
    std::string min_csv;
    std::string svg_directory;  // empty = skip plots
};

// Writes the results CSV and the min-reduction CSV; SVG emission is optional
// and never blocks the CSV outputs.
void emit_outputs(const std::vector<CellResult>& results, const OutputPaths& paths);

}  // namespace annni
