#include "annni/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "annni/numeric.hpp"
#include "annni/sample_io.hpp"

namespace annni {

namespace {

std::uint64_t hash_double(double v) {
    return splitmix64(std::bit_cast<std::uint64_t>(v));
}

// Seed streams depend on cell values, not grid position, so permuting the
// config lists cannot change any cell's samples.
std::uint64_t cell_seed(std::uint64_t seed, double j2, double scale, double param) {
    std::uint64_t s = splitmix64(seed);
    s = mix_seed(s, hash_double(j2));
    s = mix_seed(s, hash_double(scale));
    s = mix_seed(s, hash_double(param));
    return s;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

constexpr const char* kResultsHeader =
    "j2,scale,sampler_kind,sampler_param,num_samples,tvd_min,beta_best,beta_lo,beta_hi,"
    "wide_range";

}  // namespace

void SweepConfig::validate() const {
    if (config_version != 1)
        throw std::invalid_argument("SweepConfig: unsupported config_version");
    if (n < 4 || n > kMaxSpins) throw std::invalid_argument("SweepConfig: n out of range");
    if (!(j1 > 0.0)) throw std::invalid_argument("SweepConfig: j1 must be > 0");
    if (jobs < 1 || samples_per_job < 1)
        throw std::invalid_argument("SweepConfig: jobs and samples_per_job must be >= 1");
    if (sampler_kind == SamplerSpec::Kind::file) {
        if (file_cells.empty())
            throw std::invalid_argument("SweepConfig: file sweep needs at least one cell");
        for (const auto& cell : file_cells) {
            if (cell.path.empty()) throw std::invalid_argument("SweepConfig: empty file path");
            if (!(cell.j2 >= 0.0)) throw std::invalid_argument("SweepConfig: j2 must be >= 0");
        }
        return;
    }
    if (j2_values.empty()) throw std::invalid_argument("SweepConfig: empty j2 grid");
    if (scales.empty()) throw std::invalid_argument("SweepConfig: empty scale grid");
    if (params.empty()) throw std::invalid_argument("SweepConfig: empty sampler grid");
    for (double j2 : j2_values)
        if (!(j2 >= 0.0)) throw std::invalid_argument("SweepConfig: j2 must be >= 0");
    for (double s : scales)
        if (!(s > 0.0 && s <= 1.0))
            throw std::invalid_argument("SweepConfig: scales must be in (0, 1]");
    for (double p : params) {
        switch (sampler_kind) {
            case SamplerSpec::Kind::exact_gibbs:
                if (!(p >= 0.0)) throw std::invalid_argument("SweepConfig: beta must be >= 0");
                break;
            case SamplerSpec::Kind::metropolis:
                if (!(p >= 0.0) || p != std::floor(p))
                    throw std::invalid_argument(
                        "SweepConfig: sweep counts must be non-negative integers");
                break;
            case SamplerSpec::Kind::noisy_wrapper:
                if (!(p >= 0.0 && p <= 0.5))
                    throw std::invalid_argument(
                        "SweepConfig: flip probabilities must be in [0, 0.5]");
                break;
            default:
                break;
        }
    }
    if (!(beta_sim >= 0.0)) throw std::invalid_argument("SweepConfig: beta_sim must be >= 0");
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_sweep_config: cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_sweep_config: " + path + ": " + e.what());
    }
    SweepConfig config;
    config.config_version = doc.at("config_version").get<int>();
    const auto& model = doc.at("model");
    config.n = model.at("n").get<int>();
    config.j1 = model.value("j1", 1.0);
    if (model.contains("j2")) config.j2_values = model.at("j2").get<std::vector<double>>();
    config.scales = doc.value("scales", std::vector<double>{1.0});
    const auto& sampler = doc.at("sampler");
    config.sampler_kind = sampler_kind_from_string(sampler.at("kind").get<std::string>());
    config.beta_sim = sampler.value("beta_sim", 1.0);
    if (sampler.contains("params"))
        config.params = sampler.at("params").get<std::vector<double>>();
    if (doc.contains("files")) {
        for (const auto& entry : doc.at("files")) {
            FileCell cell;
            cell.j2 = entry.at("j2").get<double>();
            cell.scale = entry.value("scale", 1.0);
            cell.param = entry.value("param", 0.0);
            cell.path = entry.at("path").get<std::string>();
            config.file_cells.push_back(std::move(cell));
        }
    }
    config.jobs = doc.value("jobs", std::uint64_t{1});
    config.samples_per_job = doc.value("samples_per_job", std::uint64_t{1});
    if (doc.contains("samples_per_cell")) {
        const auto stated = doc.at("samples_per_cell").get<std::uint64_t>();
        if (stated != config.jobs * config.samples_per_job)
            throw std::runtime_error(
                "load_sweep_config: samples_per_cell must equal jobs * samples_per_job");
    }
    config.seed = doc.value("seed", std::uint64_t{0});
    config.validate();
    return config;
}

namespace {

struct CellTask {
    double j2, scale, param;
    std::string path;  // file kind only
};

CellResult run_cell(const SweepConfig& config, const CellTask& task,
                    const FitContext& context) {
    CellResult result;
    result.j2 = task.j2;
    result.scale = task.scale;
    result.param = task.param;
    result.sampler_kind = to_string(config.sampler_kind);
    try {
        EmpiricalDistribution samples(config.n);
        if (config.sampler_kind == SamplerSpec::Kind::file) {
            samples = ingest_samples(task.path, config.n);
        } else {
            const AnnniModel unit_model(config.n, config.j1, task.j2);
            const IsingModel target = scale(to_ising(unit_model), task.scale);
            const std::uint64_t base = cell_seed(config.seed, task.j2, task.scale, task.param);
            for (std::uint64_t job = 0; job < config.jobs; ++job) {
                SamplerSpec spec;
                spec.kind = config.sampler_kind;
                spec.seed = mix_seed(base, job);
                switch (config.sampler_kind) {
                    case SamplerSpec::Kind::exact_gibbs:
                        spec.beta_sim = task.param;
                        break;
                    case SamplerSpec::Kind::metropolis:
                        spec.beta_sim = config.beta_sim;
                        spec.sweeps = static_cast<std::uint64_t>(task.param);
                        break;
                    case SamplerSpec::Kind::noisy_wrapper:
                        spec.beta_sim = config.beta_sim;
                        spec.flip_p = task.param;
                        break;
                    default:
                        break;
                }
                samples.merge(draw_samples(spec, target, config.samples_per_job, 1));
            }
        }
        result.num_samples = samples.total();
        result.fit = fit_beta(samples, context);
    } catch (const std::exception& e) {
        result.ok = false;
        result.error = e.what();
    }
    return result;
}

}  // namespace

std::vector<CellResult> run_sweep(const SweepConfig& config, unsigned workers) {
    config.validate();

    std::vector<CellTask> tasks;
    std::vector<double> distinct_j2;
    if (config.sampler_kind == SamplerSpec::Kind::file) {
        for (const auto& cell : config.file_cells) {
            tasks.push_back({cell.j2, cell.scale, cell.param, cell.path});
            distinct_j2.push_back(cell.j2);
        }
    } else {
        for (double j2 : config.j2_values)
            for (double s : config.scales)
                for (double p : config.params) tasks.push_back({j2, s, p, {}});
        distinct_j2 = config.j2_values;
    }

    // The fit always runs against the unit-scale model; one context per j2.
    std::sort(distinct_j2.begin(), distinct_j2.end());
    distinct_j2.erase(std::unique(distinct_j2.begin(), distinct_j2.end()), distinct_j2.end());
    std::map<double, FitContext> contexts;
    for (double j2 : distinct_j2)
        contexts.emplace(j2, FitContext(AnnniModel(config.n, config.j1, j2)));

    std::vector<CellResult> results(tasks.size());
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, std::max<std::size_t>(tasks.size(), 1)));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            results[i] = run_cell(config, tasks[i], contexts.at(tasks[i].j2));
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

std::vector<MinRow> reduce_min_tvd(const std::vector<CellResult>& results) {
    if (results.empty()) throw std::invalid_argument("reduce_min_tvd: empty input");
    std::vector<std::pair<double, double>> order;  // (j2, scale) first-appearance order
    std::map<std::pair<double, double>, const CellResult*> best;
    for (const auto& cell : results) {
        if (!cell.ok) continue;
        const std::pair<double, double> key{cell.j2, cell.scale};
        auto it = best.find(key);
        if (it == best.end()) {
            best[key] = &cell;
            order.push_back(key);
        } else if (cell.fit.tvd_min < it->second->fit.tvd_min ||
                   (cell.fit.tvd_min == it->second->fit.tvd_min &&
                    cell.param < it->second->param)) {
            it->second = &cell;
        }
    }
    std::vector<MinRow> rows;
    rows.reserve(order.size());
    for (const auto& key : order) {
        const CellResult* cell = best.at(key);
        rows.push_back({cell->j2, cell->scale, cell->param, cell->fit});
    }
    return rows;
}

std::vector<CellResult> best_overall(const std::vector<CellResult>& results) {
    if (results.empty()) throw std::invalid_argument("best_overall: empty input");
    std::vector<double> order;
    std::map<double, const CellResult*> best;
    for (const auto& cell : results) {
        if (!cell.ok) continue;
        auto it = best.find(cell.j2);
        if (it == best.end()) {
            best[cell.j2] = &cell;
            order.push_back(cell.j2);
        } else {
            const CellResult* cur = it->second;
            const auto candidate = std::tuple(cell.fit.tvd_min, cell.scale, cell.param);
            const auto incumbent = std::tuple(cur->fit.tvd_min, cur->scale, cur->param);
            if (candidate < incumbent) it->second = &cell;
        }
    }
    std::vector<CellResult> rows;
    rows.reserve(order.size());
    for (double j2 : order) rows.push_back(*best.at(j2));
    return rows;
}

void write_results_csv(const std::string& path, const std::vector<CellResult>& results) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_results_csv: cannot write " + path);
    out << kResultsHeader << "\n";
    for (const auto& cell : results) {
        out << format_double(cell.j2) << ',' << format_double(cell.scale) << ','
            << cell.sampler_kind << ',' << format_double(cell.param) << ',' << cell.num_samples
            << ',';
        if (cell.ok) {
            out << format_double(cell.fit.tvd_min) << ',' << format_double(cell.fit.beta_best)
                << ',' << format_double(cell.fit.beta_lo) << ','
                << format_double(cell.fit.beta_hi) << ',' << (cell.fit.wide_range ? 1 : 0);
        } else {
            out << "nan,nan,nan,nan,0";
        }
        out << "\n";
    }
}

std::vector<CellResult> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_results_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader)
        throw std::runtime_error("read_results_csv: bad header in " + path);
    std::vector<CellResult> results;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 10)
            throw std::runtime_error("read_results_csv: expected 10 columns in " + path);
        CellResult r;
        r.j2 = std::stod(cells[0]);
        r.scale = std::stod(cells[1]);
        r.sampler_kind = cells[2];
        r.param = std::stod(cells[3]);
        r.num_samples = std::stoull(cells[4]);
        r.fit.tvd_min = std::stod(cells[5]);
        r.fit.beta_best = std::stod(cells[6]);
        r.fit.beta_lo = std::stod(cells[7]);
        r.fit.beta_hi = std::stod(cells[8]);
        r.fit.wide_range = cells[9] == "1";
        r.ok = !std::isnan(r.fit.tvd_min);
        results.push_back(std::move(r));
    }
    return results;
}

void write_min_csv(const std::string& path, const std::vector<MinRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_min_csv: cannot write " + path);
    out << "j2,scale,tvd_min,beta_best,beta_lo,beta_hi\n";
    for (const auto& row : rows)
        out << format_double(row.j2) << ',' << format_double(row.scale) << ','
            << format_double(row.fit.tvd_min) << ',' << format_double(row.fit.beta_best) << ','
            << format_double(row.fit.beta_lo) << ',' << format_double(row.fit.beta_hi) << "\n";
}

namespace {

std::string color_for(double t) {
    // dark blue -> yellow ramp on t in [0,1]
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(30 + t * (253 - 30));
    const int g = static_cast<int>(40 + t * (231 - 40));
    const int b = static_cast<int>(120 + t * (37 - 120));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

std::vector<std::string> write_scatter_svgs(const std::string& directory,
                                            const std::vector<CellResult>& results) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);

    std::vector<std::pair<double, double>> order;
    std::map<std::pair<double, double>, std::vector<const CellResult*>> groups;
    for (const auto& cell : results) {
        if (!cell.ok) continue;
        const std::pair<double, double> key{cell.j2, cell.scale};
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(&cell);
    }

    const double width = 560, height = 420;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    std::vector<std::string> written;
    for (const auto& key : order) {
        const auto& cells = groups.at(key);
        double beta_lo = 1e300, beta_hi = -1e300, tvd_hi = 0.0;
        double param_lo = 1e300, param_hi = -1e300;
        for (const auto* c : cells) {
            const double b = std::max(c->fit.beta_best, 1e-8);
            beta_lo = std::min(beta_lo, b);
            beta_hi = std::max(beta_hi, b);
            tvd_hi = std::max(tvd_hi, c->fit.tvd_min);
            const double p = std::max(c->param, 1e-12);
            param_lo = std::min(param_lo, p);
            param_hi = std::max(param_hi, p);
        }
        if (beta_hi <= beta_lo) beta_hi = beta_lo * 10.0;
        if (tvd_hi <= 0.0) tvd_hi = 1.0;
        tvd_hi *= 1.05;
        const double log_lo = std::log10(beta_lo / 1.5), log_hi = std::log10(beta_hi * 1.5);
        auto x_of = [&](double beta) {
            const double lb = std::log10(std::max(beta, 1e-8));
            return ml + (lb - log_lo) / (log_hi - log_lo) * (width - ml - mr);
        };
        auto y_of = [&](double t) { return height - mb - t / tvd_hi * (height - mt - mb); };
        auto color_of = [&](double param) {
            if (param_hi <= param_lo) return color_for(0.5);
            return color_for((std::log10(std::max(param, 1e-12)) - std::log10(param_lo)) /
                             (std::log10(param_hi) - std::log10(param_lo)));
        };

        std::ostringstream svg;
        svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"14\">J2=" << key.first
            << " scale=" << key.second << "</text>\n"
            << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
            << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n"
            << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
            << height - mb << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
               "beta (log scale)</text>\n"
            << "<text x=\"16\" y=\"" << height / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
               "transform=\"rotate(-90 16 " << height / 2 << ")\">TVD</text>\n";
        for (const auto* c : cells) {
            // error bar over the fitted beta range, mirroring the wide-range rule
            if (c->fit.wide_range) {
                svg << "<line x1=\"" << x_of(std::max(c->fit.beta_lo, 1e-8)) << "\" y1=\""
                    << y_of(c->fit.tvd_min) << "\" x2=\"" << x_of(c->fit.beta_hi) << "\" y2=\""
                    << y_of(c->fit.tvd_min) << "\" stroke=\"" << color_of(c->param)
                    << "\" stroke-width=\"1\"/>\n";
            }
            svg << "<circle cx=\"" << x_of(c->fit.beta_best) << "\" cy=\""
                << y_of(c->fit.tvd_min) << "\" r=\"4\" fill=\"" << color_of(c->param)
                << "\" fill-opacity=\"0.85\"/>\n";
        }
        svg << "</svg>\n";

        std::ostringstream name;
        name << "scatter_j2=" << key.first << "_scale=" << key.second << ".svg";
        const fs::path file = fs::path(directory) / name.str();
        std::ofstream out(file);
        if (!out) throw std::runtime_error("write_scatter_svgs: cannot write " + file.string());
        out << svg.str();
        written.push_back(file.string());
    }
    return written;
}

void emit_outputs(const std::vector<CellResult>& results, const OutputPaths& paths) {
    write_results_csv(paths.results_csv, results);
    std::vector<MinRow> rows;
    if (!results.empty()) rows = reduce_min_tvd(results);
    write_min_csv(paths.min_csv, rows);
    if (!paths.svg_directory.empty()) write_scatter_svgs(paths.svg_directory, results);
}

}  // namespace annni
