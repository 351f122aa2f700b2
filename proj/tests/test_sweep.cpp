#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>

#include "annni/sweep.hpp"

using namespace annni;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path = fs::temp_directory_path() /
               ("annni_sweep_" + std::to_string(stamp) + "_" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

SweepConfig exact_config() {
    SweepConfig config;
    config.n = 12;
    config.j1 = 1.0;
    config.j2_values = {1.0};
    config.scales = {1.0};
    config.sampler_kind = SamplerSpec::Kind::exact_gibbs;
    config.params = {2.0};
    config.jobs = 4;
    config.samples_per_job = 25000;
    config.seed = 99;
    return config;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("config validation") {
    SweepConfig config = exact_config();
    CHECK_NOTHROW(config.validate());

    config.params.clear();
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = exact_config();
    config.j2_values.clear();
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = exact_config();
    config.scales = {1.5};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = exact_config();
    config.sampler_kind = SamplerSpec::Kind::metropolis;
    config.params = {10.5};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);

    config = exact_config();
    config.sampler_kind = SamplerSpec::Kind::file;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("config files parse and round through validation") {
    TempDir dir;
    const auto path = dir.file("sweep.json");
    {
        std::ofstream out(path);
        out << R"({
  "config_version": 1,
  "model": {"n": 12, "j1": 1.0, "j2": [0.25, 1.0]},
  "scales": [0.5, 1.0],
  "sampler": {"kind": "metropolis", "beta_sim": 1.0, "params": [0, 10]},
  "jobs": 4,
  "samples_per_job": 250,
  "samples_per_cell": 1000,
  "seed": 7
})";
    }
    const SweepConfig config = load_sweep_config(path);
    CHECK(config.n == 12);
    CHECK(config.j2_values.size() == 2);
    CHECK(config.sampler_kind == SamplerSpec::Kind::metropolis);
    CHECK(config.samples_per_cell() == 1000);

    const auto bad = dir.file("bad.json");
    {
        std::ofstream out(bad);
        out << R"({"config_version": 1, "model": {"n": 12, "j2": [0.5]},
                   "sampler": {"kind": "metropolis", "params": [1]},
                   "jobs": 2, "samples_per_job": 3, "samples_per_cell": 7})";
    }
    CHECK_THROWS_AS(load_sweep_config(bad), std::runtime_error);
    CHECK_THROWS_AS(load_sweep_config(dir.file("missing.json")), std::runtime_error);
}

TEST_CASE("single exact-Gibbs cell recovers its sampling temperature") {
    const auto results = run_sweep(exact_config());
    REQUIRE(results.size() == 1);
    const CellResult& cell = results[0];
    REQUIRE(cell.ok);
    CHECK(cell.num_samples == 100000);
    CHECK(cell.fit.tvd_min <= 0.01);
    CHECK(2.0 >= cell.fit.beta_lo - 0.1);
    CHECK(2.0 <= cell.fit.beta_hi + 0.1);
}

TEST_CASE("scale acts as an effective temperature factor") {
    SweepConfig config = exact_config();
    config.j2_values = {0.25};
    config.scales = {0.5, 1.0};
    config.params = {2.0};
    config.jobs = 1;
    config.samples_per_job = 200000;
    const auto results = run_sweep(config);
    REQUIRE(results.size() == 2);
    for (const auto& cell : results) {
        REQUIRE(cell.ok);
        const double expected = cell.scale * 2.0;
        CHECK(std::abs(cell.fit.beta_best - expected) < 0.05 * expected + 0.02);
    }
}

TEST_CASE("grid order and worker count change no cell values") {
    SweepConfig config = exact_config();
    config.j2_values = {0.25, 1.0};
    config.scales = {0.5, 1.0};
    config.params = {0.5, 2.0};
    config.jobs = 1;
    config.samples_per_job = 2000;

    const auto forward = run_sweep(config, 1);
    SweepConfig permuted = config;
    std::reverse(permuted.j2_values.begin(), permuted.j2_values.end());
    std::reverse(permuted.scales.begin(), permuted.scales.end());
    std::reverse(permuted.params.begin(), permuted.params.end());
    const auto backward = run_sweep(permuted, 2);

    REQUIRE(forward.size() == backward.size());
    for (const auto& cell : forward) {
        const auto match = std::find_if(backward.begin(), backward.end(), [&](const auto& c) {
            return c.j2 == cell.j2 && c.scale == cell.scale && c.param == cell.param;
        });
        REQUIRE(match != backward.end());
        CHECK(*match == cell);
    }
}

TEST_CASE("noisy cells produce an interior minimum over the noise schedule") {
    SweepConfig config = exact_config();
    config.j2_values = {1.0};
    config.scales = {1.0};
    config.sampler_kind = SamplerSpec::Kind::noisy_wrapper;
    config.beta_sim = 2.0;
    config.params = {0.45, 0.2, 0.01, 0.25, 0.4};
    config.jobs = 1;
    config.samples_per_job = 20000;
    const auto results = run_sweep(config);
    REQUIRE(results.size() == 5);

    const auto rows = reduce_min_tvd(results);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].param == 0.01);  // the interior schedule point wins

    // matches a brute-force scan of the emitted cells
    double best = 2.0;
    for (const auto& cell : results) best = std::min(best, cell.fit.tvd_min);
    CHECK(rows[0].fit.tvd_min == best);
}

TEST_CASE("reduce_min_tvd picks minima and breaks ties toward smaller parameters") {
    CellResult a;
    a.j2 = 0.5; a.scale = 1.0; a.param = 10.0; a.fit.tvd_min = 0.3;
    CellResult b = a;
    b.param = 100.0; b.fit.tvd_min = 0.1;
    CellResult c = a;
    c.param = 3.0; c.fit.tvd_min = 0.1;

    const auto single = reduce_min_tvd({a});
    CHECK(single.size() == 1);
    CHECK(single[0].fit.tvd_min == 0.3);

    const auto rows = reduce_min_tvd({a, b, c});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].fit.tvd_min == 0.1);
    CHECK(rows[0].param == 3.0);

    CHECK_THROWS_AS(reduce_min_tvd({}), std::invalid_argument);
}

TEST_CASE("best_overall reduces hardware-style rows per frustration value") {
    auto make = [](double j2, double scale, double param, double tvd, double beta) {
        CellResult cell;
        cell.j2 = j2;
        cell.scale = scale;
        cell.param = param;
        cell.sampler_kind = "file";
        cell.fit.tvd_min = tvd;
        cell.fit.beta_best = beta;
        return cell;
    };
    // J2 = 1.0 rows shaped like a processor's (TVD, beta, AT, J) table
    const std::vector<CellResult> results = {
        make(1.0, 0.87, 26.0, 0.0003, 32.166), make(1.0, 0.5, 26.0, 0.004, 6.1),
        make(1.0, 0.87, 5.0, 0.002, 20.0),     make(0.75, 0.56, 1400.0, 0.013, 3.189),
        make(0.75, 0.97, 900.0, 0.0205, 2.753),
    };
    const auto best = best_overall(results);
    REQUIRE(best.size() == 2);
    CHECK(best[0].j2 == 1.0);
    CHECK(best[0].fit.tvd_min == 0.0003);
    CHECK(best[0].fit.beta_best == 32.166);
    CHECK(best[0].scale == 0.87);
    CHECK(best[0].param == 26.0);
    CHECK(best[1].j2 == 0.75);
    CHECK(best[1].fit.tvd_min == 0.013);

    const auto identity = best_overall({results[0]});
    REQUIRE(identity.size() == 1);
    CHECK(identity[0] == results[0]);

    // all-equal TVD: smallest scale, then smallest parameter
    const std::vector<CellResult> ties = {
        make(0.5, 1.0, 7.0, 0.2, 1.0), make(0.5, 0.5, 9.0, 0.2, 1.0),
        make(0.5, 0.5, 2.0, 0.2, 1.0),
    };
    const auto tie_best = best_overall(ties);
    REQUIRE(tie_best.size() == 1);
    CHECK(tie_best[0].scale == 0.5);
    CHECK(tie_best[0].param == 2.0);
}

TEST_CASE("results CSV round trips exactly") {
    SweepConfig config = exact_config();
    config.j2_values = {0.25, 0.75};
    config.params = {0.7, 1.3};
    config.jobs = 1;
    config.samples_per_job = 3000;
    const auto results = run_sweep(config);

    TempDir dir;
    const auto path = dir.file("results.csv");
    write_results_csv(path, results);
    const auto parsed = read_results_csv(path);
    REQUIRE(parsed.size() == results.size());
    for (std::size_t i = 0; i < results.size(); ++i) REQUIRE(parsed[i] == results[i]);
}

TEST_CASE("emit_outputs writes schema-stable files even with no results") {
    TempDir dir;
    OutputPaths paths;
    paths.results_csv = dir.file("results.csv");
    paths.min_csv = dir.file("min.csv");
    emit_outputs({}, paths);
    CHECK(read_file(paths.results_csv) ==
          "j2,scale,sampler_kind,sampler_param,num_samples,tvd_min,beta_best,beta_lo,beta_hi,"
          "wide_range\n");
    CHECK(read_file(paths.min_csv) == "j2,scale,tvd_min,beta_best,beta_lo,beta_hi\n");
}

TEST_CASE("scatter SVGs are well-formed with one marker per cell") {
    SweepConfig config = exact_config();
    config.j2_values = {1.0};
    config.scales = {1.0};
    config.params = {0.5, 1.0, 2.0};
    config.jobs = 1;
    config.samples_per_job = 2000;
    const auto results = run_sweep(config);

    TempDir dir;
    const auto written = write_scatter_svgs(dir.file("plots"), results);
    REQUIRE(written.size() == 1);
    const std::string svg = read_file(written[0]);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count_occurrences(svg, "<circle") == 3);
    CHECK(count_occurrences(svg, "</svg>") == 1);
    CHECK(svg.find("<svg ") != std::string::npos);
}

TEST_CASE("file-driven sweeps fit ingested samples") {
    TempDir dir;
    const auto sample_path = dir.file("cell.txt");
    {
        std::ofstream out(sample_path);
        for (int i = 0; i < 64; ++i) out << "1 1 -1 -1 1 1 -1 -1 1 1 -1 -1\n";
    }
    SweepConfig config;
    config.n = 12;
    config.sampler_kind = SamplerSpec::Kind::file;
    config.file_cells = {{1.0, 0.87, 26.0, sample_path}};
    const auto results = run_sweep(config);
    REQUIRE(results.size() == 1);
    REQUIRE(results[0].ok);
    CHECK(results[0].num_samples == 64);
    // a pure ground-state file pins the 0.75 plateau of the degeneracy-4 set
    CHECK(results[0].fit.tvd_min == doctest::Approx(0.75).epsilon(1e-6));

    // missing files are recorded, not fatal
    SweepConfig broken = config;
    broken.file_cells.push_back({0.5, 0.5, 1.0, dir.file("absent.txt")});
    const auto mixed = run_sweep(broken);
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0].ok);
    CHECK_FALSE(mixed[1].ok);
    CHECK(!mixed[1].error.empty());
}
