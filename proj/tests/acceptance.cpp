// Acceptance suite: end-to-end checks of the oracle, the phase structure,
// the fitting protocol, the samplers, the embedding search, and the sweep
// harness. Prints one PASS/FAIL line per criterion and exits nonzero if any
// criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "annni/embed.hpp"
#include "annni/fit.hpp"
#include "annni/gibbs.hpp"
#include "annni/graph.hpp"
#include "annni/numeric.hpp"
#include "annni/samplers.hpp"
#include "annni/sweep.hpp"
#include "test_oracles.hpp"

using namespace annni;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> details;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void note(const std::string& line) { details.push_back("    - " + line); }

void conclude(int criterion, const std::string& title, bool ok) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, title.c_str());
    for (const auto& line : details) std::printf("%s\n", line.c_str());
    details.clear();
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const std::vector<double> kPaperJ2 = {0.01, 0.25, 0.49, 0.5, 0.51, 0.75, 1.0};
const std::set<std::uint32_t> kAntiphase = {819, 1638, 2457, 3276};

std::uint64_t hash_double_bits(double a, double b) {
    return mix_seed(std::bit_cast<std::uint64_t>(a), std::bit_cast<std::uint64_t>(b));
}

// --- criterion 1: oracle normalization and speed -------------------------

void criterion_1() {
    bool ok = true;
    double worst_err = 0.0, worst_time = 0.0;
    for (double j2 : kPaperJ2) {
        const AnnniModel model(12, 1.0, j2);
        for (double beta : {0.0, 1.0, 10.0, 1e5}) {
            const auto start = Clock::now();
            const auto dist = boltzmann(model, beta);
            const double elapsed = seconds_since(start);
            const double err = std::abs(compensated_sum(dist.probs) - 1.0);
            worst_err = std::max(worst_err, err);
            worst_time = std::max(worst_time, elapsed);
            if (err > 1e-12 || elapsed >= 1.0) ok = false;
        }
    }
    note("max |sum - 1| = " + fmt(worst_err) + " (limit 1e-12), max time = " +
         fmt(worst_time) + " s (limit 1 s)");
    conclude(1, "exact Gibbs normalization <= 1e-12 across the frustration grid", ok);
}

// --- criterion 2: phase structure -----------------------------------------

void criterion_2() {
    bool ok = true;
    for (double j2 : {0.01, 0.25, 0.49}) {
        const auto states = ground_states(AnnniModel(12, 1.0, j2));
        std::set<std::uint32_t> indices;
        for (const auto& c : states) indices.insert(c.index());
        if (indices != std::set<std::uint32_t>{0, 4095}) {
            ok = false;
            note("J2=" + fmt(j2) + ": ground set is not {all-down, all-up}");
        }
    }
    for (double j2 : {0.51, 0.75, 1.0}) {
        const auto states = ground_states(AnnniModel(12, 1.0, j2));
        std::set<std::uint32_t> indices;
        for (const auto& c : states) indices.insert(c.index());
        if (indices != kAntiphase) {
            ok = false;
            note("J2=" + fmt(j2) + ": ground set is not the 4 antiphase rotations");
        }
    }
    const Spectrum spec = spectrum(AnnniModel(12, 1.0, 0.5));
    const auto states = ground_states(AnnniModel(12, 1.0, 0.5));
    std::set<std::uint32_t> multiphase;
    for (const auto& c : states) multiphase.insert(c.index());
    const bool energy_ok = std::abs(spec.levels.front().energy + 6.0) < 1e-9;
    const bool degeneracy_ok = spec.levels.front().degeneracy == 324;  // frozen golden value
    bool families_ok = multiphase.count(0) == 1 && multiphase.count(4095) == 1;
    for (auto idx : kAntiphase) families_ok = families_ok && multiphase.count(idx) == 1;
    note("J2=0.5: ground energy " + fmt(spec.levels.front().energy) + ", degeneracy " +
         std::to_string(spec.levels.front().degeneracy) + " (golden 324), both families " +
         (families_ok ? "present" : "MISSING"));
    ok = ok && energy_ok && degeneracy_ok && families_ok;
    conclude(2, "ground-state phase structure matches exactly", ok);
}

// --- criterion 3: beta recovery from exact samples ------------------------

void criterion_3() {
    bool ok = true;
    for (double j2 : {0.25, 1.0}) {
        const AnnniModel model(12, 1.0, j2);
        const FitContext context(model);
        for (double beta_star : {0.5, 2.0, 8.0}) {
            const auto start = Clock::now();
            const auto samples =
                sample_exact(model, beta_star, 1000000,
                             mix_seed(31415, hash_double_bits(j2, beta_star)));
            const FitResult fit = fit_beta(samples, context);
            const double elapsed = seconds_since(start);
            const bool tvd_ok = fit.tvd_min <= 0.01;
            const bool range_ok =
                beta_star >= fit.beta_lo * 0.95 && beta_star <= fit.beta_hi * 1.05;
            const bool time_ok = elapsed < 30.0;
            note("J2=" + fmt(j2) + " beta*=" + fmt(beta_star) + ": tvd_min=" +
                 fmt(fit.tvd_min) + (tvd_ok ? "" : " (>0.01)") + ", range=[" +
                 fmt(fit.beta_lo) + ", " + fmt(fit.beta_hi) + "]" +
                 (range_ok ? "" : " (misses beta*)") + ", " + fmt(elapsed) + " s");
            ok = ok && tvd_ok && range_ok && time_ok;
        }
    }
    conclude(3, "beta recovery: tvd_min <= 0.01 and beta* inside the widened tie-range", ok);
}

// --- criterion 4: protocol fidelity ---------------------------------------

EmpiricalDistribution randomized_input(int which, const AnnniModel& model,
                                       std::mt19937_64& rng) {
    const std::uint64_t m = 1000 + (which * 3571) % 9000;
    switch (which % 3) {
        case 0: {
            const double beta = std::pow(10.0, -1.5 + 0.15 * which);
            return sample_exact(model, beta, m, rng());
        }
        case 1: {
            const double beta = std::pow(10.0, -1.0 + 0.1 * which);
            const double p = 0.01 + 0.02 * (which % 10);
            return apply_flip_noise(sample_exact(model, beta, m, rng()), p, rng());
        }
        default: {
            EmpiricalDistribution dist(model.n());
            const int support = 1 + static_cast<int>(rng() % 4096);
            for (int k = 0; k < support; ++k)
                dist.add(static_cast<std::uint32_t>(rng() % 4096), 1 + rng() % 97);
            return dist;
        }
    }
}

void criterion_4() {
    bool ok = true;
    std::mt19937_64 rng(271828);
    double worst_gap = -1.0;
    for (int which = 0; which < 20; ++which) {
        const AnnniModel model(12, 1.0, kPaperJ2[which % kPaperJ2.size()]);
        const FitContext context(model);
        const auto empirical = randomized_input(which, model, rng);
        FitStats stats;
        const FitResult fit = fit_beta(empirical, context, &stats);

        const auto support = context.group(empirical);
        double reference = 2.0;
        for (int i = 0; i < 10000; ++i) {
            const double exponent = -8.0 + 13.0 * static_cast<double>(i) / 9999;
            reference = std::min(reference, context.tvd_at(support, std::pow(10.0, exponent)));
        }
        const double gap = fit.tvd_min - reference;
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-7) {
            ok = false;
            note("input " + std::to_string(which) + ": fit " + fmt(fit.tvd_min) +
                 " vs reference " + fmt(reference));
        }
        if (stats.simplex_starts != 28 || stats.quadratic_starts != 28 ||
            stats.log_grid_points != 100 || stats.linear_grid_points == 0) {
            ok = false;
            note("input " + std::to_string(which) + ": unexpected protocol structure");
        }
    }
    note("worst (fit - reference grid) gap = " + fmt(worst_gap) + " (limit 1e-7); counters: "
         "2 methods x 28 starts, 100-point log grid, guarded linear grid");
    conclude(4, "protocol minimum matches a dense reference grid on 20 randomized inputs", ok);
}

// --- criterion 5: degenerate input analytics ------------------------------

void criterion_5() {
    EmpiricalDistribution point(12);
    point.add(819, 1);
    const FitResult fit = fit_beta(point, AnnniModel(12, 1.0, 1.0));
    const bool tvd_ok = std::abs(fit.tvd_min - 0.75) <= 1e-6;
    const bool wide_ok = fit.wide_range;
    note("tvd_min=" + fmt(fit.tvd_min) + " (expect 0.75 +- 1e-6), range=[" + fmt(fit.beta_lo) +
         ", " + fmt(fit.beta_hi) + "], wide_range=" + (fit.wide_range ? "true" : "false"));
    conclude(5, "ground-state point mass fits the 0.75 plateau with a wide beta range",
             tvd_ok && wide_ok);
}

// --- criterion 6: equilibration consistency --------------------------------

void criterion_6() {
    const AnnniModel model(12, 1.0, 0.75);
    const FitContext context(model);
    bool ok = true;

    const auto start = Clock::now();
    const auto equilibrated = metropolis_sample(model, 1.0, 10000, 100000, 161803);
    const FitResult best = fit_beta(equilibrated, context);
    note("sweeps=1e4: tvd_min=" + fmt(best.tvd_min) + ", beta_best=" + fmt(best.beta_best) +
         ", sampled+fitted in " + fmt(seconds_since(start)) + " s");
    const bool beta_ok = best.beta_best >= 0.9 && best.beta_best <= 1.1;
    const bool tvd_ok = best.tvd_min <= 0.02;
    if (!beta_ok) note("fitted beta outside [0.9, 1.1]");
    if (!tvd_ok) note("tvd_min above 0.02");
    ok = beta_ok && tvd_ok;

    for (std::uint64_t sweeps : {1, 10, 100}) {
        const auto samples = metropolis_sample(model, 1.0, sweeps, 100000, 161803);
        const FitResult fit = fit_beta(samples, context);
        note("sweeps=" + std::to_string(sweeps) + ": tvd_min=" + fmt(fit.tvd_min));
        if (fit.tvd_min <= best.tvd_min) {
            ok = false;
            note("short-sweep TVD is not higher than the equilibrated TVD");
        }
    }
    conclude(6, "Metropolis equilibration: fitted beta in [0.9, 1.1], tvd_min <= 0.02, "
                "short anneals worse", ok);
}

// --- criterion 7: scale / beta identity ------------------------------------

void criterion_7() {
    bool ok = true;
    const AnnniModel unit(12, 1.0, 0.75);
    const FitContext context(unit);
    for (double s : {0.25, 0.5}) {
        const IsingModel scaled = scale(to_ising(unit), s);
        const auto dist = boltzmann(scaled, 2.0);
        const FitResult fit = fit_beta_dense(dist.probs, context);
        const double expected = s * 2.0;
        const double err = std::abs(fit.beta_best - expected);
        note("scale=" + fmt(s) + ": fitted beta=" + fmt(fit.beta_best) + " (expect " +
             fmt(expected) + ", err " + fmt(err) + ")");
        if (err > 1e-3) ok = false;
    }
    conclude(7, "exact Gibbs of scale*H at beta=2 fits to scale*2 within 1e-3", ok);
}

// --- criterion 8: embedding validity ----------------------------------------

void criterion_8() {
    bool ok = true;
    const PatternGraph pattern12 = circulant(12);

    {
        std::vector<std::pair<int, int>> edges;
        for (int c = 0; c < 3; ++c)
            for (const auto& [u, v] : pattern12.edges)
                edges.push_back({u + c * 12, v + c * 12});
        const HostGraph host({}, std::move(edges));
        const auto embeddings = find_disjoint_embeddings(pattern12, host);
        note("3 disjoint copies: found " + std::to_string(embeddings.size()) + " embeddings");
        if (embeddings.size() != 3) ok = false;
        std::set<int> seen;
        for (const auto& e : embeddings) {
            if (!is_valid_embedding(pattern12, host, e)) ok = false;
            for (int id : e.map)
                if (!seen.insert(id).second) ok = false;
        }
    }
    {
        std::vector<std::pair<int, int>> edges(pattern12.edges.begin(),
                                               pattern12.edges.end() - 1);
        std::vector<int> ids(12);
        for (int i = 0; i < 12; ++i) ids[i] = i;
        const HostGraph host(ids, std::move(edges));
        const auto result = find_embedding(pattern12, host);
        note(std::string("ring minus one edge: ") +
             (result.status == EmbedStatus::none ? "none (proven)" : "unexpected outcome"));
        if (result.status != EmbedStatus::none) ok = false;
    }
    {
        const PatternGraph pattern8 = circulant(8);
        std::mt19937_64 rng(987654321);
        int agree = 0;
        for (int round = 0; round < 100; ++round) {
            const int nodes = 16 + static_cast<int>(rng() % 49);
            const double p = 0.06 + 0.10 * static_cast<double>(rng() % 100) / 100.0;
            const bool plant = (round % 2) == 0;
            const HostGraph host =
                oracles::random_host(rng, nodes, p, plant ? &pattern8 : nullptr);
            const auto result = find_embedding(pattern8, host);
            oracles::NaiveIsoSearch naive(pattern8, host);
            const bool naive_found = naive.exists();
            if ((result.status == EmbedStatus::found) != naive_found) {
                ok = false;
                note("random host " + std::to_string(round) + ": solver disagrees with oracle");
                continue;
            }
            if (result.status == EmbedStatus::found &&
                !is_valid_embedding(pattern8, host, *result.embedding)) {
                ok = false;
                note("random host " + std::to_string(round) + ": invalid embedding returned");
                continue;
            }
            const auto disjoint = find_disjoint_embeddings(pattern8, host);
            std::set<int> seen;
            for (const auto& e : disjoint) {
                if (!is_valid_embedding(pattern8, host, e)) ok = false;
                for (int id : e.map)
                    if (!seen.insert(id).second) ok = false;
            }
            ++agree;
        }
        note("100 random hosts: " + std::to_string(agree) +
             " agree with the naive oracle, all embeddings valid and disjoint");
    }
    note("hardware-graph fixture files not present in this checkout; the published "
         "337 / 204 disjoint-embedding counts are informational targets only");
    conclude(8, "embedding search: counts, completeness, validity, disjointness", ok);
}

// --- criterion 9: end-to-end sweep -----------------------------------------

void criterion_9() {
    namespace fs = std::filesystem;
    bool ok = true;
    const auto start = Clock::now();

    SweepConfig config;
    config.n = 12;
    config.j1 = 1.0;
    config.j2_values = kPaperJ2;
    config.scales = {0.05, 0.1, 0.25, 0.5, 1.0};
    config.sampler_kind = SamplerSpec::Kind::metropolis;
    config.beta_sim = 1.0;
    config.params = {1, 3, 10, 30, 100, 300};
    config.jobs = 4;
    config.samples_per_job = 250;
    config.seed = 20250811;

    const auto results = run_sweep(config);
    const double elapsed = seconds_since(start);
    note("7 x 5 x 6 sweep: " + std::to_string(results.size()) + " cells in " + fmt(elapsed) +
         " s (limit 600 s)");
    if (results.size() != 210) ok = false;
    if (elapsed >= 600.0) ok = false;
    for (const auto& cell : results)
        if (!cell.ok) {
            ok = false;
            note("cell failed: " + cell.error);
        }

    // determinism: re-run a permuted 2-cell slice and compare values
    SweepConfig slice = config;
    slice.j2_values = {1.0, 0.5};
    slice.scales = {0.25};
    slice.params = {30, 3};
    const auto rerun = run_sweep(slice);
    for (const auto& cell : rerun) {
        const auto match = std::find_if(results.begin(), results.end(), [&](const auto& c) {
            return c.j2 == cell.j2 && c.scale == cell.scale && c.param == cell.param;
        });
        if (match == results.end() || !(*match == cell)) {
            ok = false;
            note("determinism: re-run cell differs");
        }
    }

    const auto dir = fs::temp_directory_path() /
                     ("annni_acceptance_" +
                      std::to_string(Clock::now().time_since_epoch().count()));
    fs::create_directories(dir);
    OutputPaths paths;
    paths.results_csv = (dir / "results.csv").string();
    paths.min_csv = (dir / "min_tvd.csv").string();
    paths.svg_directory = (dir / "plots").string();
    emit_outputs(results, paths);

    const auto parsed = read_results_csv(paths.results_csv);
    if (parsed.size() != results.size()) {
        ok = false;
        note("results CSV does not round-trip row count");
    } else {
        for (std::size_t i = 0; i < results.size(); ++i)
            if (!(parsed[i] == results[i])) {
                ok = false;
                note("results CSV row " + std::to_string(i) + " does not round-trip");
                break;
            }
    }

    // reduction equals a brute-force minimum over the emitted rows
    const auto rows = reduce_min_tvd(results);
    if (rows.size() != 35) {
        ok = false;
        note("expected 35 (j2, scale) reduction rows, got " + std::to_string(rows.size()));
    }
    for (const auto& row : rows) {
        double best = 2.0;
        double best_param = 0.0;
        for (const auto& cell : results) {
            if (cell.j2 != row.j2 || cell.scale != row.scale) continue;
            if (cell.fit.tvd_min < best ||
                (cell.fit.tvd_min == best && cell.param < best_param)) {
                best = cell.fit.tvd_min;
                best_param = cell.param;
            }
        }
        if (row.fit.tvd_min != best || row.param != best_param) {
            ok = false;
            note("reduction mismatch at j2=" + fmt(row.j2) + " scale=" + fmt(row.scale));
        }
    }
    const std::size_t svg_count =
        std::distance(fs::directory_iterator(paths.svg_directory), fs::directory_iterator{});
    if (svg_count != 35) {
        ok = false;
        note("expected 35 scatter SVGs, got " + std::to_string(svg_count));
    }
    fs::remove_all(dir);
    conclude(9, "deterministic end-to-end sweep with schema-valid outputs and exact reductions",
             ok);
}

}  // namespace

int main() {
    std::printf("acceptance suite: 12-spin frustrated-ring sampling toolkit\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
