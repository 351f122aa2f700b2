#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "annni/empirical.hpp"
#include "annni/gibbs.hpp"
#include "annni/model.hpp"

namespace annni {

// Outcome of an inverse-temperature fit. All evaluated (beta, TVD) pairs are
// rounded to 7 decimal places first; [beta_lo, beta_hi] bounds the set of
// rounded beta values that achieve the rounded minimum TVD, and the range is
// flagged wide when it exceeds 0.1 (the error-bar rule for plots).
struct FitResult {
    double tvd_min = 0.0;
    double beta_best = 0.0;
    double beta_lo = 0.0;
    double beta_hi = 0.0;
    bool wide_range = false;

    bool operator==(const FitResult&) const = default;
};

// Instrumentation for the fitting protocol (start counts, grid sizes).
struct FitStats {
    int simplex_starts = 0;
    int quadratic_starts = 0;
    std::uint64_t simplex_evals = 0;
    std::uint64_t quadratic_evals = 0;
    std::uint64_t log_grid_points = 0;
    std::uint64_t linear_grid_points = 0;
    bool linear_grid_stopped_by_guard = false;
    std::uint64_t total_evals = 0;
};

// Total variation distance with the 1/2 normalization: identical
// distributions give 0, disjoint supports give 1. Inputs must have equal
// length and each sum to 1 within 1e-9.
double tvd(std::span<const double> p, std::span<const double> q);

// Precomputed enumeration state for one model: the energy spectrum plus a
// config -> level table, so each TVD evaluation against an empirical
// distribution costs O(levels + support), never a re-enumeration.
class FitContext {
  public:
    explicit FitContext(const AnnniModel& model);
    explicit FitContext(const IsingModel& model);

    int n() const { return n_; }
    double ground_energy() const { return e_min_; }

    // Support of an empirical distribution grouped by (energy level, weight);
    // identical-weight states within a level collapse to one entry.
    struct Support {
        std::vector<std::uint32_t> level;
        std::vector<double> weight;        // empirical probability of one state
        std::vector<double> multiplicity;  // number of states in the group
        bool covers_all = false;           // support is the full state space
    };

    Support group(const EmpiricalDistribution& empirical) const;
    Support group_dense(std::span<const double> probabilities) const;

    // TVD between the Boltzmann distribution at `beta` and the grouped
    // empirical weights. Optionally reports the shifted partition sum.
    double tvd_at(const Support& support, double beta, double* z_shifted = nullptr) const;

    // Partition sum without the ground-energy shift, evaluated in plain
    // double precision; overflows or underflows for large beta exactly where
    // a naive implementation would break down. Used as the stopping guard of
    // the linear gridsearch.
    double unshifted_partition_sum(double beta) const;

  private:
    void build(int n, const std::vector<double>& energies);

    int n_ = 0;
    double e_min_ = 0.0;
    std::vector<double> level_energy_;      // shifted by e_min_, ascending
    std::vector<double> level_degeneracy_;
    std::vector<std::uint32_t> level_of_;   // config index -> level
};

// TVD between boltzmann(model, beta) and the empirical probabilities.
double tvd_at_beta(const EmpiricalDistribution& empirical, const AnnniModel& model, double beta);
double tvd_at_beta(const EmpiricalDistribution& empirical, const IsingModel& model, double beta);

// The full fitting protocol:
//  (a) two derivative-free local minimizers (1-d simplex and a bounded
//      golden-section/parabolic search), each restarted at 28 values of
//      beta log-spaced from 1e5 down to 1e-8, at most 200 evaluations per
//      start, convergence tolerance 1e-10 on TVD;
//  (b) a gridsearch over 100 beta values log-spaced from 1e-3 to 1e-15;
//  (c) a linear gridsearch from 1e-4 in steps of 1e-4, ascending until the
//      unshifted partition sum stops being a positive finite double or
//      beta exceeds 1e5.
// Every evaluated (beta, TVD) pair is a candidate; values are rounded to 7
// decimals before the minimum and its tie-set are extracted.
FitResult fit_beta(const EmpiricalDistribution& empirical, const AnnniModel& model,
                   FitStats* stats = nullptr);
FitResult fit_beta(const EmpiricalDistribution& empirical, const IsingModel& model,
                   FitStats* stats = nullptr);
FitResult fit_beta(const EmpiricalDistribution& empirical, const FitContext& context,
                   FitStats* stats = nullptr);
// Fit an explicit probability vector (e.g. an exact Gibbs distribution).
FitResult fit_beta_dense(std::span<const double> probabilities, const FitContext& context,
                         FitStats* stats = nullptr);

// Ingestion + fit for one sweep cell; rejects empty sample sets.
FitResult fit_sweep_cell(const EmpiricalDistribution& samples, const AnnniModel& model);

inline constexpr double kBetaCap = 1e5;

}  // namespace annni
