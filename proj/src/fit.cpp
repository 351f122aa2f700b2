#include "annni/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "annni/numeric.hpp"

namespace annni {

namespace {

constexpr int kStartCount = 28;
constexpr double kStartHigh = 1e5;
constexpr double kStartLow = 1e-8;
constexpr int kLogGridCount = 100;
constexpr double kLogGridHigh = 1e-3;
constexpr double kLogGridLow = 1e-15;
constexpr double kLinearGridStep = 1e-4;
constexpr int kEvalBudget = 200;
constexpr double kTvdTol = 1e-10;

void check_probability_vector(std::span<const double> p, const char* label) {
    for (double v : p)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(label) + ": negative or non-finite entry");
    const double sum = compensated_sum(p);
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(label) + ": not normalized (sum = " +
                                    std::to_string(sum) + ")");
}

// Tracks the running minimum and its rounded tie-set. Among candidates tying
// on rounded TVD, beta_best is the one with the smallest raw TVD (then the
// smaller beta), which keeps the result deterministic.
class Recorder {
  public:
    void record(double beta_rounded, double tvd_raw) {
        const double t = round7(tvd_raw);
        if (t < tvd_min_) {
            tvd_min_ = t;
            best_raw_ = tvd_raw;
            best_beta_ = beta_rounded;
            lo_ = hi_ = beta_rounded;
        } else if (t == tvd_min_) {
            lo_ = std::min(lo_, beta_rounded);
            hi_ = std::max(hi_, beta_rounded);
            if (tvd_raw < best_raw_ ||
                (tvd_raw == best_raw_ && beta_rounded < best_beta_)) {
                best_raw_ = tvd_raw;
                best_beta_ = beta_rounded;
            }
        }
    }

    FitResult result() const {
        if (!(tvd_min_ <= 1.0))
            throw std::logic_error("fit_beta: no candidate was evaluated");
        FitResult r;
        r.tvd_min = tvd_min_;
        r.beta_best = best_beta_;
        r.beta_lo = lo_;
        r.beta_hi = hi_;
        r.wide_range = (hi_ - lo_) > 0.1;
        return r;
    }

  private:
    double tvd_min_ = std::numeric_limits<double>::infinity();
    double best_raw_ = std::numeric_limits<double>::infinity();
    double best_beta_ = 0.0;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

// One-dimensional Nelder-Mead: a two-point simplex with the standard
// reflect/expand/contract updates, clamped to [0, kBetaCap].
template <typename F>
std::uint64_t simplex_minimize(F&& f, double start, int budget) {
    const auto clamp = [](double x) { return std::clamp(x, 0.0, kBetaCap); };
    double x0 = clamp(start);
    double x1 = clamp(start * 1.05 + 1e-9);
    double f0 = f(x0);
    double f1 = f(x1);
    std::uint64_t evals = 2;
    while (evals + 1 < static_cast<std::uint64_t>(budget)) {
        if (f1 < f0) {
            std::swap(x0, x1);
            std::swap(f0, f1);
        }
        if (std::abs(f1 - f0) < kTvdTol) break;
        if (std::abs(x1 - x0) < 1e-12 * std::max(1.0, std::abs(x0))) break;
        const double reflected = clamp(x0 + (x0 - x1));
        const double fr = f(reflected);
        ++evals;
        if (fr < f0) {
            const double expanded = clamp(x0 + 2.0 * (x0 - x1));
            const double fe = f(expanded);
            ++evals;
            if (fe < fr) {
                x1 = expanded;
                f1 = fe;
            } else {
                x1 = reflected;
                f1 = fr;
            }
        } else {
            // contract toward the best point (also the 1-d shrink step)
            const double contracted = clamp(x0 + 0.5 * (x1 - x0));
            const double fc = f(contracted);
            ++evals;
            x1 = contracted;
            f1 = fc;
        }
    }
    return evals;
}

// Bounded golden-section search with successive parabolic interpolation
// (Brent's minimization) on [lo, hi].
template <typename F>
std::uint64_t brent_minimize(F&& f, double lo, double hi, int budget) {
    constexpr double golden = 0.3819660112501051;
    double a = lo, b = hi;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    std::uint64_t evals = 1;
    double d = 0.0, e = 0.0;
    while (evals < static_cast<std::uint64_t>(budget)) {
        const double m = 0.5 * (a + b);
        const double tol = 1e-11 * std::abs(x) + 1e-13;
        if (std::abs(x - m) <= 2.0 * tol - 0.5 * (b - a)) break;
        double step = 0.0;
        bool parabolic = false;
        if (std::abs(e) > tol) {
            // fit a parabola through (v,fv), (w,fw), (x,fx)
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) &&
                p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < 2.0 * tol || b - u < 2.0 * tol) d = (x < m) ? tol : -tol;
                parabolic = true;
            }
        }
        if (!parabolic) {
            e = (x < m) ? b - x : a - x;
            d = golden * e;
        }
        step = (std::abs(d) >= tol) ? d : ((d > 0.0) ? tol : -tol);
        const double u = x + step;
        const double fu = f(u);
        ++evals;
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
        if (std::abs(fw - fx) < kTvdTol && std::abs(fv - fx) < kTvdTol &&
            std::abs(b - a) < 1e-9 * std::max(1.0, std::abs(x)))
            break;
    }
    return evals;
}

FitResult fit_protocol(const FitContext& context, const FitContext::Support& support,
                       FitStats* stats) {
    Recorder recorder;
    FitStats local;

    std::uint64_t* eval_slot = nullptr;
    const auto objective = [&](double beta) {
        const double clamped = std::clamp(beta, 0.0, kBetaCap);
        const double t = context.tvd_at(support, clamped);
        recorder.record(round7(clamped), t);
        ++local.total_evals;
        if (eval_slot) ++*eval_slot;
        return t;
    };

    // (a) multi-start derivative-free local searches
    const double decades = std::log10(kStartHigh) - std::log10(kStartLow);
    for (int i = 0; i < kStartCount; ++i) {
        const double exponent =
            std::log10(kStartHigh) - decades * static_cast<double>(i) / (kStartCount - 1);
        const double start = std::pow(10.0, exponent);

        eval_slot = &local.simplex_evals;
        simplex_minimize(objective, start, kEvalBudget);
        ++local.simplex_starts;

        // bracket spanning the gap to the neighboring starts
        const double ratio = std::pow(10.0, decades / (kStartCount - 1));
        eval_slot = &local.quadratic_evals;
        brent_minimize(objective, std::max(0.0, start / ratio), std::min(kBetaCap, start * ratio),
                       kEvalBudget);
        ++local.quadratic_starts;
    }
    eval_slot = nullptr;

    // (b) logarithmic gridsearch over very small beta
    for (int i = 0; i < kLogGridCount; ++i) {
        const double exponent =
            std::log10(kLogGridHigh) +
            (std::log10(kLogGridLow) - std::log10(kLogGridHigh)) * static_cast<double>(i) /
                (kLogGridCount - 1);
        objective(std::pow(10.0, exponent));
        ++local.log_grid_points;
    }

    // (c) ascending linear gridsearch, stopped where the unshifted partition
    // sum breaks down in double precision (or at the beta cap)
    for (std::uint64_t k = 1;; ++k) {
        const double beta = static_cast<double>(k) * kLinearGridStep;
        if (beta > kBetaCap) break;
        const double z_unshifted = context.unshifted_partition_sum(beta);
        if (!(z_unshifted > 0.0) || !std::isfinite(z_unshifted)) {
            local.linear_grid_stopped_by_guard = true;
            break;
        }
        objective(beta);
        ++local.linear_grid_points;
    }

    if (stats) *stats = local;
    return recorder.result();
}

}  // namespace

double tvd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tvd: length mismatch");
    check_probability_vector(p, "tvd: p");
    check_probability_vector(q, "tvd: q");
    CompensatedAccumulator acc;
    for (std::size_t i = 0; i < p.size(); ++i) acc.add(std::abs(p[i] - q[i]));
    return std::clamp(0.5 * acc.value(), 0.0, 1.0);
}

FitContext::FitContext(const AnnniModel& model) { build(model.n(), energy_table(model)); }
FitContext::FitContext(const IsingModel& model) { build(model.n(), energy_table(model)); }

void FitContext::build(int n, const std::vector<double>& energies) {
    n_ = n;
    const Spectrum spec = spectrum_from_energies(energies);
    e_min_ = spec.levels.front().energy;
    std::map<std::int64_t, std::uint32_t> level_index;
    level_energy_.reserve(spec.levels.size());
    level_degeneracy_.reserve(spec.levels.size());
    for (const auto& level : spec.levels) {
        level_index[energy_level_key(level.energy)] =
            static_cast<std::uint32_t>(level_energy_.size());
        level_energy_.push_back(level.energy - e_min_);
        level_degeneracy_.push_back(static_cast<double>(level.degeneracy));
    }
    level_of_.resize(energies.size());
    for (std::size_t idx = 0; idx < energies.size(); ++idx)
        level_of_[idx] = level_index.at(energy_level_key(energies[idx]));
}

FitContext::Support FitContext::group(const EmpiricalDistribution& empirical) const {
    if (empirical.n() != n_)
        throw std::invalid_argument("FitContext: empirical distribution has wrong spin count");
    if (empirical.total() == 0)
        throw std::invalid_argument("FitContext: empty empirical distribution");
    // (level, count) pairs with multiplicity; counts make weights identical
    // within a group by construction
    std::map<std::pair<std::uint32_t, std::uint64_t>, double> groups;
    for (const auto& [index, count] : empirical.counts())
        groups[{level_of_[index], count}] += 1.0;
    Support support;
    const double total = static_cast<double>(empirical.total());
    for (const auto& [key, multiplicity] : groups) {
        support.level.push_back(key.first);
        support.weight.push_back(static_cast<double>(key.second) / total);
        support.multiplicity.push_back(multiplicity);
    }
    support.covers_all = empirical.counts().size() == (std::size_t{1} << n_);
    return support;
}

FitContext::Support FitContext::group_dense(std::span<const double> probabilities) const {
    if (probabilities.size() != (std::size_t{1} << n_))
        throw std::invalid_argument("FitContext: dense vector has wrong length");
    check_probability_vector(probabilities, "fit_beta_dense");
    std::map<std::pair<std::uint32_t, double>, double> groups;
    std::size_t nonzero = 0;
    for (std::size_t idx = 0; idx < probabilities.size(); ++idx) {
        if (probabilities[idx] == 0.0) continue;
        ++nonzero;
        groups[{level_of_[idx], probabilities[idx]}] += 1.0;
    }
    if (nonzero == 0) throw std::invalid_argument("fit_beta_dense: all-zero vector");
    Support support;
    for (const auto& [key, multiplicity] : groups) {
        support.level.push_back(key.first);
        support.weight.push_back(key.second);
        support.multiplicity.push_back(multiplicity);
    }
    support.covers_all = nonzero == probabilities.size();
    return support;
}

double FitContext::tvd_at(const Support& support, double beta, double* z_shifted) const {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("tvd_at: beta must be finite and >= 0");
    thread_local std::vector<double> weight;
    weight.resize(level_energy_.size());
    CompensatedAccumulator z;
    for (std::size_t l = 0; l < level_energy_.size(); ++l) {
        weight[l] = std::exp(-beta * level_energy_[l]);
        z.add(level_degeneracy_[l] * weight[l]);
    }
    const double inv_z = 1.0 / z.value();
    if (z_shifted) *z_shifted = z.value();

    CompensatedAccumulator absdiff;
    CompensatedAccumulator mass_on_support;
    for (std::size_t g = 0; g < support.level.size(); ++g) {
        const double p = weight[support.level[g]] * inv_z;
        absdiff.add(support.multiplicity[g] * std::abs(p - support.weight[g]));
        mass_on_support.add(support.multiplicity[g] * p);
    }
    const double tail = support.covers_all ? 0.0 : std::max(0.0, 1.0 - mass_on_support.value());
    return std::clamp(0.5 * (absdiff.value() + tail), 0.0, 1.0);
}

double FitContext::unshifted_partition_sum(double beta) const {
    CompensatedAccumulator z;
    for (std::size_t l = 0; l < level_energy_.size(); ++l)
        z.add(level_degeneracy_[l] * std::exp(-beta * level_energy_[l]));
    return std::exp(-beta * e_min_) * z.value();
}

double tvd_at_beta(const EmpiricalDistribution& empirical, const AnnniModel& model, double beta) {
    const FitContext context(model);
    return context.tvd_at(context.group(empirical), beta);
}

double tvd_at_beta(const EmpiricalDistribution& empirical, const IsingModel& model, double beta) {
    const FitContext context(model);
    return context.tvd_at(context.group(empirical), beta);
}

FitResult fit_beta(const EmpiricalDistribution& empirical, const AnnniModel& model,
                   FitStats* stats) {
    return fit_beta(empirical, FitContext(model), stats);
}

FitResult fit_beta(const EmpiricalDistribution& empirical, const IsingModel& model,
                   FitStats* stats) {
    return fit_beta(empirical, FitContext(model), stats);
}

FitResult fit_beta(const EmpiricalDistribution& empirical, const FitContext& context,
                   FitStats* stats) {
    return fit_protocol(context, context.group(empirical), stats);
}

FitResult fit_beta_dense(std::span<const double> probabilities, const FitContext& context,
                         FitStats* stats) {
    return fit_protocol(context, context.group_dense(probabilities), stats);
}

FitResult fit_sweep_cell(const EmpiricalDistribution& samples, const AnnniModel& model) {
    if (samples.total() == 0) throw std::invalid_argument("fit_sweep_cell: empty sample set");
    if (samples.n() != model.n())
        throw std::invalid_argument("fit_sweep_cell: spin count mismatch");
    return fit_beta(samples, model);
}

}  // namespace annni
