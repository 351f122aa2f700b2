#include "annni/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace annni {

AnnniModel::AnnniModel(int n, double j1, double j2) : n_(n), j1_(j1), j2_(j2) {
    if (n < 4 || n > kMaxSpins)
        throw std::invalid_argument("AnnniModel: n must be in [4, " +
                                    std::to_string(kMaxSpins) + "], got " + std::to_string(n));
    if (!(j1 > 0.0) || !std::isfinite(j1))
        throw std::invalid_argument("AnnniModel: j1 must be finite and > 0");
    if (!(j2 >= 0.0) || !std::isfinite(j2))
        throw std::invalid_argument("AnnniModel: j2 must be finite and >= 0");
}

IsingModel::IsingModel(int n, std::vector<Field> fields, std::vector<Coupling> couplings)
    : n_(n), fields_(std::move(fields)), couplings_(std::move(couplings)) {
    if (n < 1 || n > kMaxSpins)
        throw std::invalid_argument("IsingModel: n must be in [1, " + std::to_string(kMaxSpins) +
                                    "]");
    for (const auto& [site, h] : fields_) {
        if (site < 0 || site >= n)
            throw std::invalid_argument("IsingModel: field site out of range");
        if (!std::isfinite(h)) throw std::invalid_argument("IsingModel: non-finite field");
    }
    for (auto& [pair, j] : couplings_) {
        auto& [u, v] = pair;
        if (u == v) throw std::invalid_argument("IsingModel: self-coupling on site " +
                                                std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("IsingModel: coupling site out of range");
        if (!std::isfinite(j)) throw std::invalid_argument("IsingModel: non-finite coupling");
        if (u > v) std::swap(u, v);
    }
    std::sort(couplings_.begin(), couplings_.end(),
              [](const Coupling& a, const Coupling& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < couplings_.size(); ++i)
        if (couplings_[i].first == couplings_[i - 1].first)
            throw std::invalid_argument("IsingModel: duplicate coupling pair");
    std::sort(fields_.begin(), fields_.end());
}

double energy(const AnnniModel& model, const SpinConfiguration& c) {
    if (c.n() != model.n())
        throw std::invalid_argument("energy: configuration has " + std::to_string(c.n()) +
                                    " spins, model has " + std::to_string(model.n()));
    const int n = model.n();
    const std::uint32_t mask = config_mask(n);
    const std::uint32_t x = c.index();
    const std::uint32_t r1 = ((x << 1) | (x >> (n - 1))) & mask;
    const std::uint32_t r2 = ((x << 2) | (x >> (n - 2))) & mask;
    // sum of S_i S_{i+k} = n - 2 * (number of disagreeing pairs at offset k)
    const int nn = n - 2 * std::popcount(x ^ r1);
    const int nnn = n - 2 * std::popcount(x ^ r2);
    return -model.j1() * nn + model.j2() * nnn;
}

double energy(const IsingModel& model, const SpinConfiguration& c) {
    if (c.n() != model.n())
        throw std::invalid_argument("energy: spin count mismatch");
    double e = 0.0;
    for (const auto& [site, h] : model.fields()) e += h * c.spin(site);
    for (const auto& [pair, j] : model.couplings()) e += j * c.spin(pair.first) * c.spin(pair.second);
    return e;
}

IsingModel to_ising(const AnnniModel& model) {
    const int n = model.n();
    std::map<std::pair<int, int>, double> merged;
    auto add = [&](int u, int v, double j) {
        if (u > v) std::swap(u, v);
        merged[{u, v}] += j;
    };
    for (int i = 0; i < n; ++i) {
        add(i, (i + 1) % n, -model.j1());
        add(i, (i + 2) % n, model.j2());
    }
    std::vector<IsingModel::Coupling> couplings;
    couplings.reserve(merged.size());
    for (const auto& [pair, j] : merged)
        if (j != 0.0) couplings.push_back({pair, j});
    return IsingModel(n, {}, std::move(couplings));
}

IsingModel scale(const IsingModel& model, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw std::invalid_argument("scale: factor must be finite and > 0");
    auto fields = model.fields();
    auto couplings = model.couplings();
    for (auto& [site, h] : fields) h *= factor;
    for (auto& [pair, j] : couplings) j *= factor;
    return IsingModel(model.n(), std::move(fields), std::move(couplings));
}

}  // namespace annni
