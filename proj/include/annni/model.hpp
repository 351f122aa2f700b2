#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "annni/spin.hpp"

namespace annni {

// Frustrated J1-J2 ring:
//   H = -j1 * sum_i S_i S_{i+1} + j2 * sum_i S_i S_{i+2}   (indices mod n)
// with j1 > 0 ferromagnetic, j2 >= 0 antiferromagnetic, no local fields.
// j2 < 0.5 orders ferromagnetically, j2 > 0.5 into the up-up-down-down
// antiphase; j2 = 0.5 is the multiphase point.
class AnnniModel {
  public:
    AnnniModel(int n, double j1, double j2);

    int n() const { return n_; }
    double j1() const { return j1_; }
    double j2() const { return j2_; }

  private:
    int n_;
    double j1_;
    double j2_;
};

// Generic classical Ising Hamiltonian
//   H = sum_i h_i S_i + sum_{u<v} J_{uv} S_u S_v
// used for the scaled / hardware-shaped variants of the ring model.
class IsingModel {
  public:
    using Field = std::pair<int, double>;                      // (site, h)
    using Coupling = std::pair<std::pair<int, int>, double>;   // ({u,v}, J), u < v

    IsingModel(int n, std::vector<Field> fields, std::vector<Coupling> couplings);

    int n() const { return n_; }
    const std::vector<Field>& fields() const { return fields_; }
    const std::vector<Coupling>& couplings() const { return couplings_; }

  private:
    int n_;
    std::vector<Field> fields_;
    std::vector<Coupling> couplings_;
};

double energy(const AnnniModel& model, const SpinConfiguration& c);
double energy(const IsingModel& model, const SpinConfiguration& c);

// Explicit coupling list for the ring: J_{i,i+1} = -j1, J_{i,i+2} = +j2,
// no fields. Coincident pairs (n = 4) are merged by coefficient summation,
// so energies agree with the ring form for every configuration.
IsingModel to_ising(const AnnniModel& model);

// Multiply every field and coupling by `factor` (the overall energy-scale
// knob; factor in (0, 1] in normal use).
IsingModel scale(const IsingModel& model, double factor);

}  // namespace annni
