#pragma once

#include "mmwave/energetics.hpp"
#include "mmwave/spectral.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mmw {

// Worker count from MMWAVE_WORKERS, else the hardware concurrency (at least 1).
int worker_count();

// Runs fn(i) for i in [0, n) on `workers` threads. Each index is written by exactly
// one worker, so results stored by index are independent of scheduling.
void parallel_for(int n, int workers, const std::function<void(int)> &fn);

struct ReflectRow {
  double omega = 0;
  EnergyBudget budget;
  double residual = 0;
  int n_propagating = 0;
  bool ok = true;
  std::string error; // set when !ok; numeric fields are NaN
};

std::vector<ReflectRow> reflect_sweep(const CauchyMaterial &cauchy, const MicromorphicMaterial &micro,
                                      ConnectionType connection, const Eigen::Vector3cd &alpha_bar,
                                      const std::vector<double> &omegas, int workers);

struct DispersionRow {
  double k = 0;
  std::vector<double> omegas; // branches of each requested family, ascending per family
  bool ok = true;
  std::string error;
};

std::vector<DispersionRow> dispersion_sweep(const MicromorphicMaterial &m,
                                            const std::vector<WaveFamily> &families,
                                            const std::vector<double> &ks, int workers);

// Branch count per family in dispersion output: 3 coupled, 1 scalar.
int dispersion_columns(WaveFamily f);

} // namespace mmw
