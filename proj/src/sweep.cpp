#include "mmwave/sweep.hpp"
#include "mmwave/error.hpp"

#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>

namespace mmw {

int worker_count() {
  if (const char *env = std::getenv("MMWAVE_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, int workers, const std::function<void(int)> &fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (std::thread &t : pool) t.join();
}

std::vector<ReflectRow> reflect_sweep(const CauchyMaterial &cauchy, const MicromorphicMaterial &micro,
                                      ConnectionType connection, const Eigen::Vector3cd &alpha_bar,
                                      const std::vector<double> &omegas, int workers) {
  std::vector<ReflectRow> rows(omegas.size());
  parallel_for(static_cast<int>(omegas.size()), workers, [&](int i) {
    ReflectRow &row = rows[i];
    row.omega = omegas[i];
    try {
      IncidentWave inc{alpha_bar, omegas[i]};
      ScatteringSolution sol;
      row.budget = reflection_transmission(cauchy, micro, connection, inc, &sol);
      row.residual = sol.residual;
      row.n_propagating = sol.propagating_transmitted();
    } catch (const Error &e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.ok = false;
      row.error = e.what();
      row.budget = {nan, nan, nan, nan, nan};
      row.residual = nan;
      row.n_propagating = -1;
    }
  });
  return rows;
}

int dispersion_columns(WaveFamily f) { return is_coupled(f) ? 3 : 1; }

std::vector<DispersionRow> dispersion_sweep(const MicromorphicMaterial &m,
                                            const std::vector<WaveFamily> &families,
                                            const std::vector<double> &ks, int workers) {
  std::vector<DispersionRow> rows(ks.size());
  parallel_for(static_cast<int>(ks.size()), workers, [&](int i) {
    DispersionRow &row = rows[i];
    row.k = ks[i];
    for (WaveFamily f : families) {
      try {
        for (double w : omega_of_k(m, f, ks[i])) row.omegas.push_back(w);
      } catch (const Error &e) {
        row.ok = false;
        row.error = e.what();
        for (int c = 0; c < dispersion_columns(f); ++c)
          row.omegas.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
  });
  return rows;
}

} // namespace mmw
