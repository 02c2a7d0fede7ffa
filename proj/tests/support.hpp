#pragma once

#include "mmwave/materials.hpp"

#include <cmath>
#include <random>

namespace mmw::test {

inline double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0.0 : std::abs(a - b) / s;
}

inline double log_uniform(std::mt19937_64 &rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// Random admissible material: positive shear moduli, 3 lambda + 2 mu > 0.
inline MicromorphicMaterial random_material(std::mt19937_64 &rng, Flavor flavor) {
  std::uniform_real_distribution<double> frac(-0.6, 3.0);
  MicromorphicMaterial m;
  m.flavor = flavor;
  m.rho = log_uniform(rng, 500, 1e4);
  m.eta = log_uniform(rng, 1e-3, 1e-1);
  m.mu_e = log_uniform(rng, 1e7, 1e10);
  m.lambda_e = frac(rng) * m.mu_e;
  m.mu_c = log_uniform(rng, 1e6, 1e10);
  m.mu_micro = log_uniform(rng, 1e7, 1e10);
  m.lambda_micro = frac(rng) * m.mu_micro;
  m.char_length = flavor == Flavor::InternalVariable ? 0.0 : log_uniform(rng, 1e-3, 1e-1);
  return m;
}

} // namespace mmw::test
