#pragma once

#include "mmwave/materials.hpp"
#include "mmwave/modes.hpp"
#include "mmwave/scattering.hpp"

#include <vector>

namespace mmw {

// Time-averaged fluxes (W/m^2) through x1 = 0 and the derived coefficients.
struct EnergyBudget {
  double J_i = 0, J_r = 0, J_t = 0;
  double R = 0, T = 0; // R = |J_r| / J_i, T = J_t / J_i
};

// Period averages from the half-real-part rule: <Re(a e^{-iwt}) Re(b e^{-iwt})> = Re(a conj b) / 2.
double flux_cauchy_avg(const std::vector<CauchyWave> &waves, const CauchyMaterial &m, double omega,
                       double x1);
double flux_micromorphic_avg(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m,
                             double x1);

// Instantaneous real-field flux H1 and energy density E at (x1, t).
double flux_cauchy_instant(const std::vector<CauchyWave> &waves, const CauchyMaterial &m,
                           double omega, double x1, double t);
double flux_micromorphic_instant(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m,
                                 double x1, double t);
double energy_density_cauchy(const std::vector<CauchyWave> &waves, const CauchyMaterial &m,
                             double omega, double x1, double t);
// Uses the full 3D energy (Curl P or grad P curvature) restricted to x1 dependence.
double energy_density_micromorphic(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m,
                                   double x1, double t);

EnergyBudget energy_budget(const ScatteringSolution &sol, const CauchyMaterial &cauchy,
                           const MicromorphicMaterial &micro);

// Solves the interface problem and returns the fluxes; the solution is copied to
// *solution when given.
EnergyBudget reflection_transmission(const CauchyMaterial &cauchy, const MicromorphicMaterial &micro,
                                     ConnectionType connection, const IncidentWave &incident,
                                     ScatteringSolution *solution = nullptr);

EnergyBudget reflection_transmission(const CauchyMaterial &left, const CauchyMaterial &right,
                                     ConnectionType connection, const IncidentWave &incident);

// |dE/dt + dH1/dx1| by central differences, normalized by the larger of the two terms.
double pointwise_conservation(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m,
                              double x1, double t, double h_x, double h_t);
double pointwise_conservation(const std::vector<CauchyWave> &waves, const CauchyMaterial &m,
                              double omega, double x1, double t, double h_x, double h_t);

} // namespace mmw
