#include "mmwave/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mmw {

namespace {

constexpr cd I{0.0, 1.0};

// Sum of Re(a_i conj b_i) / 2 over matching entries.
template <class A, class B> double half_real(const A &a, const B &b) {
  return 0.5 * std::real((a.array() * b.array().conjugate()).sum());
}

double flux_micromorphic_complex(const ReducedState &s, const MicromorphicMaterial &m,
                                 double omega, bool average) {
  const FieldState f = to_fields(s);
  const Eigen::Vector3cd u_t = -I * omega * f.u;
  const Eigen::Matrix3cd P_t = -I * omega * f.P;
  const Eigen::Vector3cd t = traction_micromorphic(s, m);
  const Eigen::Matrix3cd tau = double_force(s, m);
  if (average) return -half_real(u_t, t) - half_real(P_t, tau);
  return -(u_t.real().dot(t.real())) - (P_t.real().cwiseProduct(tau.real())).sum();
}

double flux_cauchy_complex(const CauchyState &s, const CauchyMaterial &m, double omega, bool average) {
  const Eigen::Vector3cd u_t = -I * omega * s.u;
  const Eigen::Vector3cd f = cauchy_traction(s.u_x, m);
  if (average) return -half_real(u_t, f);
  return -(u_t.real().dot(f.real()));
}

double omega_of(const std::vector<WaveTerm> &waves) {
  return waves.empty() ? 0.0 : waves.front().root.omega;
}

double normalized(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  return std::abs(a + b) / scale;
}

} // namespace

double flux_cauchy_avg(const std::vector<CauchyWave> &waves, const CauchyMaterial &m, double omega,
                       double x1) {
  return flux_cauchy_complex(evaluate_cauchy(waves, omega, x1, 0.0), m, omega, true);
}

double flux_micromorphic_avg(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m,
                             double x1) {
  if (waves.empty()) return 0.0;
  return flux_micromorphic_complex(evaluate_reduced(waves, x1, 0.0), m, omega_of(waves), true);
}

double flux_cauchy_instant(const std::vector<CauchyWave> &waves, const CauchyMaterial &m,
                           double omega, double x1, double t) {
  return flux_cauchy_complex(evaluate_cauchy(waves, omega, x1, t), m, omega, false);
}

double flux_micromorphic_instant(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m,
                                 double x1, double t) {
  if (waves.empty()) return 0.0;
  return flux_micromorphic_complex(evaluate_reduced(waves, x1, t), m, omega_of(waves), false);
}

double energy_density_cauchy(const std::vector<CauchyWave> &waves, const CauchyMaterial &m,
                             double omega, double x1, double t) {
  const CauchyState s = evaluate_cauchy(waves, omega, x1, t);
  const Eigen::Vector3d u_t = (-I * omega * s.u).real();
  const Eigen::Vector3d g = s.u_x.real();
  const double kinetic = 0.5 * m.rho * u_t.squaredNorm();
  const double strain = 0.5 * (m.lambda_macro + 2 * m.mu_macro) * g(0) * g(0) +
                        0.5 * m.mu_macro * (g(1) * g(1) + g(2) * g(2));
  return kinetic + strain;
}

double energy_density_micromorphic(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m,
                                   double x1, double t) {
  if (waves.empty()) return 0.0;
  const double omega = omega_of(waves);
  const FieldState f = evaluate_fields(waves, x1, t);
  const Eigen::Vector3d u_t = (-I * omega * f.u).real();
  const Eigen::Matrix3d P_t = (-I * omega * f.P).real();
  const Eigen::Matrix3d P = f.P.real(), P_x = f.P_x.real();

  Eigen::Matrix3d grad_u = Eigen::Matrix3d::Zero();
  grad_u.col(0) = f.u_x.real();
  const Eigen::Matrix3d e = grad_u - P;
  const Eigen::Matrix3d e_sym = 0.5 * (e + e.transpose()), e_skew = 0.5 * (e - e.transpose());
  const Eigen::Matrix3d p_sym = 0.5 * (P + P.transpose());

  double w = m.mu_e * e_sym.squaredNorm() + 0.5 * m.lambda_e * e.trace() * e.trace() +
             m.mu_c * e_skew.squaredNorm() + m.mu_micro * p_sym.squaredNorm() +
             0.5 * m.lambda_micro * P.trace() * P.trace();

  const double c = m.mu_e * m.char_length * m.char_length;
  if (m.flavor == Flavor::Relaxed) {
    // (Curl P)_ij = eps_jmn P_in,m with only m = 1 surviving.
    Eigen::Matrix3d curl = Eigen::Matrix3d::Zero();
    curl.col(1) = -P_x.col(2);
    curl.col(2) = P_x.col(1);
    w += 0.5 * c * curl.squaredNorm();
  } else if (m.flavor == Flavor::Mindlin) {
    w += 0.5 * c * P_x.squaredNorm();
  }
  return 0.5 * m.rho * u_t.squaredNorm() + 0.5 * m.eta * P_t.squaredNorm() + w;
}

EnergyBudget energy_budget(const ScatteringSolution &sol, const CauchyMaterial &cauchy,
                           const MicromorphicMaterial &micro) {
  EnergyBudget e;
  const double omega = sol.incident.omega;
  e.J_i = flux_cauchy_avg(sol.incident_waves(), cauchy, omega, 0.0);
  e.J_r = flux_cauchy_avg(sol.reflected_waves(), cauchy, omega, 0.0);
  // Rightward modes of distinct wavenumber exchange no averaged flux, so J_t is the
  // modal sum. Evaluating the superposed fields instead loses digits near horizontal
  // asymptotes, where a very steep mode with a large amplitude cancels against the rest.
  for (size_t j = 0; j < sol.branches.size(); ++j)
    if (sol.branches[j].kind == BranchKind::Propagating)
      e.J_t += std::norm(sol.transmitted[j]) * branch_flux(micro, sol.branches[j]);
  e.R = std::abs(e.J_r) / e.J_i;
  e.T = e.J_t / e.J_i;
  return e;
}

EnergyBudget reflection_transmission(const CauchyMaterial &cauchy, const MicromorphicMaterial &micro,
                                     ConnectionType connection, const IncidentWave &incident,
                                     ScatteringSolution *solution) {
  ScatteringSolution sol = solve_scattering(cauchy, micro, connection, incident);
  const EnergyBudget e = energy_budget(sol, cauchy, micro);
  if (solution) *solution = std::move(sol);
  return e;
}

EnergyBudget reflection_transmission(const CauchyMaterial &left, const CauchyMaterial &right,
                                     ConnectionType connection, const IncidentWave &incident) {
  const CauchyPairSolution sol = solve_cauchy_pair(left, right, connection, incident);
  std::vector<CauchyWave> inc, refl, trans;
  for (int i = 0; i < 3; ++i) {
    inc.push_back({i, sol.k_left[i], incident.alpha_bar(i)});
    refl.push_back({i, -sol.k_left[i], sol.reflected(i)});
    trans.push_back({i, sol.k_right[i], sol.transmitted(i)});
  }
  EnergyBudget e;
  e.J_i = flux_cauchy_avg(inc, left, incident.omega, 0.0);
  e.J_r = flux_cauchy_avg(refl, left, incident.omega, 0.0);
  e.J_t = flux_cauchy_avg(trans, right, incident.omega, 0.0);
  e.R = std::abs(e.J_r) / e.J_i;
  e.T = e.J_t / e.J_i;
  return e;
}

double pointwise_conservation(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m,
                              double x1, double t, double h_x, double h_t) {
  const double e_t = (energy_density_micromorphic(waves, m, x1, t + h_t) -
                      energy_density_micromorphic(waves, m, x1, t - h_t)) /
                     (2 * h_t);
  const double h_xd = (flux_micromorphic_instant(waves, m, x1 + h_x, t) -
                       flux_micromorphic_instant(waves, m, x1 - h_x, t)) /
                      (2 * h_x);
  return normalized(e_t, h_xd);
}

double pointwise_conservation(const std::vector<CauchyWave> &waves, const CauchyMaterial &m,
                              double omega, double x1, double t, double h_x, double h_t) {
  const double e_t = (energy_density_cauchy(waves, m, omega, x1, t + h_t) -
                      energy_density_cauchy(waves, m, omega, x1, t - h_t)) /
                     (2 * h_t);
  const double h_xd = (flux_cauchy_instant(waves, m, omega, x1 + h_x, t) -
                       flux_cauchy_instant(waves, m, omega, x1 - h_x, t)) /
                      (2 * h_x);
  return normalized(e_t, h_xd);
}

} // namespace mmw
