#pragma once

#include "mmwave/materials.hpp"
#include "mmwave/spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace mmw {

// The six family vectors. Slot layout:
//   v1 = (u1, P11 - tr P / 3, tr P / 3)
//   v2 = (u2, (P12 + P21)/2, (P12 - P21)/2), v3 likewise with index 3
//   v4 = (P23 + P32)/2, v5 = (P23 - P32)/2, v6 = P22 - P33
struct FamilyVars {
  Eigen::Vector3cd v1 = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd v2 = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd v3 = Eigen::Vector3cd::Zero();
  cd v4 = 0, v5 = 0, v6 = 0;

  // Adds c * h to the family's slot (scalar families use h(0)).
  void add(WaveFamily f, const Eigen::Vector3cd &h, cd c);
};

// Values and x1-derivatives of the family vectors at one point.
struct ReducedState {
  FamilyVars v, dv;
};

struct FieldState {
  Eigen::Vector3cd u = Eigen::Vector3cd::Zero(), u_x = Eigen::Vector3cd::Zero();
  Eigen::Matrix3cd P = Eigen::Matrix3cd::Zero(), P_x = Eigen::Matrix3cd::Zero();
};

struct WaveTerm {
  BranchRoot root;
  cd amplitude = 0;
};

// Reads only the micro-distortion slots of v1, v2, v3 (slot 0 is a displacement).
Eigen::Matrix3cd reconstruct_P(const Eigen::Vector3cd &v1, const Eigen::Vector3cd &v2,
                               const Eigen::Vector3cd &v3, cd v4, cd v5, cd v6);
Eigen::Matrix3cd reconstruct_P(const FamilyVars &v);

// Inverse of reconstruct_P; u fills slot 0 of v1, v2, v3.
FamilyVars decompose(const Eigen::Vector3cd &u, const Eigen::Matrix3cd &P);

FieldState to_fields(const ReducedState &s);

// Complex superposition of exp(i(k x1 - omega t)). Throws MixedFrequency.
ReducedState evaluate_reduced(const std::vector<WaveTerm> &waves, double x1, double t);
FieldState evaluate_fields(const std::vector<WaveTerm> &waves, double x1, double t);

// Force on the x1 = const face (normal +e1); same form for every flavor.
Eigen::Vector3cd traction_micromorphic(const ReducedState &s, const MicromorphicMaterial &m);

// Relaxed: tau_ij = mu_e Lc^2 P_ij,1 for j = 2, 3, first column zero.
// Mindlin: all nine tau_ij = mu_e Lg^2 P_ij,1. Internal-variable: zero.
Eigen::Matrix3cd double_force(const ReducedState &s, const MicromorphicMaterial &m);

Eigen::Vector3cd cauchy_traction(const Eigen::Vector3cd &u_x, const CauchyMaterial &m);

// Plane wave in a Cauchy medium: displacement along `component` (0, 1, 2).
struct CauchyWave {
  int component = 0;
  cd k = 0;
  cd amplitude = 0;
};

struct CauchyState {
  Eigen::Vector3cd u = Eigen::Vector3cd::Zero(), u_x = Eigen::Vector3cd::Zero();
};

CauchyState evaluate_cauchy(const std::vector<CauchyWave> &waves, double omega, double x1, double t);

} // namespace mmw
