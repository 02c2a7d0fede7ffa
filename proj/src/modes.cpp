#include "mmwave/modes.hpp"
#include "mmwave/error.hpp"

#include <cmath>

namespace mmw {

namespace {
constexpr cd I{0.0, 1.0};
}

void FamilyVars::add(WaveFamily f, const Eigen::Vector3cd &h, cd c) {
  switch (f) {
  case WaveFamily::Longitudinal: v1 += c * h; break;
  case WaveFamily::TransverseY: v2 += c * h; break;
  case WaveFamily::TransverseZ: v3 += c * h; break;
  case WaveFamily::UncoupledSym23: v4 += c * h(0); break;
  case WaveFamily::UncoupledSkew23: v5 += c * h(0); break;
  case WaveFamily::UncoupledVolDiff: v6 += c * h(0); break;
  }
}

Eigen::Matrix3cd reconstruct_P(const Eigen::Vector3cd &v1, const Eigen::Vector3cd &v2,
                               const Eigen::Vector3cd &v3, cd v4, cd v5, cd v6) {
  const cd dev = v1(1), sph = v1(2);
  Eigen::Matrix3cd p;
  p(0, 0) = sph + dev;
  p(1, 1) = 0.5 * (v6 + 2.0 * sph - dev);
  p(2, 2) = 0.5 * (2.0 * sph - v6 - dev);
  p(0, 1) = v2(1) + v2(2);
  p(1, 0) = v2(1) - v2(2);
  p(0, 2) = v3(1) + v3(2);
  p(2, 0) = v3(1) - v3(2);
  p(1, 2) = v4 + v5;
  p(2, 1) = v4 - v5;
  return p;
}

Eigen::Matrix3cd reconstruct_P(const FamilyVars &v) {
  return reconstruct_P(v.v1, v.v2, v.v3, v.v4, v.v5, v.v6);
}

FamilyVars decompose(const Eigen::Vector3cd &u, const Eigen::Matrix3cd &p) {
  FamilyVars v;
  const cd sph = p.trace() / 3.0;
  v.v1 = Eigen::Vector3cd(u(0), p(0, 0) - sph, sph);
  v.v2 = Eigen::Vector3cd(u(1), 0.5 * (p(0, 1) + p(1, 0)), 0.5 * (p(0, 1) - p(1, 0)));
  v.v3 = Eigen::Vector3cd(u(2), 0.5 * (p(0, 2) + p(2, 0)), 0.5 * (p(0, 2) - p(2, 0)));
  v.v4 = 0.5 * (p(1, 2) + p(2, 1));
  v.v5 = 0.5 * (p(1, 2) - p(2, 1));
  v.v6 = p(1, 1) - p(2, 2);
  return v;
}

FieldState to_fields(const ReducedState &s) {
  FieldState f;
  f.u = Eigen::Vector3cd(s.v.v1(0), s.v.v2(0), s.v.v3(0));
  f.u_x = Eigen::Vector3cd(s.dv.v1(0), s.dv.v2(0), s.dv.v3(0));
  f.P = reconstruct_P(s.v);
  f.P_x = reconstruct_P(s.dv);
  return f;
}

ReducedState evaluate_reduced(const std::vector<WaveTerm> &waves, double x1, double t) {
  ReducedState s;
  if (waves.empty()) return s;
  const double omega = waves.front().root.omega;
  for (const WaveTerm &w : waves) {
    if (w.root.omega != omega) throw Error(ErrorKind::MixedFrequency, "branches differ in omega");
    const cd phase = w.amplitude * std::exp(I * (w.root.k * x1 - omega * t));
    s.v.add(w.root.family, w.root.eigvec, phase);
    s.dv.add(w.root.family, w.root.eigvec, I * w.root.k * phase);
  }
  return s;
}

FieldState evaluate_fields(const std::vector<WaveTerm> &waves, double x1, double t) {
  return to_fields(evaluate_reduced(waves, x1, t));
}

Eigen::Vector3cd traction_micromorphic(const ReducedState &s, const MicromorphicMaterial &m) {
  const double le = m.lambda_e, me = m.mu_e, mc = m.mu_c;
  Eigen::Vector3cd t;
  t(0) = (le + 2 * me) * s.dv.v1(0) - 2 * me * s.v.v1(1) - (3 * le + 2 * me) * s.v.v1(2);
  t(1) = (me + mc) * s.dv.v2(0) - 2 * me * s.v.v2(1) + 2 * mc * s.v.v2(2);
  t(2) = (me + mc) * s.dv.v3(0) - 2 * me * s.v.v3(1) + 2 * mc * s.v.v3(2);
  return t;
}

Eigen::Matrix3cd double_force(const ReducedState &s, const MicromorphicMaterial &m) {
  const double c = m.mu_e * m.char_length * m.char_length;
  Eigen::Matrix3cd tau = Eigen::Matrix3cd::Zero();
  if (m.flavor == Flavor::InternalVariable) return tau;
  tau = c * reconstruct_P(s.dv);
  if (m.flavor == Flavor::Relaxed) tau.col(0).setZero();
  return tau;
}

Eigen::Vector3cd cauchy_traction(const Eigen::Vector3cd &u_x, const CauchyMaterial &m) {
  return Eigen::Vector3cd((m.lambda_macro + 2 * m.mu_macro) * u_x(0), m.mu_macro * u_x(1),
                          m.mu_macro * u_x(2));
}

CauchyState evaluate_cauchy(const std::vector<CauchyWave> &waves, double omega, double x1, double t) {
  CauchyState s;
  for (const CauchyWave &w : waves) {
    const cd phase = w.amplitude * std::exp(I * (w.k * x1 - omega * t));
    s.u(w.component) += phase;
    s.u_x(w.component) += I * w.k * phase;
  }
  return s;
}

} // namespace mmw
