#pragma once

#include "mmwave/materials.hpp"
#include "mmwave/numerics.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace mmw {

// Families of the 1D reduced unknowns:
//   Longitudinal  v1 = (u1, P11 deviatoric, P spherical)
//   TransverseY   v2 = (u2, sym P12, skew P12)
//   TransverseZ   v3 = (u3, sym P13, skew P13)
//   UncoupledSym23 v4 = sym P23, UncoupledSkew23 v5 = skew P23,
//   UncoupledVolDiff v6 = P22 - P33
enum class WaveFamily {
  Longitudinal,
  TransverseY,
  TransverseZ,
  UncoupledSym23,
  UncoupledSkew23,
  UncoupledVolDiff
};

inline constexpr std::array<WaveFamily, 6> all_families = {
    WaveFamily::Longitudinal,   WaveFamily::TransverseY,     WaveFamily::TransverseZ,
    WaveFamily::UncoupledSym23, WaveFamily::UncoupledSkew23, WaveFamily::UncoupledVolDiff};

inline bool is_coupled(WaveFamily f) {
  return f == WaveFamily::Longitudinal || f == WaveFamily::TransverseY ||
         f == WaveFamily::TransverseZ;
}

// Short tags: L, TY, TZ, U4, U5, U6.
const char *to_string(WaveFamily f);

// v'' system: v_tt = A v'' + B v' + C v. Uncoupled families use only A(0,0), C(0,0).
struct SystemMatrices {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d B = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  bool coupled = true;
  Flavor flavor = Flavor::Relaxed;
};

enum class BranchKind { Propagating, Evanescent };

struct BranchRoot {
  WaveFamily family = WaveFamily::Longitudinal;
  int index = 0; // position within the family's transmitted set
  cd k = 0;      // 1/m
  BranchKind kind = BranchKind::Propagating;
  // Unit eigenvector of the dispersion matrix; (1, 0, 0) for scalar families.
  Eigen::Vector3cd eigvec = Eigen::Vector3cd(1, 0, 0);
  double omega = 0; // rad/s
};

struct BandGap {
  double lower = 0, upper = 0; // rad/s
};

struct Asymptotes {
  double k_probe = 0;               // 1/m
  std::vector<double> slopes;       // m/s, unbounded branches, ascending
  std::vector<double> horizontal;   // rad/s, bounded branches at k_probe, ascending
};

SystemMatrices system_matrices(const MicromorphicMaterial &m, WaveFamily f);

// k^2 A - omega^2 I - i k B - C. Throws UncoupledFamily for scalar families.
Eigen::Matrix3cd dispersion_matrix(const MicromorphicMaterial &m, WaveFamily f, cd k, double omega);

// det of dispersion_matrix in k at fixed omega; odd coefficients are zeroed after
// the parity check. Degree 4 relaxed, 6 Mindlin, 2 internal-variable.
ComplexPolynomial char_polynomial_in_k(const MicromorphicMaterial &m, WaveFamily f, double omega);

// Number of rightward branches per family for the flavor.
int expected_branch_count(Flavor flavor, WaveFamily f);

// Rightward (transmitted) branches: decaying if evanescent, energy flowing to +x1
// if propagating. At a horizontal asymptote one root is very large and carries
// little energy; if the leading coefficient cancels exactly it is replaced by its
// rounding uncertainty, as at the neighbouring representable frequency.
// Throws BranchCountMismatch or AmbiguousNullspace.
std::vector<BranchRoot> roots_k_of_omega(const MicromorphicMaterial &m, WaveFamily f, double omega);

// Count of propagating branches without eigenvectors; used by band-gap scans.
int propagating_count(const MicromorphicMaterial &m, WaveFamily f, double omega);

// Time-averaged x1 flux of a single unit-amplitude branch, W/m^2.
double branch_flux(const MicromorphicMaterial &m, const BranchRoot &b);

// Real omega >= 0 branches at real k, ascending. Throws ComplexFrequency.
std::vector<double> omega_of_k(const MicromorphicMaterial &m, WaveFamily f, double k);

// (omega/c_l, omega/c_t, omega/c_t). Throws ZeroSpeed.
std::array<double, 3> cauchy_wavenumbers(const CauchyMaterial &m, double omega);

std::vector<BandGap> band_gap(const MicromorphicMaterial &m, const std::vector<double> &omega_grid);
std::vector<BandGap> band_gap(const CauchyMaterial &m, const std::vector<double> &omega_grid);

// Large-k behaviour at k * char_length = 1e4 (k = 1e6 1/m when char_length = 0).
Asymptotes asymptotes_numeric(const MicromorphicMaterial &m, WaveFamily f);

// Exact k -> infinity limits: positive roots in omega of the leading k coefficient.
std::vector<double> horizontal_asymptotes(const MicromorphicMaterial &m, WaveFamily f);

std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> lin_grid(double lo, double hi, int n);

} // namespace mmw
