#pragma once

#include "mmwave/materials.hpp"
#include "mmwave/modes.hpp"
#include "mmwave/spectral.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mmw {

// Interface constraints between a Cauchy half-space (x1 < 0) and a micromorphic
// half-space (x1 > 0).
enum class ConnectionType {
  MacroClampFixedMicro, // [[u]] = 0, t = f, P = 0
  MacroClampFreeMicro,  // [[u]] = 0, t = f, tau = 0
  FreeBoundary,         // f = 0, t = 0, tau = 0
  FixedBoundary,        // u- = 0, u+ = 0, P = 0
  FreeMacroFixedMicro,  // f = 0, t = 0, P = 0
  FixedMacroFreeMicro,  // u- = 0, u+ = 0, tau = 0
};

inline constexpr std::array<ConnectionType, 6> all_connections = {
    ConnectionType::MacroClampFixedMicro, ConnectionType::MacroClampFreeMicro,
    ConnectionType::FreeBoundary,         ConnectionType::FixedBoundary,
    ConnectionType::FreeMacroFixedMicro,  ConnectionType::FixedMacroFreeMicro};

// CLI spelling: fixed-micro, free-micro, free, fixed, free-macro-fixed-micro, fixed-macro-free-micro.
const char *to_string(ConnectionType c);
std::optional<ConnectionType> parse_connection(const std::string &s);

// True for the four connections that decouple the two half-spaces.
bool trivially_reflecting(ConnectionType c);

struct IncidentWave {
  Eigen::Vector3cd alpha_bar = Eigen::Vector3cd::Zero(); // m; (P, S along x2, S along x3)
  double omega = 0;                                      // rad/s
};

// Unknown order: reflected L, TY, TZ; then transmitted branches family by family in
// ascending branch index (L, TY, TZ, U4, U5, U6).
struct AssembledSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  std::vector<BranchRoot> branches;  // transmitted basis, column order
  std::array<double, 3> k_cauchy{};  // incident wavenumbers; reflected use the negatives
  std::vector<std::string> row_labels;
};

struct ScatteringSolution {
  ConnectionType connection = ConnectionType::MacroClampFixedMicro;
  IncidentWave incident;
  std::array<double, 3> k_cauchy{};
  Eigen::Vector3cd reflected = Eigen::Vector3cd::Zero();
  std::vector<BranchRoot> branches;
  std::vector<cd> transmitted;
  double residual = 0;

  // Zero when the family/index pair is absent from the basis.
  cd amplitude(WaveFamily f, int index = 0) const;
  std::vector<WaveTerm> transmitted_terms() const;
  std::vector<CauchyWave> incident_waves() const;
  std::vector<CauchyWave> reflected_waves() const;
  int propagating_transmitted() const;
};

using Medium = std::variant<CauchyMaterial, MicromorphicMaterial>;

AssembledSystem assemble_system(const CauchyMaterial &cauchy, const MicromorphicMaterial &micro,
                                ConnectionType connection, const IncidentWave &incident);

// Throws UnsupportedPair unless left is Cauchy and right is micromorphic.
AssembledSystem assemble_system(const Medium &left, const Medium &right,
                                ConnectionType connection, const IncidentWave &incident);

// Throws SingularSystem, ResidualTooLarge (> 1e-9) or DeadModeActivated.
ScatteringSolution solve_scattering(const CauchyMaterial &cauchy, const MicromorphicMaterial &micro,
                                    ConnectionType connection, const IncidentWave &incident);

// Max over all jump conditions of |condition| / (largest single term), recomputed from
// superposed fields at x1 = 0. A term is one wave's contribution through one field slot.
double boundary_residual(const ScatteringSolution &sol, const CauchyMaterial &cauchy,
                         const MicromorphicMaterial &micro);

// Cauchy/Cauchy interface, kept as a sanity path. Clamp variants glue the media,
// the free/fixed variants decouple them.
struct CauchyPairSolution {
  ConnectionType connection = ConnectionType::MacroClampFixedMicro;
  IncidentWave incident;
  std::array<double, 3> k_left{}, k_right{};
  Eigen::Vector3cd reflected = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd transmitted = Eigen::Vector3cd::Zero();
  double residual = 0;
};

CauchyPairSolution solve_cauchy_pair(const CauchyMaterial &left, const CauchyMaterial &right,
                                     ConnectionType connection, const IncidentWave &incident);

} // namespace mmw
