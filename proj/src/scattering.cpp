#include "mmwave/scattering.hpp"
#include "mmwave/error.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>

namespace mmw {

const char *to_string(ConnectionType c) {
  switch (c) {
  case ConnectionType::MacroClampFixedMicro: return "fixed-micro";
  case ConnectionType::MacroClampFreeMicro: return "free-micro";
  case ConnectionType::FreeBoundary: return "free";
  case ConnectionType::FixedBoundary: return "fixed";
  case ConnectionType::FreeMacroFixedMicro: return "free-macro-fixed-micro";
  case ConnectionType::FixedMacroFreeMicro: return "fixed-macro-free-micro";
  }
  return "?";
}

std::optional<ConnectionType> parse_connection(const std::string &s) {
  for (ConnectionType c : all_connections)
    if (s == to_string(c)) return c;
  return std::nullopt;
}

bool trivially_reflecting(ConnectionType c) {
  return c != ConnectionType::MacroClampFixedMicro && c != ConnectionType::MacroClampFreeMicro;
}

namespace {

constexpr cd I{0.0, 1.0};

// Everything a jump condition can read at x1 = 0.
struct InterfaceValues {
  Eigen::Vector3cd u_minus = Eigen::Vector3cd::Zero(), f = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd u_plus = Eigen::Vector3cd::Zero(), t = Eigen::Vector3cd::Zero();
  Eigen::Matrix3cd P = Eigen::Matrix3cd::Zero(), tau = Eigen::Matrix3cd::Zero();
};

enum class Quantity { UMinus, F, UPlus, T, P, Tau };

struct Term {
  Quantity q;
  int i, j;
  double sign;
};

struct Condition {
  std::string label;
  std::vector<Term> terms;
};

cd evaluate(const Condition &c, const InterfaceValues &v) {
  cd acc = 0;
  for (const Term &t : c.terms) {
    cd x = 0;
    switch (t.q) {
    case Quantity::UMinus: x = v.u_minus(t.i); break;
    case Quantity::F: x = v.f(t.i); break;
    case Quantity::UPlus: x = v.u_plus(t.i); break;
    case Quantity::T: x = v.t(t.i); break;
    case Quantity::P: x = v.P(t.i, t.j); break;
    case Quantity::Tau: x = v.tau(t.i, t.j); break;
    }
    acc += t.sign * x;
  }
  return acc;
}

// Micro-distortion components carrying an interface condition.
std::vector<std::pair<int, int>> micro_components(Flavor flavor) {
  switch (flavor) {
  case Flavor::Relaxed: return {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {0, 1}, {0, 2}};
  case Flavor::Mindlin: {
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) all.emplace_back(i, j);
    return all;
  }
  case Flavor::InternalVariable: return {};
  }
  return {};
}

enum class MacroRule { Clamp, Free, Fixed };
enum class MicroRule { FixedP, FreeTau };

std::vector<Condition> conditions(ConnectionType c, Flavor flavor) {
  MacroRule macro = MacroRule::Clamp;
  MicroRule micro = MicroRule::FixedP;
  switch (c) {
  case ConnectionType::MacroClampFixedMicro: break;
  case ConnectionType::MacroClampFreeMicro: micro = MicroRule::FreeTau; break;
  case ConnectionType::FreeBoundary: macro = MacroRule::Free; micro = MicroRule::FreeTau; break;
  case ConnectionType::FixedBoundary: macro = MacroRule::Fixed; break;
  case ConnectionType::FreeMacroFixedMicro: macro = MacroRule::Free; break;
  case ConnectionType::FixedMacroFreeMicro: macro = MacroRule::Fixed; micro = MicroRule::FreeTau; break;
  }

  std::vector<Condition> rows;
  const std::string ax[3] = {"1", "2", "3"};
  for (int i = 0; i < 3; ++i) {
    switch (macro) {
    case MacroRule::Clamp:
      rows.push_back({"u" + ax[i] + "+ - u" + ax[i] + "-", {{Quantity::UPlus, i, 0, 1}, {Quantity::UMinus, i, 0, -1}}});
      break;
    case MacroRule::Free: rows.push_back({"f" + ax[i], {{Quantity::F, i, 0, 1}}}); break;
    case MacroRule::Fixed: rows.push_back({"u" + ax[i] + "-", {{Quantity::UMinus, i, 0, 1}}}); break;
    }
  }
  for (int i = 0; i < 3; ++i) {
    switch (macro) {
    case MacroRule::Clamp:
      rows.push_back({"t" + ax[i] + " - f" + ax[i], {{Quantity::T, i, 0, 1}, {Quantity::F, i, 0, -1}}});
      break;
    case MacroRule::Free: rows.push_back({"t" + ax[i], {{Quantity::T, i, 0, 1}}}); break;
    case MacroRule::Fixed: rows.push_back({"u" + ax[i] + "+", {{Quantity::UPlus, i, 0, 1}}}); break;
    }
  }
  for (const auto &[i, j] : micro_components(flavor)) {
    if (micro == MicroRule::FixedP)
      rows.push_back({"P" + ax[i] + ax[j], {{Quantity::P, i, j, 1}}});
    else
      rows.push_back({"tau" + ax[i] + ax[j], {{Quantity::Tau, i, j, 1}}});
  }
  return rows;
}

InterfaceValues cauchy_values(const std::vector<CauchyWave> &waves, double omega,
                              const CauchyMaterial &m) {
  InterfaceValues v;
  const CauchyState s = evaluate_cauchy(waves, omega, 0.0, 0.0);
  v.u_minus = s.u;
  v.f = cauchy_traction(s.u_x, m);
  return v;
}

InterfaceValues micro_values(const std::vector<WaveTerm> &waves, const MicromorphicMaterial &m) {
  InterfaceValues v;
  const ReducedState s = evaluate_reduced(waves, 0.0, 0.0);
  const FieldState fs = to_fields(s);
  v.u_plus = fs.u;
  v.P = fs.P;
  v.t = traction_micromorphic(s, m);
  v.tau = double_force(s, m);
  return v;
}

// Splits one wave's interface values into the contribution of every nonzero slot of
// (v, v'), so a traction that is a small difference of large addends is measured
// against those addends.
void slot_values(const ReducedState &s, const MicromorphicMaterial &m, std::vector<InterfaceValues> &out) {
  auto emit = [&](const ReducedState &one) {
    InterfaceValues v;
    const FieldState fs = to_fields(one);
    v.u_plus = fs.u;
    v.P = fs.P;
    v.t = traction_micromorphic(one, m);
    v.tau = double_force(one, m);
    out.push_back(v);
  };
  for (int d = 0; d < 2; ++d) {
    const FamilyVars &src = d == 0 ? s.v : s.dv;
    for (int f = 0; f < 3; ++f)
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3cd &vec = f == 0 ? src.v1 : f == 1 ? src.v2 : src.v3;
        if (vec(i) == cd(0)) continue;
        ReducedState one;
        FamilyVars &dst = d == 0 ? one.v : one.dv;
        (f == 0 ? dst.v1 : f == 1 ? dst.v2 : dst.v3)(i) = vec(i);
        emit(one);
      }
    for (cd FamilyVars::*slot : {&FamilyVars::v4, &FamilyVars::v5, &FamilyVars::v6}) {
      if (src.*slot == cd(0)) continue;
      ReducedState one;
      (d == 0 ? one.v : one.dv).*slot = src.*slot;
      emit(one);
    }
  }
}

std::vector<BranchRoot> transmitted_basis(const MicromorphicMaterial &m, double omega) {
  std::vector<BranchRoot> basis;
  for (WaveFamily f : all_families)
    for (const BranchRoot &b : roots_k_of_omega(m, f, omega)) basis.push_back(b);
  return basis;
}

void check_incident(const IncidentWave &inc) {
  if (!(inc.omega > 0)) throw Error(ErrorKind::SingularSystem, "incident omega must be positive");
}

} // namespace

cd ScatteringSolution::amplitude(WaveFamily f, int index) const {
  for (size_t i = 0; i < branches.size(); ++i)
    if (branches[i].family == f && branches[i].index == index) return transmitted[i];
  return 0.0;
}

std::vector<WaveTerm> ScatteringSolution::transmitted_terms() const {
  std::vector<WaveTerm> terms;
  for (size_t i = 0; i < branches.size(); ++i) terms.push_back({branches[i], transmitted[i]});
  return terms;
}

std::vector<CauchyWave> ScatteringSolution::incident_waves() const {
  std::vector<CauchyWave> w;
  for (int i = 0; i < 3; ++i) w.push_back({i, k_cauchy[i], incident.alpha_bar(i)});
  return w;
}

std::vector<CauchyWave> ScatteringSolution::reflected_waves() const {
  std::vector<CauchyWave> w;
  for (int i = 0; i < 3; ++i) w.push_back({i, -k_cauchy[i], reflected(i)});
  return w;
}

int ScatteringSolution::propagating_transmitted() const {
  return static_cast<int>(std::count_if(branches.begin(), branches.end(), [](const BranchRoot &b) {
    return b.kind == BranchKind::Propagating;
  }));
}

AssembledSystem assemble_system(const CauchyMaterial &cauchy, const MicromorphicMaterial &micro,
                                ConnectionType connection, const IncidentWave &incident) {
  check_incident(incident);
  AssembledSystem sys;
  sys.k_cauchy = cauchy_wavenumbers(cauchy, incident.omega);
  sys.branches = transmitted_basis(micro, incident.omega);
  const std::vector<Condition> rows = conditions(connection, micro.flavor);

  const Eigen::Index n = 3 + static_cast<Eigen::Index>(sys.branches.size());
  if (static_cast<Eigen::Index>(rows.size()) != n)
    throw Error(ErrorKind::SingularSystem, "condition count " + std::to_string(rows.size()) +
                                               " differs from unknown count " + std::to_string(n));

  std::vector<InterfaceValues> cols;
  for (int i = 0; i < 3; ++i)
    cols.push_back(cauchy_values({{i, -sys.k_cauchy[i], 1.0}}, incident.omega, cauchy));
  for (const BranchRoot &b : sys.branches) cols.push_back(micro_values({{b, 1.0}}, micro));
  std::vector<CauchyWave> inc;
  for (int i = 0; i < 3; ++i) inc.push_back({i, sys.k_cauchy[i], incident.alpha_bar(i)});
  const InterfaceValues inc_values = cauchy_values(inc, incident.omega, cauchy);

  sys.matrix.resize(n, n);
  sys.rhs.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    sys.row_labels.push_back(rows[r].label);
    for (Eigen::Index c = 0; c < n; ++c) sys.matrix(r, c) = evaluate(rows[r], cols[c]);
    sys.rhs(r) = -evaluate(rows[r], inc_values);
  }
  return sys;
}

AssembledSystem assemble_system(const Medium &left, const Medium &right, ConnectionType connection,
                                const IncidentWave &incident) {
  const auto *c = std::get_if<CauchyMaterial>(&left);
  const auto *m = std::get_if<MicromorphicMaterial>(&right);
  if (!c || !m)
    throw Error(ErrorKind::UnsupportedPair, "only Cauchy (x1 < 0) / micromorphic (x1 > 0) is solved");
  return assemble_system(*c, *m, connection, incident);
}

ScatteringSolution solve_scattering(const CauchyMaterial &cauchy, const MicromorphicMaterial &micro,
                                    ConnectionType connection, const IncidentWave &incident) {
  const AssembledSystem sys = assemble_system(cauchy, micro, connection, incident);
  const Eigen::Index n = sys.matrix.rows();

  // Rows mix Pa, m and Pa*m; equilibrate rows then columns before eliminating.
  Eigen::MatrixXcd a = sys.matrix;
  Eigen::VectorXcd b = sys.rhs;
  for (Eigen::Index r = 0; r < n; ++r) {
    const double s = a.row(r).cwiseAbs().maxCoeff();
    if (s > 0) {
      a.row(r) /= s;
      b(r) /= s;
    }
  }
  Eigen::VectorXd col_scale = Eigen::VectorXd::Ones(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const double s = a.col(c).cwiseAbs().maxCoeff();
    if (s > 0) {
      col_scale(c) = s;
      a.col(c) /= s;
    }
  }
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  if (trivially_reflecting(connection)) {
    // The first three rows act on the Cauchy side only and the rest form a homogeneous
    // micro block, so the transmitted amplitudes vanish. Solving the Cauchy block alone
    // also covers frequencies where the micro block degenerates (a root escaping to
    // infinity at a horizontal asymptote).
    x.head(3) = solve_dense(a.topLeftCorner(3, 3), b.head(3));
  } else {
    x = solve_dense(a, b);
  }
  for (Eigen::Index c = 0; c < n; ++c) x(c) /= col_scale(c);

  ScatteringSolution sol;
  sol.connection = connection;
  sol.incident = incident;
  sol.k_cauchy = sys.k_cauchy;
  sol.branches = sys.branches;
  sol.reflected = x.head(3);
  for (Eigen::Index c = 3; c < n; ++c) sol.transmitted.push_back(x(c));
  sol.residual = boundary_residual(sol, cauchy, micro);
  if (!(sol.residual <= 1e-9))
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "boundary residual %.3e at omega = %.6e", sol.residual, incident.omega);
    throw Error(ErrorKind::ResidualTooLarge, buf);
  }

  if (!trivially_reflecting(connection)) {
    const double amax = x.cwiseAbs().maxCoeff();
    for (WaveFamily f : {WaveFamily::UncoupledSym23, WaveFamily::UncoupledSkew23})
      if (std::abs(sol.amplitude(f)) > 1e-12 * amax)
        throw Error(ErrorKind::DeadModeActivated, std::string(to_string(f)) + " amplitude is nonzero");
  }
  return sol;
}

double boundary_residual(const ScatteringSolution &sol, const CauchyMaterial &cauchy,
                         const MicromorphicMaterial &micro) {
  const double omega = sol.incident.omega;
  std::vector<CauchyWave> left = sol.incident_waves();
  for (const CauchyWave &w : sol.reflected_waves()) left.push_back(w);
  const std::vector<WaveTerm> right = sol.transmitted_terms();

  InterfaceValues total = cauchy_values(left, omega, cauchy);
  const InterfaceValues plus = micro_values(right, micro);
  total.u_plus = plus.u_plus;
  total.t = plus.t;
  total.P = plus.P;
  total.tau = plus.tau;

  std::vector<InterfaceValues> parts;
  for (const CauchyWave &w : left) parts.push_back(cauchy_values({w}, omega, cauchy));
  for (const WaveTerm &w : right) slot_values(evaluate_reduced({w}, 0.0, 0.0), micro, parts);

  double worst = 0;
  for (const Condition &c : conditions(sol.connection, micro.flavor)) {
    double scale = 0;
    for (const InterfaceValues &p : parts) scale = std::max(scale, std::abs(evaluate(c, p)));
    if (scale == 0) continue;
    worst = std::max(worst, std::abs(evaluate(c, total)) / scale);
  }
  return worst;
}

CauchyPairSolution solve_cauchy_pair(const CauchyMaterial &left, const CauchyMaterial &right,
                                     ConnectionType connection, const IncidentWave &incident) {
  check_incident(incident);
  CauchyPairSolution sol;
  sol.connection = connection;
  sol.incident = incident;
  sol.k_left = cauchy_wavenumbers(left, incident.omega);
  sol.k_right = cauchy_wavenumbers(right, incident.omega);

  // Each polarization decouples: unknowns (reflected a, transmitted b) per component.
  const CauchySpeeds sl = cauchy_speeds(left), sr = cauchy_speeds(right);
  const double ml[3] = {left.rho * sl.c_l * sl.c_l, left.mu_macro, left.mu_macro};
  const double mr[3] = {right.rho * sr.c_l * sr.c_l, right.mu_macro, right.mu_macro};
  double worst = 0;
  for (int i = 0; i < 3; ++i) {
    const cd ai = incident.alpha_bar(i);
    const cd kl = sol.k_left[i], kr = sol.k_right[i];
    // Rows: displacement pair and stress pair at x1 = 0.
    Eigen::Matrix2cd a;
    Eigen::Vector2cd b;
    if (trivially_reflecting(connection)) {
      const bool free = connection == ConnectionType::FreeBoundary ||
                        connection == ConnectionType::FreeMacroFixedMicro;
      if (free) {
        a << ml[i] * I * (-kl), 0.0, 0.0, mr[i] * I * kr;
        b << -ml[i] * I * kl * ai, 0.0;
      } else {
        a << 1.0, 0.0, 0.0, 1.0;
        b << -ai, 0.0;
      }
    } else {
      a << -1.0, 1.0, -ml[i] * I * (-kl), mr[i] * I * kr;
      b << ai, ml[i] * I * kl * ai;
    }
    for (int r = 0; r < 2; ++r) {
      const double s = a.row(r).cwiseAbs().maxCoeff();
      a.row(r) /= s;
      b(r) /= s;
    }
    const Eigen::VectorXcd x = solve_dense(a, b);
    sol.reflected(i) = x(0);
    sol.transmitted(i) = x(1);
    const Eigen::Vector2cd res = a * x - b;
    const double scale = std::max({a.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff(),
                                   b.cwiseAbs().maxCoeff(), 1e-300});
    worst = std::max(worst, res.cwiseAbs().maxCoeff() / scale);
  }
  sol.residual = worst;
  return sol;
}

} // namespace mmw
