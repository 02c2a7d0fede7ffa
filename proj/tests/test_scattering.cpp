#include "mmwave/error.hpp"
#include "mmwave/scattering.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mmw;
using mmw::test::rel_err;

namespace {

const Eigen::Vector3cd polarizations[3] = {{1e-6, 0, 0}, {0, 1e-6, 0}, {0, 0, 1e-6}};

struct Sides {
  Eigen::Vector3cd u_minus, f_minus, u_plus, t_plus;
  Eigen::Matrix3cd P, tau;
  double u_scale, f_scale, P_scale, tau_scale;
};

// Interface values rebuilt from the raw fields, independently of the solver's row
// bookkeeping.
Sides sides(const ScatteringSolution &sol, const CauchyMaterial &c, const MicromorphicMaterial &m) {
  Sides s;
  const double omega = sol.incident.omega;
  std::vector<CauchyWave> left = sol.incident_waves();
  for (const CauchyWave &w : sol.reflected_waves()) left.push_back(w);
  const CauchyState cs = evaluate_cauchy(left, omega, 0.0, 0.0);
  s.u_minus = cs.u;
  s.f_minus = cauchy_traction(cs.u_x, c);
  const std::vector<WaveTerm> right = sol.transmitted_terms();
  if (right.empty()) {
    s.u_plus = s.t_plus = Eigen::Vector3cd::Zero();
    s.P = s.tau = Eigen::Matrix3cd::Zero();
  } else {
    const ReducedState rs = evaluate_reduced(right, 0.0, 0.0);
    const FieldState fs = to_fields(rs);
    s.u_plus = fs.u;
    s.P = fs.P;
    s.t_plus = traction_micromorphic(rs, m);
    s.tau = double_force(rs, m);
  }
  // Scales from the incident wave alone.
  const CauchyState inc = evaluate_cauchy(sol.incident_waves(), omega, 0.0, 0.0);
  s.u_scale = inc.u.norm();
  s.f_scale = cauchy_traction(inc.u_x, c).norm();
  s.P_scale = s.u_scale * std::abs(sol.k_cauchy[0]);
  s.tau_scale = s.f_scale * std::max(m.char_length, 1e-12);
  return s;
}

std::vector<std::pair<int, int>> micro_entries(Flavor fl) {
  std::vector<std::pair<int, int>> e;
  if (fl == Flavor::InternalVariable) return e;
  for (int i = 0; i < 3; ++i)
    for (int j = fl == Flavor::Relaxed ? 1 : 0; j < 3; ++j) e.push_back({i, j});
  return e;
}

void check_conditions(const ScatteringSolution &sol, const CauchyMaterial &c,
                      const MicromorphicMaterial &m) {
  const Sides s = sides(sol, c, m);
  const double tol = 1e-9;
  auto small_u = [&](const Eigen::Vector3cd &v) { CHECK(v.norm() <= tol * s.u_scale); };
  auto small_f = [&](const Eigen::Vector3cd &v) { CHECK(v.norm() <= tol * s.f_scale); };
  auto micro = [&](const Eigen::Matrix3cd &a, double scale) {
    for (auto [i, j] : micro_entries(m.flavor)) CHECK(std::abs(a(i, j)) <= tol * scale);
  };
  switch (sol.connection) {
  case ConnectionType::MacroClampFixedMicro:
    small_u(s.u_minus - s.u_plus);
    small_f(s.f_minus - s.t_plus);
    micro(s.P, s.P_scale);
    break;
  case ConnectionType::MacroClampFreeMicro:
    small_u(s.u_minus - s.u_plus);
    small_f(s.f_minus - s.t_plus);
    micro(s.tau, s.tau_scale);
    break;
  case ConnectionType::FreeBoundary:
    small_f(s.f_minus);
    small_f(s.t_plus);
    micro(s.tau, s.tau_scale);
    break;
  case ConnectionType::FixedBoundary:
    small_u(s.u_minus);
    small_u(s.u_plus);
    micro(s.P, s.P_scale);
    break;
  case ConnectionType::FreeMacroFixedMicro:
    small_f(s.f_minus);
    small_f(s.t_plus);
    micro(s.P, s.P_scale);
    break;
  case ConnectionType::FixedMacroFreeMicro:
    small_u(s.u_minus);
    small_u(s.u_plus);
    micro(s.tau, s.tau_scale);
    break;
  }
}

} // namespace

TEST_CASE("connection names round-trip") {
  for (ConnectionType c : all_connections) CHECK(parse_connection(to_string(c)) == c);
  CHECK(!parse_connection("glued").has_value());
  int trivial = 0;
  for (ConnectionType c : all_connections) trivial += trivially_reflecting(c);
  CHECK(trivial == 4);
}

TEST_CASE("solutions satisfy the interface conditions rebuilt from the fields") {
  const CauchyMaterial c = reference_cauchy();
  for (Flavor fl : {Flavor::Relaxed, Flavor::Mindlin, Flavor::InternalVariable}) {
    const MicromorphicMaterial m = reference_micromorphic(fl);
    for (ConnectionType conn : all_connections)
      for (const Eigen::Vector3cd &a : polarizations)
        for (double omega : {3e4, 2e5, 5e5, 9e5}) {
          CAPTURE(to_string(fl));
          CAPTURE(to_string(conn));
          CAPTURE(omega);
          const ScatteringSolution sol = solve_scattering(c, m, conn, {a, omega});
          CHECK(sol.residual <= 1e-9);
          CHECK(boundary_residual(sol, c, m) <= 1e-9);
          check_conditions(sol, c, m);
        }
  }
}

TEST_CASE("random materials and mixed polarizations") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  const CauchyMaterial c = reference_cauchy();
  for (Flavor fl : {Flavor::Relaxed, Flavor::Mindlin, Flavor::InternalVariable})
    for (int i = 0; i < 15; ++i) {
      const MicromorphicMaterial m = test::random_material(rng, fl);
      const double omega = test::log_uniform(rng, 0.05, 5.0) * characteristic_quantities(m).omega_s;
      const Eigen::Vector3cd a(cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng)));
      for (ConnectionType conn : all_connections) {
        CAPTURE(to_string(conn));
        ScatteringSolution sol;
        try {
          sol = solve_scattering(c, m, conn, {1e-6 * a, omega});
        } catch (const Error &e) {
          FAIL(e.what());
          continue;
        }
        check_conditions(sol, c, m);
      }
    }
}

TEST_CASE("boundary_residual detects perturbed solutions") {
  const CauchyMaterial c = reference_cauchy();
  const MicromorphicMaterial m = reference_micromorphic();
  ScatteringSolution sol = solve_scattering(c, m, ConnectionType::MacroClampFixedMicro, {{1e-6, 0, 0}, 3e5});
  CHECK(boundary_residual(sol, c, m) <= 1e-10);
  sol.reflected(0) += 1e-3 * std::abs(sol.reflected(0));
  CHECK(boundary_residual(sol, c, m) >= 1e-4);
  sol.reflected.setZero();
  for (cd &x : sol.transmitted) x = 0;
  CHECK(boundary_residual(sol, c, m) > 0.1);
}

TEST_CASE("solutions are continuous through the transverse asymptote") {
  // At omega = sqrt(mu_micro / eta) one transverse root escapes to infinity.
  const CauchyMaterial c = reference_cauchy();
  const MicromorphicMaterial m = reference_micromorphic();
  const double w_t = characteristic_quantities(m).omega_t;
  for (double d : {-1e-6, -1e-12, 0.0, 1e-12, 1e-6}) {
    const ScatteringSolution sol =
        solve_scattering(c, m, ConnectionType::MacroClampFixedMicro, {{0, 1e-6, 0}, w_t * (1 + d)});
    CHECK(sol.residual <= 1e-12);
  }
}

TEST_CASE("trivial connections reflect like a free or fixed Cauchy boundary") {
  const CauchyMaterial c = reference_cauchy();
  const MicromorphicMaterial m = reference_micromorphic();
  const Eigen::Vector3cd a(1e-6, cd(0, 2e-6), -3e-6);
  for (ConnectionType conn : all_connections) {
    if (!trivially_reflecting(conn)) continue;
    const ScatteringSolution sol = solve_scattering(c, m, conn, {a, 3e5});
    const bool free = conn == ConnectionType::FreeBoundary || conn == ConnectionType::FreeMacroFixedMicro;
    CHECK((sol.reflected - (free ? a : Eigen::Vector3cd(-a))).norm() <= 1e-12 * a.norm());
  }
}

TEST_CASE("clamps never excite the decoupled 23 modes") {
  const CauchyMaterial c = reference_cauchy();
  const Eigen::Vector3cd a(1e-6, 2e-6, 3e-6);
  for (Flavor fl : {Flavor::Relaxed, Flavor::Mindlin})
    for (ConnectionType conn : {ConnectionType::MacroClampFixedMicro, ConnectionType::MacroClampFreeMicro}) {
      const ScatteringSolution sol = solve_scattering(c, reference_micromorphic(fl), conn, {a, 4e5});
      double top = 0;
      for (cd x : sol.transmitted) top = std::max(top, std::abs(x));
      CHECK(std::abs(sol.amplitude(WaveFamily::UncoupledSym23)) <= 1e-12 * top);
      CHECK(std::abs(sol.amplitude(WaveFamily::UncoupledSkew23)) <= 1e-12 * top);
    }
}

TEST_CASE("internal-variable clamps coincide") {
  const CauchyMaterial c = reference_cauchy();
  const MicromorphicMaterial m = reference_micromorphic(Flavor::InternalVariable);
  const IncidentWave w{{1e-6, 0, 2e-6}, 1.5e5};
  const ScatteringSolution a = solve_scattering(c, m, ConnectionType::MacroClampFixedMicro, w);
  const ScatteringSolution b = solve_scattering(c, m, ConnectionType::MacroClampFreeMicro, w);
  CHECK((a.reflected - b.reflected).norm() <= 1e-12 * w.alpha_bar.norm());
  CHECK(a.branches.size() == 3);
}

TEST_CASE("assemble_system shapes and pair checks") {
  const CauchyMaterial c = reference_cauchy();
  const IncidentWave w{{1e-6, 0, 0}, 1e5};
  const AssembledSystem r = assemble_system(c, reference_micromorphic(), ConnectionType::MacroClampFixedMicro, w);
  CHECK(r.matrix.rows() == 12);
  CHECK(r.matrix.cols() == 12);
  CHECK(r.row_labels.size() == 12);
  const AssembledSystem md = assemble_system(c, reference_micromorphic(Flavor::Mindlin), ConnectionType::FreeBoundary, w);
  CHECK(md.matrix.rows() == 15);
  const AssembledSystem iv =
      assemble_system(c, reference_micromorphic(Flavor::InternalVariable), ConnectionType::FixedBoundary, w);
  CHECK(iv.matrix.rows() == 6);
  CHECK_THROWS_AS(assemble_system(Medium(reference_micromorphic()), Medium(c), ConnectionType::FreeBoundary, w),
                  Error);
  CHECK_THROWS_AS(assemble_system(Medium(c), Medium(c), ConnectionType::FreeBoundary, w), Error);
  CHECK_NOTHROW(assemble_system(Medium(c), Medium(reference_micromorphic()), ConnectionType::FreeBoundary, w));
}

TEST_CASE("Cauchy pair matches the impedance formula") {
  const CauchyMaterial left = reference_cauchy();
  const CauchyMaterial right{5000, 1e9, 7e8};
  const IncidentWave w{{1e-6, 2e-6, 3e-6}, 2e5};
  const CauchyPairSolution s = solve_cauchy_pair(left, right, ConnectionType::MacroClampFixedMicro, w);
  const CauchySpeeds a = cauchy_speeds(left), b = cauchy_speeds(right);
  const double z1[3] = {left.rho * a.c_l, left.rho * a.c_t, left.rho * a.c_t};
  const double z2[3] = {right.rho * b.c_l, right.rho * b.c_t, right.rho * b.c_t};
  for (int i = 0; i < 3; ++i) {
    const cd r = (z1[i] - z2[i]) / (z1[i] + z2[i]) * w.alpha_bar(i);
    const cd t = 2 * z1[i] / (z1[i] + z2[i]) * w.alpha_bar(i);
    CHECK(std::abs(s.reflected(i) - r) <= 1e-13 * std::abs(w.alpha_bar(i)));
    CHECK(std::abs(s.transmitted(i) - t) <= 1e-13 * std::abs(w.alpha_bar(i)));
  }
  const CauchyPairSolution same = solve_cauchy_pair(left, left, ConnectionType::MacroClampFreeMicro, w);
  CHECK(same.reflected.norm() <= 1e-15 * w.alpha_bar.norm());
}

TEST_CASE("bad incident waves are rejected") {
  const CauchyMaterial c = reference_cauchy();
  const MicromorphicMaterial m = reference_micromorphic();
  CHECK_THROWS(solve_scattering(c, m, ConnectionType::FreeBoundary, {{1e-6, 0, 0}, 0.0}));
  CHECK_THROWS(solve_scattering(c, m, ConnectionType::FreeBoundary, {{1e-6, 0, 0}, -1.0}));
}
