#include "mmwave/error.hpp"
#include "mmwave/spectral.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mmw;
using mmw::test::rel_err;

namespace {

constexpr WaveFamily L = WaveFamily::Longitudinal;
constexpr WaveFamily TY = WaveFamily::TransverseY;

bool has_close(const std::vector<double> &v, double x, double tol) {
  return std::any_of(v.begin(), v.end(), [&](double y) { return rel_err(x, y) <= tol; });
}

} // namespace

TEST_CASE("characteristic polynomial equals the determinant of the dispersion matrix") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (Flavor fl : {Flavor::Relaxed, Flavor::Mindlin, Flavor::InternalVariable})
    for (WaveFamily f : {L, TY, WaveFamily::TransverseZ}) {
      const MicromorphicMaterial m = reference_micromorphic(fl);
      const double omega = 3e5;
      const ComplexPolynomial p = char_polynomial_in_k(m, f, omega);
      for (int i = 0; i < 5; ++i) {
        const cd k(1e3 * g(rng), 1e3 * g(rng));
        const cd det = dispersion_matrix(m, f, k, omega).determinant();
        CHECK(std::abs(p(k) - det) <= 1e-10 * std::abs(det));
      }
    }
}

TEST_CASE("polynomial degree and parity per flavor") {
  for (auto [fl, deg] : {std::pair{Flavor::Relaxed, 4}, {Flavor::Mindlin, 6}, {Flavor::InternalVariable, 2}})
    for (WaveFamily f : {L, TY}) {
      const ComplexPolynomial p = char_polynomial_in_k(reference_micromorphic(fl), f, 2e5);
      CHECK(p.degree() == deg);
      for (int i = 1; i <= p.degree(); i += 2) CHECK(p.coefficients[i] == cd(0));
      CHECK(expected_branch_count(fl, f) == deg / 2);
    }
  CHECK(expected_branch_count(Flavor::Relaxed, WaveFamily::UncoupledSym23) == 1);
  CHECK(expected_branch_count(Flavor::InternalVariable, WaveFamily::UncoupledSym23) == 0);
  CHECK_THROWS_AS(dispersion_matrix(reference_micromorphic(), WaveFamily::UncoupledVolDiff, 1.0, 1.0),
                  Error);
}

TEST_CASE("k = 0 cut-offs follow the micro moduli") {
  // At k = 0 only the local micro stiffness survives, so the branches sit at the
  // natural frequencies of the deviatoric, spherical and skew micro-motions.
  std::mt19937_64 rng(4);
  for (Flavor fl : {Flavor::Relaxed, Flavor::Mindlin, Flavor::InternalVariable})
    for (int i = 0; i < 20; ++i) {
      const MicromorphicMaterial m = test::random_material(rng, fl);
      const double w_s = std::sqrt(2 * (m.mu_e + m.mu_micro) / m.eta);
      const double w_r = std::sqrt(2 * m.mu_c / m.eta);
      const double w_p =
          std::sqrt((3 * m.lambda_e + 2 * m.mu_e + 3 * m.lambda_micro + 2 * m.mu_micro) / m.eta);
      const std::vector<double> l = omega_of_k(m, L, 0.0), t = omega_of_k(m, TY, 0.0);
      REQUIRE(l.size() == 3);
      REQUIRE(t.size() == 3);
      CHECK(l[0] == 0);
      CHECK(t[0] == 0);
      CHECK(has_close(l, w_s, 1e-9));
      CHECK(has_close(l, w_p, 1e-9));
      CHECK(has_close(t, w_s, 1e-9));
      CHECK(has_close(t, w_r, 1e-9));
      if (fl != Flavor::InternalVariable) {
        CHECK(rel_err(omega_of_k(m, WaveFamily::UncoupledSym23, 0.0).at(0), w_s) < 1e-12);
        CHECK(rel_err(omega_of_k(m, WaveFamily::UncoupledSkew23, 0.0).at(0), w_r) < 1e-12);
        CHECK(rel_err(omega_of_k(m, WaveFamily::UncoupledVolDiff, 0.0).at(0), w_s) < 1e-12);
      }
    }
}

TEST_CASE("roots in k solve the dispersion relation and round-trip through omega(k)") {
  std::mt19937_64 rng(8);
  for (Flavor fl : {Flavor::Relaxed, Flavor::Mindlin, Flavor::InternalVariable})
    for (int i = 0; i < 30; ++i) {
      const MicromorphicMaterial m = test::random_material(rng, fl);
      const CharacteristicQuantities q = characteristic_quantities(m);
      const double omega = test::log_uniform(rng, 1e-2, 3.0) * q.omega_s;
      for (WaveFamily f : all_families) {
        const std::vector<BranchRoot> roots = roots_k_of_omega(m, f, omega);
        CHECK(static_cast<int>(roots.size()) == expected_branch_count(fl, f));
        for (const BranchRoot &b : roots) {
          CHECK(b.k.imag() >= 0);
          if (b.kind == BranchKind::Propagating) {
            CHECK(b.k.imag() == 0);
            CHECK(branch_flux(m, b) > 0);
            CHECK(has_close(omega_of_k(m, f, std::abs(b.k.real())), omega, 1e-7));
          } else {
            CHECK(b.k.imag() > 0);
          }
          if (is_coupled(f)) {
            const Eigen::Matrix3cd a = dispersion_matrix(m, f, b.k, omega);
            CHECK((a * b.eigvec).norm() <= 1e-8 * a.norm());
          }
        }
      }
    }
}

TEST_CASE("relaxed reference material: band gap and asymptotes") {
  const MicromorphicMaterial m = reference_micromorphic();
  const CharacteristicQuantities q = characteristic_quantities(m);
  const std::vector<BandGap> gaps = band_gap(m, log_grid(1e4, 1e6, 2000));
  REQUIRE(gaps.size() == 1);
  CHECK(rel_err(gaps[0].lower, q.omega_l) < 1e-6);
  CHECK(rel_err(gaps[0].upper, q.omega_s) < 1e-6);
  for (double w : {1.01 * q.omega_l, 0.5 * (q.omega_l + q.omega_s), 0.99 * q.omega_s})
    for (WaveFamily f : all_families) CHECK(propagating_count(m, f, w) == 0);

  const std::vector<double> hl = horizontal_asymptotes(m, L), ht = horizontal_asymptotes(m, TY);
  REQUIRE(hl.size() == 1);
  REQUIRE(ht.size() == 1);
  CHECK(rel_err(hl[0], q.omega_l) < 1e-12);
  CHECK(rel_err(ht[0], q.omega_t) < 1e-12);

  const Asymptotes al = asymptotes_numeric(m, L), at = asymptotes_numeric(m, TY);
  REQUIRE(al.slopes.size() == 2);
  REQUIRE(at.slopes.size() == 2);
  CHECK(has_close(al.slopes, q.c_p, 1e-3));
  CHECK(has_close(al.slopes, q.c_m, 1e-3));
  CHECK(has_close(at.slopes, q.c_s, 1e-3));
  CHECK(has_close(at.slopes, q.c_m, 1e-3));
  REQUIRE(al.horizontal.size() == 1);
  CHECK(rel_err(al.horizontal[0], q.omega_l) < 1e-6);
}

TEST_CASE("Mindlin and Cauchy media have no gap") {
  const MicromorphicMaterial m = reference_micromorphic(Flavor::Mindlin);
  CHECK(band_gap(m, log_grid(1e4, 1e6, 2000)).empty());
  CHECK(band_gap(reference_cauchy(), log_grid(1e4, 1e6, 2000)).empty());
  const CharacteristicQuantities q = characteristic_quantities(m);
  const Asymptotes al = asymptotes_numeric(m, L), at = asymptotes_numeric(m, TY);
  REQUIRE(al.slopes.size() == 3);
  REQUIRE(at.slopes.size() == 3);
  CHECK(std::count_if(al.slopes.begin(), al.slopes.end(), [&](double s) { return rel_err(s, q.c_m) < 1e-3; }) == 2);
  CHECK(has_close(al.slopes, q.c_p, 1e-3));
  CHECK(has_close(at.slopes, q.c_s, 1e-3));
  CHECK(horizontal_asymptotes(m, L).empty());
}

TEST_CASE("uncoupled families are simple Klein-Gordon branches") {
  const MicromorphicMaterial m = reference_micromorphic();
  const CharacteristicQuantities q = characteristic_quantities(m);
  for (double k : {0.0, 10.0, 500.0, 4e3}) {
    const double w4 = omega_of_k(m, WaveFamily::UncoupledSym23, k).at(0);
    CHECK(rel_err(w4 * w4, q.omega_s * q.omega_s + q.c_m * q.c_m * k * k) < 1e-12);
    const double w5 = omega_of_k(m, WaveFamily::UncoupledSkew23, k).at(0);
    CHECK(rel_err(w5 * w5, q.omega_r * q.omega_r + q.c_m * q.c_m * k * k) < 1e-12);
    const double w6 = omega_of_k(m, WaveFamily::UncoupledVolDiff, k).at(0);
    CHECK(rel_err(w6 * w6, q.omega_s * q.omega_s + q.c_m * q.c_m * k * k) < 1e-12);
  }
  CHECK(roots_k_of_omega(m, WaveFamily::UncoupledSym23, 0.5 * q.omega_s).at(0).kind ==
        BranchKind::Evanescent);
}

TEST_CASE("Cauchy wavenumbers") {
  const std::array<double, 3> k = cauchy_wavenumbers(reference_cauchy(), 1e5);
  const CauchySpeeds s = cauchy_speeds(reference_cauchy());
  CHECK(rel_err(k[0], 1e5 / s.c_l) < 1e-15);
  CHECK(k[1] == k[2]);
  CauchyMaterial z = reference_cauchy();
  z.mu_macro = 0;
  CHECK_THROWS_AS(cauchy_wavenumbers(z, 1e5), Error);
}

TEST_CASE("grids") {
  const std::vector<double> g = log_grid(1e4, 1e6, 3);
  REQUIRE(g.size() == 3);
  CHECK(rel_err(g[1], 1e5) < 1e-14);
  CHECK(g.front() == 1e4);
  CHECK(g.back() == 1e6);
  const std::vector<double> l = lin_grid(0, 1, 5);
  CHECK(l[2] == 0.5);
}
