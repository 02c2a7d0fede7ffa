#include "mmwave/spectral.hpp"
#include "mmwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mmw {

const char *to_string(WaveFamily f) {
  switch (f) {
  case WaveFamily::Longitudinal: return "L";
  case WaveFamily::TransverseY: return "TY";
  case WaveFamily::TransverseZ: return "TZ";
  case WaveFamily::UncoupledSym23: return "U4";
  case WaveFamily::UncoupledSkew23: return "U5";
  case WaveFamily::UncoupledVolDiff: return "U6";
  }
  return "?";
}

namespace {

constexpr cd I{0.0, 1.0};

double curvature_modulus(const MicromorphicMaterial &m) {
  return m.mu_e * m.char_length * m.char_length;
}

// Length used to decide whether a tiny imaginary part of k is noise.
double length_scale(const MicromorphicMaterial &m) {
  return m.char_length > 0 ? m.char_length : 1.0;
}

// Polynomial in (k, s = omega^2); c[i][j] multiplies k^i s^j.
struct Poly2 {
  std::array<std::array<cd, 4>, 7> c{};
};

Poly2 mul(const Poly2 &a, const Poly2 &b) {
  Poly2 r;
  for (int i1 = 0; i1 < 7; ++i1)
    for (int j1 = 0; j1 < 4; ++j1) {
      if (a.c[i1][j1] == cd(0)) continue;
      for (int i2 = 0; i1 + i2 < 7; ++i2)
        for (int j2 = 0; j1 + j2 < 4; ++j2) r.c[i1 + i2][j1 + j2] += a.c[i1][j1] * b.c[i2][j2];
    }
  return r;
}

Poly2 sub(const Poly2 &a, const Poly2 &b) {
  Poly2 r;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 4; ++j) r.c[i][j] = a.c[i][j] - b.c[i][j];
  return r;
}

Poly2 add(const Poly2 &a, const Poly2 &b) {
  Poly2 r;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 4; ++j) r.c[i][j] = a.c[i][j] + b.c[i][j];
  return r;
}

// Null vector of the dispersion matrix after row and column equilibration. Rows mix
// macro (1/rho) and micro (1/eta) stiffness, which can differ by many orders of
// magnitude and would otherwise fool the rank test. With B = R A C, A (C y) = 0.
Eigen::Vector3cd branch_eigvec(const MicromorphicMaterial &m, WaveFamily f, cd k, double omega) {
  Eigen::Matrix3cd a = dispersion_matrix(m, f, k, omega);
  for (int r = 0; r < 3; ++r) {
    const double s = a.row(r).cwiseAbs().maxCoeff();
    if (s > 0) a.row(r) /= s;
  }
  Eigen::Vector3d col = Eigen::Vector3d::Ones();
  for (int c = 0; c < 3; ++c) {
    const double s = a.col(c).cwiseAbs().maxCoeff();
    if (s > 0) {
      col(c) = s;
      a.col(c) /= s;
    }
  }
  Eigen::Vector3cd h = nullspace3(a);
  for (int c = 0; c < 3; ++c) h(c) /= col(c);
  h /= h.norm();
  Eigen::Index imax = 0;
  for (Eigen::Index i = 1; i < 3; ++i)
    if (std::abs(h(i)) > std::abs(h(imax))) imax = i;
  h *= std::conj(h(imax)) / std::abs(h(imax));
  h(imax) = std::abs(h(imax));
  return h;
}

// Cofactor expansion keeps structural zeros exact (det A = 0 for the relaxed model,
// odd powers of k cancel term by term).
Poly2 det_polynomial(const MicromorphicMaterial &m, WaveFamily f) {
  const SystemMatrices sm = system_matrices(m, f);
  Poly2 e[3][3];
  for (int r = 0; r < 3; ++r)
    for (int q = 0; q < 3; ++q) {
      e[r][q].c[2][0] = sm.A(r, q);
      e[r][q].c[1][0] = -I * sm.B(r, q);
      e[r][q].c[0][0] = -sm.C(r, q);
      if (r == q) e[r][q].c[0][1] = -1.0;
    }
  const Poly2 m0 = sub(mul(e[1][1], e[2][2]), mul(e[1][2], e[2][1]));
  const Poly2 m1 = sub(mul(e[1][0], e[2][2]), mul(e[1][2], e[2][0]));
  const Poly2 m2 = sub(mul(e[1][0], e[2][1]), mul(e[1][1], e[2][0]));
  return add(sub(mul(e[0][0], m0), mul(e[0][1], m1)), mul(e[0][2], m2));
}

int structural_degree(Flavor flavor) {
  switch (flavor) {
  case Flavor::Relaxed: return 4;
  case Flavor::Mindlin: return 6;
  case Flavor::InternalVariable: return 2;
  }
  return 6;
}

// Polynomial in q = k^2 from the even coefficients.
ComplexPolynomial even_part(const ComplexPolynomial &p) {
  ComplexPolynomial q;
  for (int i = 0; i <= p.degree(); i += 2) q.coefficients.push_back(p.coefficients[i]);
  return q.trimmed();
}

// Rightward root from k^2: Im k >= 0, and exactly real when within tolerance.
cd rightward_k(cd q, double ell, BranchKind &kind) {
  cd k = std::sqrt(q);
  if (k.imag() < 0) k = -k;
  if (std::abs(k.imag()) <= 1e-9 * std::max(std::abs(k.real()), 1.0 / ell)) {
    kind = BranchKind::Propagating;
    return std::abs(k.real());
  }
  kind = BranchKind::Evanescent;
  return k;
}

std::vector<cd> k_squared_roots(const MicromorphicMaterial &m, WaveFamily f, double omega) {
  ComplexPolynomial pq = even_part(char_polynomial_in_k(m, f, omega));
  const int want = structural_degree(m.flavor) / 2;
  if (pq.degree() == want - 1) {
    // The leading coefficient cancelled exactly: substitute its rounding uncertainty.
    const Poly2 d = det_polynomial(m, f);
    const double s = omega * omega;
    double scale = 0;
    for (int j = 3; j >= 0; --j) scale = scale * s + std::abs(d.c[2 * want][j]);
    const double lead = std::numeric_limits<double>::epsilon() * scale;
    if (lead > 0) pq.coefficients.push_back(lead);
  }
  if (pq.degree() < 1) return {};
  return poly_roots(pq);
}

} // namespace

SystemMatrices system_matrices(const MicromorphicMaterial &m, WaveFamily f) {
  SystemMatrices s;
  s.flavor = m.flavor;
  s.coupled = is_coupled(f);
  const double c = curvature_modulus(m);
  const double eta = m.eta, rho = m.rho;
  const bool mindlin = m.flavor == Flavor::Mindlin;

  switch (f) {
  case WaveFamily::Longitudinal: {
    s.A(0, 0) = (m.lambda_e + 2 * m.mu_e) / rho;
    if (mindlin) {
      s.A(1, 1) = s.A(2, 2) = c / eta;
    } else {
      const double x = c / (3 * eta);
      s.A(1, 1) = x;
      s.A(1, 2) = -2 * x;
      s.A(2, 1) = -x;
      s.A(2, 2) = 2 * x;
    }
    s.B(0, 1) = -2 * m.mu_e / rho;
    s.B(0, 2) = -(3 * m.lambda_e + 2 * m.mu_e) / rho;
    s.B(1, 0) = 4 * m.mu_e / (3 * eta);
    s.B(2, 0) = (3 * m.lambda_e + 2 * m.mu_e) / (3 * eta);
    s.C(1, 1) = -2 * (m.mu_e + m.mu_micro) / eta;
    s.C(2, 2) = -((3 * m.lambda_e + 2 * m.mu_e) + (3 * m.lambda_micro + 2 * m.mu_micro)) / eta;
    break;
  }
  case WaveFamily::TransverseY:
  case WaveFamily::TransverseZ: {
    s.A(0, 0) = (m.mu_e + m.mu_c) / rho;
    if (mindlin) {
      s.A(1, 1) = s.A(2, 2) = c / eta;
    } else {
      const double y = c / (2 * eta);
      s.A(1, 1) = s.A(1, 2) = s.A(2, 1) = s.A(2, 2) = y;
    }
    s.B(0, 1) = -2 * m.mu_e / rho;
    s.B(0, 2) = 2 * m.mu_c / rho;
    s.B(1, 0) = m.mu_e / eta;
    s.B(2, 0) = -m.mu_c / eta;
    s.C(1, 1) = -2 * (m.mu_e + m.mu_micro) / eta;
    s.C(2, 2) = -2 * m.mu_c / eta;
    break;
  }
  case WaveFamily::UncoupledSym23:
  case WaveFamily::UncoupledVolDiff:
    s.A(0, 0) = c / eta;
    s.C(0, 0) = -2 * (m.mu_e + m.mu_micro) / eta;
    break;
  case WaveFamily::UncoupledSkew23:
    s.A(0, 0) = c / eta;
    s.C(0, 0) = -2 * m.mu_c / eta;
    break;
  }
  return s;
}

Eigen::Matrix3cd dispersion_matrix(const MicromorphicMaterial &m, WaveFamily f, cd k, double omega) {
  if (!is_coupled(f)) throw Error(ErrorKind::UncoupledFamily, to_string(f));
  const SystemMatrices s = system_matrices(m, f);
  return k * k * s.A.cast<cd>() - omega * omega * Eigen::Matrix3cd::Identity() -
         I * k * s.B.cast<cd>() - s.C.cast<cd>();
}

ComplexPolynomial char_polynomial_in_k(const MicromorphicMaterial &m, WaveFamily f, double omega) {
  if (!is_coupled(f)) throw Error(ErrorKind::UncoupledFamily, to_string(f));
  const Poly2 d = det_polynomial(m, f);
  const double s = omega * omega;
  ComplexPolynomial p;
  p.coefficients.resize(7);
  for (int i = 0; i < 7; ++i) {
    cd acc = 0;
    for (int j = 3; j >= 0; --j) acc = acc * s + d.c[i][j];
    p.coefficients[i] = acc;
  }
  const double cmax = p.max_coefficient();
  for (int i = 1; i < 7; i += 2) {
    if (std::abs(p.coefficients[i]) > 1e-12 * cmax)
      throw Error(ErrorKind::ParityViolation, "odd coefficient of k^" + std::to_string(i));
    p.coefficients[i] = 0;
  }
  const int deg = structural_degree(m.flavor);
  for (int i = deg + 1; i < 7; ++i) {
    if (std::abs(p.coefficients[i]) > 1e-12 * cmax)
      throw Error(ErrorKind::ParityViolation, "structurally zero coefficient of k^" + std::to_string(i));
  }
  p.coefficients.resize(deg + 1);
  return p.trimmed();
}

int expected_branch_count(Flavor flavor, WaveFamily f) {
  if (!is_coupled(f)) return flavor == Flavor::InternalVariable ? 0 : 1;
  return structural_degree(flavor) / 2;
}

double branch_flux(const MicromorphicMaterial &m, const BranchRoot &b) {
  const double c = curvature_modulus(m);
  const bool mindlin = m.flavor == Flavor::Mindlin;
  Eigen::Matrix3d k1 = Eigen::Matrix3d::Zero(), k0 = Eigen::Matrix3d::Zero();
  // H = v_t . (K1 v' + K0 v) per family, from H = -u_t.t - tau:P_t.
  switch (b.family) {
  case WaveFamily::Longitudinal:
    k1(0, 0) = -(m.lambda_e + 2 * m.mu_e);
    if (mindlin) {
      k1(1, 1) = -1.5 * c;
      k1(2, 2) = -3 * c;
    } else {
      k1(1, 1) = -0.5 * c;
      k1(1, 2) = k1(2, 1) = c;
      k1(2, 2) = -2 * c;
    }
    k0(0, 1) = 2 * m.mu_e;
    k0(0, 2) = 3 * m.lambda_e + 2 * m.mu_e;
    break;
  case WaveFamily::TransverseY:
  case WaveFamily::TransverseZ:
    k1(0, 0) = -(m.mu_e + m.mu_c);
    if (mindlin) {
      k1(1, 1) = k1(2, 2) = -2 * c;
    } else {
      k1(1, 1) = k1(1, 2) = k1(2, 1) = k1(2, 2) = -c;
    }
    k0(0, 1) = 2 * m.mu_e;
    k0(0, 2) = -2 * m.mu_c;
    break;
  case WaveFamily::UncoupledSym23:
  case WaveFamily::UncoupledSkew23:
    k1(0, 0) = -2 * c;
    break;
  case WaveFamily::UncoupledVolDiff:
    k1(0, 0) = -0.5 * c;
    break;
  }
  const Eigen::Vector3cd h = b.eigvec;
  const Eigen::Vector3cd vt = -I * b.omega * h;
  const Eigen::Vector3cd g = k1.cast<cd>() * (I * b.k * h) + k0.cast<cd>() * h;
  return 0.5 * std::real(vt.dot(g)); // dot conjugates its left operand
}

std::vector<BranchRoot> roots_k_of_omega(const MicromorphicMaterial &m, WaveFamily f, double omega) {
  const double ell = length_scale(m);
  std::vector<BranchRoot> out;

  if (!is_coupled(f)) {
    const SystemMatrices s = system_matrices(m, f);
    if (s.A(0, 0) == 0) return out; // no spatial coupling: only uniform oscillators
    BranchRoot b;
    b.family = f;
    b.omega = omega;
    b.k = rightward_k((omega * omega + s.C(0, 0)) / s.A(0, 0), ell, b.kind);
    out.push_back(b);
    return out;
  }

  const std::vector<cd> qs = k_squared_roots(m, f, omega);
  for (const RootCluster &cl : cluster_roots(qs))
    if (cl.multiplicity > 1)
      throw Error(ErrorKind::AmbiguousNullspace, std::string("repeated dispersion root in family ") +
                                                     to_string(f));
  for (const cd &q : qs) {
    BranchRoot b;
    b.family = f;
    b.omega = omega;
    b.k = rightward_k(q, ell, b.kind);
    b.eigvec = branch_eigvec(m, f, b.k, omega);
    if (b.kind == BranchKind::Propagating && branch_flux(m, b) < 0) {
      // Backward wave: phase and energy travel in opposite directions.
      b.k = -b.k;
      b.eigvec = branch_eigvec(m, f, b.k, omega);
    }
    out.push_back(b);
  }
  if (static_cast<int>(out.size()) != expected_branch_count(m.flavor, f))
    throw Error(ErrorKind::BranchCountMismatch,
                std::string(to_string(f)) + ": got " + std::to_string(out.size()));

  std::stable_sort(out.begin(), out.end(), [](const BranchRoot &a, const BranchRoot &b) {
    if (a.kind != b.kind) return a.kind == BranchKind::Propagating;
    return std::abs(a.k) < std::abs(b.k);
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
  return out;
}

int propagating_count(const MicromorphicMaterial &m, WaveFamily f, double omega) {
  const double ell = length_scale(m);
  std::vector<cd> qs;
  if (is_coupled(f)) {
    qs = k_squared_roots(m, f, omega);
  } else {
    const SystemMatrices s = system_matrices(m, f);
    if (s.A(0, 0) == 0) return 0;
    qs.push_back((omega * omega + s.C(0, 0)) / s.A(0, 0));
  }
  int n = 0;
  for (const cd &q : qs) {
    BranchKind kind;
    rightward_k(q, ell, kind);
    if (kind == BranchKind::Propagating) ++n;
  }
  return n;
}

std::vector<double> omega_of_k(const MicromorphicMaterial &m, WaveFamily f, double k) {
  if (!is_coupled(f)) {
    const SystemMatrices s = system_matrices(m, f);
    return {std::sqrt(std::max(0.0, s.A(0, 0) * k * k - s.C(0, 0)))};
  }
  const Poly2 d = det_polynomial(m, f);
  ComplexPolynomial ps;
  ps.coefficients.resize(4);
  for (int j = 0; j < 4; ++j) {
    cd acc = 0;
    for (int i = 6; i >= 0; --i) acc = acc * k + d.c[i][j];
    ps.coefficients[j] = acc;
  }
  const std::vector<cd> ss = poly_roots(ps);
  double smax = 0;
  for (const cd &s : ss) smax = std::max(smax, std::abs(s));
  std::vector<double> w;
  for (const cd &s : ss) {
    if (std::abs(s.imag()) > 1e-8 * smax)
      throw Error(ErrorKind::ComplexFrequency, "omega^2 root with imaginary part");
    w.push_back(std::sqrt(std::max(0.0, s.real())));
  }
  std::sort(w.begin(), w.end());
  return w;
}

std::array<double, 3> cauchy_wavenumbers(const CauchyMaterial &m, double omega) {
  const CauchySpeeds c = cauchy_speeds(m);
  if (c.c_l == 0 || c.c_t == 0) throw Error(ErrorKind::ZeroSpeed, "Cauchy wave speed is zero");
  return {omega / c.c_l, omega / c.c_t, omega / c.c_t};
}

std::vector<BandGap> band_gap(const MicromorphicMaterial &m, const std::vector<double> &grid) {
  auto propagates = [&](double w) {
    for (WaveFamily f : all_families)
      if (propagating_count(m, f, w) > 0) return true;
    return false;
  };
  // Bisect between a propagating and a non-propagating frequency.
  auto edge = [&](double prop, double stop) {
    while (std::abs(stop - prop) > 1e-10 * std::max(std::abs(stop), std::abs(prop))) {
      const double mid = 0.5 * (prop + stop);
      (propagates(mid) ? prop : stop) = mid;
    }
    return 0.5 * (prop + stop);
  };

  std::vector<char> flag(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) flag[i] = propagates(grid[i]);

  std::vector<BandGap> gaps;
  size_t i = 0;
  while (i < grid.size()) {
    if (flag[i]) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < grid.size() && !flag[j + 1]) ++j;
    BandGap g;
    g.lower = i == 0 ? grid[0] : edge(grid[i - 1], grid[i]);
    g.upper = j + 1 == grid.size() ? grid[j] : edge(grid[j + 1], grid[j]);
    gaps.push_back(g);
    i = j + 1;
  }
  return gaps;
}

std::vector<BandGap> band_gap(const CauchyMaterial &m, const std::vector<double> &) {
  // Non-dispersive: any admissible Cauchy medium propagates at every frequency.
  validate(m);
  return {};
}

Asymptotes asymptotes_numeric(const MicromorphicMaterial &m, WaveFamily f) {
  Asymptotes a;
  a.k_probe = m.char_length > 0 ? 1e4 / m.char_length : 1e6;
  const std::vector<double> w1 = omega_of_k(m, f, a.k_probe);
  const std::vector<double> w2 = omega_of_k(m, f, 2 * a.k_probe);
  for (size_t i = 0; i < w1.size(); ++i) {
    if (w2[i] > 1.5 * w1[i])
      a.slopes.push_back(w1[i] / a.k_probe);
    else
      a.horizontal.push_back(w1[i]);
  }
  return a;
}

std::vector<double> horizontal_asymptotes(const MicromorphicMaterial &m, WaveFamily f) {
  if (!is_coupled(f)) {
    const SystemMatrices s = system_matrices(m, f);
    if (s.A(0, 0) != 0) return {};
    return {std::sqrt(-s.C(0, 0))};
  }
  const Poly2 d = det_polynomial(m, f);
  const int deg = structural_degree(m.flavor);
  ComplexPolynomial lead;
  for (int j = 0; j < 4; ++j) lead.coefficients.push_back(d.c[deg][j]);
  lead = lead.trimmed();
  if (lead.degree() < 1) return {};
  const std::vector<cd> ss = poly_roots(lead);
  std::vector<double> w;
  for (const cd &s : ss)
    if (s.real() > 0 && std::abs(s.imag()) <= 1e-8 * std::abs(s)) w.push_back(std::sqrt(s.real()));
  std::sort(w.begin(), w.end());
  return w;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  if (n > 1) {
    g.front() = lo;
    g.back() = hi;
  }
  return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

} // namespace mmw
