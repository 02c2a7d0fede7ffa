#include "mmwave/numerics.hpp"
#include "mmwave/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace mmw {

cd ComplexPolynomial::operator()(cd z) const {
  cd acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cd ComplexPolynomial::derivative(cd z) const {
  cd acc = 0;
  for (int j = degree(); j >= 1; --j) acc = acc * z + static_cast<double>(j) * coefficients[j];
  return acc;
}

double ComplexPolynomial::max_coefficient() const {
  double m = 0;
  for (const cd &c : coefficients) m = std::max(m, std::abs(c));
  return m;
}

ComplexPolynomial ComplexPolynomial::trimmed() const {
  ComplexPolynomial p = *this;
  while (p.coefficients.size() > 1 && p.coefficients.back() == cd(0)) p.coefficients.pop_back();
  return p;
}

ComplexPolynomial polynomial_from_roots(const std::vector<cd> &roots, cd leading) {
  ComplexPolynomial p{{leading}};
  for (const cd &r : roots) {
    std::vector<cd> next(p.coefficients.size() + 1, 0.0);
    for (size_t j = 0; j < p.coefficients.size(); ++j) {
      next[j + 1] += p.coefficients[j];
      next[j] -= r * p.coefficients[j];
    }
    p.coefficients = std::move(next);
  }
  return p;
}

namespace {

// Newton steps accepted only while |p| keeps shrinking.
cd polish(const ComplexPolynomial &p, cd z) {
  double best = std::abs(p(z));
  for (int it = 0; it < 12 && best > 0; ++it) {
    const cd d = p.derivative(z);
    if (d == cd(0)) break;
    const cd next = z - p(z) / d;
    const double r = std::abs(p(next));
    if (!(r < best)) break;
    z = next;
    best = r;
  }
  return z;
}

std::vector<cd> quadratic_roots(cd c, cd b, cd a) {
  const cd sq = std::sqrt(b * b - 4.0 * a * c);
  const cd s = std::real(std::conj(b) * sq) >= 0 ? sq : -sq;
  const cd q = -0.5 * (b + s);
  if (q == cd(0)) return {0.0, 0.0};
  return {q / a, c / q};
}

} // namespace

std::vector<cd> poly_roots(const ComplexPolynomial &input) {
  if (input.max_coefficient() == 0) throw Error(ErrorKind::ZeroPolynomial, "all coefficients vanish");
  const ComplexPolynomial p = input.trimmed();

  std::vector<cd> roots;
  size_t low = 0;
  while (p.coefficients[low] == cd(0)) {
    roots.push_back(0.0);
    ++low;
  }
  const std::vector<cd> c(p.coefficients.begin() + low, p.coefficients.end());
  const int n = static_cast<int>(c.size()) - 1;

  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
  } else if (n == 2) {
    for (const cd &r : quadratic_roots(c[0], c[1], c[2])) roots.push_back(r);
  } else if (n > 2) {
    // Rescale z = s w so the monic companion entries are O(1).
    const double s = std::pow(std::abs(c[0]) / std::abs(c[n]), 1.0 / n);
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    double sj = 1.0;
    for (int j = 0; j < n; ++j) {
      comp(j, n - 1) = -c[j] * sj / (c[n] * std::pow(s, n));
      sj *= s;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()[i] * s);
  }

  for (cd &r : roots)
    if (r != cd(0)) r = polish(p, r);
  return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<cd> &roots, double rel_tol) {
  std::vector<RootCluster> out;
  for (const cd &r : roots) {
    bool merged = false;
    for (RootCluster &c : out) {
      if (std::abs(r - c.value) <= rel_tol * std::max(std::abs(r), std::abs(c.value))) {
        ++c.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back({r, 1});
  }
  return out;
}

Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd &a_in, const Eigen::VectorXcd &b_in) {
  const Eigen::Index n = a_in.rows();
  if (a_in.cols() != n || b_in.size() != n)
    throw Error(ErrorKind::SingularSystem, "matrix is not square or rhs size differs");
  Eigen::MatrixXcd a = a_in;
  Eigen::VectorXcd b = b_in;
  const double tiny = 1e-14 * a.cwiseAbs().maxCoeff();

  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (!(std::abs(a(piv, col)) > tiny))
      throw Error(ErrorKind::SingularSystem, "pivot below threshold in column " + std::to_string(col));
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      std::swap(b(piv), b(col));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col) == cd(0)) continue;
      const cd f = a(r, col) / a(col, col);
      a.row(r).tail(n - col) -= f * a.row(col).tail(n - col);
      b(r) -= f * b(col);
    }
  }
  Eigen::VectorXcd x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    cd acc = b(r);
    for (Eigen::Index j = r + 1; j < n; ++j) acc -= a(r, j) * x(j);
    x(r) = acc / a(r, r);
  }
  return x;
}

Eigen::Vector3cd nullspace3(const Eigen::Matrix3cd &m) {
  const double norm = m.norm();
  if (norm == 0) throw Error(ErrorKind::AmbiguousNullspace, "zero matrix");

  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(m, Eigen::ComputeFullV);
  const auto &sv = svd.singularValues();
  if (sv(2) > 1e-6 * norm) throw Error(ErrorKind::FullRank, "no null direction");
  if (sv(1) <= 1e-6 * norm) throw Error(ErrorKind::AmbiguousNullspace, "nullspace dimension > 1");

  // Bilinear cross product of two rows is orthogonal to both (no conjugation).
  Eigen::Vector3cd best = Eigen::Vector3cd::Zero();
  double best_rel = -1;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto &pr : pairs) {
    const Eigen::Vector3cd ri = m.row(pr[0]).transpose(), rj = m.row(pr[1]).transpose();
    const Eigen::Vector3cd x(ri(1) * rj(2) - ri(2) * rj(1), ri(2) * rj(0) - ri(0) * rj(2),
                             ri(0) * rj(1) - ri(1) * rj(0));
    const double scale = ri.norm() * rj.norm();
    const double rel = scale > 0 ? x.norm() / scale : 0.0;
    if (rel > best_rel) {
      best_rel = rel;
      best = x;
    }
  }
  Eigen::Vector3cd h = best_rel >= 1e-8 ? best : Eigen::Vector3cd(svd.matrixV().col(2));
  h /= h.norm();

  Eigen::Index imax = 0;
  for (Eigen::Index i = 1; i < 3; ++i)
    if (std::abs(h(i)) > std::abs(h(imax))) imax = i;
  h *= std::conj(h(imax)) / std::abs(h(imax));
  h(imax) = std::abs(h(imax));
  return h;
}

} // namespace mmw
