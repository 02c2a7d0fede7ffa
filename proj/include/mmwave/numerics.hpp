#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace mmw {

using cd = std::complex<double>;

// Coefficients lowest degree first.
struct ComplexPolynomial {
  std::vector<cd> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  cd operator()(cd z) const;
  cd derivative(cd z) const;
  double max_coefficient() const;
  // Drops exactly-zero leading coefficients.
  ComplexPolynomial trimmed() const;
};

ComplexPolynomial polynomial_from_roots(const std::vector<cd> &roots, cd leading = 1.0);

// Roots with multiplicity, polished by Newton iteration. Throws ZeroPolynomial.
std::vector<cd> poly_roots(const ComplexPolynomial &p);

struct RootCluster {
  cd value;
  int multiplicity = 1;
};

// Groups roots closer than rel_tol * max(|a|, |b|).
std::vector<RootCluster> cluster_roots(const std::vector<cd> &roots, double rel_tol = 1e-7);

// Gaussian elimination with partial pivoting. Throws SingularSystem when a pivot
// falls below 1e-14 times the largest initial entry.
Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd &a, const Eigen::VectorXcd &b);

// Unit vector h with M h ~ 0; largest entry made real positive.
// Throws FullRank or AmbiguousNullspace.
Eigen::Vector3cd nullspace3(const Eigen::Matrix3cd &m);

} // namespace mmw
