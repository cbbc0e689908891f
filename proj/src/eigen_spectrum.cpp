#include <Eigen/Dense>

#include <algorithm>
#include <complex>

#include "kemeny_lab/numerics.hpp"

namespace kemeny_lab::numerics {

std::vector<std::complex<double>> eigenvalues(const Matrix<double>& a) {
  if (!a.square()) raise(ErrorKind::DimensionMismatch, "eigenvalues require a square matrix");
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    raise(ErrorKind::NoConvergence, "dense eigensolver did not converge");

  std::vector<std::complex<double>> eigs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) eigs[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);

  std::sort(eigs.begin(), eigs.end(), [](const std::complex<double>& x, const std::complex<double>& y) {
    const double mx = std::abs(x);
    const double my = std::abs(y);
    if (mx != my) return mx > my;
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return eigs;
}

}  // namespace kemeny_lab::numerics
