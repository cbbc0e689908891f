#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kemeny_lab/chain.hpp"
#include "kemeny_lab/error.hpp"
#include "kemeny_lab/matrix.hpp"
#include "kemeny_lab/numerics.hpp"

namespace kemeny_lab::mfpt {

/// Fundamental matrix Z = [I − (P − A)]⁻¹ with A = eπᵀ.
template <class S>
struct FundamentalMatrix {
  Matrix<S> z;
};

/// Mean first passage times; m_ij = expected steps to first reach j from i,
/// with the diagonal holding mean return times m_ii = 1/π_i.
template <class S>
struct MfptMatrix {
  Matrix<S> m;
};

/// M with its diagonal set to zero.
template <class S>
struct DeletedDiagonalMfpt {
  Matrix<S> mbar;
};

/// Diagonal matrix of mean return times, d_ii = 1/π_i.
template <class S>
struct ReturnDiagonal {
  Matrix<S> d;
};

template <class S>
FundamentalMatrix<S> fundamental(const chain::TransitionMatrix<S>& p,
                                 const chain::StationaryDistribution<S>& pi) {
  if (pi.size() != p.size()) raise(ErrorKind::DimensionMismatch, "pi/P size mismatch");
  const std::size_t n = p.size();
  const chain::LimitProjector<S> a = chain::limit_projector(pi);
  Matrix<S> system = Matrix<S>::identity(n) - p.matrix() + a.l;
  return FundamentalMatrix<S>{numerics::gauss_jordan_invert(system).inverse};
}

/// Resolvent route: m_ij = (z_jj − z_ij)/π_j for i ≠ j, m_ii = 1/π_i.
template <class S>
MfptMatrix<S> mfpt_from_fundamental(const FundamentalMatrix<S>& z,
                                    const chain::StationaryDistribution<S>& pi) {
  const std::size_t n = pi.size();
  if (z.z.rows() != n) raise(ErrorKind::DimensionMismatch, "Z/pi size mismatch");
  Matrix<S> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = i == j ? S(1) / pi.pi[i] : (z.z(j, j) - z.z(i, j)) / pi.pi[j];
  return MfptMatrix<S>{std::move(m)};
}

/// Structural route, independent of Z and π: for each target column j the
/// first-passage relation m_ij = 1 + Σ_{k≠j} p_ik·m_kj is solved over the
/// off-diagonal unknowns; the same relation at i = j then yields the
/// diagonal, which equals 1/π_j for a regular chain.
template <class S>
MfptMatrix<S> mfpt_direct(const chain::TransitionMatrix<S>& p) {
  const std::size_t n = p.size();
  const Matrix<S>& pm = p.matrix();
  Matrix<S> m(n, n);
  if (n == 1) {
    m(0, 0) = S(1);
    return MfptMatrix<S>{std::move(m)};
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> idx;
    idx.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) idx.push_back(i);

    Matrix<S> system(n - 1, n - 1);
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        system(a, b) = (a == b ? S(1) : S(0)) - pm(idx[a], idx[b]);

    std::vector<S> column;
    try {
      column = numerics::solve_linear(system, ones_vector<S>(n - 1));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SingularMatrix)
        raise(ErrorKind::SingularSystem, "first-passage system for target " + std::to_string(j) + " is singular");
      throw;
    }

    for (std::size_t a = 0; a < idx.size(); ++a) m(idx[a], j) = column[a];
    S return_time(1);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) return_time += pm(j, k) * m(k, j);
    m(j, j) = return_time;
  }
  return MfptMatrix<S>{std::move(m)};
}

template <class S>
DeletedDiagonalMfpt<S> deleted_diagonal(const MfptMatrix<S>& m) {
  Matrix<S> mbar = m.m;
  for (std::size_t i = 0; i < mbar.rows(); ++i) mbar(i, i) = S(0);
  return DeletedDiagonalMfpt<S>{std::move(mbar)};
}

template <class S>
ReturnDiagonal<S> return_diagonal(const chain::StationaryDistribution<S>& pi) {
  const std::size_t n = pi.size();
  Matrix<S> d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = S(1) / pi.pi[i];
  return ReturnDiagonal<S>{std::move(d)};
}

/// Residual of the identity P(M−D) = M−E, where E = eeᵀ enters as an
/// entrywise shift by 1. The caller asserts this is zero.
template <class S>
Matrix<S> verify_pmd_identity(const chain::TransitionMatrix<S>& p, const MfptMatrix<S>& m,
                              const ReturnDiagonal<S>& d) {
  const std::size_t n = p.size();
  if (m.m.rows() != n || d.d.rows() != n) raise(ErrorKind::DimensionMismatch, "P/M/D size mismatch");
  Matrix<S> residual = p.matrix() * (m.m - d.d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) residual(i, j) -= m.m(i, j) - S(1);
  return residual;
}

/// (D − E)π, which vanishes because d_ii·π_i = 1 and Σπ = 1.
template <class S>
std::vector<S> d_minus_e_residual(const ReturnDiagonal<S>& d,
                                  const chain::StationaryDistribution<S>& pi) {
  const std::size_t n = pi.size();
  if (d.d.rows() != n) raise(ErrorKind::DimensionMismatch, "D/pi size mismatch");
  S total(0);
  for (const S& x : pi.pi) total += x;
  std::vector<S> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = d.d(i, i) * pi.pi[i] - total;
  return out;
}

}  // namespace kemeny_lab::mfpt
