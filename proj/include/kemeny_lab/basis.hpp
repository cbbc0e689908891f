#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kemeny_lab/chain.hpp"
#include "kemeny_lab/error.hpp"
#include "kemeny_lab/mfpt.hpp"
#include "kemeny_lab/numerics.hpp"

namespace kemeny_lab::basis {

/// Certificate of the change-of-basis reading of M̄π = k: the inverse and
/// its tableau, the column-combination reconstruction of k, and the
/// equiprobable pullback M̄⁻¹(e/n) rescaled onto π by n(K−1).
template <class S>
struct BasisCertificate {
  Matrix<S> mbar_inverse;
  numerics::TableauTrace<S> tableau;
  S reconstruction_residual = S(0);
  std::vector<S> pullback_vector;
  S normalization_factor = S(0);
  S pullback_residual = S(0);
};

/// Σ_j π_j · (column j of M̄), accumulated column by column. Deliberately a
/// scaled-column loop rather than the general matrix-vector product, so the
/// two code paths can be checked against each other.
template <class S>
std::vector<S> reconstruct_kemeny_vector(const mfpt::DeletedDiagonalMfpt<S>& mbar,
                                         const chain::StationaryDistribution<S>& pi) {
  const std::size_t n = pi.size();
  if (mbar.mbar.cols() != n) raise(ErrorKind::DimensionMismatch, "Mbar/pi size mismatch");
  std::vector<S> accumulated(mbar.mbar.rows(), S(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < mbar.mbar.rows(); ++i)
      accumulated[i] += pi.pi[j] * mbar.mbar(i, j);
  return accumulated;
}

template <class S>
struct InversionWithTrace {
  Matrix<S> inverse;
  numerics::TableauTrace<S> tableau;
};

/// M̄⁻¹ with the full row-reduction trace retained for report output.
template <class S>
InversionWithTrace<S> invert_with_trace(const mfpt::DeletedDiagonalMfpt<S>& mbar) {
  numerics::InversionResult<S> result = numerics::gauss_jordan_invert(mbar.mbar, /*capture_trace=*/true);
  return InversionWithTrace<S>{std::move(result.inverse), std::move(*result.trace)};
}

template <class S>
struct PullbackResult {
  std::vector<S> pullback_vector;  // M̄⁻¹ · (e/n)
  S normalization_factor = S(0);   // n(K−1)
  S residual = S(0);               // max |n(K−1)·pullback − π|
};

/// The equiprobable measure e/n carried through M̄⁻¹ lands on a multiple of
/// π; n(K−1) rescales it onto π exactly.
template <class S>
PullbackResult<S> equiprobable_pullback(const Matrix<S>& mbar_inverse,
                                        const chain::StationaryDistribution<S>& pi, const S& k) {
  const std::size_t n = pi.size();
  if (mbar_inverse.rows() != n) raise(ErrorKind::DimensionMismatch, "Mbar inverse/pi size mismatch");

  PullbackResult<S> result;
  std::vector<S> equiprobable(n, S(1) / S(static_cast<int>(n)));
  result.pullback_vector = mbar_inverse * equiprobable;
  result.normalization_factor = S(static_cast<int>(n)) * (k - S(1));
  for (std::size_t i = 0; i < n; ++i) {
    S r = scalar_abs(result.normalization_factor * result.pullback_vector[i] - pi.pi[i]);
    if (r > result.residual) result.residual = r;
  }
  return result;
}

/// Assembles the full certificate for one chain.
template <class S>
BasisCertificate<S> make_certificate(const mfpt::DeletedDiagonalMfpt<S>& mbar,
                                     const chain::StationaryDistribution<S>& pi, const S& k) {
  BasisCertificate<S> cert;
  InversionWithTrace<S> inv = invert_with_trace(mbar);
  cert.mbar_inverse = std::move(inv.inverse);
  cert.tableau = std::move(inv.tableau);

  std::vector<S> reconstructed = reconstruct_kemeny_vector(mbar, pi);
  std::vector<S> matvec = mbar.mbar * pi.pi;
  for (std::size_t i = 0; i < reconstructed.size(); ++i) {
    S r = scalar_abs(reconstructed[i] - matvec[i]);
    if (r > cert.reconstruction_residual) cert.reconstruction_residual = r;
  }

  PullbackResult<S> pullback = equiprobable_pullback(cert.mbar_inverse, pi, k);
  cert.pullback_vector = std::move(pullback.pullback_vector);
  cert.normalization_factor = pullback.normalization_factor;
  cert.pullback_residual = pullback.residual;
  return cert;
}

}  // namespace kemeny_lab::basis
