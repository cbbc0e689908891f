#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kemeny_lab/chain.hpp"
#include "kemeny_lab/error.hpp"
#include "kemeny_lab/mfpt.hpp"

namespace kemeny_lab::kemeny {

/// The constant by every available route plus constancy diagnostics.
/// K includes the diagonal (Mπ = Ke); the kbar level K−1 comes from M̄π.
template <class S>
struct KemenyReport {
  std::vector<S> kemeny_vector;  // k = Mπ
  std::vector<S> kbar;           // M̄π = (K−1)e
  S k_from_vector = S(0);
  S k_trace = S(0);
  std::optional<double> k_eigen;  // float mode only
  S constancy_spread = S(0);      // max_i k_i − min_i k_i
  S route_max_discrepancy = S(0);
  S invariance_residual = S(0);  // max |P(M̄π) − M̄π|
};

template <class S>
std::vector<S> kemeny_vector(const mfpt::MfptMatrix<S>& m, const chain::StationaryDistribution<S>& pi) {
  if (m.m.cols() != pi.size()) raise(ErrorKind::DimensionMismatch, "M/pi size mismatch");
  return m.m * pi.pi;
}

template <class S>
S kemeny_trace(const mfpt::FundamentalMatrix<S>& z) {
  S trace(0);
  for (std::size_t i = 0; i < z.z.rows(); ++i) trace += z.z(i, i);
  return trace;
}

/// K = 1 + Σ_{i≥2} 1/(1−λ_i), summed over all non-unit eigenvalues.
/// Requires exactly one eigenvalue within 1e-8 of 1 and all others inside
/// the unit circle; conjugate symmetry must cancel imaginary parts to 1e-9.
inline double kemeny_eigen(const std::vector<std::complex<double>>& eigs) {
  std::size_t unit_count = 0;
  std::complex<double> sum(0.0, 0.0);
  for (const auto& lambda : eigs) {
    if (std::abs(lambda - std::complex<double>(1.0, 0.0)) < 1e-8) {
      ++unit_count;
      continue;
    }
    if (std::abs(lambda) >= 1.0)
      raise(ErrorKind::SpectrumInvalid, "non-unit eigenvalue on or outside the unit circle");
    sum += 1.0 / (std::complex<double>(1.0, 0.0) - lambda);
  }
  if (unit_count != 1)
    raise(ErrorKind::SpectrumInvalid, std::to_string(unit_count) + " unit eigenvalues, expected exactly 1");
  if (std::abs(sum.imag()) >= 1e-9)
    raise(ErrorKind::SpectrumInvalid, "imaginary parts did not cancel");
  return 1.0 + sum.real();
}

/// Assembles the report and verifies P·(M̄π) = M̄π directly.
/// `eigs` may only be supplied in float mode.
template <class S>
KemenyReport<S> certify(const chain::TransitionMatrix<S>& p, const mfpt::MfptMatrix<S>& m,
                        const mfpt::DeletedDiagonalMfpt<S>& mbar,
                        const mfpt::FundamentalMatrix<S>& z,
                        const chain::StationaryDistribution<S>& pi,
                        const std::optional<std::vector<std::complex<double>>>& eigs = std::nullopt) {
  const std::size_t n = pi.size();
  if (p.size() != n || m.m.rows() != n || mbar.mbar.rows() != n || z.z.rows() != n)
    raise(ErrorKind::DimensionMismatch, "certify inputs are not from one chain");
  if constexpr (ScalarTraits<S>::kExact) {
    if (eigs.has_value())
      raise(ErrorKind::UnsupportedInMode, "eigenvalue route is unavailable in rational mode");
  }

  KemenyReport<S> report;
  report.kemeny_vector = kemeny_vector(m, pi);
  report.kbar = mbar.mbar * pi.pi;

  S lo = report.kemeny_vector[0];
  S hi = report.kemeny_vector[0];
  S mean(0);
  for (const S& k : report.kemeny_vector) {
    if (k < lo) lo = k;
    if (k > hi) hi = k;
    mean += k;
  }
  report.k_from_vector = mean / S(static_cast<int>(n));
  report.constancy_spread = hi - lo;
  report.k_trace = kemeny_trace(z);

  report.route_max_discrepancy = scalar_abs(report.k_trace - report.k_from_vector);
  if (eigs.has_value()) {
    report.k_eigen = kemeny_eigen(*eigs);
    if constexpr (!ScalarTraits<S>::kExact) {
      for (S other : {report.k_from_vector, report.k_trace}) {
        S gap = scalar_abs(S(*report.k_eigen) - other);
        if (gap > report.route_max_discrepancy) report.route_max_discrepancy = gap;
      }
    }
  }

  std::vector<S> image = p.matrix() * report.kbar;
  for (std::size_t i = 0; i < n; ++i) {
    S r = scalar_abs(image[i] - report.kbar[i]);
    if (r > report.invariance_residual) report.invariance_residual = r;
  }
  return report;
}

}  // namespace kemeny_lab::kemeny
