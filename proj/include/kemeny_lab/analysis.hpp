#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kemeny_lab/basis.hpp"
#include "kemeny_lab/chain.hpp"
#include "kemeny_lab/error.hpp"
#include "kemeny_lab/kemeny.hpp"
#include "kemeny_lab/mfpt.hpp"
#include "kemeny_lab/numerics.hpp"

namespace kemeny_lab::analysis {

/// Everything the full pipeline produces for one chain, residuals included.
template <class S>
struct Analysis {
  chain::TransitionMatrix<S> p;
  chain::PrimitivityReport primitivity;
  chain::StationaryDistribution<S> pi;
  S stationarity_residual = S(0);
  mfpt::FundamentalMatrix<S> z;
  mfpt::MfptMatrix<S> m_resolvent;
  mfpt::MfptMatrix<S> m_direct;
  S mfpt_route_difference = S(0);  // max |resolvent − direct| entrywise
  mfpt::DeletedDiagonalMfpt<S> mbar;
  mfpt::ReturnDiagonal<S> d;
  S pmd_identity_residual = S(0);  // max |P(M−D) − (M−E)|
  S d_minus_e_residual = S(0);     // max |(D−E)π|
  kemeny::KemenyReport<S> kemeny;
  basis::BasisCertificate<S> certificate;
};

/// Runs the whole pipeline: regularity, π, Z, both MFPT routes, the Kemeny
/// report (with the spectral route in float mode), and the change-of-basis
/// certificate.
template <class S>
Analysis<S> analyze(chain::TransitionMatrix<S> p) {
  chain::PrimitivityReport prim = chain::primitivity(p);
  if (!prim.is_regular)
    raise(ErrorKind::NotRegular,
          "no all-positive power up to the Wielandt bound " + std::to_string(prim.checked_bound));

  chain::StationaryDistribution<S> pi = chain::stationary(p);
  S stat_residual = chain::stationarity_residual(p, pi);

  mfpt::FundamentalMatrix<S> z = mfpt::fundamental(p, pi);
  mfpt::MfptMatrix<S> m_resolvent = mfpt::mfpt_from_fundamental(z, pi);
  mfpt::MfptMatrix<S> m_direct = mfpt::mfpt_direct(p);
  S route_difference = max_abs(m_resolvent.m - m_direct.m);

  mfpt::DeletedDiagonalMfpt<S> mbar = mfpt::deleted_diagonal(m_resolvent);
  mfpt::ReturnDiagonal<S> d = mfpt::return_diagonal(pi);
  S pmd_residual = max_abs(mfpt::verify_pmd_identity(p, m_resolvent, d));
  S dme_residual(0);
  for (const S& x : mfpt::d_minus_e_residual(d, pi)) {
    S r = scalar_abs(x);
    if (r > dme_residual) dme_residual = r;
  }

  std::optional<std::vector<std::complex<double>>> eigs;
  if constexpr (!ScalarTraits<S>::kExact) eigs = numerics::eigenvalues(p.matrix());
  kemeny::KemenyReport<S> kem = kemeny::certify(p, m_resolvent, mbar, z, pi, eigs);

  basis::BasisCertificate<S> certificate = basis::make_certificate(mbar, pi, kem.k_from_vector);

  return Analysis<S>{std::move(p),
                     prim,
                     std::move(pi),
                     std::move(stat_residual),
                     std::move(z),
                     std::move(m_resolvent),
                     std::move(m_direct),
                     std::move(route_difference),
                     std::move(mbar),
                     std::move(d),
                     std::move(pmd_residual),
                     std::move(dme_residual),
                     std::move(kem),
                     std::move(certificate)};
}

}  // namespace kemeny_lab::analysis
