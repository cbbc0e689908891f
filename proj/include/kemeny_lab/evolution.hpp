#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kemeny_lab/chain.hpp"
#include "kemeny_lab/error.hpp"
#include "kemeny_lab/kemeny.hpp"
#include "kemeny_lab/mfpt.hpp"

namespace kemeny_lab::evolution {

template <class S>
struct EvolutionStep {
  unsigned m = 0;
  std::optional<double> k_eigen;  // float mode only
  S k_pipeline = S(0);
  S projector_gap = S(0);        // ‖P^m − eπᵀ‖_∞
  S invariance_residual = S(0);  // ‖P^m(M̄π) − M̄π‖_∞
};

/// Kemeny time along the iterates P, P², …, with the terminal values the
/// series converges to: K_L = n and the rank-one M_L.
template <class S>
struct EvolutionSeries {
  std::vector<EvolutionStep<S>> steps;
  S k_limit = S(0);  // = n
  Matrix<S> m_limit;
  Matrix<S> mbar_limit;
};

namespace detail {

inline std::vector<std::complex<double>> validated_spectrum(const chain::TransitionMatrix<double>& p) {
  std::vector<std::complex<double>> eigs = numerics::eigenvalues(p.matrix());
  std::size_t unit_count = 0;
  for (const auto& lambda : eigs) {
    if (std::abs(lambda - std::complex<double>(1.0, 0.0)) < 1e-8) {
      ++unit_count;
      continue;
    }
    if (std::abs(lambda) >= 1.0)
      raise(ErrorKind::SpectrumInvalid, "non-unit eigenvalue on or outside the unit circle");
  }
  if (unit_count != 1)
    raise(ErrorKind::SpectrumInvalid, std::to_string(unit_count) + " unit eigenvalues, expected exactly 1");
  return eigs;
}

}  // namespace detail

/// K_m = 1 + Σ_{i≥2} 1/(1−λ_i^m) for m = 1…m_max, computed from the single
/// spectrum of P by taking powers of the eigenvalues. Float mode only.
inline std::vector<double> kemeny_series(const chain::TransitionMatrix<double>& p, unsigned m_max) {
  if (m_max == 0) raise(ErrorKind::DimensionMismatch, "m_max must be >= 1");
  std::vector<std::complex<double>> eigs = detail::validated_spectrum(p);

  std::vector<std::complex<double>> non_unit;
  for (const auto& lambda : eigs)
    if (std::abs(lambda - std::complex<double>(1.0, 0.0)) >= 1e-8) non_unit.push_back(lambda);

  std::vector<double> series;
  series.reserve(m_max);
  std::vector<std::complex<double>> powers = non_unit;
  for (unsigned m = 1; m <= m_max; ++m) {
    std::complex<double> sum(0.0, 0.0);
    for (const auto& lp : powers) sum += 1.0 / (std::complex<double>(1.0, 0.0) - lp);
    if (std::abs(sum.imag()) >= 1e-9)
      raise(ErrorKind::SpectrumInvalid, "imaginary parts did not cancel at step " + std::to_string(m));
    series.push_back(1.0 + sum.real());
    for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= non_unit[i];
  }
  return series;
}

template <class S>
struct MfptStep {
  Matrix<S> m_matrix;
  S k = S(0);
};

/// Full-pipeline route: for each m the MFPT matrix of P^m and its Kemeny
/// constant. π is reused from P and re-verified per step.
template <class S>
std::vector<MfptStep<S>> mfpt_series(const chain::TransitionMatrix<S>& p, unsigned m_max) {
  if (m_max == 0) raise(ErrorKind::DimensionMismatch, "m_max must be >= 1");
  const chain::StationaryDistribution<S> pi = chain::stationary(p);
  const std::size_t n = p.size();

  std::vector<MfptStep<S>> steps;
  steps.reserve(m_max);
  for (unsigned m = 1; m <= m_max; ++m) {
    chain::TransitionMatrix<S> pm = chain::power(p, m);
    S drift = chain::stationarity_residual(pm, pi);
    if constexpr (ScalarTraits<S>::kExact) {
      if (drift != S(0)) raise(ErrorKind::SingularSystem, "stationary vector drifted under iteration");
    } else {
      if (drift > S(1e-8)) raise(ErrorKind::SingularSystem, "stationary vector drifted under iteration");
    }

    mfpt::FundamentalMatrix<S> z = mfpt::fundamental(pm, pi);
    mfpt::MfptMatrix<S> mm = mfpt::mfpt_from_fundamental(z, pi);
    std::vector<S> k = kemeny::kemeny_vector(mm, pi);
    S mean(0);
    for (const S& x : k) mean += x;
    steps.push_back(MfptStep<S>{std::move(mm.m), mean / S(static_cast<int>(n))});
  }
  return steps;
}

template <class S>
struct LimitMfpt {
  Matrix<S> m_limit;     // every row equals (1/π_1, …, 1/π_n)
  Matrix<S> mbar_limit;  // M_L with zero diagonal; satisfies M̄_L·π = (n−1)e
};

template <class S>
LimitMfpt<S> limit_mfpt(const chain::StationaryDistribution<S>& pi) {
  const std::size_t n = pi.size();
  LimitMfpt<S> out{Matrix<S>(n, n), Matrix<S>(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.m_limit(i, j) = S(1) / pi.pi[j];
      out.mbar_limit(i, j) = i == j ? S(0) : out.m_limit(i, j);
    }

  std::vector<S> image = out.mbar_limit * pi.pi;
  const S expected = S(static_cast<int>(n)) - S(1);
  for (const S& x : image) {
    S r = scalar_abs(x - expected);
    if constexpr (ScalarTraits<S>::kExact) {
      if (r != S(0)) raise(ErrorKind::SingularSystem, "limit MFPT identity violated");
    } else {
      if (r > S(1e-9)) raise(ErrorKind::SingularSystem, "limit MFPT identity violated");
    }
  }
  return out;
}

/// P^m·(M̄π) − M̄π, coordinatewise. Zero for the true stationary π.
template <class S>
std::vector<S> invariance_check(const chain::TransitionMatrix<S>& p,
                                const mfpt::DeletedDiagonalMfpt<S>& mbar,
                                const chain::StationaryDistribution<S>& pi, unsigned m) {
  if (m == 0) raise(ErrorKind::DimensionMismatch, "m must be >= 1");
  if (mbar.mbar.rows() != p.size() || pi.size() != p.size())
    raise(ErrorKind::DimensionMismatch, "inputs are not from one chain");
  std::vector<S> kbar = mbar.mbar * pi.pi;
  std::vector<S> image = chain::power(p, m).matrix() * kbar;
  for (std::size_t i = 0; i < kbar.size(); ++i) image[i] -= kbar[i];
  return image;
}

/// ‖P^m − eπᵀ‖_∞ for m = 1…m_max.
template <class S>
std::vector<S> projector_convergence(const chain::TransitionMatrix<S>& p,
                                     const chain::StationaryDistribution<S>& pi, unsigned m_max) {
  if (m_max == 0) raise(ErrorKind::DimensionMismatch, "m_max must be >= 1");
  if (!chain::primitivity(p).is_regular) raise(ErrorKind::NotRegular, "projector limit requires a primitive chain");
  const chain::LimitProjector<S> l = chain::limit_projector(pi);
  std::vector<S> gaps;
  gaps.reserve(m_max);
  Matrix<S> pm = p.matrix();
  for (unsigned m = 1; m <= m_max; ++m) {
    gaps.push_back(inf_norm(pm - l.l));
    if (m < m_max) pm = pm * p.matrix();
  }
  return gaps;
}

/// Assembles the per-step series; float mode carries both the eigenvalue
/// route and the full pipeline, rational mode the pipeline only.
template <class S>
EvolutionSeries<S> run(const chain::TransitionMatrix<S>& p, unsigned m_max) {
  if (m_max == 0) raise(ErrorKind::DimensionMismatch, "m_max must be >= 1");
  const chain::StationaryDistribution<S> pi = chain::stationary(p);
  const std::size_t n = p.size();

  std::vector<double> eigen_route;
  if constexpr (!ScalarTraits<S>::kExact) eigen_route = kemeny_series(p, m_max);

  mfpt::MfptMatrix<S> m1 = mfpt::mfpt_from_fundamental(mfpt::fundamental(p, pi), pi);
  mfpt::DeletedDiagonalMfpt<S> mbar = mfpt::deleted_diagonal(m1);
  std::vector<S> kbar = mbar.mbar * pi.pi;
  const chain::LimitProjector<S> l = chain::limit_projector(pi);

  std::vector<MfptStep<S>> pipeline = mfpt_series(p, m_max);

  EvolutionSeries<S> series;
  series.steps.reserve(m_max);
  Matrix<S> pm = p.matrix();
  for (unsigned m = 1; m <= m_max; ++m) {
    EvolutionStep<S> step;
    step.m = m;
    if constexpr (!ScalarTraits<S>::kExact) step.k_eigen = eigen_route[m - 1];
    step.k_pipeline = pipeline[m - 1].k;
    step.projector_gap = inf_norm(pm - l.l);

    std::vector<S> image = pm * kbar;
    for (std::size_t i = 0; i < n; ++i) {
      S r = scalar_abs(image[i] - kbar[i]);
      if (r > step.invariance_residual) step.invariance_residual = r;
    }
    series.steps.push_back(std::move(step));
    if (m < m_max) pm = pm * p.matrix();
  }

  series.k_limit = S(static_cast<int>(n));
  LimitMfpt<S> limit = limit_mfpt(pi);
  series.m_limit = std::move(limit.m_limit);
  series.mbar_limit = std::move(limit.mbar_limit);
  return series;
}

}  // namespace kemeny_lab::evolution
