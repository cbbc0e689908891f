#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kemeny_lab/chain.hpp"
#include "kemeny_lab/matrix.hpp"

namespace kemeny_lab::montecarlo {

struct SimulationConfig {
  std::uint64_t trials = 100000;    // per (start, target) pair
  std::uint64_t max_steps = 1000000;  // per-trial cap; censoring is surfaced, never dropped
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: KEMENY_LAB_THREADS env var, else machine parallelism
};

struct PairEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::uint64_t censored = 0;
};

/// Sample-mean hitting times for every (start, target) pair.
struct EmpiricalMfpt {
  Matrix<double> means;
  Matrix<double> stderrs;
  Matrix<std::uint64_t> censored_counts;
};

struct EmpiricalKemeny {
  std::vector<double> k_hat;     // per-start π-weighted averages Σ_j π_j·m̂_ij
  std::vector<double> k_stderr;  // combined standard errors
  double spread = 0.0;           // max k̂_i − min k̂_i
};

/// Runs cfg.trials independent walks from `start`, counting steps until the
/// first arrival at `target` (first return when start == target, always
/// ≥ 1 step). Each trial draws from its own stream keyed by
/// (seed, start, target, trial index), so results are bitwise identical for
/// any thread count. Throws CensoringExceeded when more than 1% of trials
/// hit max_steps.
PairEstimate simulate_hitting(const chain::TransitionMatrix<double>& p, std::size_t start,
                              std::size_t target, const SimulationConfig& cfg);

EmpiricalMfpt estimate_mfpt(const chain::TransitionMatrix<double>& p, const SimulationConfig& cfg);

EmpiricalKemeny empirical_kemeny(const EmpiricalMfpt& estimate,
                                 const chain::StationaryDistribution<double>& pi);

EmpiricalKemeny empirical_kemeny(const chain::TransitionMatrix<double>& p,
                                 const chain::StationaryDistribution<double>& pi,
                                 const SimulationConfig& cfg);

/// Exact (non-simulated) total variation distances ½‖initialᵀP^m − πᵀ‖₁ for
/// m = 1…m_max. Requires a primitive chain and a valid initial distribution.
template <class S>
std::vector<S> tv_distance_curve(const chain::TransitionMatrix<S>& p, const std::vector<S>& initial,
                                 unsigned m_max) {
  if (m_max == 0) raise(ErrorKind::DimensionMismatch, "m_max must be >= 1");
  const std::size_t n = p.size();
  if (initial.size() != n) raise(ErrorKind::DimensionMismatch, "initial distribution size mismatch");
  S total(0);
  for (const S& x : initial) {
    if (x < S(0)) raise(ErrorKind::NotStochastic, "initial distribution has a negative entry");
    total += x;
  }
  if constexpr (ScalarTraits<S>::kExact) {
    if (total != S(1)) raise(ErrorKind::NotStochastic, "initial distribution does not sum to 1");
  } else {
    if (scalar_abs(total - S(1)) > S(1e-12)) raise(ErrorKind::NotStochastic, "initial distribution does not sum to 1");
  }
  if (!chain::primitivity(p).is_regular)
    raise(ErrorKind::NotRegular, "total variation curve requires a primitive chain");

  const chain::StationaryDistribution<S> pi = chain::stationary(p);
  std::vector<S> curve;
  curve.reserve(m_max);
  std::vector<S> current = initial;
  for (unsigned m = 1; m <= m_max; ++m) {
    current = transpose(p.matrix()) * current;
    S distance(0);
    for (std::size_t j = 0; j < n; ++j) distance += scalar_abs(current[j] - pi.pi[j]);
    curve.push_back(distance / S(2));
  }
  return curve;
}

}  // namespace kemeny_lab::montecarlo
