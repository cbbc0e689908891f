#include "kemeny_lab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "kemeny_lab/rng.hpp"

namespace kemeny_lab::montecarlo {

namespace {

unsigned resolve_threads(const SimulationConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("KEMENY_LAB_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Cumulative row sums for inversion sampling; the final entry is forced to
// 1 so a uniform draw can never fall off the end.
std::vector<double> cumulative_rows(const Matrix<double>& p) {
  const std::size_t n = p.rows();
  std::vector<double> cumulative(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    double run = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      run += p(i, j);
      cumulative[i * n + j] = run;
    }
    cumulative[i * n + n - 1] = 1.0;
  }
  return cumulative;
}

// Steps until first arrival at target (first return when start == target);
// 0 marks a censored trial, which is impossible as a hit count.
std::uint64_t walk_one_trial(const std::vector<double>& cumulative, std::size_t n, std::size_t start,
                             std::size_t target, std::uint64_t max_steps, rng::SplitStream& stream) {
  std::size_t state = start;
  for (std::uint64_t step = 1; step <= max_steps; ++step) {
    const double u = stream.next_uniform();
    const double* row = cumulative.data() + state * n;
    std::size_t next = 0;
    while (next + 1 < n && u >= row[next]) ++next;
    state = next;
    if (state == target) return step;
  }
  return 0;
}

struct TrialCounts {
  std::vector<std::uint32_t> steps;  // per-trial step counts, indexed by trial
  std::uint64_t censored = 0;
};

TrialCounts run_trials(const chain::TransitionMatrix<double>& p, std::size_t start, std::size_t target,
                       const SimulationConfig& cfg) {
  const std::size_t n = p.size();
  if (start >= n || target >= n) raise(ErrorKind::DimensionMismatch, "state index out of range");
  if (cfg.trials < 1 || cfg.max_steps < 1)
    raise(ErrorKind::DimensionMismatch, "trials and max_steps must be >= 1");
  if (cfg.max_steps > std::numeric_limits<std::uint32_t>::max() - 1)
    raise(ErrorKind::DimensionMismatch, "max_steps exceeds the per-trial counter range");

  const std::vector<double> cumulative = cumulative_rows(p.matrix());
  TrialCounts counts;
  counts.steps.assign(cfg.trials, 0);

  const unsigned threads = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(cfg), cfg.trials));
  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      rng::SplitStream stream(cfg.seed, start, target, trial);
      counts.steps[trial] = static_cast<std::uint32_t>(
          walk_one_trial(cumulative, n, start, target, cfg.max_steps, stream));
    }
  };

  if (threads <= 1) {
    worker(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t chunk = (cfg.trials + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, cfg.trials);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  // Aggregation below walks trials in index order, so thread count never
  // changes the result.
  for (std::uint32_t s : counts.steps)
    if (s == 0) ++counts.censored;
  return counts;
}

PairEstimate summarize(const TrialCounts& counts, const SimulationConfig& cfg) {
  if (counts.censored * 100 > cfg.trials)
    raise(ErrorKind::CensoringExceeded,
          std::to_string(counts.censored) + " of " + std::to_string(cfg.trials) +
              " trials hit the max_steps cap");

  std::uint64_t kept = 0;
  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  for (std::uint32_t s : counts.steps) {
    if (s == 0) continue;
    ++kept;
    sum += s;
    sum_sq += static_cast<unsigned __int128>(s) * s;
  }

  PairEstimate estimate;
  estimate.censored = counts.censored;
  estimate.mean = static_cast<double>(sum) / static_cast<double>(kept);
  if (kept >= 2) {
    const double num = static_cast<double>(sum_sq) -
                       static_cast<double>(sum) * static_cast<double>(sum) / static_cast<double>(kept);
    const double variance = std::max(0.0, num / static_cast<double>(kept - 1));
    estimate.stderr_of_mean = std::sqrt(variance / static_cast<double>(kept));
  } else {
    estimate.stderr_of_mean = std::numeric_limits<double>::infinity();
  }
  return estimate;
}

}  // namespace

PairEstimate simulate_hitting(const chain::TransitionMatrix<double>& p, std::size_t start,
                              std::size_t target, const SimulationConfig& cfg) {
  return summarize(run_trials(p, start, target, cfg), cfg);
}

EmpiricalMfpt estimate_mfpt(const chain::TransitionMatrix<double>& p, const SimulationConfig& cfg) {
  const std::size_t n = p.size();
  EmpiricalMfpt out{Matrix<double>(n, n), Matrix<double>(n, n), Matrix<std::uint64_t>(n, n, 0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const PairEstimate estimate = simulate_hitting(p, i, j, cfg);
      out.means(i, j) = estimate.mean;
      out.stderrs(i, j) = estimate.stderr_of_mean;
      out.censored_counts(i, j) = estimate.censored;
    }
  return out;
}

EmpiricalKemeny empirical_kemeny(const EmpiricalMfpt& estimate,
                                 const chain::StationaryDistribution<double>& pi) {
  const std::size_t n = pi.size();
  if (estimate.means.rows() != n) raise(ErrorKind::DimensionMismatch, "estimate/pi size mismatch");
  EmpiricalKemeny out;
  out.k_hat.resize(n);
  out.k_stderr.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double value = 0.0;
    double variance = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      value += pi.pi[j] * estimate.means(i, j);
      const double contribution = pi.pi[j] * estimate.stderrs(i, j);
      variance += contribution * contribution;
    }
    out.k_hat[i] = value;
    out.k_stderr[i] = std::sqrt(variance);
  }
  const auto [lo, hi] = std::minmax_element(out.k_hat.begin(), out.k_hat.end());
  out.spread = *hi - *lo;
  return out;
}

EmpiricalKemeny empirical_kemeny(const chain::TransitionMatrix<double>& p,
                                 const chain::StationaryDistribution<double>& pi,
                                 const SimulationConfig& cfg) {
  return empirical_kemeny(estimate_mfpt(p, cfg), pi);
}

}  // namespace kemeny_lab::montecarlo
