// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Requires --cli, --data, and --golden paths.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "kemeny_lab/analysis.hpp"
#include "kemeny_lab/evolution.hpp"
#include "kemeny_lab/montecarlo.hpp"
#include "test_chains.hpp"

using kemeny_lab::Matrix;
using kemeny_lab::Rational;
using kemeny_lab::ScalarTraits;
namespace analysis = kemeny_lab::analysis;
namespace chain = kemeny_lab::chain;
namespace evolution = kemeny_lab::evolution;
namespace montecarlo = kemeny_lab::montecarlo;

namespace {

constexpr std::uint64_t kCorpusSeed = 20260817;
constexpr int kCorpusSize = 200;

Rational R(long num, long den = 1) { return Rational(num, den); }

Matrix<Rational> oz_mfpt_golden() {
  Matrix<Rational> m(3, 3);
  m(0, 0) = R(5, 2);
  m(0, 1) = R(4);
  m(0, 2) = R(10, 3);
  m(1, 0) = R(8, 3);
  m(1, 1) = R(5);
  m(1, 2) = R(8, 3);
  m(2, 0) = R(10, 3);
  m(2, 1) = R(4);
  m(2, 2) = R(5, 2);
  return m;
}

Matrix<Rational> oz_mbar_inverse_golden() {
  Matrix<Rational> m(3, 3);
  m(0, 0) = R(-3, 20);
  m(0, 1) = R(3, 16);
  m(0, 2) = R(3, 20);
  m(1, 0) = R(1, 8);
  m(1, 1) = R(-5, 32);
  m(1, 2) = R(1, 8);
  m(2, 0) = R(3, 20);
  m(2, 1) = R(3, 16);
  m(2, 2) = R(-3, 20);
  return m;
}

struct CommandResult {
  std::string output;
  int exit_code = -1;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) result.output.append(buffer, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool criterion_oz_golden_values(std::string& detail) {
  const analysis::Analysis<Rational> a = analysis::analyze(test_support::oz_chain());

  const std::vector<Rational> pi_golden = {R(2, 5), R(1, 5), R(2, 5)};
  if (a.pi.pi != pi_golden) {
    detail = "stationary vector mismatch";
    return false;
  }
  const Matrix<Rational> m_golden = oz_mfpt_golden();
  if (a.m_resolvent.m != m_golden || a.m_direct.m != m_golden) {
    detail = "mean first passage matrix mismatch";
    return false;
  }
  if (a.certificate.mbar_inverse != oz_mbar_inverse_golden()) {
    detail = "deleted-diagonal inverse mismatch";
    return false;
  }
  for (const Rational& x : a.kemeny.kbar)
    if (x != R(32, 15)) {
      detail = "kbar level is not 32/15";
      return false;
    }
  if (a.kemeny.k_from_vector != R(47, 15) || a.kemeny.k_trace != R(47, 15)) {
    detail = "Kemeny constant is not 47/15";
    return false;
  }
  if (a.certificate.normalization_factor != R(32, 5)) {
    detail = "normalization factor is not 32/5";
    return false;
  }

  const evolution::LimitMfpt<Rational> limit = evolution::limit_mfpt(a.pi);
  const std::vector<Rational> limit_row = {R(5, 2), R(5), R(5, 2)};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (limit.m_limit(i, j) != limit_row[j]) {
        detail = "limit passage matrix mismatch";
        return false;
      }
  const std::vector<Rational> limit_image = limit.mbar_limit * a.pi.pi;
  for (const Rational& x : limit_image)
    if (x != R(2)) {
      detail = "deleted-diagonal limit image is not 2e";
      return false;
    }
  return true;
}

bool criterion_exact_route_agreement(std::string& detail) {
  std::mt19937_64 rng(kCorpusSeed);
  for (int t = 0; t < kCorpusSize; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
    const analysis::Analysis<Rational> a =
        analysis::analyze(test_support::random_regular_chain(rng, n));
    const std::string tag = "chain " + std::to_string(t) + " (n=" + std::to_string(n) + ")";
    if (a.m_resolvent.m != a.m_direct.m || a.mfpt_route_difference != R(0)) {
      detail = tag + ": passage-time routes disagree";
      return false;
    }
    if (a.kemeny.constancy_spread != R(0)) {
      detail = tag + ": Kemeny vector is not constant";
      return false;
    }
    if (a.kemeny.k_from_vector != a.kemeny.k_trace) {
      detail = tag + ": vector and trace routes disagree";
      return false;
    }
    if (a.pmd_identity_residual != R(0)) {
      detail = tag + ": P(M-D) = M-E fails";
      return false;
    }
    if (a.d_minus_e_residual != R(0)) {
      detail = tag + ": (D-E)pi = 0 fails";
      return false;
    }
  }
  return true;
}

bool criterion_float_spectral(std::string& detail) {
  std::mt19937_64 rng(kCorpusSeed);
  for (int t = 0; t < kCorpusSize; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
    const auto exact = test_support::random_regular_chain(rng, n);
    const auto p =
        chain::TransitionMatrix<double>::validate(kemeny_lab::to_float_matrix(exact.matrix()));
    const analysis::Analysis<double> a = analysis::analyze(p);
    const std::string tag = "chain " + std::to_string(t) + " (n=" + std::to_string(n) + ")";
    if (!a.kemeny.k_eigen.has_value()) {
      detail = tag + ": spectral route missing";
      return false;
    }
    const double k = a.kemeny.k_from_vector;
    if (a.kemeny.route_max_discrepancy > 1e-8 * k) {
      detail = tag + ": route discrepancy " +
               ScalarTraits<double>::to_string(a.kemeny.route_max_discrepancy / k) + " relative";
      return false;
    }
    if (a.kemeny.constancy_spread > 1e-9 * k) {
      detail = tag + ": Kemeny vector spread " +
               ScalarTraits<double>::to_string(a.kemeny.constancy_spread / k) + " relative";
      return false;
    }
  }
  return true;
}

bool criterion_evolution(std::string& detail) {
  const evolution::EvolutionSeries<Rational> exact = evolution::run(test_support::oz_chain(), 50);
  if (exact.steps[0].k_pipeline != R(47, 15) || exact.steps[1].k_pipeline != R(47, 15)) {
    detail = "K_1 or K_2 is not 47/15";
    return false;
  }
  const double k12 = ScalarTraits<Rational>::to_double(exact.steps[11].k_pipeline);
  if (std::fabs(k12 - 3.0) > 1e-6) {
    detail = "K_12 is not within 1e-6 of 3";
    return false;
  }
  for (std::size_t i = 0; i < 20; ++i)
    if (exact.steps[i].invariance_residual != R(0)) {
      detail = "invariance residual nonzero at step " + std::to_string(i + 1);
      return false;
    }
  if (ScalarTraits<Rational>::to_double(exact.steps[49].projector_gap) >= 1e-10) {
    detail = "projector gap at step 50 is not below 1e-10";
    return false;
  }
  if (exact.k_limit != R(3)) {
    detail = "limit constant is not 3";
    return false;
  }

  const auto p = chain::TransitionMatrix<double>::validate(
      kemeny_lab::to_float_matrix(test_support::oz_matrix()));
  const evolution::EvolutionSeries<double> floating = evolution::run(p, 10);
  for (const evolution::EvolutionStep<double>& step : floating.steps) {
    if (!step.k_eigen.has_value()) {
      detail = "spectral route missing at step " + std::to_string(step.m);
      return false;
    }
    if (std::fabs(*step.k_eigen - step.k_pipeline) > 1e-7) {
      detail = "spectral vs pipeline gap exceeds 1e-7 at step " + std::to_string(step.m);
      return false;
    }
  }
  return true;
}

bool criterion_montecarlo(std::string& detail) {
  const auto p = chain::TransitionMatrix<double>::validate(
      kemeny_lab::to_float_matrix(test_support::oz_matrix()));
  const chain::StationaryDistribution<double> pi = chain::stationary(p);
  montecarlo::SimulationConfig cfg;
  cfg.trials = 100000;
  cfg.seed = 42;
  cfg.threads = 1;

  const montecarlo::EmpiricalMfpt single = montecarlo::estimate_mfpt(p, cfg);
  const Matrix<Rational> analytic = oz_mfpt_golden();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double expected = ScalarTraits<Rational>::to_double(analytic(i, j));
      const double deviation = std::fabs(single.means(i, j) - expected);
      if (deviation > 3.0 * single.stderrs(i, j)) {
        detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                 ScalarTraits<double>::to_string(deviation / single.stderrs(i, j)) +
                 " standard errors from the analytic value";
        return false;
      }
    }

  const montecarlo::EmpiricalKemeny kemeny_hat = montecarlo::empirical_kemeny(single, pi);
  const double k = ScalarTraits<Rational>::to_double(R(47, 15));
  for (std::size_t i = 0; i < kemeny_hat.k_hat.size(); ++i)
    if (std::fabs(kemeny_hat.k_hat[i] - k) > 3.0 * kemeny_hat.k_stderr[i]) {
      detail = "empirical Kemeny average for state " + std::to_string(i) +
               " is beyond 3 combined standard errors";
      return false;
    }

  cfg.threads = 8;
  const montecarlo::EmpiricalMfpt pooled = montecarlo::estimate_mfpt(p, cfg);
  if (pooled.means != single.means || pooled.stderrs != single.stderrs ||
      pooled.censored_counts != single.censored_counts) {
    detail = "1-thread and 8-thread runs differ";
    return false;
  }
  return true;
}

bool criterion_cli_contract(const std::string& cli, const std::string& data,
                            const std::string& golden, std::string& detail) {
  const std::string oz = "'" + data + "/oz.csv'";
  const struct {
    std::string command;
    std::string golden_file;
  } cases[] = {
      {cli + " analyze " + oz, golden + "/analyze_oz.json"},
      {cli + " evolve " + oz + " --steps 10", golden + "/evolve_oz.csv"},
      {cli + " simulate " + oz + " --trials 100000 --seed 42", golden + "/simulate_oz.json"},
      {cli + " basis " + oz + " --show-tableau", golden + "/basis_oz.txt"},
  };
  for (const auto& c : cases) {
    const CommandResult result = run_command(c.command);
    if (result.exit_code != 0) {
      detail = c.command + " exited with " + std::to_string(result.exit_code);
      return false;
    }
    const std::optional<std::string> expected = read_file(c.golden_file);
    if (!expected) {
      detail = "cannot read " + c.golden_file;
      return false;
    }
    if (result.output != *expected) {
      detail = c.command + " output differs from " + c.golden_file;
      return false;
    }
  }

  const struct {
    std::string file;
    int expected_code;
  } error_cases[] = {
      {"malformed.csv", 2},
      {"not_stochastic.csv", 2},
      {"identity.csv", 3},
  };
  for (const auto& c : error_cases) {
    const CommandResult result = run_command(cli + " analyze '" + data + "/" + c.file + "'");
    if (result.exit_code != c.expected_code) {
      detail = c.file + " exited with " + std::to_string(result.exit_code) + ", expected " +
               std::to_string(c.expected_code);
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::string data;
  std::string golden;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") cli = argv[i + 1];
    else if (flag == "--data") data = argv[i + 1];
    else if (flag == "--golden") golden = argv[i + 1];
  }
  if (cli.empty() || data.empty() || golden.empty()) {
    std::cerr << "usage: acceptance_tests --cli <kemeny-lab> --data <dir> --golden <dir>\n";
    return 2;
  }

  const struct {
    std::string name;
    std::function<bool(std::string&)> body;
  } criteria[] = {
      {"worked-example golden values, exact", criterion_oz_golden_values},
      {"exact route agreement on 200 random chains", criterion_exact_route_agreement},
      {"float spectral agreement on 200 random chains", criterion_float_spectral},
      {"Kemeny time along the iterates", criterion_evolution},
      {"Monte Carlo within 3 standard errors, thread-count invariant", criterion_montecarlo},
      {"CLI byte-for-byte goldens and exit codes",
       [&](std::string& detail) { return criterion_cli_contract(cli, data, golden, detail); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].body(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    std::cout << "criterion " << (i + 1) << " (" << criteria[i].name << "): "
              << (ok ? "pass" : "FAIL") << (ok || detail.empty() ? "" : " [" + detail + "]")
              << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
