#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "kemeny_lab/analysis.hpp"
#include "kemeny_lab/error.hpp"
#include "kemeny_lab/evolution.hpp"
#include "kemeny_lab/matrix_io.hpp"
#include "kemeny_lab/montecarlo.hpp"
#include "kemeny_lab/report.hpp"

namespace {

using namespace kemeny_lab;

// 0 success, 1 usage, 2 parse/validation, 3 non-regular chain, 4 censoring.
int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotRegular:
      return 3;
    case ErrorKind::CensoringExceeded:
      return 4;
    case ErrorKind::UnsupportedInMode:
      return 1;
    default:
      return 2;
  }
}

enum class Format { kJson, kText };

Format resolve_format(bool json, bool text, Format fallback) {
  if (json) return Format::kJson;
  if (text) return Format::kText;
  return fallback;
}

template <class S>
Matrix<S> materialize(const io::MatrixFile& file);

template <>
Matrix<Rational> materialize<Rational>(const io::MatrixFile& file) {
  return io::to_rational(file);
}

template <>
Matrix<double> materialize<double>(const io::MatrixFile& file) {
  return io::to_float(file);
}

template <class S>
analysis::Analysis<S> run_analysis(const io::MatrixFile& file) {
  return analysis::analyze(chain::TransitionMatrix<S>::validate(materialize<S>(file)));
}

struct ModeFlags {
  bool exact = false;
  bool as_float = false;
};

struct FormatFlags {
  bool json = false;
  bool text = false;
};

void add_mode_flags(CLI::App* cmd, ModeFlags& mode) {
  auto* exact = cmd->add_flag("--exact", mode.exact, "force exact rational arithmetic");
  auto* flt = cmd->add_flag("--float", mode.as_float, "force double arithmetic");
  exact->excludes(flt);
  flt->excludes(exact);
}

void add_format_flags(CLI::App* cmd, FormatFlags& fmt) {
  auto* json = cmd->add_flag("--json", fmt.json, "emit the JSON report document");
  auto* text = cmd->add_flag("--text", fmt.text, "emit a human-readable rendering");
  json->excludes(text);
  text->excludes(json);
}

// Runs `body` once with the matrix materialized in the selected mode.
template <class Body>
void with_mode(const io::MatrixFile& file, const ModeFlags& mode, Body&& body) {
  if (io::select_mode(file, mode.exact, mode.as_float) == io::NumberMode::kRational)
    body(run_analysis<Rational>(file));
  else
    body(run_analysis<double>(file));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mean first passage structure and the Kemeny constant of finite Markov chains"};
  app.require_subcommand(1);

  std::string analyze_path;
  ModeFlags analyze_mode;
  FormatFlags analyze_fmt;
  bool analyze_tableau = false;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "stationary vector, mean first passage times, Kemeny constant, basis certificate");
  analyze_cmd->add_option("matrix", analyze_path, "matrix file, CSV or JSON")->required();
  add_mode_flags(analyze_cmd, analyze_mode);
  add_format_flags(analyze_cmd, analyze_fmt);
  analyze_cmd->add_flag("--show-tableau", analyze_tableau, "include the row-reduction tableau in text output");

  std::string evolve_path;
  ModeFlags evolve_mode;
  unsigned evolve_steps = 10;
  std::string evolve_csv_path;
  bool evolve_json = false;
  CLI::App* evolve_cmd =
      app.add_subcommand("evolve", "Kemeny time and projector gap along the iterates P^m");
  evolve_cmd->add_option("matrix", evolve_path, "matrix file, CSV or JSON")->required();
  add_mode_flags(evolve_cmd, evolve_mode);
  evolve_cmd->add_option("--steps", evolve_steps, "number of iterates, m = 1..steps")
      ->check(CLI::Range(std::uint64_t(1), std::numeric_limits<std::uint64_t>::max()))
      ->capture_default_str();
  evolve_cmd->add_option("--csv", evolve_csv_path, "write the per-step CSV to this file");
  evolve_cmd->add_flag("--json", evolve_json, "emit the JSON report document instead of CSV");

  std::string simulate_path;
  FormatFlags simulate_fmt;
  montecarlo::SimulationConfig simulate_cfg;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo hitting times cross-checked against the analytic matrix");
  simulate_cmd->add_option("matrix", simulate_path, "matrix file, CSV or JSON")->required();
  simulate_cmd->add_option("--trials", simulate_cfg.trials, "walks per (start, target) pair")
      ->check(CLI::Range(std::uint64_t(1), std::numeric_limits<std::uint64_t>::max()))
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate_cfg.seed, "base seed for the per-trial streams")
      ->capture_default_str();
  simulate_cmd->add_option("--max-steps", simulate_cfg.max_steps, "per-trial step cap before censoring")
      ->check(CLI::Range(std::uint64_t(1), std::numeric_limits<std::uint64_t>::max()))
      ->capture_default_str();
  simulate_cmd->add_option("--threads", simulate_cfg.threads,
                           "worker threads, 0 = KEMENY_LAB_THREADS or machine parallelism");
  add_format_flags(simulate_cmd, simulate_fmt);

  std::string basis_path;
  ModeFlags basis_mode;
  FormatFlags basis_fmt;
  bool basis_tableau = false;
  CLI::App* basis_cmd =
      app.add_subcommand("basis", "change-of-basis certificate for the deleted-diagonal MFPT matrix");
  basis_cmd->add_option("matrix", basis_path, "matrix file, CSV or JSON")->required();
  add_mode_flags(basis_cmd, basis_mode);
  add_format_flags(basis_cmd, basis_fmt);
  basis_cmd->add_flag("--show-tableau", basis_tableau, "print the before/after row-reduction tableau");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*analyze_cmd) {
      const io::MatrixFile file = io::load_matrix_file(analyze_path);
      const Format format = resolve_format(analyze_fmt.json, analyze_fmt.text, Format::kJson);
      with_mode(file, analyze_mode, [&](const auto& a) {
        if (format == Format::kJson)
          std::cout << report::analyze_document(a).dump(2) << "\n";
        else
          std::cout << report::render_analysis_text(a, analyze_tableau);
      });
    } else if (*evolve_cmd) {
      const io::MatrixFile file = io::load_matrix_file(evolve_path);
      with_mode(file, evolve_mode, [&](const auto& a) {
        const auto series = evolution::run(a.p, evolve_steps);
        const std::string csv = report::evolve_csv(series);
        if (!evolve_csv_path.empty()) {
          std::ofstream out(evolve_csv_path, std::ios::binary);
          if (!out) raise(ErrorKind::ParseError, evolve_csv_path + ": cannot open for writing");
          out << csv;
          std::cerr << "kemeny-lab: wrote " << evolve_csv_path << "\n";
        }
        if (evolve_json)
          std::cout << report::evolve_document(a, series).dump(2) << "\n";
        else if (evolve_csv_path.empty())
          std::cout << csv;
      });
    } else if (*simulate_cmd) {
      const io::MatrixFile file = io::load_matrix_file(simulate_path);
      const Format format = resolve_format(simulate_fmt.json, simulate_fmt.text, Format::kJson);
      const auto a = run_analysis<double>(file);
      const auto empirical = montecarlo::estimate_mfpt(a.p, simulate_cfg);
      const auto kemeny_hat = montecarlo::empirical_kemeny(empirical, a.pi);
      if (format == Format::kJson)
        std::cout << report::simulate_document(a, empirical, kemeny_hat, simulate_cfg).dump(2) << "\n";
      else
        std::cout << report::render_simulate_text(a, empirical, kemeny_hat, simulate_cfg);
    } else if (*basis_cmd) {
      const io::MatrixFile file = io::load_matrix_file(basis_path);
      const Format format =
          resolve_format(basis_fmt.json, basis_fmt.text, basis_tableau ? Format::kText : Format::kJson);
      with_mode(file, basis_mode, [&](const auto& a) {
        if (format == Format::kJson)
          std::cout << report::basis_document(a).dump(2) << "\n";
        else
          std::cout << report::render_basis_text(a, basis_tableau);
      });
    }
  } catch (const Error& e) {
    std::cerr << "kemeny-lab: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "kemeny-lab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
