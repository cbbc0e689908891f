#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "kemeny_lab/analysis.hpp"
#include "kemeny_lab/error.hpp"
#include "kemeny_lab/evolution.hpp"
#include "kemeny_lab/matrix_io.hpp"
#include "kemeny_lab/montecarlo.hpp"
#include "kemeny_lab/report.hpp"

namespace py = pybind11;

using kemeny_lab::Matrix;
using kemeny_lab::Rational;
namespace analysis = kemeny_lab::analysis;
namespace chain = kemeny_lab::chain;
namespace evolution = kemeny_lab::evolution;
namespace io = kemeny_lab::io;
namespace montecarlo = kemeny_lab::montecarlo;
namespace report = kemeny_lab::report;

namespace {

py::object to_py(const report::Json& node) {
  switch (node.type()) {
    case report::Json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : node.items()) out[py::str(key)] = to_py(value);
      return out;
    }
    case report::Json::value_t::array: {
      py::list out;
      for (const auto& value : node) out.append(to_py(value));
      return out;
    }
    case report::Json::value_t::string:
      return py::str(node.get<std::string>());
    case report::Json::value_t::boolean:
      return py::bool_(node.get<bool>());
    case report::Json::value_t::number_integer:
      return py::int_(node.get<std::int64_t>());
    case report::Json::value_t::number_unsigned:
      return py::int_(node.get<std::uint64_t>());
    case report::Json::value_t::number_float:
      return py::float_(node.get<double>());
    default:
      return py::none();
  }
}

chain::TransitionMatrix<Rational> exact_chain(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t n = rows.size();
  Matrix<Rational> p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      kemeny_lab::raise(kemeny_lab::ErrorKind::ParseError,
                        "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                            " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      const std::string context = "row " + std::to_string(i + 1) + " column " + std::to_string(j + 1);
      p(i, j) = io::parse_rational_literal(rows[i][j], context);
    }
  }
  return chain::TransitionMatrix<Rational>::validate(std::move(p));
}

chain::TransitionMatrix<double> float_chain(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  Matrix<double> p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      kemeny_lab::raise(kemeny_lab::ErrorKind::ParseError,
                        "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                            " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) p(i, j) = rows[i][j];
  }
  return chain::TransitionMatrix<double>::validate(std::move(p));
}

py::object analyze_exact(const std::vector<std::vector<std::string>>& rows) {
  return to_py(report::analyze_document(analysis::analyze(exact_chain(rows))));
}

py::object analyze_float(const std::vector<std::vector<double>>& rows) {
  return to_py(report::analyze_document(analysis::analyze(float_chain(rows))));
}

py::object evolve_exact(const std::vector<std::vector<std::string>>& rows, unsigned steps) {
  const analysis::Analysis<Rational> a = analysis::analyze(exact_chain(rows));
  return to_py(report::evolve_document(a, evolution::run(a.p, steps)));
}

py::object evolve_float(const std::vector<std::vector<double>>& rows, unsigned steps) {
  const analysis::Analysis<double> a = analysis::analyze(float_chain(rows));
  return to_py(report::evolve_document(a, evolution::run(a.p, steps)));
}

py::object simulate(const std::vector<std::vector<double>>& rows, std::uint64_t trials,
                    std::uint64_t seed, std::uint64_t max_steps, unsigned threads) {
  montecarlo::SimulationConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.max_steps = max_steps;
  cfg.threads = threads;
  const analysis::Analysis<double> a = analysis::analyze(float_chain(rows));
  const montecarlo::EmpiricalMfpt empirical = montecarlo::estimate_mfpt(a.p, cfg);
  const montecarlo::EmpiricalKemeny kemeny_hat = montecarlo::empirical_kemeny(empirical, a.pi);
  return to_py(report::simulate_document(a, empirical, kemeny_hat, cfg));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Markov chain passage-time structure: stationary vector, mean first "
            "passage times, the Kemeny constant by every route, and the "
            "change-of-basis certificate.";

  py::register_exception<kemeny_lab::Error>(m, "KemenyLabError");

  m.attr("SCHEMA") = report::kSchema;

  m.def("analyze_exact", &analyze_exact, py::arg("rows"),
        "Full exact-arithmetic analysis; entries are literals like '1/2' or '0.25', "
        "rationals in the result are 'a/b' strings.");
  m.def("analyze_float", &analyze_float, py::arg("rows"),
        "Full floating-point analysis, including the spectral Kemeny route.");
  m.def("evolve_exact", &evolve_exact, py::arg("rows"), py::arg("steps") = 10,
        "Kemeny time and projector gap along the iterates, exact arithmetic.");
  m.def("evolve_float", &evolve_float, py::arg("rows"), py::arg("steps") = 10,
        "Kemeny time and projector gap along the iterates, floating point.");
  m.def("simulate", &simulate, py::arg("rows"), py::arg("trials") = 100000,
        py::arg("seed") = 0, py::arg("max_steps") = 1000000, py::arg("threads") = 0,
        "Monte Carlo hitting times with z-scores against the analytic matrix; "
        "bitwise reproducible for a fixed seed regardless of thread count.");
}
