#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kemeny_lab/analysis.hpp"
#include "kemeny_lab/evolution.hpp"
#include "kemeny_lab/matrix.hpp"
#include "kemeny_lab/montecarlo.hpp"
#include "kemeny_lab/numerics.hpp"
#include "kemeny_lab/scalar.hpp"

namespace kemeny_lab::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "kemeny-lab/1";

/// Exact values always travel as "a/b" strings; floats as JSON numbers.
inline Json scalar_node(const Rational& x) { return Json(ScalarTraits<Rational>::to_string(x)); }
inline Json scalar_node(double x) { return Json(x); }

template <class S>
Json vector_node(const std::vector<S>& v) {
  Json out = Json::array();
  for (const S& x : v) out.push_back(scalar_node(x));
  return out;
}

template <class S>
Json matrix_node(const Matrix<S>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_node(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class S>
const char* mode_name() {
  return ScalarTraits<S>::kExact ? "exact" : "float";
}

namespace detail {

template <class S>
std::string format_row(const std::vector<std::vector<std::string>>& cells, std::size_t i,
                       const std::vector<std::size_t>& widths, std::size_t split) {
  std::string line = "[ ";
  for (std::size_t c = 0; c < cells[i].size(); ++c) {
    if (c == split) line += "| ";
    std::string cell = cells[i][c];
    cell.resize(widths[c], ' ');
    line += cell;
    line += c + 1 == cells[i].size() ? " ]" : "  ";
  }
  return line;
}

}  // namespace detail

/// Before/after tableau in the worked-example layout: [M̄ | I] above its
/// column labels, then the reduced [I | M̄⁻¹].
template <class S>
std::string render_tableau(const numerics::TableauTrace<S>& trace) {
  const std::size_t n = trace.initial.rows();
  const std::size_t total = trace.initial.cols();

  auto block_cells = [&](const Matrix<S>& t) {
    std::vector<std::vector<std::string>> cells(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < total; ++c) cells[i].push_back(ScalarTraits<S>::to_string(t(i, c)));
    return cells;
  };
  auto block_widths = [&](const std::vector<std::vector<std::string>>& cells,
                          const std::vector<std::string>& labels) {
    std::vector<std::size_t> widths(total, 0);
    for (std::size_t c = 0; c < total; ++c) {
      for (std::size_t i = 0; i < n; ++i)
        if (cells[i][c].size() > widths[c]) widths[c] = cells[i][c].size();
      if (!labels.empty() && labels[c].size() > widths[c]) widths[c] = labels[c].size();
    }
    return widths;
  };

  std::vector<std::string> labels;
  for (std::size_t c = 0; c < n; ++c) labels.push_back("M" + std::to_string(c + 1));
  for (std::size_t c = 0; c < n; ++c) labels.push_back("s" + std::to_string(c + 1));

  std::ostringstream out;
  const auto before = block_cells(trace.initial);
  const auto before_widths = block_widths(before, labels);
  for (std::size_t i = 0; i < n; ++i) out << detail::format_row<S>(before, i, before_widths, n) << "\n";

  std::string label_line = "  ";
  for (std::size_t c = 0; c < total; ++c) {
    if (c == n) label_line += "  ";
    std::string cell = labels[c];
    cell.resize(before_widths[c], ' ');
    label_line += cell;
    if (c + 1 < total) label_line += "  ";
  }
  while (!label_line.empty() && label_line.back() == ' ') label_line.pop_back();
  out << label_line << "\n";

  out << "  ->\n";
  const auto after = block_cells(trace.final);
  const auto after_widths = block_widths(after, {});
  for (std::size_t i = 0; i < n; ++i) out << detail::format_row<S>(after, i, after_widths, n) << "\n";
  return out.str();
}

template <class S>
Json chain_section(const analysis::Analysis<S>& a) {
  Json out;
  out["n"] = a.p.size();
  out["mode"] = mode_name<S>();
  out["regular"] = a.primitivity.is_regular;
  out["primitivity_witness"] = a.primitivity.witness_exponent ? Json(*a.primitivity.witness_exponent) : Json(nullptr);
  out["wielandt_bound"] = a.primitivity.checked_bound;
  return out;
}

template <class S>
Json stationary_section(const analysis::Analysis<S>& a) {
  Json out;
  out["pi"] = vector_node(a.pi.pi);
  out["residual"] = scalar_node(a.stationarity_residual);
  return out;
}

template <class S>
Json mfpt_section(const analysis::Analysis<S>& a) {
  Json out;
  out["fundamental"] = matrix_node(a.z.z);
  out["resolvent_route"] = matrix_node(a.m_resolvent.m);
  out["direct_route"] = matrix_node(a.m_direct.m);
  out["route_difference"] = scalar_node(a.mfpt_route_difference);
  out["deleted_diagonal"] = matrix_node(a.mbar.mbar);
  Json returns = Json::array();
  for (std::size_t i = 0; i < a.p.size(); ++i) returns.push_back(scalar_node(a.d.d(i, i)));
  out["return_times"] = std::move(returns);
  return out;
}

template <class S>
Json kemeny_section(const analysis::Analysis<S>& a) {
  const auto& k = a.kemeny;
  Json out;
  out["k"] = scalar_node(k.k_from_vector);
  out["k_minus_one"] = scalar_node(S(k.k_from_vector - S(1)));
  out["kemeny_vector"] = vector_node(k.kemeny_vector);
  out["kbar_vector"] = vector_node(k.kbar);
  out["k_from_vector"] = scalar_node(k.k_from_vector);
  out["k_trace"] = scalar_node(k.k_trace);
  if (k.k_eigen) out["k_eigen"] = *k.k_eigen;
  out["constancy_spread"] = scalar_node(k.constancy_spread);
  out["route_max_discrepancy"] = scalar_node(k.route_max_discrepancy);
  out["invariance_residual"] = scalar_node(k.invariance_residual);
  return out;
}

template <class S>
Json basis_section(const analysis::Analysis<S>& a) {
  const auto& cert = a.certificate;
  Json tableau;
  tableau["before"] = matrix_node(cert.tableau.initial);
  tableau["after"] = matrix_node(cert.tableau.final);
  Json pivots = Json::array();
  for (const auto& step : cert.tableau.pivots) {
    Json p;
    p["row"] = step.row;
    p["col"] = step.col;
    p["value"] = scalar_node(step.value);
    pivots.push_back(std::move(p));
  }
  tableau["pivots"] = std::move(pivots);
  tableau["printable"] = render_tableau(cert.tableau);

  Json out;
  out["mbar_inverse"] = matrix_node(cert.mbar_inverse);
  out["tableau"] = std::move(tableau);
  out["reconstruction_residual"] = scalar_node(cert.reconstruction_residual);
  out["pullback_vector"] = vector_node(cert.pullback_vector);
  out["normalization_factor"] = scalar_node(cert.normalization_factor);
  out["pullback_residual"] = scalar_node(cert.pullback_residual);
  return out;
}

template <class S>
Json diagnostics_section(const analysis::Analysis<S>& a) {
  Json out;
  out["stationarity_residual"] = scalar_node(a.stationarity_residual);
  out["mfpt_route_difference"] = scalar_node(a.mfpt_route_difference);
  out["pmd_identity_residual"] = scalar_node(a.pmd_identity_residual);
  out["d_minus_e_residual"] = scalar_node(a.d_minus_e_residual);
  out["kemeny_constancy_spread"] = scalar_node(a.kemeny.constancy_spread);
  out["kemeny_route_max_discrepancy"] = scalar_node(a.kemeny.route_max_discrepancy);
  out["invariance_residual"] = scalar_node(a.kemeny.invariance_residual);
  out["reconstruction_residual"] = scalar_node(a.certificate.reconstruction_residual);
  out["pullback_residual"] = scalar_node(a.certificate.pullback_residual);
  return out;
}

template <class S>
Json analyze_document(const analysis::Analysis<S>& a) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = "analyze";
  doc["chain"] = chain_section(a);
  doc["stationary"] = stationary_section(a);
  doc["mfpt"] = mfpt_section(a);
  doc["kemeny"] = kemeny_section(a);
  doc["basis"] = basis_section(a);
  doc["diagnostics"] = diagnostics_section(a);
  return doc;
}

template <class S>
Json basis_document(const analysis::Analysis<S>& a) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = "basis";
  doc["chain"] = chain_section(a);
  doc["stationary"] = stationary_section(a);
  doc["kemeny"] = kemeny_section(a);
  doc["basis"] = basis_section(a);
  doc["diagnostics"] = diagnostics_section(a);
  return doc;
}

template <class S>
Json evolution_section(const evolution::EvolutionSeries<S>& series) {
  Json steps = Json::array();
  for (const auto& step : series.steps) {
    Json s;
    s["m"] = step.m;
    if (step.k_eigen) s["k_eigen"] = *step.k_eigen;
    s["k_pipeline"] = scalar_node(step.k_pipeline);
    s["projector_gap"] = scalar_node(step.projector_gap);
    s["invariance_residual"] = scalar_node(step.invariance_residual);
    steps.push_back(std::move(s));
  }
  Json out;
  out["steps"] = std::move(steps);
  out["k_limit"] = scalar_node(series.k_limit);
  out["m_limit"] = matrix_node(series.m_limit);
  out["mbar_limit"] = matrix_node(series.mbar_limit);
  return out;
}

template <class S>
Json evolve_document(const analysis::Analysis<S>& a, const evolution::EvolutionSeries<S>& series) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = "evolve";
  doc["chain"] = chain_section(a);
  doc["stationary"] = stationary_section(a);
  doc["evolution"] = evolution_section(series);
  doc["diagnostics"] = diagnostics_section(a);
  return doc;
}

/// Per-step CSV, one row per exponent. The eigenvalue column is empty in
/// exact mode, where the spectral route does not run.
template <class S>
std::string evolve_csv(const evolution::EvolutionSeries<S>& series) {
  std::ostringstream out;
  out << "m,K_m_eigen,K_m_pipeline,projector_gap,invariance_residual\n";
  for (const auto& step : series.steps) {
    out << step.m << ",";
    if (step.k_eigen) out << ScalarTraits<double>::to_string(*step.k_eigen);
    out << "," << ScalarTraits<S>::to_string(step.k_pipeline) << ","
        << ScalarTraits<S>::to_string(step.projector_gap) << ","
        << ScalarTraits<S>::to_string(step.invariance_residual) << "\n";
  }
  return out.str();
}

inline double z_score(double observed, double expected, double se) {
  const double diff = observed - expected;
  if (std::isinf(se)) return 0.0;
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  return diff / se;
}

inline Json montecarlo_section(const montecarlo::EmpiricalMfpt& empirical,
                               const montecarlo::EmpiricalKemeny& kemeny_hat,
                               const Matrix<double>& analytic, const montecarlo::SimulationConfig& cfg) {
  const std::size_t n = analytic.rows();
  Matrix<double> z(n, n);
  double max_abs_z = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      z(i, j) = z_score(empirical.means(i, j), analytic(i, j), empirical.stderrs(i, j));
      if (std::isfinite(z(i, j)) && std::fabs(z(i, j)) > max_abs_z) max_abs_z = std::fabs(z(i, j));
    }

  Json censored = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(empirical.censored_counts(i, j));
    censored.push_back(std::move(row));
  }

  Json out;
  out["trials"] = cfg.trials;
  out["seed"] = cfg.seed;
  out["max_steps"] = cfg.max_steps;
  out["means"] = matrix_node(empirical.means);
  out["stderrs"] = matrix_node(empirical.stderrs);
  out["censored"] = std::move(censored);
  out["analytic"] = matrix_node(analytic);
  out["z_scores"] = matrix_node(z);
  out["max_abs_z"] = max_abs_z;
  Json ek;
  ek["k_hat"] = vector_node(kemeny_hat.k_hat);
  ek["k_stderr"] = vector_node(kemeny_hat.k_stderr);
  ek["spread"] = kemeny_hat.spread;
  out["empirical_kemeny"] = std::move(ek);
  return out;
}

inline Json simulate_document(const analysis::Analysis<double>& a,
                              const montecarlo::EmpiricalMfpt& empirical,
                              const montecarlo::EmpiricalKemeny& kemeny_hat,
                              const montecarlo::SimulationConfig& cfg) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = "simulate";
  doc["chain"] = chain_section(a);
  doc["stationary"] = stationary_section(a);
  doc["kemeny"] = kemeny_section(a);
  doc["montecarlo"] = montecarlo_section(empirical, kemeny_hat, a.m_resolvent.m, cfg);
  doc["diagnostics"] = diagnostics_section(a);
  return doc;
}

namespace detail {

template <class S>
void append_matrix_text(std::ostringstream& out, const Matrix<S>& m, const std::string& indent) {
  std::vector<std::size_t> widths(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      widths[j] = std::max(widths[j], ScalarTraits<S>::to_string(m(i, j)).size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << indent;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::string cell = ScalarTraits<S>::to_string(m(i, j));
      if (j + 1 < m.cols()) cell.resize(widths[j], ' ');
      out << cell;
      if (j + 1 < m.cols()) out << "  ";
    }
    out << "\n";
  }
}

template <class S>
std::string join_vector(const std::vector<S>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "  ";
    out += ScalarTraits<S>::to_string(v[i]);
  }
  return out;
}

}  // namespace detail

template <class S>
std::string render_analysis_text(const analysis::Analysis<S>& a, bool show_tableau) {
  std::ostringstream out;
  out << "chain: n=" << a.p.size() << ", mode=" << mode_name<S>() << ", regular (P^"
      << *a.primitivity.witness_exponent << " > 0, Wielandt bound " << a.primitivity.checked_bound
      << ")\n\n";
  out << "stationary pi: " << detail::join_vector(a.pi.pi) << "\n";
  out << "  residual: " << ScalarTraits<S>::to_string(a.stationarity_residual) << "\n\n";

  out << "mean first passage times (resolvent route):\n";
  detail::append_matrix_text(out, a.m_resolvent.m, "  ");
  out << "  direct-route difference: " << ScalarTraits<S>::to_string(a.mfpt_route_difference) << "\n";
  std::vector<S> returns;
  for (std::size_t i = 0; i < a.p.size(); ++i) returns.push_back(a.d.d(i, i));
  out << "mean return times: " << detail::join_vector(returns) << "\n\n";

  out << "Kemeny constant:\n";
  out << "  K (vector route) = " << ScalarTraits<S>::to_string(a.kemeny.k_from_vector) << "\n";
  out << "  K (trace route)  = " << ScalarTraits<S>::to_string(a.kemeny.k_trace) << "\n";
  if (a.kemeny.k_eigen)
    out << "  K (eigen route)  = " << ScalarTraits<double>::to_string(*a.kemeny.k_eigen) << "\n";
  out << "  K-1 = " << ScalarTraits<S>::to_string(S(a.kemeny.k_from_vector - S(1))) << "\n";
  out << "  constancy spread: " << ScalarTraits<S>::to_string(a.kemeny.constancy_spread) << "\n";
  out << "  route max discrepancy: " << ScalarTraits<S>::to_string(a.kemeny.route_max_discrepancy) << "\n";
  out << "  invariance residual: " << ScalarTraits<S>::to_string(a.kemeny.invariance_residual) << "\n\n";

  out << "change of basis:\n";
  if (show_tableau) out << render_tableau(a.certificate.tableau);
  out << "  Mbar inverse:\n";
  detail::append_matrix_text(out, a.certificate.mbar_inverse, "    ");
  out << "  normalization factor n(K-1): " << ScalarTraits<S>::to_string(a.certificate.normalization_factor)
      << "\n";
  out << "  pullback of e/n: " << detail::join_vector(a.certificate.pullback_vector) << "\n";
  out << "  pullback residual: " << ScalarTraits<S>::to_string(a.certificate.pullback_residual) << "\n";
  out << "  reconstruction residual: " << ScalarTraits<S>::to_string(a.certificate.reconstruction_residual)
      << "\n";
  return out.str();
}

template <class S>
std::string render_basis_text(const analysis::Analysis<S>& a, bool show_tableau) {
  std::ostringstream out;
  out << "change of basis for the deleted-diagonal mean first passage matrix (mode=" << mode_name<S>()
      << ", n=" << a.p.size() << ")\n";
  if (show_tableau) out << render_tableau(a.certificate.tableau);
  out << "  Mbar inverse:\n";
  detail::append_matrix_text(out, a.certificate.mbar_inverse, "    ");
  out << "  K = " << ScalarTraits<S>::to_string(a.kemeny.k_from_vector)
      << ", K-1 = " << ScalarTraits<S>::to_string(S(a.kemeny.k_from_vector - S(1))) << "\n";
  out << "  normalization factor n(K-1): " << ScalarTraits<S>::to_string(a.certificate.normalization_factor)
      << "\n";
  out << "  pullback of e/n: " << detail::join_vector(a.certificate.pullback_vector) << "\n";
  out << "  rescaled onto pi: " << detail::join_vector(a.pi.pi) << "\n";
  out << "  pullback residual: " << ScalarTraits<S>::to_string(a.certificate.pullback_residual) << "\n";
  out << "  reconstruction residual: " << ScalarTraits<S>::to_string(a.certificate.reconstruction_residual)
      << "\n";
  return out.str();
}

inline std::string render_simulate_text(const analysis::Analysis<double>& a,
                                 const montecarlo::EmpiricalMfpt& empirical,
                                 const montecarlo::EmpiricalKemeny& kemeny_hat,
                                 const montecarlo::SimulationConfig& cfg) {
  std::ostringstream out;
  out << "hitting-time simulation: n=" << a.p.size() << ", trials=" << cfg.trials << " per pair, seed="
      << cfg.seed << "\n\n";
  out << "empirical mean first passage times:\n";
  detail::append_matrix_text(out, empirical.means, "  ");
  out << "analytic mean first passage times:\n";
  detail::append_matrix_text(out, a.m_resolvent.m, "  ");
  double max_abs_z = 0.0;
  std::uint64_t censored = 0;
  for (std::size_t i = 0; i < a.p.size(); ++i)
    for (std::size_t j = 0; j < a.p.size(); ++j) {
      const double z = z_score(empirical.means(i, j), a.m_resolvent.m(i, j), empirical.stderrs(i, j));
      if (std::isfinite(z) && std::fabs(z) > max_abs_z) max_abs_z = std::fabs(z);
      censored += empirical.censored_counts(i, j);
    }
  out << "max |z| vs analytic: " << ScalarTraits<double>::to_string(max_abs_z) << "\n";
  out << "censored trials: " << censored << "\n";
  out << "empirical Kemeny averages: " << detail::join_vector(kemeny_hat.k_hat) << "\n";
  out << "  spread: " << ScalarTraits<double>::to_string(kemeny_hat.spread) << "\n";
  return out.str();
}

}  // namespace kemeny_lab::report
