#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kemeny_lab/error.hpp"
#include "kemeny_lab/matrix.hpp"

namespace kemeny_lab::numerics {

/// One elimination step: the pivot was found in `row` (before the swap that
/// moves it onto the diagonal of column `col`) and had this value.
template <class S>
struct PivotStep {
  std::size_t row = 0;
  std::size_t col = 0;
  S value = S(0);
};

/// Record of a Gauss-Jordan run on an augmented tableau [A | B].
/// Replaying the pivot sequence on `initial` reproduces `final`.
template <class S>
struct TableauTrace {
  Matrix<S> initial;
  Matrix<S> final;
  std::vector<PivotStep<S>> pivots;
};

namespace detail {

// Pivot choice: exact mode takes the first nonzero entry in column order;
// float mode takes the largest magnitude and treats anything below
// 1e-12 * (max initial entry of A) as singular.
template <class S>
std::size_t select_pivot(const Matrix<S>& t, std::size_t col, const S& singular_threshold) {
  const std::size_t n = t.rows();
  if constexpr (ScalarTraits<S>::kExact) {
    (void)singular_threshold;
    for (std::size_t r = col; r < n; ++r)
      if (t(r, col) != S(0)) return r;
    raise(ErrorKind::SingularMatrix, "no nonzero pivot in column " + std::to_string(col));
  } else {
    std::size_t best = col;
    S best_mag = scalar_abs(t(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      S mag = scalar_abs(t(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    if (best_mag == S(0) || best_mag < singular_threshold)
      raise(ErrorKind::SingularMatrix, "pivot magnitude below singularity threshold in column " + std::to_string(col));
    return best;
  }
}

template <class S>
void apply_pivot(Matrix<S>& t, std::size_t target_row, std::size_t pivot_row, std::size_t col) {
  const std::size_t cols = t.cols();
  if (pivot_row != target_row)
    for (std::size_t j = 0; j < cols; ++j) std::swap(t(target_row, j), t(pivot_row, j));
  const S pivot = t(target_row, col);
  for (std::size_t j = 0; j < cols; ++j) t(target_row, j) /= pivot;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (r == target_row) continue;
    const S factor = t(r, col);
    if (factor == S(0)) continue;
    for (std::size_t j = 0; j < cols; ++j) t(r, j) -= factor * t(target_row, j);
  }
}

}  // namespace detail

/// Row-reduces the augmented tableau [A | B] (A occupies the first
/// `lead_cols` columns) to [I | A⁻¹B]. Optionally records the trace.
template <class S>
Matrix<S> reduce_tableau(Matrix<S> tableau, std::size_t lead_cols, TableauTrace<S>* trace = nullptr) {
  if (tableau.rows() != lead_cols || tableau.cols() < lead_cols)
    raise(ErrorKind::DimensionMismatch, "tableau lead block must be square");
  if (trace != nullptr) {
    trace->initial = tableau;
    trace->pivots.clear();
  }

  S threshold(0);
  if constexpr (!ScalarTraits<S>::kExact) {
    S max_entry(0);
    for (std::size_t i = 0; i < tableau.rows(); ++i)
      for (std::size_t j = 0; j < lead_cols; ++j) {
        S mag = scalar_abs(tableau(i, j));
        if (mag > max_entry) max_entry = mag;
      }
    threshold = S(1e-12) * max_entry;
  }

  for (std::size_t col = 0; col < lead_cols; ++col) {
    const std::size_t pivot_row = detail::select_pivot(tableau, col, threshold);
    if (trace != nullptr) trace->pivots.push_back({pivot_row, col, tableau(pivot_row, col)});
    detail::apply_pivot(tableau, col, pivot_row, col);
  }

  if (trace != nullptr) trace->final = tableau;
  return tableau;
}

/// Re-applies a recorded pivot sequence to the trace's initial tableau.
template <class S>
Matrix<S> replay_trace(const TableauTrace<S>& trace) {
  Matrix<S> t = trace.initial;
  for (const PivotStep<S>& step : trace.pivots) detail::apply_pivot(t, step.col, step.row, step.col);
  return t;
}

template <class S>
struct InversionResult {
  Matrix<S> inverse;
  std::optional<TableauTrace<S>> trace;
};

/// Inverts A by row-reducing [A | I]. Exact in rational mode.
template <class S>
InversionResult<S> gauss_jordan_invert(const Matrix<S>& a, bool capture_trace = false) {
  if (!a.square()) raise(ErrorKind::DimensionMismatch, "inverse requires a square matrix");
  const std::size_t n = a.rows();
  Matrix<S> tableau(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) tableau(i, j) = a(i, j);
    tableau(i, n + i) = S(1);
  }

  InversionResult<S> result;
  TableauTrace<S> trace;
  Matrix<S> reduced = reduce_tableau(std::move(tableau), n, capture_trace ? &trace : nullptr);
  result.inverse = Matrix<S>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) result.inverse(i, j) = reduced(i, n + j);
  if (capture_trace) result.trace = std::move(trace);
  return result;
}

/// Change-of-basis matrix P_{C←B} = C⁻¹B from tableau reduction [C | B] → [I | P_{C←B}].
template <class S>
Matrix<S> change_of_basis(const Matrix<S>& c, const Matrix<S>& b) {
  if (!c.square() || b.rows() != c.rows())
    raise(ErrorKind::DimensionMismatch, "basis matrices must be square with matching dimension");
  const std::size_t n = c.rows();
  Matrix<S> tableau(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) tableau(i, j) = c(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) tableau(i, n + j) = b(i, j);
  }
  Matrix<S> reduced = reduce_tableau(std::move(tableau), n);
  Matrix<S> out(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = reduced(i, n + j);
  return out;
}

/// Solves A·x = b.
template <class S>
std::vector<S> solve_linear(const Matrix<S>& a, const std::vector<S>& b) {
  if (!a.square() || b.size() != a.rows())
    raise(ErrorKind::DimensionMismatch, "solve requires square A and matching b");
  Matrix<S> rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  Matrix<S> x = change_of_basis(a, rhs);
  std::vector<S> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
  return out;
}

/// Full eigenvalue multiset of a dense real matrix, ordered by descending
/// modulus, ties by descending real part then descending imaginary part.
/// Float mode only.
std::vector<std::complex<double>> eigenvalues(const Matrix<double>& a);

template <class S>
std::vector<std::complex<double>> eigenvalues(const Matrix<S>&) {
  static_assert(ScalarTraits<S>::kExact, "unexpected scalar type");
  raise(ErrorKind::UnsupportedInMode, "eigenvalues require float mode");
}

}  // namespace kemeny_lab::numerics
