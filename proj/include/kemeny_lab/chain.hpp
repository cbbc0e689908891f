#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kemeny_lab/error.hpp"
#include "kemeny_lab/matrix.hpp"
#include "kemeny_lab/numerics.hpp"

namespace kemeny_lab::chain {

/// Validated row-stochastic matrix. Construct through `validate`.
template <class S>
class TransitionMatrix {
 public:
  static TransitionMatrix validate(Matrix<S> raw) {
    if (!raw.square()) raise(ErrorKind::NotStochastic, "transition matrix must be square");
    const std::size_t n = raw.rows();
    for (std::size_t i = 0; i < n; ++i) {
      S row_sum(0);
      for (std::size_t j = 0; j < n; ++j) {
        if (raw(i, j) < S(0))
          raise(ErrorKind::NotStochastic, "negative entry in row " + std::to_string(i));
        row_sum += raw(i, j);
      }
      if constexpr (ScalarTraits<S>::kExact) {
        if (row_sum != S(1))
          raise(ErrorKind::NotStochastic,
                "row " + std::to_string(i) + " sums to " + ScalarTraits<S>::to_string(row_sum));
      } else {
        if (scalar_abs(row_sum - S(1)) > S(1e-12))
          raise(ErrorKind::NotStochastic,
                "row " + std::to_string(i) + " sums to " + ScalarTraits<S>::to_string(row_sum));
      }
    }
    return TransitionMatrix(std::move(raw));
  }

  const Matrix<S>& matrix() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.rows(); }

 private:
  explicit TransitionMatrix(Matrix<S> p) : p_(std::move(p)) {}
  Matrix<S> p_;
};

/// Strictly positive probability vector with πᵀP = πᵀ.
template <class S>
struct StationaryDistribution {
  std::vector<S> pi;

  std::size_t size() const noexcept { return pi.size(); }
};

/// Rank-one limit projector L = eπᵀ: every row equals πᵀ.
template <class S>
struct LimitProjector {
  Matrix<S> l;
};

struct PrimitivityReport {
  bool is_regular = false;
  std::optional<unsigned> witness_exponent;
  unsigned checked_bound = 0;
};

namespace detail {

// Zero/nonzero pattern of a square matrix, rows packed into 64-bit words.
// Primitivity search runs on patterns only, so rational entries never blow
// up and float entries never underflow.
class BitMatrix {
 public:
  BitMatrix(std::size_t n, std::size_t words) : n_(n), words_(words), bits_(n * words, 0) {}

  template <class S>
  static BitMatrix pattern(const Matrix<S>& m) {
    const std::size_t n = m.rows();
    BitMatrix b(n, (n + 63) / 64);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m(i, j) != S(0)) b.set(i, j);
    return b;
  }

  void set(std::size_t i, std::size_t j) { word(i, j / 64) |= std::uint64_t(1) << (j % 64); }

  bool all_set() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t expect = (w + 1) * 64 <= n_ ? ~std::uint64_t(0)
                                                  : (std::uint64_t(1) << (n_ % 64)) - 1;
        if (word(i, w) != expect) return false;
      }
    return true;
  }

  BitMatrix multiply(const BitMatrix& rhs) const {
    BitMatrix out(n_, words_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k)
        if (word(i, k / 64) & (std::uint64_t(1) << (k % 64)))
          for (std::size_t w = 0; w < words_; ++w) out.word(i, w) |= rhs.word(k, w);
    return out;
  }

 private:
  std::uint64_t& word(std::size_t i, std::size_t w) { return bits_[i * words_ + w]; }
  const std::uint64_t& word(std::size_t i, std::size_t w) const { return bits_[i * words_ + w]; }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

/// Searches exponents m = 1 … (n−1)²+1 (the Wielandt bound) for an
/// all-positive power of P; reports the smallest witness found.
template <class S>
PrimitivityReport primitivity(const TransitionMatrix<S>& p) {
  const std::size_t n = p.size();
  const unsigned bound = static_cast<unsigned>((n - 1) * (n - 1) + 1);
  detail::BitMatrix base = detail::BitMatrix::pattern(p.matrix());
  detail::BitMatrix current = base;
  PrimitivityReport report;
  report.checked_bound = bound;
  for (unsigned m = 1; m <= bound; ++m) {
    if (current.all_set()) {
      report.is_regular = true;
      report.witness_exponent = m;
      return report;
    }
    if (m < bound) current = current.multiply(base);
  }
  return report;
}

/// P^m by repeated squaring; the result is re-validated as stochastic.
template <class S>
TransitionMatrix<S> power(const TransitionMatrix<S>& p, unsigned m) {
  if (m == 0) raise(ErrorKind::DimensionMismatch, "exponent must be >= 1");
  Matrix<S> result = Matrix<S>::identity(p.size());
  Matrix<S> base = p.matrix();
  unsigned e = m;
  bool started = false;
  while (e > 0) {
    if (e & 1u) {
      result = started ? result * base : base;
      started = true;
    }
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return TransitionMatrix<S>::validate(std::move(result));
}

namespace detail {

// One multiplication v ← vᵀP, renormalized.
inline std::vector<double> power_iteration_step(const Matrix<double>& p, const std::vector<double>& v) {
  const std::size_t n = p.rows();
  std::vector<double> next(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) next[j] += v[i] * p(i, j);
  double sum = 0.0;
  for (double x : next) sum += x;
  for (double& x : next) x /= sum;
  return next;
}

}  // namespace detail

/// Unique stationary distribution of a regular chain. Solves (Pᵀ − I)π = 0
/// with the last row replaced by the normalization Σπᵢ = 1. Float mode
/// cross-checks the solution against 200 steps of power iteration.
template <class S>
StationaryDistribution<S> stationary(const TransitionMatrix<S>& p) {
  const PrimitivityReport report = primitivity(p);
  if (!report.is_regular)
    raise(ErrorKind::NotRegular,
          "no all-positive power up to the Wielandt bound " + std::to_string(report.checked_bound));

  const std::size_t n = p.size();
  Matrix<S> system = transpose(p.matrix()) - Matrix<S>::identity(n);
  for (std::size_t j = 0; j < n; ++j) system(n - 1, j) = S(1);
  std::vector<S> rhs(n, S(0));
  rhs[n - 1] = S(1);

  std::vector<S> pi;
  try {
    pi = numerics::solve_linear(system, rhs);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularMatrix)
      raise(ErrorKind::SingularSystem, "stationary system is singular for a regular chain");
    throw;
  }

  for (std::size_t i = 0; i < n; ++i)
    if (!(pi[i] > S(0)))
      raise(ErrorKind::SingularSystem, "stationary solve produced a non-positive coordinate");

  if constexpr (!ScalarTraits<S>::kExact) {
    S sum(0);
    for (const S& x : pi) sum += x;
    for (S& x : pi) x /= sum;

    std::vector<double> iterate(n, 1.0 / static_cast<double>(n));
    std::vector<double> prev;
    for (int step = 0; step < 200; ++step) {
      prev = iterate;
      iterate = detail::power_iteration_step(p.matrix(), iterate);
    }
    double iteration_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      iteration_residual = std::max(iteration_residual, std::abs(iterate[i] - prev[i]));
    if (iteration_residual < 1e-12) {
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(iterate[i] - pi[i]) > 1e-8)
          raise(ErrorKind::SingularSystem, "direct solve disagrees with power iteration");
    }
  }

  return StationaryDistribution<S>{std::move(pi)};
}

/// Worst-coordinate residual of πᵀP − πᵀ. Zero in rational mode.
template <class S>
S stationarity_residual(const TransitionMatrix<S>& p, const StationaryDistribution<S>& pi) {
  if (pi.size() != p.size()) raise(ErrorKind::DimensionMismatch, "pi/P size mismatch");
  std::vector<S> image = transpose(p.matrix()) * pi.pi;
  S worst(0);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    S r = scalar_abs(image[i] - pi.pi[i]);
    if (r > worst) worst = r;
  }
  return worst;
}

/// L = eπᵀ.
template <class S>
LimitProjector<S> limit_projector(const StationaryDistribution<S>& pi) {
  const std::size_t n = pi.size();
  Matrix<S> l(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) l(i, j) = pi.pi[j];
  return LimitProjector<S>{std::move(l)};
}

}  // namespace kemeny_lab::chain
