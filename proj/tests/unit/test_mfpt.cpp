#include <doctest.h>

#include <random>

#include "kemeny_lab/mfpt.hpp"
#include "test_chains.hpp"

using kemeny_lab::Matrix;
using kemeny_lab::Rational;
namespace chain = kemeny_lab::chain;
namespace mfpt = kemeny_lab::mfpt;

namespace {

Matrix<Rational> oz_mfpt_golden() {
  Matrix<Rational> m(3, 3);
  m(0, 0) = Rational(5, 2);
  m(0, 1) = Rational(4);
  m(0, 2) = Rational(10, 3);
  m(1, 0) = Rational(8, 3);
  m(1, 1) = Rational(5);
  m(1, 2) = Rational(8, 3);
  m(2, 0) = Rational(10, 3);
  m(2, 1) = Rational(4);
  m(2, 2) = Rational(5, 2);
  return m;
}

}  // namespace

TEST_CASE("fundamental matrix of the worked example") {
  auto p = test_support::oz_chain();
  auto pi = chain::stationary(p);
  mfpt::FundamentalMatrix<Rational> z = mfpt::fundamental(p, pi);

  Matrix<Rational> golden(3, 3);
  golden(0, 0) = Rational(86, 75);
  golden(0, 1) = Rational(1, 25);
  golden(0, 2) = Rational(-14, 75);
  golden(1, 0) = Rational(2, 25);
  golden(1, 1) = Rational(21, 25);
  golden(1, 2) = Rational(2, 25);
  golden(2, 0) = Rational(-14, 75);
  golden(2, 1) = Rational(1, 25);
  golden(2, 2) = Rational(86, 75);
  CHECK(z.z == golden);

  // Z satisfies its defining equation [I - (P - A)]Z = I.
  auto a = chain::limit_projector(pi);
  Matrix<Rational> system = Matrix<Rational>::identity(3) - p.matrix() + a.l;
  CHECK(system * z.z == Matrix<Rational>::identity(3));
}

TEST_CASE("both MFPT routes reproduce the worked example") {
  auto p = test_support::oz_chain();
  auto pi = chain::stationary(p);
  CHECK(mfpt::mfpt_from_fundamental(mfpt::fundamental(p, pi), pi).m == oz_mfpt_golden());
  CHECK(mfpt::mfpt_direct(p).m == oz_mfpt_golden());
}

TEST_CASE("one-step mixing chain has Z = I and all passage times 2") {
  auto p = test_support::coin_chain();
  auto pi = chain::stationary(p);
  CHECK(mfpt::fundamental(p, pi).z == Matrix<Rational>::identity(2));
  CHECK(mfpt::mfpt_from_fundamental(mfpt::fundamental(p, pi), pi).m == Matrix<Rational>(2, 2, Rational(2)));
}

TEST_CASE("resolvent and direct routes agree exactly on random regular chains") {
  std::mt19937_64 rng(707);
  for (int round = 0; round < 25; ++round) {
    const std::size_t n = 2 + round % 5;
    auto p = test_support::random_regular_chain(rng, n);
    auto pi = chain::stationary(p);
    mfpt::MfptMatrix<Rational> via_z = mfpt::mfpt_from_fundamental(mfpt::fundamental(p, pi), pi);
    mfpt::MfptMatrix<Rational> direct = mfpt::mfpt_direct(p);
    CHECK(via_z.m == direct.m);
    for (std::size_t i = 0; i < n; ++i) CHECK(via_z.m(i, i) * pi.pi[i] == Rational(1));
  }
}

TEST_CASE("float routes agree within 1e-9") {
  auto exact = test_support::oz_chain();
  auto p = chain::TransitionMatrix<double>::validate(kemeny_lab::to_float_matrix(exact.matrix()));
  auto pi = chain::stationary(p);
  mfpt::MfptMatrix<double> via_z = mfpt::mfpt_from_fundamental(mfpt::fundamental(p, pi), pi);
  mfpt::MfptMatrix<double> direct = mfpt::mfpt_direct(p);
  CHECK(kemeny_lab::max_abs(via_z.m - direct.m) < 1e-9);
}

TEST_CASE("P(M - D) = M - E holds exactly, and (D - E) annihilates pi") {
  std::mt19937_64 rng(808);
  for (int round = 0; round < 25; ++round) {
    const std::size_t n = 2 + round % 5;
    auto p = test_support::random_regular_chain(rng, n);
    auto pi = chain::stationary(p);
    mfpt::MfptMatrix<Rational> m = mfpt::mfpt_from_fundamental(mfpt::fundamental(p, pi), pi);
    mfpt::ReturnDiagonal<Rational> d = mfpt::return_diagonal(pi);
    CHECK(kemeny_lab::max_abs(mfpt::verify_pmd_identity(p, m, d)) == Rational(0));
    CHECK(kemeny_lab::max_abs(mfpt::d_minus_e_residual(d, pi)) == Rational(0));
  }
}

TEST_CASE("deleted diagonal keeps off-diagonal passage times") {
  auto p = test_support::oz_chain();
  auto pi = chain::stationary(p);
  mfpt::MfptMatrix<Rational> m = mfpt::mfpt_from_fundamental(mfpt::fundamental(p, pi), pi);
  mfpt::DeletedDiagonalMfpt<Rational> mbar = mfpt::deleted_diagonal(m);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(mbar.mbar(i, j) == (i == j ? Rational(0) : m.m(i, j)));
}

TEST_CASE("single-state chain returns in one step") {
  auto p = chain::TransitionMatrix<Rational>::validate(Matrix<Rational>(1, 1, Rational(1)));
  CHECK(mfpt::mfpt_direct(p).m == Matrix<Rational>(1, 1, Rational(1)));
}
