#include "doctest.h"

#include <cmath>
#include <random>

#include "ghk/error.hpp"
#include "ghk/states.hpp"
#include "ghk/symplectic.hpp"
#include "support.hpp"

using namespace ghk;
using ghk::test::max_abs_diff;
using ghk::test::rel_diff;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected ghk::Error");
  return ErrorCode::InvalidParams;
}

CovarianceMatrix diag(std::initializer_list<double> entries) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v(i++) = e;
  return CovarianceMatrix(v.asDiagonal().toDenseMatrix());
}

}  // namespace

TEST_CASE("covariance matrix validation") {
  Eigen::MatrixXd m = 0.5 * Eigen::MatrixXd::Identity(4, 4);
  m(0, 1) = 1e-9;
  CHECK(code_of([&] { CovarianceMatrix{m}; }) == ErrorCode::NonSymmetric);
  CHECK(code_of([] { CovarianceMatrix{Eigen::MatrixXd::Identity(3, 3)}; }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { CovarianceMatrix{Eigen::MatrixXd::Identity(2, 4)}; }) == ErrorCode::DimensionMismatch);

  m(0, 1) = 5e-11;
  const CovarianceMatrix ok(m);
  CHECK(ok(0, 1) == ok(1, 0));
}

TEST_CASE("symplectic form") {
  const Eigen::MatrixXd j = symplectic_form(3);
  CHECK(max_abs_diff(j * j, -Eigen::MatrixXd::Identity(6, 6)) == 0.0);
  CHECK(max_abs_diff(j.transpose(), -j) == 0.0);
  CHECK(j(0, 1) == 1.0);
  CHECK(j(1, 0) == -1.0);
}

TEST_CASE("elementary generators are symplectic") {
  const Eigen::MatrixXd j = symplectic_form(3);
  for (const Eigen::MatrixXd& s : {phase_rotation(3, 1, 0.7), single_mode_squeezer(3, 2, -0.4),
                                   two_mode_squeezer(3, 0, 2, 0.9), beam_splitter(3, 1, 2, 1.1)}) {
    CHECK(max_abs_diff(s * j * s.transpose(), j) < 1e-13);
  }
}

TEST_CASE("symplectic eigenvalues: examples") {
  auto vac = symplectic_eigenvalues(CovarianceMatrix::scaled_identity(2, 0.5));
  CHECK(vac.kappas.size() == 2);
  CHECK(vac.kappas[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(vac.kappas[1] == doctest::Approx(0.5).epsilon(1e-14));

  auto thermal = symplectic_eigenvalues(diag({0.5, 0.5, 2.5, 2.5}));
  CHECK(thermal.max() == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(thermal.min() == doctest::Approx(0.5).epsilon(1e-14));

  const double r = 0.7;
  const double b = 0.5 * std::cosh(2 * r);
  const double c = 0.5 * std::sinh(2 * r);
  auto tmsv = symplectic_eigenvalues(covariance(StandardForm{b, b, c, -c}));
  CHECK(tmsv.max() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tmsv.min() == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(code_of([] { symplectic_eigenvalues(diag({1.0, -1.0})); }) == ErrorCode::NotPositiveDefinite);
}

TEST_CASE("physicality") {
  CHECK(is_physical(CovarianceMatrix::scaled_identity(2, 0.5)));
  CHECK_FALSE(is_physical(CovarianceMatrix::scaled_identity(1, 0.4)));
  CHECK_FALSE(is_physical(diag({1.0, -1.0})));
  CHECK(is_physical(sts_state({1, 2, 1.3, 0}).cm()));
  CHECK(is_physical(CovarianceMatrix::scaled_identity(1, 0.5 - 5e-10)));
  CHECK_FALSE(is_physical(CovarianceMatrix::scaled_identity(1, 0.5 - 5e-9)));
  CHECK(code_of([] { require_physical(diag({0.3, 0.3})); }) == ErrorCode::NotPhysical);
}

TEST_CASE("williamson decomposition reassembles the input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int modes = 1 + trial % 3;
    const GaussianState s = ghk::test::random_state(modes, rng);
    const WilliamsonDecomposition w = williamson(s.cm());
    Eigen::VectorXd d(2 * modes);
    for (int k = 0; k < modes; ++k) d(2 * k) = d(2 * k + 1) = w.spectrum.kappas[static_cast<std::size_t>(k)];
    const Eigen::MatrixXd j = symplectic_form(modes);
    CHECK(max_abs_diff(w.symplectic * j * w.symplectic.transpose(), j) < 1e-9);
    CHECK(max_abs_diff(w.symplectic * d.asDiagonal() * w.symplectic.transpose(), s.cm().matrix()) <
          1e-9 * s.cm().matrix().norm());
  }
}

TEST_CASE("properties: product rule and congruence invariance") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int modes = 1 + trial % 3;
    const GaussianState s = ghk::test::random_state(modes, rng);
    const auto spec = symplectic_eigenvalues(s.cm());
    double prod = 1.0;
    for (double k : spec.kappas) prod *= k * k;
    CHECK(rel_diff(prod, s.cm().matrix().determinant()) < 1e-9 * std::max(1.0, prod));

    const auto moved = symplectic_eigenvalues(congruence(ghk::test::random_symplectic(modes, rng), s.cm()));
    for (std::size_t k = 0; k < spec.kappas.size(); ++k) {
      CHECK(std::abs(moved.kappas[k] - spec.kappas[k]) < 1e-8 * spec.kappas[k]);
    }
  }
}

TEST_CASE("square-root covariance matrix") {
  const auto vac = square_root_cm(CovarianceMatrix::scaled_identity(2, 0.5));
  CHECK(max_abs_diff(vac.matrix(), 0.5 * Eigen::MatrixXd::Identity(4, 4)) < 1e-14);

  const auto th = square_root_cm(CovarianceMatrix::scaled_identity(1, 2.5));
  CHECK(max_abs_diff(th.matrix(), (2.5 + std::sqrt(6.0)) * Eigen::MatrixXd::Identity(2, 2)) < 1e-12);

  CHECK(sqrt_state_kappa(0.5) == 0.5);
  CHECK(sqrt_state_kappa(1.5) == doctest::Approx(1.5 + std::sqrt(2.0)).epsilon(1e-15));

  CHECK(code_of([] { square_root_cm(CovarianceMatrix::scaled_identity(1, 0.3)); }) == ErrorCode::NotPhysical);
}

TEST_CASE("square-root consistency identity") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int modes = 1 + trial % 3;
    const GaussianState s = ghk::test::random_state(modes, rng);
    const Eigen::MatrixXd vt = square_root_cm(s.cm()).matrix();
    const Eigen::MatrixXd j = symplectic_form(modes);
    const Eigen::MatrixXd back = 0.5 * (vt - 0.25 * j * vt.inverse() * j);
    CHECK(max_abs_diff(back, s.cm().matrix()) < 1e-8 * s.cm().matrix().norm());
  }
}

TEST_CASE("determinants by cofactors") {
  Eigen::Matrix4d m;
  m << 4, 1, 0.5, 0.2, 1, 3, 0.1, 0.4, 0.5, 0.1, 2, 0.3, 0.2, 0.4, 0.3, 5;
  CHECK(det4(m) == doctest::Approx(m.determinant()).epsilon(1e-13));
  CHECK(det2(m.topLeftCorner<2, 2>()) == doctest::Approx(11.0));
}

TEST_CASE("standard form: examples") {
  const auto product = standard_form(diag({1.5, 1.5, 0.7, 0.7}));
  CHECK(product.b1 == doctest::Approx(1.5));
  CHECK(product.b2 == doctest::Approx(0.7));
  CHECK(product.c == 0.0);
  CHECK(product.d == 0.0);
  CHECK(product.s1 == 1.0);
  CHECK(product.s2 == 1.0);

  std::mt19937_64 rng(14);
  const StandardForm ref{2.0, 1.5, 0.9, -0.9};
  const auto rotated = congruence(ghk::test::random_local_symplectic(rng), covariance(ref));
  const auto back = standard_form(rotated);
  CHECK(back.b1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(back.b2 == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(back.c == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(back.d == doctest::Approx(-0.9).epsilon(1e-10));

  const auto mts = standard_form(mts_state({2.5, 0.5, std::numbers::pi / 2, 0}).cm());
  CHECK(mts.b1 == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(mts.b2 == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(mts.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mts.d == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("standard form: round trip and local reduction") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    StandardForm sf = ghk::test::random_standard_form(rng);
    const CovarianceMatrix cm = congruence(ghk::test::random_local_symplectic(rng), covariance(sf));
    const StandardForm back = standard_form(cm);
    CHECK(std::abs(back.b1 - sf.b1) < 1e-9);
    CHECK(std::abs(back.b2 - sf.b2) < 1e-9);
    CHECK(std::abs(back.c - sf.c) < 1e-9);
    CHECK(std::abs(back.d - sf.d) < 1e-9);

    const LocalReduction red = reduce_to_standard_form(cm);
    CHECK(std::abs(red.form.c - sf.c) < 1e-9);
    CHECK(std::abs(red.form.d - sf.d) < 1e-9);
    const Eigen::MatrixXd rebuilt = red.local * standard_form_matrix(red.form) * red.local.transpose();
    CHECK(max_abs_diff(rebuilt, cm.matrix()) < 1e-9 * cm.matrix().norm());
    CHECK(red.local(0, 2) == 0.0);
    CHECK(red.local(2, 0) == 0.0);
  }
}

TEST_CASE("closed-form two-mode spectrum matches diagonalization") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    StandardForm sf = ghk::test::random_standard_form(rng);
    const auto a = two_mode_spectrum(sf);
    const auto b = symplectic_eigenvalues(covariance(sf));
    CHECK(rel_diff(a.max(), b.max()) < 1e-10);
    CHECK(rel_diff(a.min(), b.min()) < 1e-9);
  }
}

TEST_CASE("invariants: examples") {
  const auto vac = invariants(CovarianceMatrix::scaled_identity(2, 0.5));
  CHECK(vac.M1 == doctest::Approx(0.0));
  CHECK(vac.M2 == doctest::Approx(0.0));
  CHECK(vac.N1 == doctest::Approx(1.0));
  CHECK(vac.N2 == doctest::Approx(0.0));
  CHECK(vac.D == doctest::Approx(0.0));
  CHECK(vac.K == doctest::Approx(0.0));

  const auto mixed = invariants(diag({2.5, 2.5, 0.5, 0.5}));
  CHECK(mixed.M1 == doctest::Approx(2.0));
  CHECK(mixed.M2 == doctest::Approx(0.0));
  CHECK(mixed.N1 == doctest::Approx(3.0));
  CHECK(mixed.N2 == doctest::Approx(0.0));
  CHECK(mixed.D == doctest::Approx(0.0));
  CHECK(mixed.K == doctest::Approx(std::sqrt(6.0) / 2));

  const auto equal = invariants(diag({1.5, 1.5, 1.5, 1.5}));
  CHECK(equal.M1 == doctest::Approx(2.0));
  CHECK(equal.M2 == doctest::Approx(2.0));
  CHECK(equal.N1 == doctest::Approx(4.0));
  CHECK(equal.N2 == doctest::Approx(1.0));
  CHECK(equal.D == doctest::Approx(4.0));
  CHECK(equal.K == doctest::Approx(3.0 * std::sqrt(2.0)));
}

TEST_CASE("invariants: identities on random states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const StandardForm sf = ghk::test::random_standard_form(rng);
    const auto inv = invariants(covariance(sf));
    CHECK(inv.M1 >= 0.0);
    CHECK(inv.M2 >= 0.0);
    CHECK(inv.N1 >= 0.0);
    CHECK(inv.N2 >= 0.0);
    CHECK(rel_diff(inv.M1 * inv.M2, inv.N1 * inv.N2) < 1e-9);
    CHECK(rel_diff(inv.D, inv.D_spectral) < 1e-9);
    const double k = 0.5 * (std::sqrt(inv.M1) + std::sqrt(inv.M2)) * (std::sqrt(inv.N1) + std::sqrt(inv.N2));
    CHECK(rel_diff(inv.K, k) < 1e-9);
  }
}

TEST_CASE("square-root standard form") {
  const double r = 0.6;
  const StandardForm pure{0.5 * std::cosh(2 * r), 0.5 * std::cosh(2 * r), 0.5 * std::sinh(2 * r),
                          -0.5 * std::sinh(2 * r)};
  const StandardForm same = square_root_standard_form(pure);
  CHECK(same.b1 == pure.b1);
  CHECK(same.c == pure.c);
  CHECK(same.d == pure.d);

  // Symmetric STS: the square-root state is the STS with kappa~ = 1.5 + sqrt 2 and the same r.
  const double kt = 1.5 + std::sqrt(2.0);
  const StandardForm sts = sts_standard_form({1, 1, 0.5, 0});
  const StandardForm t = square_root_standard_form(sts);
  CHECK(t.b1 == doctest::Approx(kt * std::cosh(1.0)).epsilon(1e-12));
  CHECK(t.c == doctest::Approx(kt * std::sinh(1.0)).epsilon(1e-12));
  CHECK(t.d == doctest::Approx(-kt * std::sinh(1.0)).epsilon(1e-12));
  CHECK(t.s1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.s2 == doctest::Approx(1.0).epsilon(1e-12));

  const StandardForm mts = square_root_standard_form(mts_standard_form({2.0, 0.7, 1.0, 0}));
  CHECK(mts.s1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mts.s2 == doctest::Approx(1.0).epsilon(1e-12));

  const StandardForm example{1.5, 1.2, 0.6, -0.4};
  const auto appendix = standard_form_matrix(square_root_standard_form(example));
  const auto williamson_route = square_root_cm(covariance(example)).matrix();
  CHECK(max_abs_diff(appendix, williamson_route) < 1e-8);
}

TEST_CASE("square-root standard form agrees with the Williamson route") {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> scale(0.3, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    StandardForm sf = ghk::test::random_standard_form(rng);
    sf.s1 = scale(rng);
    sf.s2 = scale(rng);
    const auto appendix = standard_form_matrix(square_root_standard_form(sf));
    const auto williamson_route = square_root_cm(covariance(sf)).matrix();
    CHECK(max_abs_diff(appendix, williamson_route) < 1e-8 * williamson_route.norm());
  }
}
