#include <doctest.h>

#include "qivif/proxops.hpp"
#include "qivif/qsvd.hpp"
#include "testutil.hpp"

using namespace qivif;

namespace {

double gst_objective(double x, double sigma, double lw, double p) {
  return 0.5 * (sigma - x) * (sigma - x) + lw * std::pow(x, p);
}

// Two-stage dense grid minimizer of the scalar GST objective on [0, sigma].
double brute_force_gst(double sigma, double lw, double p) {
  if (sigma == 0.0) return 0.0;
  const int grid = 8192;
  double best_x = 0.0, best_f = gst_objective(0.0, sigma, lw, p);
  double lo = 0.0, hi = sigma;
  for (int stage = 0; stage < 2; ++stage) {
    const double step = (hi - lo) / grid;
    for (int i = 0; i <= grid; ++i) {
      const double x = lo + i * step;
      const double f = gst_objective(x, sigma, lw, p);
      if (f < best_f) {
        best_f = f;
        best_x = x;
      }
    }
    lo = std::max(0.0, best_x - 2.0 * step);
    hi = std::min(sigma, best_x + 2.0 * step);
  }
  return best_x;
}

}  // namespace

TEST_CASE("gst_scalar below threshold returns zero") {
  // tau for p=0.5, lw=1: (2*0.5)^(2/3) + 0.5*(1)^(-1/3) = 1.5
  CHECK(gst_scalar(1.4, 1.0, 1.0, 0.5) == 0.0);
  CHECK(gst_scalar(0.0, 1.0, 1.0, 0.5) == 0.0);
}

TEST_CASE("gst_scalar with p = 1 is plain soft thresholding") {
  CHECK(gst_scalar(3.0, 1.0, 0.5, 1.0) == doctest::Approx(2.5));
  CHECK(gst_scalar(0.4, 1.0, 0.5, 1.0) == 0.0);
  CHECK(gst_scalar(5.0, 0.0, 1.0, 1.0) == doctest::Approx(5.0));
}

TEST_CASE("gst_scalar rejects p outside (0,1]") {
  CHECK_THROWS_AS(gst_scalar(1.0, 1.0, 1.0, 1.25), std::invalid_argument);
  CHECK_THROWS_AS(gst_scalar(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gst_scalar(1.0, 1.0, 1.0, -0.5), std::invalid_argument);
}

TEST_CASE("gst_scalar matches the named worked example") {
  const double got = gst_scalar(3.0, 1.0, 1.0, 0.5);
  const double oracle = brute_force_gst(3.0, 1.0, 0.5);
  CHECK(std::abs(got - oracle) < 1e-4);
}

TEST_CASE("gst_scalar satisfies its stationarity condition above threshold") {
  testutil::rng(301);
  for (int t = 0; t < 200; ++t) {
    const double sigma = testutil::uniform(0.0, 5.0);
    const double lw = testutil::uniform(0.0, 2.0);
    const double p = testutil::uniform(0.05, 1.0);
    const double x = gst_scalar(sigma, lw, 1.0, p);
    if (x > 0.0 && p < 1.0) {
      CHECK(std::abs(x - sigma + lw * p * std::pow(x, p - 1.0)) <= 1e-6);
    }
    CHECK(x <= sigma + 1e-15);
  }
}

TEST_CASE("gst_scalar agrees with brute-force minimization") {
  testutil::rng(302);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const double sigma = testutil::uniform(0.0, 5.0);
    const double lambda = testutil::uniform(0.0, 2.0);
    const double w = testutil::uniform(0.0, 2.0);
    const double p = testutil::uniform(0.05, 1.0);
    const double got = gst_scalar(sigma, lambda, w, p);
    const double oracle = brute_force_gst(sigma, lambda * w, p);
    CHECK(std::abs(got - oracle) < 1e-4);
    // The solver's value never loses to the trivial candidates.
    CHECK(gst_objective(got, sigma, lambda * w, p) <=
          gst_objective(0.0, sigma, lambda * w, p) + 1e-12);
    CHECK(gst_objective(got, sigma, lambda * w, p) <=
          gst_objective(sigma, sigma, lambda * w, p) + 1e-12);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("gst_scalar is monotone in sigma_y") {
  testutil::rng(303);
  for (int t = 0; t < 50; ++t) {
    const double lw = testutil::uniform(0.0, 2.0);
    const double p = testutil::uniform(0.1, 1.0);
    double prev = 0.0;
    for (double sigma = 0.0; sigma <= 5.0; sigma += 0.01) {
      const double x = gst_scalar(sigma, lw, 1.0, p);
      CHECK(x >= prev - 1e-9);
      prev = x;
    }
  }
}

TEST_CASE("pssv_wsp_shrink keeps everything when n covers the rank") {
  testutil::rng(304);
  const QMatrix y = testutil::random_qmatrix(5, 4);
  ShrinkParams params;
  params.lambda = 0.7;
  params.p = 0.8;
  params.n = 4;  // = min(H, W)
  const QMatrix out = pssv_wsp_shrink(y, params);
  CHECK((out - y).norm_fro() < 1e-9);

  params.n = 99;  // clamped
  CHECK((pssv_wsp_shrink(y, params) - y).norm_fro() < 1e-9);
}

TEST_CASE("pssv_wsp_shrink with n=0, p=1, unit weights is soft thresholding") {
  testutil::rng(305);
  const QMatrix y = testutil::random_qmatrix(6, 6);
  ShrinkParams params;
  params.lambda = 0.4;
  params.p = 1.0;
  params.n = 0;
  params.weights = Eigen::VectorXd::Ones(6);
  const QMatrix out = pssv_wsp_shrink(y, params);

  const Eigen::VectorXd sy = qsvd(y).s;
  const Eigen::VectorXd so = qsvd(out).s;
  for (Index i = 0; i < 6; ++i) {
    CHECK(so(i) == doctest::Approx(std::max(sy(i) - 0.4, 0.0)).epsilon(1e-8));
  }
}

TEST_CASE("pssv_wsp_shrink matches the per-singular-value oracle") {
  testutil::rng(306);
  for (int t = 0; t < 100; ++t) {
    const QMatrix y = testutil::random_qmatrix(8, 8);
    ShrinkParams params;
    params.lambda = testutil::uniform(0.05, 1.0);
    params.p = 0.8;
    params.n = 2;
    const QMatrix out = pssv_wsp_shrink(y, params);

    const Eigen::VectorXd sy = qsvd(y).s;
    const Eigen::VectorXd weights = (sy.array() + 1e-4).inverse();
    Eigen::VectorXd expect = sy;
    for (Index i = params.n; i < 8; ++i) {
      expect(i) = gst_scalar(sy(i), params.lambda, weights(i), params.p);
    }
    const Eigen::VectorXd got = qsvd(out).s;
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-8);

    // Never increases a singular value; the leading n are preserved.
    for (Index i = 0; i < 8; ++i) CHECK(got(i) <= sy(i) + 1e-9);
    for (Index i = 0; i < params.n; ++i) {
      CHECK(std::abs(got(i) - sy(i)) < 1e-9);
    }
  }
}

TEST_CASE("soft_threshold_columns follows the column rule") {
  // Single column with known l1 norm 5, tau 2 -> scaled by 3/5.
  QMatrix y(5, 1);
  for (Index r = 0; r < 5; ++r) y.set(r, 0, Quat{0, 1.0, 0, 0});
  const QMatrix out = soft_threshold_columns(y, 2.0);
  for (Index r = 0; r < 5; ++r) {
    CHECK(out.at(r, 0).x == doctest::Approx(0.6));
  }

  // Columns at or below tau vanish.
  const QMatrix zeroed = soft_threshold_columns(y, 5.0);
  CHECK(zeroed.norm_fro() == 0.0);
  const QMatrix zeroed2 = soft_threshold_columns(y, 6.0);
  CHECK(zeroed2.norm_fro() == 0.0);

  // tau = 0 is the identity, including for zero columns.
  testutil::rng(307);
  QMatrix mixed = testutil::random_qmatrix(4, 3);
  mixed.w().col(1).setZero();
  mixed.x().col(1).setZero();
  mixed.y().col(1).setZero();
  mixed.z().col(1).setZero();
  CHECK(testutil::max_abs_diff(soft_threshold_columns(mixed, 0.0), mixed) ==
        0.0);
}

TEST_CASE("soft_threshold_columns exact per-column arithmetic") {
  testutil::rng(308);
  for (int t = 0; t < 50; ++t) {
    const QMatrix y = testutil::random_qmatrix(6, 5);
    const double tau = testutil::uniform(0.0, 8.0);
    const QMatrix out = soft_threshold_columns(y, tau);
    const Eigen::ArrayXXd mod = y.modulus();
    for (Index c = 0; c < 5; ++c) {
      const double l1 = mod.col(c).sum();
      const double scale = l1 > tau ? (l1 - tau) / l1 : 0.0;
      for (Index r = 0; r < 6; ++r) {
        const Quat expect = y.at(r, c) * scale;
        const Quat got = out.at(r, c);
        CHECK(got.x == doctest::Approx(expect.x).epsilon(1e-12));
        CHECK(got.w == doctest::Approx(expect.w).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("soft_threshold_columns is non-expansive in Frobenius norm") {
  testutil::rng(309);
  for (int t = 0; t < 50; ++t) {
    const QMatrix y = testutil::random_qmatrix(7, 4);
    const double tau = testutil::uniform(0.0, 5.0);
    CHECK(soft_threshold_columns(y, tau).norm_fro() <= y.norm_fro() + 1e-12);
  }
}
