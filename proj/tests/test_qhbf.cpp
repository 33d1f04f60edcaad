#include <doctest.h>

#include "qivif/filters.hpp"
#include "qivif/imgcodec.hpp"
#include "qivif/qhbf.hpp"
#include "testutil.hpp"

using namespace qivif;

namespace {

// Posterior mean of the reciprocal mixing variable by direct numerical
// integration of p(m~ | s) ~ m~^(-3/2) exp(-(|s|^2 m~ + 2/(m~ eps))/2) on a
// log grid; the independent oracle for the E-step.
double integrated_posterior_mean(double s_mod, double eps) {
  const int n = 20000;
  const double t_lo = -30.0, t_hi = 30.0;
  const double dt = (t_hi - t_lo) / n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = t_lo + i * dt;
    const double m = std::exp(t);
    const double log_density =
        -1.5 * t - 0.5 * (s_mod * s_mod * m + 2.0 / (m * eps));
    const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
    const double d = std::exp(log_density) * m;  // dm = m dt
    num += weight * d * m;
    den += weight * d;
  }
  return num / den;
}

}  // namespace

TEST_CASE("e_step matches the printed formula and handles degenerate pixels") {
  QMatrix s(1, 2), q(1, 2);
  s.set(0, 0, Quat{0, 1, 0, 0});  // |s| = 1
  s.set(0, 1, Quat{0, 0, 0, 0});  // degenerate
  q.set(0, 0, Quat{0, 0, 2, 0});
  q.set(0, 1, Quat{0, 0, 0, 0});

  auto [m_paper, n_paper] =
      e_step(s, q, 2.0, 2.0, QhbfParams::EStepVariant::Paper);
  CHECK(m_paper(0, 0) == doctest::Approx(1.0));  // sqrt(2*1/2)
  CHECK(m_paper(0, 1) == doctest::Approx(1e-8)); // floored
  CHECK(n_paper(0, 0) == doctest::Approx(2.0));  // sqrt(2*4/2)

  auto [m_rec, n_rec] =
      e_step(s, q, 2.0, 2.0, QhbfParams::EStepVariant::Reciprocal);
  CHECK(m_rec(0, 0) == doctest::Approx(1.0));    // sqrt(2/(2*1))
  CHECK(m_rec(0, 1) == doctest::Approx(1e8));    // capped
  CHECK(n_rec(0, 0) == doctest::Approx(0.5));    // sqrt(2/(2*4))

  CHECK_THROWS_AS(e_step(s, q, 0.0, 1.0, QhbfParams::EStepVariant::Paper),
                  std::invalid_argument);
}

TEST_CASE("reciprocal e_step equals the integrated posterior mean") {
  for (double s_mod : {0.3, 1.0, 2.5}) {
    for (double eps : {0.5, 2.0, 5.0}) {
      QMatrix s(1, 1), q(1, 1);
      s.set(0, 0, Quat{0, s_mod, 0, 0});
      auto [m, n] = e_step(s, q, eps, 1.0, QhbfParams::EStepVariant::Reciprocal);
      const double oracle = integrated_posterior_mean(s_mod, eps);
      CHECK(m(0, 0) == doctest::Approx(oracle).epsilon(1e-6));
      // The printed (paper) formula is the reciprocal of the true mean
      // scaled by 2/eps; the two agree exactly when |s|^2 = eps/... they
      // cross at |s|^2 * eps = 2.
      auto [mp, np] = e_step(s, q, eps, 1.0, QhbfParams::EStepVariant::Paper);
      CHECK(mp(0, 0) == doctest::Approx(std::sqrt(2.0 * s_mod * s_mod / eps)));
    }
  }
}

TEST_CASE("m_step: zero target gives zero exactly") {
  const QMatrix t(6, 6);
  const Eigen::ArrayXXd m = Eigen::ArrayXXd::Constant(6, 6, 0.7);
  const Eigen::ArrayXXd n = Eigen::ArrayXXd::Constant(6, 6, 1.3);
  const QMatrix s = m_step(t, m, n, 0.5, 0.5, 1e-6, 100);
  CHECK(s.norm_fro() == 0.0);
}

TEST_CASE("m_step: w1 = w2 = 0 closed form") {
  testutil::rng(701);
  const QMatrix t = testutil::random_qmatrix(8, 8, 0.5, true);
  Eigen::ArrayXXd m(8, 8), n(8, 8);
  for (Index r = 0; r < 8; ++r)
    for (Index c = 0; c < 8; ++c) {
      m(r, c) = testutil::uniform(0.1, 2.0);
      n(r, c) = testutil::uniform(0.1, 2.0);
    }
  const QMatrix s = m_step(t, m, n, 0.0, 0.0, 1e-10, 100);
  const Eigen::ArrayXXd gain = n.square() / (m.square() + n.square());
  CHECK(testutil::max_abs_diff(s, t.scaled(gain)) < 1e-10);
}

TEST_CASE("m_step matches a dense direct solve on 8x8") {
  testutil::rng(702);
  const Index h = 8, w = 8, nn = h * w;

  // Dense grad^T grad = -Laplacian, built from the spatial filter.
  Eigen::MatrixXd lap(nn, nn);
  for (Index i = 0; i < nn; ++i) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(h, w);
    e(i % h, i / h) = 1.0;
    const Eigen::MatrixXd f = -apply_filter(e, FilterKind::Laplacian);
    lap.col(i) = Eigen::Map<const Eigen::VectorXd>(f.data(), nn);
  }

  for (int trial = 0; trial < 5; ++trial) {
    const QMatrix t = testutil::random_qmatrix(h, w, 0.5, false);
    Eigen::ArrayXXd m(h, w), n(h, w);
    for (Index r = 0; r < h; ++r)
      for (Index c = 0; c < w; ++c) {
        m(r, c) = testutil::uniform(0.1, 2.0);
        n(r, c) = testutil::uniform(0.1, 2.0);
      }
    const double w1 = 0.5, w2 = 0.7;

    QhbfIterStats stats;
    const QMatrix s = m_step(t, m, n, w1, w2, 1e-10, 4000, &stats);
    CHECK(stats.inner_residual <= 1e-10);

    // Dense route: per-plane (diag(M^2+N^2) + (w1+w2) L) x = N^2 t + w2 L t.
    const Eigen::ArrayXXd diag = m.square() + n.square();
    Eigen::MatrixXd sys = (w1 + w2) * lap;
    sys.diagonal() += Eigen::Map<const Eigen::VectorXd>(diag.data(), nn);
    const Eigen::MatrixXd sys_inv = sys.ldlt().solve(
        Eigen::MatrixXd::Identity(nn, nn));

    QMatrix dense(h, w);
    for (auto [plane_t, plane_s] :
         {std::pair{&t.w(), &dense.w()}, std::pair{&t.x(), &dense.x()},
          std::pair{&t.y(), &dense.y()}, std::pair{&t.z(), &dense.z()}}) {
      const Eigen::VectorXd tv =
          Eigen::Map<const Eigen::VectorXd>(plane_t->data(), nn);
      const Eigen::VectorXd rhs =
          (diag * 0.0 + n.square()).matrix().reshaped(nn, 1).array() *
              tv.array() +
          w2 * (lap * tv).array();
      const Eigen::VectorXd x = sys_inv * rhs.matrix();
      *const_cast<Eigen::MatrixXd *>(plane_s) =
          Eigen::Map<const Eigen::MatrixXd>(x.data(), h, w);
    }

    const double obj_impl = m_step_objective(s, t, m, n, w1, w2);
    const double obj_dense = m_step_objective(dense, t, m, n, w1, w2);
    CHECK(obj_impl == doctest::Approx(obj_dense).epsilon(1e-6));
    CHECK(std::abs(obj_impl - obj_dense) <= 1e-6 * std::max(1.0, obj_dense));
    CHECK(testutil::max_abs_diff(s, dense) < 1e-5);
  }
}

TEST_CASE("run_qhbf: identical inputs return the visible exactly") {
  testutil::rng(703);
  const QMatrix i_v = testutil::random_qmatrix(10, 10, 0.4, true);
  QhbfParams params;
  const QhbfResult res = run_qhbf(i_v, i_v, params);
  CHECK(testutil::max_abs_diff(res.fused, i_v) == 0.0);
}

TEST_CASE("run_qhbf: constant offset fuses between the inputs") {
  testutil::rng(704);
  QMatrix i_v = testutil::random_qmatrix(8, 8, 0.1, true);
  i_v.x().array() += 0.4;
  i_v.y().array() += 0.4;
  i_v.z().array() += 0.4;
  QMatrix offset(8, 8);
  offset.x().setConstant(0.2);
  offset.y().setConstant(0.2);
  offset.z().setConstant(0.2);
  const QMatrix i_f = i_v + offset;

  QhbfParams params;
  params.w1 = 0.0;
  params.w2 = 0.0;  // per-pixel convex combination regime
  const QhbfResult res = run_qhbf(i_v, i_f, params);
  const Eigen::ArrayXXd bv = intensity(i_v);
  const Eigen::ArrayXXd bf = intensity(i_f);
  const Eigen::ArrayXXd bo = intensity(res.fused);
  CHECK((bo >= bv - 1e-12).all());
  CHECK((bo <= bf + 1e-12).all());
}

TEST_CASE("run_qhbf is deterministic and meets the inner tolerance") {
  testutil::rng(705);
  const QMatrix i_v = testutil::random_qmatrix(12, 12, 0.3, true);
  QMatrix i_f = testutil::random_qmatrix(12, 12, 0.3, true);
  i_f.x().array() += 0.1;
  QhbfParams params;
  const QhbfResult a = run_qhbf(i_v, i_f, params);
  const QhbfResult b = run_qhbf(i_v, i_f, params);
  CHECK(testutil::max_abs_diff(a.fused, b.fused) == 0.0);
  for (const auto &st : a.trace) {
    CHECK(st.inner_residual <= params.inner_tol);
    CHECK(std::isfinite(st.objective));
  }
}

TEST_CASE("run_qhbf: frozen eps gives a non-increasing M-step objective") {
  testutil::rng(706);
  QMatrix i_v = testutil::random_qmatrix(16, 16, 0.15, true);
  i_v.x().array() += 0.4;
  i_v.y().array() += 0.4;
  i_v.z().array() += 0.4;
  QMatrix bump(16, 16);
  for (Index r = 0; r < 16; ++r)
    for (Index c = 0; c < 16; ++c) {
      const double d = std::exp(-0.05 * ((r - 8.0) * (r - 8.0) +
                                         (c - 8.0) * (c - 8.0)));
      bump.x()(r, c) = 0.3 * d;
      bump.y()(r, c) = 0.3 * d;
      bump.z()(r, c) = 0.3 * d;
    }
  const QMatrix i_f = i_v + bump;

  QhbfParams params;
  params.update_eps = false;
  const QhbfResult res = run_qhbf(i_v, i_f, params);
  REQUIRE(res.trace.size() == 4);
  for (size_t i = 0; i + 1 < res.trace.size(); ++i) {
    CHECK(res.trace[i + 1].objective <=
          res.trace[i].objective * (1.0 + 1e-9));
  }
}
