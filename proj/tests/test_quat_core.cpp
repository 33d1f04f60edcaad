#include <doctest.h>

#include "qivif/filters.hpp"
#include "qivif/qfft.hpp"
#include "qivif/qlinalg.hpp"
#include "qivif/qmatrix.hpp"
#include "qivif/qsvd.hpp"
#include "testutil.hpp"

using namespace qivif;
using testutil::random_qmatrix;
using testutil::random_quat;

TEST_CASE("Hamilton product basis rules") {
  const Quat i = Quat::i(), j = Quat::j(), k = Quat::k();
  CHECK((i * j).z == doctest::Approx(1.0));
  CHECK((j * i).z == doctest::Approx(-1.0));
  CHECK((j * k).x == doctest::Approx(1.0));
  CHECK((k * j).x == doctest::Approx(-1.0));
  CHECK((k * i).y == doctest::Approx(1.0));
  CHECK((i * k).y == doctest::Approx(-1.0));
  CHECK((i * i).w == doctest::Approx(-1.0));
  CHECK((j * j).w == doctest::Approx(-1.0));
  CHECK((k * k).w == doctest::Approx(-1.0));

  // (1+i)(1+j) = 1 + i + j + k
  const Quat p{1, 1, 0, 0}, q{1, 0, 1, 0};
  const Quat r = p * q;
  CHECK(r.w == doctest::Approx(1.0));
  CHECK(r.x == doctest::Approx(1.0));
  CHECK(r.y == doctest::Approx(1.0));
  CHECK(r.z == doctest::Approx(1.0));
}

TEST_CASE("q * conj(q) is the squared modulus") {
  const Quat q{1, 2, 3, 4};
  const Quat r = q * q.conj();
  CHECK(r.w == doctest::Approx(30.0));
  CHECK(std::abs(r.x) < 1e-15);
  CHECK(std::abs(r.y) < 1e-15);
  CHECK(std::abs(r.z) < 1e-15);
  CHECK(q.conj().conj().w == q.w);
  CHECK(q.conj().modulus() == doctest::Approx(q.modulus()));
}

TEST_CASE("modulus is multiplicative") {
  testutil::rng(101);
  for (int t = 0; t < 100; ++t) {
    const Quat p = random_quat(), q = random_quat();
    CHECK((p * q).modulus() ==
          doctest::Approx(p.modulus() * q.modulus()).epsilon(1e-12));
  }
}

TEST_CASE("matmul identity and 1x1 reduction") {
  testutil::rng(102);
  const QMatrix a = random_qmatrix(4, 4);
  CHECK(testutil::max_abs_diff(a * QMatrix::identity(4), a) < 1e-14);
  CHECK(testutil::max_abs_diff(QMatrix::identity(4) * a, a) < 1e-14);

  QMatrix p(1, 1), q(1, 1);
  const Quat pq = random_quat(), qq = random_quat();
  p.set(0, 0, pq);
  q.set(0, 0, qq);
  const Quat expect = pq * qq;
  const Quat got = (p * q).at(0, 0);
  CHECK(got.w == doctest::Approx(expect.w));
  CHECK(got.x == doctest::Approx(expect.x));
  CHECK(got.y == doctest::Approx(expect.y));
  CHECK(got.z == doctest::Approx(expect.z));
}

TEST_CASE("matmul matches the complex-adjoint oracle") {
  testutil::rng(103);
  for (int t = 0; t < 20; ++t) {
    const QMatrix a = random_qmatrix(3, 2), b = random_qmatrix(2, 4);
    const QMatrix via_adjoint = testutil::oracle_from_adjoint(
        testutil::oracle_adjoint(a) * testutil::oracle_adjoint(b));
    CHECK(testutil::max_abs_diff(a * b, via_adjoint) < 1e-12);
  }
  CHECK_THROWS_AS(random_qmatrix(3, 2) * random_qmatrix(3, 2),
                  std::invalid_argument);
}

TEST_CASE("conj-transpose reverses products") {
  testutil::rng(104);
  for (int t = 0; t < 20; ++t) {
    const QMatrix a = random_qmatrix(3, 5), b = random_qmatrix(5, 2);
    const QMatrix lhs = (a * b).conj_transpose();
    const QMatrix rhs = b.conj_transpose() * a.conj_transpose();
    CHECK(testutil::max_abs_diff(lhs, rhs) < 1e-10);
  }
  const QMatrix a = random_qmatrix(4, 3);
  CHECK(testutil::max_abs_diff(a.conj_transpose().conj_transpose(), a) == 0.0);
}

TEST_CASE("norms") {
  QMatrix z(3, 4);
  CHECK(norm(z, NormKind::L1) == 0.0);
  CHECK(norm(z, NormKind::Fro) == 0.0);
  CHECK(norm(z, NormKind::Nuclear) == 0.0);

  QMatrix single(1, 1);
  single.set(0, 0, Quat{1, 1, 1, 1});
  CHECK(norm(single, NormKind::L1) == doctest::Approx(2.0));
  CHECK(norm(single, NormKind::Fro) == doctest::Approx(2.0));

  QMatrix d = QMatrix::zero(2, 2);
  d.w()(0, 0) = 3.0;
  d.w()(1, 1) = 1.0;
  CHECK(norm(d, NormKind::Nuclear) == doctest::Approx(4.0).epsilon(1e-9));

  // Frobenius norm squared equals the sum of squared moduli.
  testutil::rng(105);
  const QMatrix a = random_qmatrix(5, 3);
  CHECK(a.norm_fro() * a.norm_fro() ==
        doctest::Approx(a.modulus().square().sum()).epsilon(1e-12));
}

TEST_CASE("qsvd on diagonal and zero matrices") {
  QMatrix d(2, 2);
  d.w()(0, 0) = 3.0;
  d.w()(1, 1) = 1.0;
  const QsvdResult r = qsvd(d);
  CHECK(r.s(0) == doctest::Approx(3.0));
  CHECK(r.s(1) == doctest::Approx(1.0));

  const QsvdResult z = qsvd(QMatrix(3, 2));
  CHECK(z.s.maxCoeff() == 0.0);
  CHECK(z.s.size() == 2);
}

namespace {
void check_qsvd(const QMatrix &a, double tol) {
  const QsvdResult r = qsvd(a);
  const Index k = std::min(a.rows(), a.cols());

  // Non-increasing, non-negative spectrum.
  for (Index i = 0; i + 1 < k; ++i) CHECK(r.s(i) >= r.s(i + 1));
  CHECK(r.s(k - 1) >= 0.0);

  // Reconstruction.
  QMatrix us = r.u;
  for (Index i = 0; i < k; ++i) {
    us.w().col(i) *= r.s(i);
    us.x().col(i) *= r.s(i);
    us.y().col(i) *= r.s(i);
    us.z().col(i) *= r.s(i);
  }
  const QMatrix recon = us * r.v.conj_transpose();
  CHECK((recon - a).norm_fro() / std::max(1.0, a.norm_fro()) < tol);

  // Orthonormal columns.
  const QMatrix utu = r.u.conj_transpose() * r.u;
  const QMatrix vtv = r.v.conj_transpose() * r.v;
  CHECK((utu - QMatrix::identity(k)).norm_fro() < tol);
  CHECK((vtv - QMatrix::identity(k)).norm_fro() < tol);

  // Spectrum matches the independent adjoint oracle.
  const Eigen::VectorXd oracle = testutil::oracle_singular_values(a);
  CHECK((r.s - oracle).cwiseAbs().maxCoeff() < tol * std::max(1.0, oracle(0)));
}
}  // namespace

TEST_CASE("qsvd reconstruction, orthonormality and oracle agreement") {
  testutil::rng(106);
  for (int t = 0; t < 100; ++t) {
    const Index h = 1 + (testutil::rng()() % 32);
    const Index w = 1 + (testutil::rng()() % 24);
    check_qsvd(random_qmatrix(h, w, 1.0, t % 2 == 0), 1e-9);
  }
}

TEST_CASE("qsvd rejects non-finite input") {
  QMatrix a(2, 2);
  a.w()(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(qsvd(a), std::invalid_argument);
}

TEST_CASE("hpd solves satisfy their systems") {
  testutil::rng(107);
  for (int t = 0; t < 10; ++t) {
    const QMatrix b = random_qmatrix(3, 6);
    QMatrix m = b * b.conj_transpose();
    m += QMatrix::identity(3);
    const QMatrix r = random_qmatrix(5, 3);
    const QMatrix x = solve_hpd_right(m, r);  // x m = r
    CHECK((x * m - r).norm_fro() < 1e-9);

    const QMatrix r2 = random_qmatrix(3, 4);
    const QMatrix x2 = solve_hpd_left(m, r2);  // m x2 = r2
    CHECK((m * x2 - r2).norm_fro() < 1e-9);
  }
}

TEST_CASE("qfft roundtrip and impulse") {
  testutil::rng(108);
  const QMatrix a = random_qmatrix(16, 16);
  const QMatrix back = qfft(qfft(a), true);
  CHECK(testutil::max_abs_diff(back, a) < 1e-10);

  // Constant plane concentrates at the DC bin.
  QMatrix c(8, 8);
  c.x().setConstant(0.5);
  const QMatrix f = qfft(c);
  CHECK(f.x()(0, 0) == doctest::Approx(0.5 * 64));
  f.x()(0, 0);
  QMatrix f_zeroed = f;
  f_zeroed.x()(0, 0) = 0.0;
  CHECK(f_zeroed.max_modulus() < 1e-12);
}

TEST_CASE("qfft is linear and preserves energy") {
  testutil::rng(109);
  const QMatrix a = random_qmatrix(12, 10), b = random_qmatrix(12, 10);
  const QMatrix lhs = qfft(a + b * 2.0);
  const QMatrix rhs = qfft(a) + qfft(b) * 2.0;
  CHECK(testutil::max_abs_diff(lhs, rhs) < 1e-10);

  // Parseval under the unnormalized-forward convention.
  const double hw = 12.0 * 10.0;
  CHECK(qfft(a).norm_fro() ==
        doctest::Approx(std::sqrt(hw) * a.norm_fro()).epsilon(1e-9));
}

TEST_CASE("convolution theorem links filters and spectra") {
  testutil::rng(110);
  const Index h = 12, w = 9;
  const QMatrix a = random_qmatrix(h, w);
  for (const auto kind : {FilterKind::Grad1X, FilterKind::Grad1Y,
                          FilterKind::Laplacian, FilterKind::Cross}) {
    const QMatrix direct = qfft(apply_filter(a, kind));
    const Eigen::ArrayXXcd spec = filter_spectrum(kind, h, w);

    Eigen::MatrixXcd f1, f2;
    qfft(a).to_complex_pair(f1, f2);
    f1.array() *= spec;
    f2.array() *= spec;
    const QMatrix pointwise = QMatrix::from_complex_pair(f1, f2);
    CHECK((direct - pointwise).max_modulus() < 1e-8);
  }
}

TEST_CASE("gradient filters on constants and ramps") {
  QMatrix c(6, 7);
  c.y().setConstant(0.3);
  for (const auto kind : {FilterKind::Grad1X, FilterKind::Grad1Y,
                          FilterKind::Laplacian, FilterKind::Cross}) {
    CHECK(apply_filter(c, kind).max_modulus() < 1e-15);
  }

  // Ramp in x: interior forward difference is constant, the wrap artifact
  // stays in the seam column.
  QMatrix ramp(4, 8);
  for (Index r = 0; r < 4; ++r)
    for (Index col = 0; col < 8; ++col) ramp.x()(r, col) = double(col);
  const QMatrix g = apply_filter(ramp, FilterKind::Grad1X);
  for (Index r = 0; r < 4; ++r) {
    for (Index col = 0; col + 1 < 8; ++col) {
      CHECK(g.x()(r, col) == doctest::Approx(1.0));
    }
    CHECK(g.x()(r, 7) == doctest::Approx(-7.0));  // seam
  }

  // Filtering commutes with assembling planes (linearity over components).
  testutil::rng(111);
  const QMatrix m = random_qmatrix(5, 6);
  const QMatrix gm = apply_filter(m, FilterKind::Laplacian);
  CHECK((gm.x() - apply_filter(m.x(), FilterKind::Laplacian)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK((gm.z() - apply_filter(m.z(), FilterKind::Laplacian)).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("pure predicate") {
  QMatrix a(2, 2);
  a.x()(0, 0) = 1.0;
  CHECK(a.is_pure());
  a.w()(1, 1) = 1e-3;
  CHECK_FALSE(a.is_pure());
  CHECK(a.is_pure(1e-2));
}
