#include "qivif/qsvd.hpp"

#include <Eigen/SVD>
#include <sstream>
#include <stdexcept>

#include "qivif/qlinalg.hpp"

namespace qivif {

namespace {

// Map one complex column of the adjoint's U/V back to a quaternion column:
// [alpha; beta] -> alpha - conj(beta)*j.
void place_column(const Eigen::MatrixXcd &cols, Index col, Index n,
                  QMatrix &dst, Index dst_col) {
  for (Index r = 0; r < n; ++r) {
    const std::complex<double> a = cols(r, col);
    const std::complex<double> b = cols(n + r, col);
    dst.set(r, dst_col, Quat(a.real(), a.imag(), -b.real(), b.imag()));
  }
}

[[noreturn]] void pair_mismatch(const char *what, Index index, double s0,
                                double s1) {
  std::ostringstream msg;
  msg << "qsvd: adjoint " << what << " not paired at index " << index << " ("
      << s0 << " vs " << s1 << ")";
  throw std::runtime_error(msg.str());
}

// Two-sided Jacobi on the full adjoint. BDCSVD is avoided on purpose: the
// complex BDCSVD in Eigen 3.4 returns unpaired (wrong) singular values on
// some inputs, which the pair check below would reject.
void qsvd_jacobi(const QMatrix &a, QsvdResult &res) {
  const Index h = a.rows(), w = a.cols();
  const Index k = std::min(h, w);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      complex_adjoint(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd &sv = svd.singularValues();

  const double pair_tol = 1e-8 * std::max(sv(0), 1e-12) + 1e-14;
  for (Index i = 0; i < k; ++i) {
    const double s0 = sv(2 * i), s1 = sv(2 * i + 1);
    if (std::abs(s0 - s1) > pair_tol) {
      pair_mismatch("singular values", i, s0, s1);
    }
    res.s(i) = s0;
    place_column(svd.matrixU(), 2 * i, h, res.u, i);
    place_column(svd.matrixV(), 2 * i, w, res.v, i);
  }
}

// Large-matrix route: Hermitian eigendecomposition of the smaller Gram
// matrix. Costs the usual squared-condition accuracy on the smallest
// singular values; columns belonging to numerically zero singular values
// are left at zero (reconstruction is unaffected, strict orthonormality
// only holds for the numerically nonzero spectrum).
void qsvd_gram(const QMatrix &a, QsvdResult &res) {
  const Index h = a.rows(), w = a.cols();
  const Index k = std::min(h, w);
  const bool tall = h >= w;
  const QMatrix gram = tall ? a.conj_transpose() * a : a * a.conj_transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(complex_adjoint(gram));
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("qsvd: Gram eigendecomposition failed");
  }
  const Eigen::VectorXd &ev = eig.eigenvalues();  // ascending, paired
  const Index m = ev.size();                      // 2k

  const double pair_tol = 1e-8 * std::max(ev(m - 1), 1e-12) + 1e-14;
  QMatrix &small_side = tall ? res.v : res.u;
  for (Index i = 0; i < k; ++i) {
    const double l0 = ev(m - 1 - 2 * i), l1 = ev(m - 2 - 2 * i);
    if (std::abs(l0 - l1) > pair_tol) {
      pair_mismatch("Gram eigenvalues", i, l0, l1);
    }
    res.s(i) = std::sqrt(std::max(l0, 0.0));
    place_column(eig.eigenvectors(), m - 1 - 2 * i, k, small_side, i);
  }

  // Other side by one multiplication, scaled per singular value.
  const double floor = 1e-12 * res.s(0);
  if (tall) {
    QMatrix av = a * res.v;
    for (Index i = 0; i < k; ++i) {
      const double scale = res.s(i) > floor ? 1.0 / res.s(i) : 0.0;
      res.u.w().col(i) = av.w().col(i) * scale;
      res.u.x().col(i) = av.x().col(i) * scale;
      res.u.y().col(i) = av.y().col(i) * scale;
      res.u.z().col(i) = av.z().col(i) * scale;
    }
  } else {
    QMatrix ahu = a.conj_transpose() * res.u;
    for (Index i = 0; i < k; ++i) {
      const double scale = res.s(i) > floor ? 1.0 / res.s(i) : 0.0;
      res.v.w().col(i) = ahu.w().col(i) * scale;
      res.v.x().col(i) = ahu.x().col(i) * scale;
      res.v.y().col(i) = ahu.y().col(i) * scale;
      res.v.z().col(i) = ahu.z().col(i) * scale;
    }
  }
}

constexpr Index kJacobiLimit = 160;  // short-side size where Jacobi stays fast

}  // namespace

QsvdResult qsvd(const QMatrix &a) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw std::invalid_argument("qsvd: empty matrix");
  }
  if (!a.all_finite()) {
    throw std::invalid_argument("qsvd: non-finite entries");
  }
  const Index h = a.rows(), w = a.cols();
  const Index k = std::min(h, w);

  QsvdResult res;
  res.u = QMatrix(h, k);
  res.v = QMatrix(w, k);
  res.s = Eigen::VectorXd::Zero(k);

  // The all-zero matrix has an arbitrary adjoint basis; return a canonical
  // decomposition instead of mapping meaningless singular vectors.
  if (a.norm_fro() == 0.0) {
    for (Index i = 0; i < k; ++i) {
      res.u.w()(i, i) = 1.0;
      res.v.w()(i, i) = 1.0;
    }
    return res;
  }

  if (k <= kJacobiLimit) {
    qsvd_jacobi(a, res);
  } else {
    qsvd_gram(a, res);
  }
  return res;
}

double norm(const QMatrix &a, NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return a.norm_l1();
    case NormKind::Fro:
      return a.norm_fro();
    case NormKind::Nuclear:
      return qsvd(a).s.sum();
  }
  throw std::logic_error("norm: unknown kind");
}

}  // namespace qivif
