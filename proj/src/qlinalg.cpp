#include "qivif/qlinalg.hpp"

#include <stdexcept>

namespace qivif {

Eigen::MatrixXcd complex_adjoint(const QMatrix &a) {
  Eigen::MatrixXcd a1, a2;
  a.to_complex_pair(a1, a2);
  const Index h = a.rows(), w = a.cols();
  Eigen::MatrixXcd adj(2 * h, 2 * w);
  adj.topLeftCorner(h, w) = a1;
  adj.topRightCorner(h, w) = a2;
  adj.bottomLeftCorner(h, w) = -a2.conjugate();
  adj.bottomRightCorner(h, w) = a1.conjugate();
  return adj;
}

QMatrix from_adjoint_top(const Eigen::MatrixXcd &top) {
  if (top.cols() % 2 != 0) {
    throw std::invalid_argument("from_adjoint_top: odd column count");
  }
  const Index w = top.cols() / 2;
  return QMatrix::from_complex_pair(top.leftCols(w), top.rightCols(w));
}

namespace {

Eigen::LLT<Eigen::MatrixXcd> adjoint_llt(const QMatrix &m, const char *what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix not square");
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(complex_adjoint(m));
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(std::string(what) +
                             ": Cholesky factorization failed "
                             "(matrix not positive definite or ill-conditioned)");
  }
  return llt;
}

}  // namespace

QMatrix solve_hpd_left(const QMatrix &m, const QMatrix &r) {
  if (m.cols() != r.rows()) {
    throw std::invalid_argument("solve_hpd_left: shape mismatch");
  }
  auto llt = adjoint_llt(m, "solve_hpd_left");
  Eigen::MatrixXcd x = llt.solve(complex_adjoint(r));
  return from_adjoint_top(x.topRows(r.rows()));
}

QMatrix solve_hpd_right(const QMatrix &m, const QMatrix &r) {
  if (r.cols() != m.rows()) {
    throw std::invalid_argument("solve_hpd_right: shape mismatch");
  }
  // X M = R  <=>  M X^H = R^H (M Hermitian).
  auto llt = adjoint_llt(m, "solve_hpd_right");
  Eigen::MatrixXcd xh = llt.solve(complex_adjoint(r).adjoint());
  return from_adjoint_top(xh.adjoint().topRows(r.rows()));
}

}  // namespace qivif
