#include "qivif/qmatrix.hpp"

#include <stdexcept>
#include <utility>

namespace qivif {

QMatrix QMatrix::from_planes(Eigen::MatrixXd w, Eigen::MatrixXd x,
                             Eigen::MatrixXd y, Eigen::MatrixXd z) {
  if (x.rows() != w.rows() || x.cols() != w.cols() || y.rows() != w.rows() ||
      y.cols() != w.cols() || z.rows() != w.rows() || z.cols() != w.cols()) {
    throw std::invalid_argument("QMatrix::from_planes: plane shapes differ");
  }
  QMatrix m;
  m.w_ = std::move(w);
  m.x_ = std::move(x);
  m.y_ = std::move(y);
  m.z_ = std::move(z);
  return m;
}

namespace {
void check_same_shape(const QMatrix &a, const QMatrix &b, const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
  }
}
}  // namespace

QMatrix &QMatrix::operator+=(const QMatrix &r) {
  check_same_shape(*this, r, "QMatrix::operator+=");
  w_ += r.w_;
  x_ += r.x_;
  y_ += r.y_;
  z_ += r.z_;
  return *this;
}

QMatrix &QMatrix::operator-=(const QMatrix &r) {
  check_same_shape(*this, r, "QMatrix::operator-=");
  w_ -= r.w_;
  x_ -= r.x_;
  y_ -= r.y_;
  z_ -= r.z_;
  return *this;
}

QMatrix &QMatrix::operator*=(double s) {
  w_ *= s;
  x_ *= s;
  y_ *= s;
  z_ *= s;
  return *this;
}

QMatrix QMatrix::operator-() const {
  QMatrix m(*this);
  m *= -1.0;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix &b) const {
  if (cols() != b.rows()) {
    throw std::invalid_argument("QMatrix::operator*: inner dimensions differ");
  }
  // Hamilton product expanded over the component planes; each line is a sum
  // of real matrix products.
  QMatrix c;
  c.w_ = w_ * b.w_ - x_ * b.x_ - y_ * b.y_ - z_ * b.z_;
  c.x_ = w_ * b.x_ + x_ * b.w_ + y_ * b.z_ - z_ * b.y_;
  c.y_ = w_ * b.y_ - x_ * b.z_ + y_ * b.w_ + z_ * b.x_;
  c.z_ = w_ * b.z_ + x_ * b.y_ - y_ * b.x_ + z_ * b.w_;
  return c;
}

QMatrix QMatrix::conjugate() const {
  QMatrix m;
  m.w_ = w_;
  m.x_ = -x_;
  m.y_ = -y_;
  m.z_ = -z_;
  return m;
}

QMatrix QMatrix::conj_transpose() const {
  QMatrix m;
  m.w_ = w_.transpose();
  m.x_ = -x_.transpose();
  m.y_ = -y_.transpose();
  m.z_ = -z_.transpose();
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix m;
  m.w_ = w_.transpose();
  m.x_ = x_.transpose();
  m.y_ = y_.transpose();
  m.z_ = z_.transpose();
  return m;
}

Eigen::ArrayXXd QMatrix::modulus() const {
  return (w_.array().square() + x_.array().square() + y_.array().square() +
          z_.array().square())
      .sqrt();
}

double QMatrix::norm_fro() const {
  const double s = w_.squaredNorm() + x_.squaredNorm() + y_.squaredNorm() +
                   z_.squaredNorm();
  return std::sqrt(s);
}

double QMatrix::max_modulus() const {
  if (empty()) return 0.0;
  return modulus().maxCoeff();
}

double QMatrix::dot(const QMatrix &b) const {
  check_same_shape(*this, b, "QMatrix::dot");
  return w_.cwiseProduct(b.w_).sum() + x_.cwiseProduct(b.x_).sum() +
         y_.cwiseProduct(b.y_).sum() + z_.cwiseProduct(b.z_).sum();
}

QMatrix QMatrix::scaled(const Eigen::ArrayXXd &gain) const {
  if (gain.rows() != rows() || gain.cols() != cols()) {
    throw std::invalid_argument("QMatrix::scaled: gain shape mismatch");
  }
  QMatrix m;
  m.w_ = (w_.array() * gain).matrix();
  m.x_ = (x_.array() * gain).matrix();
  m.y_ = (y_.array() * gain).matrix();
  m.z_ = (z_.array() * gain).matrix();
  return m;
}

void QMatrix::to_complex_pair(Eigen::MatrixXcd &a1, Eigen::MatrixXcd &a2) const {
  const std::complex<double> im(0.0, 1.0);
  a1 = w_.cast<std::complex<double>>() + im * x_.cast<std::complex<double>>();
  a2 = y_.cast<std::complex<double>>() + im * z_.cast<std::complex<double>>();
}

QMatrix QMatrix::from_complex_pair(const Eigen::MatrixXcd &a1,
                                   const Eigen::MatrixXcd &a2) {
  if (a1.rows() != a2.rows() || a1.cols() != a2.cols()) {
    throw std::invalid_argument("QMatrix::from_complex_pair: shape mismatch");
  }
  QMatrix m;
  m.w_ = a1.real();
  m.x_ = a1.imag();
  m.y_ = a2.real();
  m.z_ = a2.imag();
  return m;
}

}  // namespace qivif
