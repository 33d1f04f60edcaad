#pragma once

#include <Eigen/Dense>

#include "qivif/quat.hpp"

namespace qivif {

using Eigen::Index;

/// Dense H x W quaternion matrix stored as four real component planes.
/// The planes share shape; an all-zero w-plane makes the matrix "pure",
/// which is how color images live here ((x,y,z) = (r,g,b)).
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(Index rows, Index cols)
      : w_(Eigen::MatrixXd::Zero(rows, cols)),
        x_(Eigen::MatrixXd::Zero(rows, cols)),
        y_(Eigen::MatrixXd::Zero(rows, cols)),
        z_(Eigen::MatrixXd::Zero(rows, cols)) {}

  static QMatrix zero(Index rows, Index cols) { return QMatrix(rows, cols); }

  /// Real identity (1 on the diagonal, zero imaginary parts).
  static QMatrix identity(Index n) {
    QMatrix m(n, n);
    m.w_.setIdentity();
    return m;
  }

  static QMatrix from_planes(Eigen::MatrixXd w, Eigen::MatrixXd x,
                             Eigen::MatrixXd y, Eigen::MatrixXd z);

  [[nodiscard]] Index rows() const { return w_.rows(); }
  [[nodiscard]] Index cols() const { return w_.cols(); }
  [[nodiscard]] bool empty() const { return w_.size() == 0; }

  Eigen::MatrixXd &w() { return w_; }
  Eigen::MatrixXd &x() { return x_; }
  Eigen::MatrixXd &y() { return y_; }
  Eigen::MatrixXd &z() { return z_; }
  [[nodiscard]] const Eigen::MatrixXd &w() const { return w_; }
  [[nodiscard]] const Eigen::MatrixXd &x() const { return x_; }
  [[nodiscard]] const Eigen::MatrixXd &y() const { return y_; }
  [[nodiscard]] const Eigen::MatrixXd &z() const { return z_; }

  [[nodiscard]] Quat at(Index r, Index c) const {
    return {w_(r, c), x_(r, c), y_(r, c), z_(r, c)};
  }
  void set(Index r, Index c, const Quat &q) {
    w_(r, c) = q.w;
    x_(r, c) = q.x;
    y_(r, c) = q.y;
    z_(r, c) = q.z;
  }

  QMatrix &operator+=(const QMatrix &r);
  QMatrix &operator-=(const QMatrix &r);
  QMatrix &operator*=(double s);

  friend QMatrix operator+(QMatrix a, const QMatrix &b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix &b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, double s) { return a *= s; }
  friend QMatrix operator*(double s, QMatrix a) { return a *= s; }
  friend QMatrix operator/(QMatrix a, double s) { return a *= (1.0 / s); }
  [[nodiscard]] QMatrix operator-() const;

  /// Hamilton matrix product; throws std::invalid_argument on shape mismatch.
  [[nodiscard]] QMatrix operator*(const QMatrix &b) const;

  [[nodiscard]] QMatrix conjugate() const;
  [[nodiscard]] QMatrix conj_transpose() const;
  [[nodiscard]] QMatrix transpose() const;

  /// Per-entry modulus sqrt(w^2+x^2+y^2+z^2).
  [[nodiscard]] Eigen::ArrayXXd modulus() const;

  [[nodiscard]] double norm_l1() const { return modulus().sum(); }
  [[nodiscard]] double norm_fro() const;
  [[nodiscard]] double max_modulus() const;

  /// Real inner product <A,B> = sum over entries and components.
  [[nodiscard]] double dot(const QMatrix &b) const;

  [[nodiscard]] bool is_pure(double tol = 0.0) const {
    return empty() || w_.cwiseAbs().maxCoeff() <= tol;
  }
  [[nodiscard]] bool all_finite() const {
    return w_.allFinite() && x_.allFinite() && y_.allFinite() && z_.allFinite();
  }

  /// Per-entry scaling by a real map (the Hadamard product with a real matrix).
  [[nodiscard]] QMatrix scaled(const Eigen::ArrayXXd &gain) const;

  /// Cayley-Dickson split A = A1 + A2*j with A1 = w + x*i, A2 = y + z*i.
  void to_complex_pair(Eigen::MatrixXcd &a1, Eigen::MatrixXcd &a2) const;
  static QMatrix from_complex_pair(const Eigen::MatrixXcd &a1,
                                   const Eigen::MatrixXcd &a2);

 private:
  Eigen::MatrixXd w_, x_, y_, z_;
};

}  // namespace qivif
