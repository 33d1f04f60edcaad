#pragma once

#include <cmath>

namespace qivif {

/// Quaternion scalar q = w + x*i + y*j + z*k with Hamilton multiplication
/// (i*j = k, j*k = i, k*i = j, i^2 = j^2 = k^2 = -1).
struct Quat {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quat() = default;
  constexpr Quat(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quat real(double v) { return {v, 0.0, 0.0, 0.0}; }
  static constexpr Quat i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quat j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quat k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr Quat &operator+=(const Quat &r) {
    w += r.w; x += r.x; y += r.y; z += r.z;
    return *this;
  }
  constexpr Quat &operator-=(const Quat &r) {
    w -= r.w; x -= r.x; y -= r.y; z -= r.z;
    return *this;
  }
  constexpr Quat &operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr Quat operator+(Quat a, const Quat &b) { return a += b; }
  friend constexpr Quat operator-(Quat a, const Quat &b) { return a -= b; }
  friend constexpr Quat operator*(Quat a, double s) { return a *= s; }
  friend constexpr Quat operator*(double s, Quat a) { return a *= s; }
  friend constexpr Quat operator-(const Quat &a) { return {-a.w, -a.x, -a.y, -a.z}; }

  [[nodiscard]] constexpr Quat conj() const { return {w, -x, -y, -z}; }
  [[nodiscard]] constexpr double norm_sq() const {
    return w * w + x * x + y * y + z * z;
  }
  [[nodiscard]] double modulus() const { return std::sqrt(norm_sq()); }
  [[nodiscard]] constexpr bool is_pure(double tol = 0.0) const {
    return std::abs(w) <= tol;
  }
};

/// Hamilton product; non-commutative.
constexpr Quat qmul(const Quat &p, const Quat &q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quat operator*(const Quat &p, const Quat &q) { return qmul(p, q); }

}  // namespace qivif
