#ifndef QLRA_QUATERNION_HPP
#define QLRA_QUATERNION_HPP

#include <cmath>

namespace qlra {

// Hamilton quaternion w + x*i + y*j + z*k. Multiplication is associative and
// distributive but not commutative (ij = k, ji = -k).
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  static constexpr Quaternion real(double v) { return {v, 0.0, 0.0, 0.0}; }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }

  constexpr Quaternion operator+(const Quaternion& o) const {
    return {w + o.w, x + o.x, y + o.y, z + o.z};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {w - o.w, x - o.x, y - o.y, z - o.z};
  }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
  friend constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

  Quaternion inverse() const {
    const double n2 = norm_sq();
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }

  constexpr bool operator==(const Quaternion& o) const = default;
};

inline double abs(const Quaternion& q) { return q.norm(); }

}  // namespace qlra

#endif
