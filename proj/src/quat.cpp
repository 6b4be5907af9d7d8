#include "braidrep/quat.hpp"

#include <cmath>
#include <stdexcept>

namespace braidrep {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw std::domain_error("inverse of zero quaternion");
  return {w / n2, -x / n2, -y / n2, -z / n2};
}

Quaternion Quaternion::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize zero quaternion");
  return {w / n, x / n, y / n, z / n};
}

Quaternion& Quaternion::operator+=(const Quaternion& o) {
  w += o.w;
  x += o.x;
  y += o.y;
  z += o.z;
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
  w -= o.w;
  x -= o.x;
  y -= o.y;
  z -= o.z;
  return *this;
}

Quaternion& Quaternion::operator*=(double s) {
  w *= s;
  x *= s;
  y *= s;
  z *= s;
  return *this;
}

double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

SpherePoint::SpherePoint(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::domain_error("sphere point from a zero or non-finite vector");
  v_ = v / n;
}

Quaternion conjugate_by(const Quaternion& a, const Quaternion& x) {
  return a * x * a.inverse();
}

SpherePoint conjugate_by(const Quaternion& a, const SpherePoint& x) {
  return SpherePoint(conjugate_by(a, x.quat()).vec());
}

Quaternion exp_so3(const Vec3& axis) {
  const double theta = axis.norm();
  if (theta == 0.0) return Quaternion::one();
  const Vec3 u = axis / theta;
  const double s = std::sin(theta);
  return {std::cos(theta), s * u.x(), s * u.y(), s * u.z()};
}

SpherePoint sample_sphere(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Vec3 v(normal(rng), normal(rng), normal(rng));
    if (v.squaredNorm() > 1e-20) return SpherePoint(v);
  }
}

Quaternion sample_unit_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Quaternion q{normal(rng), normal(rng), normal(rng), normal(rng)};
    if (q.norm2() > 1e-20) return q.normalized();
  }
}

Quaternion rotation_taking(const Vec3& from, const Vec3& to) {
  const double c = from.dot(to);
  if (c < -1.0 + 1e-12) {
    // Half turn about any axis orthogonal to `from`.
    Vec3 axis = from.cross(Vec3::UnitX());
    if (axis.norm() < 1e-6) axis = from.cross(Vec3::UnitY());
    axis.normalize();
    return Quaternion::pure(axis);
  }
  const Vec3 a = from.cross(to);
  return Quaternion{1.0 + c, a.x(), a.y(), a.z()}.normalized();
}

Eigen::Matrix<double, 3, 2> tangent_frame(const SpherePoint& p) {
  const Vec3& v = p.vec();
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(v[a]) < std::abs(v[axis])) axis = a;
  Vec3 e = Vec3::Unit(axis);
  Vec3 e1 = (e - e.dot(v) * v).normalized();
  Vec3 e2 = v.cross(e1);
  Eigen::Matrix<double, 3, 2> frame;
  frame.col(0) = e1;
  frame.col(1) = e2;
  return frame;
}

std::pair<TangentVector, TangentVector> tangent_basis(const SpherePoint& p) {
  const auto f = tangent_frame(p);
  return {TangentVector{p, f.col(0)}, TangentVector{p, f.col(1)}};
}

}  // namespace braidrep
