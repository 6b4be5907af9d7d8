#pragma once

// Quaternions as SU(2) elements and the trace-free sphere
// {x i + y j + z k : x^2 + y^2 + z^2 = 1}.

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <random>
#include <utility>

namespace braidrep {

using Vec3 = Eigen::Vector3d;

struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }
  static Quaternion pure(const Vec3& v) { return {0, v.x(), v.y(), v.z()}; }

  Vec3 vec() const { return {x, y, z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
  // Matrix trace of the corresponding SU(2) element.
  double trace() const { return 2.0 * w; }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  Quaternion inverse() const;
  Quaternion normalized() const;

  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion& operator+=(const Quaternion& o);
  Quaternion& operator-=(const Quaternion& o);
  Quaternion& operator*=(double s);
};

// Hamilton product.
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator*(double s, Quaternion a) { return a *= s; }
inline Quaternion mul(const Quaternion& a, const Quaternion& b) { return a * b; }

double distance(const Quaternion& a, const Quaternion& b);

// Unit pure-imaginary quaternion. Construction normalizes the input.
class SpherePoint {
 public:
  SpherePoint() : v_(1, 0, 0) {}
  explicit SpherePoint(const Vec3& v);
  SpherePoint(double x, double y, double z) : SpherePoint(Vec3(x, y, z)) {}

  static SpherePoint i() { return SpherePoint(1, 0, 0); }
  static SpherePoint j() { return SpherePoint(0, 1, 0); }
  static SpherePoint k() { return SpherePoint(0, 0, 1); }

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  Quaternion quat() const { return Quaternion::pure(v_); }

  SpherePoint operator-() const { return SpherePoint(-v_); }

 private:
  Vec3 v_;
};

struct TangentVector {
  SpherePoint base;
  Vec3 v;
};

// a x a^{-1}; a need not be exactly unit.
SpherePoint conjugate_by(const Quaternion& a, const SpherePoint& x);
Quaternion conjugate_by(const Quaternion& a, const Quaternion& x);

// exp of the pure quaternion with vector part `axis`; conjugation by the
// result rotates by 2|axis| about axis.
Quaternion exp_so3(const Vec3& axis);

// Unit quaternion whose conjugation action takes the unit vector `from` to `to`.
Quaternion rotation_taking(const Vec3& from, const Vec3& to);

SpherePoint sample_sphere(std::mt19937_64& rng);
// Haar-uniform on SU(2) = S^3.
Quaternion sample_unit_quaternion(std::mt19937_64& rng);

// Orthonormal frame (e1, e2) of the tangent plane at p with e1 x e2 = p.
// e1 is the projection of the coordinate axis along which |p| is smallest.
std::pair<TangentVector, TangentVector> tangent_basis(const SpherePoint& p);
// Same frame as the columns of a 3x2 matrix.
Eigen::Matrix<double, 3, 2> tangent_frame(const SpherePoint& p);

}  // namespace braidrep
