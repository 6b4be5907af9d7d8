#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "braidrep/quat.hpp"
#include "support.hpp"

using namespace braidrep;

namespace {

bool near(const Quaternion& a, const Quaternion& b, double tol = 1e-12) { return distance(a, b) <= tol; }
bool near(const SpherePoint& a, const SpherePoint& b, double tol = 1e-12) {
  return (a.vec() - b.vec()).norm() <= tol;
}

// Rodrigues rotation of v by angle about a unit axis.
Vec3 rodrigues(const Vec3& v, const Vec3& axis, double angle) {
  return v * std::cos(angle) + axis.cross(v) * std::sin(angle) + axis * axis.dot(v) * (1 - std::cos(angle));
}

}  // namespace

TEST_CASE("quaternion table") {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(near(i * j, k));
  CHECK(near(j * i, -k));
  CHECK(near(j * k, i));
  CHECK(near(k * i, j));
  CHECK(near(i * i, -Quaternion::one()));
  CHECK(near(i * j * k, -Quaternion::one()));
  CHECK(near(j * i * j.inverse(), -i));
  CHECK(near(mul(i, j), k));
}

TEST_CASE("multiplication is associative and norms multiply") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const Quaternion a = sample_unit_quaternion(rng);
    const Quaternion b = sample_unit_quaternion(rng);
    const Quaternion c = sample_unit_quaternion(rng);
    CHECK(near((a * b) * c, a * (b * c)));
    CHECK(std::abs((a * b).norm() - 1.0) < 1e-12);
    CHECK(near(a * a.inverse(), Quaternion::one()));
  }
}

TEST_CASE("conjugate_by examples") {
  std::mt19937_64 rng(2);
  const SpherePoint x = sample_sphere(rng);
  CHECK(near(conjugate_by(Quaternion::one(), x), x));
  CHECK(near(conjugate_by(-Quaternion::one(), x), x));
  const Quaternion q = exp_so3(Vec3(0, 0, std::numbers::pi / 4));
  CHECK(near(conjugate_by(q, SpherePoint::i()), SpherePoint::j()));
}

TEST_CASE("exp_so3 rotates by twice the axis length") {
  std::mt19937_64 rng(3);
  CHECK(near(exp_so3(Vec3::Zero()), Quaternion::one()));
  for (int t = 0; t < 50; ++t) {
    const SpherePoint axis = sample_sphere(rng);
    const double angle = std::uniform_real_distribution<double>(-3, 3)(rng);
    const SpherePoint v = sample_sphere(rng);
    const Quaternion q = exp_so3(axis.vec() * (angle / 2));
    CHECK(std::abs(q.norm() - 1) < 1e-14);
    CHECK((conjugate_by(q, v).vec() - rodrigues(v.vec(), axis.vec(), angle)).norm() < 1e-12);
  }
}

TEST_CASE("conjugation is a homomorphism and preserves the sphere") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const Quaternion a = sample_unit_quaternion(rng);
    const Quaternion b = sample_unit_quaternion(rng);
    const SpherePoint x = sample_sphere(rng);
    CHECK(near(conjugate_by(a * b, x), conjugate_by(a, conjugate_by(b, x))));
    const SpherePoint y = conjugate_by(a, x);
    CHECK(std::abs(y.vec().norm() - 1.0) < 1e-15);
    CHECK(near(y.quat() * y.quat(), -Quaternion::one()));
  }
}

TEST_CASE("rotation_taking moves one unit vector to another") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const SpherePoint a = sample_sphere(rng);
    const SpherePoint b = t == 0 ? -a : sample_sphere(rng);
    CHECK((conjugate_by(rotation_taking(a.vec(), b.vec()), a).vec() - b.vec()).norm() < 1e-12);
  }
  CHECK((conjugate_by(rotation_taking(-Vec3::UnitX(), Vec3::UnitX()), -SpherePoint::i()).vec() - Vec3::UnitX()).norm() < 1e-12);
}

TEST_CASE("sample_sphere is centred and on the sphere") {
  std::mt19937_64 rng(6);
  const int draws = 100000;
  Vec3 mean = Vec3::Zero();
  for (int t = 0; t < draws; ++t) {
    const SpherePoint p = sample_sphere(rng);
    CHECK(std::abs(p.vec().norm() - 1.0) <= 1e-12);
    mean += p.vec();
  }
  mean /= draws;
  // Each coordinate has variance 1/3.
  const double sigma = std::sqrt(1.0 / 3.0 / draws);
  for (int c = 0; c < 3; ++c) CHECK(std::abs(mean(c)) < 3 * sigma);
}

TEST_CASE("sample_unit_quaternion has unit norm and zero mean") {
  std::mt19937_64 rng(7);
  const int draws = 100000;
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  for (int t = 0; t < draws; ++t) {
    const Quaternion q = sample_unit_quaternion(rng);
    CHECK(std::abs(q.norm() - 1.0) <= 1e-12);
    mean += Eigen::Vector4d(q.w, q.x, q.y, q.z);
  }
  mean /= draws;
  const double sigma = std::sqrt(0.25 / draws);
  for (int c = 0; c < 4; ++c) CHECK(std::abs(mean(c)) < 3 * sigma);
}

TEST_CASE("tangent_basis is an oriented orthonormal frame") {
  const auto [e1, e2] = tangent_basis(SpherePoint::i());
  CHECK(std::abs(e1.v.dot(Vec3::UnitX())) < 1e-15);
  CHECK(std::abs(e2.v.dot(Vec3::UnitX())) < 1e-15);
  CHECK((e1.v - Vec3::UnitY()).norm() < 1e-15);
  CHECK((e2.v - Vec3::UnitZ()).norm() < 1e-15);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const SpherePoint p = sample_sphere(rng);
    const auto f = tangent_frame(p);
    CHECK((f.transpose() * f - Eigen::Matrix2d::Identity()).norm() < 1e-12);
    CHECK((f.transpose() * p.vec()).norm() < 1e-12);
    CHECK((f.col(0).cross(f.col(1)) - p.vec()).norm() < 1e-12);
  }
}

TEST_CASE("sphere points reject the zero vector") {
  CHECK_THROWS_AS(SpherePoint(0.0, 0.0, 0.0), std::domain_error);
  CHECK(near(SpherePoint(0, 3, 0), SpherePoint::j()));
  CHECK(std::abs(Quaternion{3, 0, 4, 0}.normalized().norm() - 1.0) < 1e-15);
  CHECK(Quaternion{0.5, 0, 0, 0}.trace() == 1.0);
}
