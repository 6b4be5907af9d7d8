#pragma once

// The signed braid action (eps, sigma) . X = eps * sigma(X) on tuples of
// SU(2) elements, its derivative, and the maps relating fixed points for
// different sign vectors and stabilized braids.

#include <Eigen/Core>
#include <vector>

#include "braidrep/braid.hpp"
#include "braidrep/quat.hpp"

namespace braidrep {

// A point of (S^2)^n.
class RepTuple {
 public:
  RepTuple() = default;
  explicit RepTuple(std::vector<SpherePoint> points) : points_(std::move(points)) {}
  RepTuple(std::initializer_list<SpherePoint> points) : points_(points) {}

  int size() const { return static_cast<int>(points_.size()); }
  const SpherePoint& operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }
  SpherePoint& operator[](int i) { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<SpherePoint>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  static RepTuple all_i(int n) { return RepTuple(std::vector<SpherePoint>(static_cast<std::size_t>(n), SpherePoint::i())); }

 private:
  std::vector<SpherePoint> points_;
};

// A point of SU(2)^n, used where the trace-free restriction is dropped.
using QuatTuple = std::vector<Quaternion>;

QuatTuple to_quaternions(const RepTuple& X);
RepTuple conjugate_by(const Quaternion& a, const RepTuple& X);
RepTuple apply_signs(const SignVector& eps, const RepTuple& X);
// Largest Euclidean distance between corresponding entries.
double max_distance(const RepTuple& a, const RepTuple& b);

// Generator sigma_i sends (.., X_i, X_{i+1}, ..) to (.., X_i X_{i+1} X_i^-1, X_i, ..);
// a word acts as the composite, so act(a b, X) = act(a, act(b, X)).
RepTuple act(const BraidWord& b, const RepTuple& X);
RepTuple act_signed(const SignVector& eps, const BraidWord& b, const RepTuple& X);
QuatTuple act_signed(const SignVector& eps, const BraidWord& b, const QuatTuple& X);

Quaternion product_holonomy(const RepTuple& X);
Quaternion product_holonomy(const QuatTuple& X);

// Value of a free word under x_g -> X[g].
Quaternion evaluate(const FreeWord& w, const QuatTuple& X);

// Image together with its derivative. Column c of `ambient` is the derivative
// of the image (stacked 3-vectors, or 4-vectors for quaternion tuples) along
// the c-th domain direction: tangent_frame column (c % 2) at X[c / 2] for
// sphere tuples, X[c / 3] * {i, j, k}[c % 3] for quaternion tuples.
struct SphereImage {
  RepTuple image;
  Eigen::MatrixXd ambient;  // 3n x 2n
};
struct QuatImage {
  QuatTuple image;
  Eigen::MatrixXd ambient;  // 4n x 3n
};

SphereImage act_signed_with_derivative(const SignVector& eps, const BraidWord& b,
                                       const RepTuple& X);
QuatImage act_signed_with_derivative(const SignVector& eps, const BraidWord& b,
                                     const QuatTuple& X);

// 2n x 2n matrix of the derivative of act_signed, in tangent_frame
// coordinates at X (columns) and at the image (rows).
struct ActionJacobian {
  Eigen::MatrixXd matrix;
};

ActionJacobian differential(const SignVector& eps, const BraidWord& b, const RepTuple& X);

// delta with delta_1 = 1 and delta_{k+1} = delta_k eps_k eps'_k, which is the
// transport vector when the permutation is (1 .. m)(m+1 .. n).
SignVector epsilon_transport(const SignVector& eps, const SignVector& eps_prime);
// For a general permutation: delta = 1 at each cycle minimum and
// delta_{p(i)} = delta_i eps_i eps'_i along the cycle, so that
// delta * eps * sigma(delta) = eps'.
SignVector epsilon_transport(const SignVector& eps, const SignVector& eps_prime,
                             const Permutation& perm);

// (eps_1, .., eps_{n-1}, 1, eps_n): the sign vector for markov_stabilize(b, +-1).
SignVector lifted_epsilon(const SignVector& eps);
// (X_1, .., X_n, X_n), a fixed point of the stabilized braid with
// lifted_epsilon(eps). Throws NotAFixedPoint if X is not fixed by (eps, b)
// within tol.
RepTuple markov_lift(const SignVector& eps, const BraidWord& b, const RepTuple& X,
                     double tol = 1e-8);

}  // namespace braidrep
