#pragma once

// Seeded generators and numerical oracles shared by the test binaries.

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "braidrep/action.hpp"
#include "braidrep/braid.hpp"

namespace testing_support {

using namespace braidrep;

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline BraidWord random_braid(std::mt19937_64& rng, int n, int length) {
  std::vector<Letter> letters;
  for (int i = 0; i < length; ++i) letters.push_back({uniform(rng, 1, n - 1), uniform(rng, 0, 1) ? 1 : -1});
  return BraidWord(n, std::move(letters));
}

inline BraidWord random_braid_upto(std::mt19937_64& rng, int max_n, int max_length) {
  const int n = uniform(rng, 2, max_n);
  return random_braid(rng, n, uniform(rng, 0, max_length));
}

inline BraidWord random_two_component(std::mt19937_64& rng, int max_n, int max_length) {
  for (;;) {
    const int n = uniform(rng, 2, max_n);
    BraidWord b = random_braid(rng, n, uniform(rng, 1, max_length));
    if (component_count(b) == 2) return b;
  }
}

inline FreeWord random_free_word(std::mt19937_64& rng, int n, int length) {
  std::vector<FreeLetter> letters;
  for (int i = 0; i < length; ++i) letters.push_back({uniform(rng, 0, n - 1), uniform(rng, 0, 1) ? 1 : -1});
  return FreeWord(letters);
}

inline RepTuple random_tuple(std::mt19937_64& rng, int n) {
  std::vector<SpherePoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back(sample_sphere(rng));
  return RepTuple(std::move(pts));
}

inline Quaternion random_unit(std::mt19937_64& rng) { return sample_unit_quaternion(rng); }

inline std::vector<SignVector> valid_epsilons(const BraidWord& b) {
  std::vector<SignVector> out;
  const int n = b.strands();
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> e;
    for (int i = 0; i < n; ++i) e.push_back((mask >> i) & 1 ? -1 : 1);
    SignVector s(std::move(e));
    if (is_valid_epsilon(s, b)) out.push_back(s);
  }
  return out;
}

// Central differences of act_signed along the tangent frames at X, read in
// the frames at the image.
inline Eigen::MatrixXd finite_difference_differential(const SignVector& eps, const BraidWord& b,
                                                      const RepTuple& X, double h = 1e-6) {
  const int n = X.size();
  const RepTuple Y = act_signed(eps, b, X);
  Eigen::MatrixXd J(2 * n, 2 * n);
  for (int s = 0; s < n; ++s) {
    const auto frame = tangent_frame(X[s]);
    for (int a = 0; a < 2; ++a) {
      auto shifted = [&](double t) {
        std::vector<SpherePoint> pts = X.points();
        const Vec3 v = frame.col(a);
        pts[static_cast<std::size_t>(s)] = SpherePoint(std::cos(t) * X[s].vec() + std::sin(t) * v);
        return act_signed(eps, b, RepTuple(std::move(pts)));
      };
      const RepTuple plus = shifted(h);
      const RepTuple minus = shifted(-h);
      for (int r = 0; r < n; ++r) {
        const Vec3 d = (plus[r].vec() - minus[r].vec()) / (2.0 * h);
        J.block<2, 1>(2 * r, 2 * s + a) = tangent_frame(Y[r]).transpose() * d;
      }
    }
  }
  return J;
}

}  // namespace testing_support
